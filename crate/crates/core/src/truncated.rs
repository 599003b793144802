//! The maximal order of the degree-n division algebra over Q_p, truncated
//! mod p^N: unramified coefficients W(F_{p^n})/p^N written on a Teichmueller
//! basis, a uniformizer S with S^n = p and S a = sigma(a) S, the Newton
//! solve for a unit of order p, and the abelian layers of the unit
//! filtration.

use crate::error::{Error, Result};
use crate::fp;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// W(F_{p^n})/p^N as (Z/p^N)[w]/(h(w)), where w is the Teichmueller lift of
/// a primitive element: w has exact multiplicative order p^n - 1.
#[derive(Clone, Debug)]
pub struct WittRing {
    pub p: u64,
    pub n: usize,
    pub precision: u32,
    pub modulus: u64,
    /// minimal polynomial of w: monic degree n, low coefficients first,
    /// length n (the leading 1 is implicit)
    pub h: Vec<u64>,
    /// frob[i] = coefficients of sigma(w^i) = w^{p i} reduced mod h
    frob: Vec<Vec<u64>>,
}

/// Coefficients of a residue-ring element on the w-power basis, length n.
pub type WElem = Vec<u64>;

fn poly_mul_mod(a: &[u64], b: &[u64], h: &[u64], m: u64) -> Vec<u64> {
    let n = h.len();
    let mut raw = vec![0u64; 2 * n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            raw[i + j] = fp::add_mod(raw[i + j], fp::mul_mod(x, y, m), m);
        }
    }
    // reduce: w^n = -h
    for d in (n..2 * n).rev() {
        let c = raw[d];
        if c == 0 {
            continue;
        }
        raw[d] = 0;
        for k in 0..n {
            raw[d - n + k] = fp::sub_mod(raw[d - n + k], fp::mul_mod(c, h[k], m), m);
        }
    }
    raw.truncate(n);
    raw
}

fn poly_pow_mod(a: &[u64], mut e: u64, h: &[u64], m: u64) -> Vec<u64> {
    let n = h.len();
    let mut acc = vec![0u64; n];
    acc[0] = 1 % m;
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(&acc, &base, h, m);
        }
        base = poly_mul_mod(&base, &base, h, m);
        e >>= 1;
    }
    acc
}

/// Solve x * a = rhs (n x n, mod p^k) where a is invertible mod p.
/// Gaussian elimination; every pivot must be a unit mod p.
fn solve_mod_pk(a: &[Vec<u64>], rhs: &[Vec<u64>], p: u64, m: u64) -> Result<Vec<Vec<u64>>> {
    let n = a.len();
    let w = a[0].len();
    debug_assert_eq!(n, w);
    // augmented: [a | I], row-reduce a to I, then x = rhs * a^{-1}
    let mut aug: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut row = a[i].clone();
            row.extend((0..n).map(|j| if i == j { 1 } else { 0 }));
            row
        })
        .collect();
    for c in 0..n {
        let pr = (c..n)
            .find(|&r| aug[r][c] % p != 0)
            .ok_or_else(|| Error::PrecisionTooLow("matrix not invertible mod p".into()))?;
        aug.swap(c, pr);
        let inv = fp::inv_mod(aug[c][c], m).ok_or_else(|| Error::PrecisionTooLow("pivot".into()))?;
        for x in aug[c].iter_mut() {
            *x = fp::mul_mod(*x, inv, m);
        }
        for r in 0..n {
            if r != c && aug[r][c] != 0 {
                let f = aug[r][c];
                let pivot_row = aug[c].clone();
                for (x, pv) in aug[r].iter_mut().zip(&pivot_row) {
                    *x = fp::sub_mod(*x, fp::mul_mod(f, *pv, m), m);
                }
            }
        }
    }
    let a_inv: Vec<Vec<u64>> = (0..n).map(|i| aug[i][n..].to_vec()).collect();
    // x[r] = sum_k rhs[r][k] * a_inv_row_k  (rows of a were the basis images)
    let mut out = Vec::with_capacity(rhs.len());
    for row in rhs {
        let mut x = vec![0u64; n];
        for (k, &c) in row.iter().enumerate() {
            for j in 0..n {
                x[j] = fp::add_mod(x[j], fp::mul_mod(c, a_inv[k][j], m), m);
            }
        }
        out.push(x);
    }
    Ok(out)
}

impl WittRing {
    /// Deterministic: scans monic degree-n polynomials over F_p in lex order
    /// for the first whose root is a primitive element, lifts it, and runs
    /// the Teichmueller iteration to a fixed point.
    pub fn new(p: u64, n: usize, precision: u32) -> Result<Self> {
        if precision == 0 || n == 0 {
            return Err(Error::PrecisionTooLow("need n >= 1 and precision >= 1".into()));
        }
        let modulus = p
            .checked_pow(precision)
            .filter(|&m| m < 1 << 62)
            .ok_or_else(|| Error::PrecisionTooLow("p^N overflows".into()))?;
        let field_order = p
            .checked_pow(n as u32)
            .ok_or_else(|| Error::TooLarge("p^n overflows".into()))?;
        // find a primitive monic g over F_p: x has order p^n - 1 mod (p, g)
        let qfacs = fp::factor(field_order - 1);
        let mut g_low: Option<Vec<u64>> = None;
        let total = p.pow(n as u32);
        'scan: for code in 0..total {
            let mut coeffs = Vec::with_capacity(n);
            let mut c = code;
            for _ in 0..n {
                coeffs.push(c % p);
                c /= p;
            }
            // order of x mod (g, p): must be exactly p^n - 1
            let x = {
                let mut v = vec![0u64; n];
                if n == 1 {
                    v[0] = (p - coeffs[0] % p) % p; // x = -c0 mod g
                } else {
                    v[1] = 1;
                }
                v
            };
            if poly_pow_mod(&x, field_order - 1, &coeffs, p) != {
                let mut one = vec![0u64; n];
                one[0] = 1;
                one
            } {
                continue;
            }
            for &(q, _) in &qfacs {
                let t = poly_pow_mod(&x, (field_order - 1) / q, &coeffs, p);
                let mut one = vec![0u64; n];
                one[0] = 1;
                if t == one {
                    continue 'scan;
                }
            }
            g_low = Some(coeffs);
            break;
        }
        let g = g_low.ok_or_else(|| Error::Invariant("no primitive polynomial found".into()))?;
        // Teichmueller: iterate t -> t^{p^n} in (Z/p^N)[x]/(g~) until fixed
        let mut t = vec![0u64; n];
        if n == 1 {
            t[0] = (modulus - g[0] % modulus) % modulus;
        } else {
            t[1] = 1;
        }
        let mut fixed = false;
        for _ in 0..(2 * precision + 4) {
            let next = poly_pow_mod(&t, field_order, &g, modulus);
            if next == t {
                fixed = true;
                break;
            }
            t = next;
        }
        if !fixed {
            return Err(Error::HenselNonconvergent);
        }
        // minimal polynomial of w = t over Z/p^N: solve [w^0..w^{n-1}] c = w^n
        let mut pows = Vec::with_capacity(n + 1);
        let mut cur = vec![0u64; n];
        cur[0] = 1;
        for _ in 0..=n {
            pows.push(cur.clone());
            cur = poly_mul_mod(&cur, &t, &g, modulus);
        }
        let basis: Vec<Vec<u64>> = pows[..n].to_vec();
        let target = vec![pows[n].clone()];
        let coeffs = solve_mod_pk(&basis, &target, p, modulus)?;
        // h(w) = 0 with h = w^n - sum c_k w^k, stored negated: w^n = -h_low
        let h: Vec<u64> = coeffs[0].iter().map(|&c| (modulus - c) % modulus).collect();
        // h reduces to g mod p (both are the minimal polynomial of the residue)
        for k in 0..n {
            if h[k] % p != g[k] % p {
                return Err(Error::Invariant("Teichmueller lift drifted from its residue".into()));
            }
        }
        let mut ring = WittRing { p, n, precision, modulus, h, frob: Vec::new() };
        // Frobenius: w -> w^p. Valid because w^{p^n} = w makes w^p a root of h.
        let wp = ring.pow(&ring.gen_w(), p);
        let mut frob = Vec::with_capacity(n);
        let mut acc = ring.one();
        for _ in 0..n {
            frob.push(acc.clone());
            acc = ring.mul(&acc, &wp);
        }
        ring.frob = frob;
        ring.validate()?;
        Ok(ring)
    }

    pub fn zero(&self) -> WElem {
        vec![0; self.n]
    }

    pub fn one(&self) -> WElem {
        let mut v = self.zero();
        v[0] = 1 % self.modulus;
        v
    }

    pub fn from_u64(&self, c: u64) -> WElem {
        let mut v = self.zero();
        v[0] = c % self.modulus;
        v
    }

    pub fn gen_w(&self) -> WElem {
        if self.n == 1 {
            return vec![(self.modulus - self.h[0] % self.modulus) % self.modulus];
        }
        let mut v = self.zero();
        v[1] = 1;
        v
    }

    pub fn add(&self, a: &WElem, b: &WElem) -> WElem {
        a.iter().zip(b).map(|(&x, &y)| fp::add_mod(x, y, self.modulus)).collect()
    }

    pub fn sub(&self, a: &WElem, b: &WElem) -> WElem {
        a.iter().zip(b).map(|(&x, &y)| fp::sub_mod(x, y, self.modulus)).collect()
    }

    pub fn neg(&self, a: &WElem) -> WElem {
        a.iter().map(|&x| (self.modulus - x % self.modulus) % self.modulus).collect()
    }

    pub fn mul(&self, a: &WElem, b: &WElem) -> WElem {
        poly_mul_mod(a, b, &self.h, self.modulus)
    }

    pub fn scale(&self, a: &WElem, c: u64) -> WElem {
        a.iter().map(|&x| fp::mul_mod(x, c, self.modulus)).collect()
    }

    pub fn pow(&self, a: &WElem, e: u64) -> WElem {
        poly_pow_mod(a, e, &self.h, self.modulus)
    }

    /// sigma^k applied coefficientwise through the Frobenius matrix.
    pub fn frobenius(&self, a: &WElem, k: usize) -> WElem {
        let mut cur = a.clone();
        for _ in 0..k % self.n {
            let mut out = self.zero();
            for (i, &c) in cur.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for j in 0..self.n {
                    out[j] = fp::add_mod(out[j], fp::mul_mod(c, self.frob[i][j], self.modulus), self.modulus);
                }
            }
            cur = out;
        }
        cur
    }

    fn validate(&self) -> Result<()> {
        let w = self.gen_w();
        // w^{p^n - 1} = 1: the Teichmueller property
        let field_order = self.p.pow(self.n as u32);
        if self.pow(&w, field_order - 1) != self.one() {
            return Err(Error::Invariant("w is not a (p^n - 1)-th root of unity".into()));
        }
        // exact order: no proper divisor works
        for (q, _) in fp::factor(field_order - 1) {
            if self.pow(&w, (field_order - 1) / q) == self.one() {
                return Err(Error::Invariant("w has smaller order than p^n - 1".into()));
            }
        }
        // sigma is a ring map on the basis and has order n
        for i in 0..self.n {
            for j in 0..self.n {
                let mut ei = self.zero();
                ei[i] = 1;
                let mut ej = self.zero();
                ej[j] = 1;
                let lhs = self.frobenius(&self.mul(&ei, &ej), 1);
                let rhs = self.mul(&self.frobenius(&ei, 1), &self.frobenius(&ej, 1));
                if lhs != rhs {
                    return Err(Error::NotHomomorphism);
                }
            }
        }
        let mut x = w.clone();
        for _ in 0..self.n {
            x = self.frobenius(&x, 1);
        }
        if x != w {
            return Err(Error::NotAutomorphism);
        }
        // sigma(a) = a^p mod p
        let test = self.frobenius(&w, 1);
        let wp = self.pow(&w, self.p);
        for k in 0..self.n {
            if test[k] % self.p != wp[k] % self.p {
                return Err(Error::Invariant("Frobenius does not reduce to x -> x^p".into()));
            }
        }
        Ok(())
    }
}

/// The truncated maximal order: elements sum_{i<n} a_i S^i, a_i in the Witt
/// ring, with S a = sigma(a) S and S^n = p.
#[derive(Clone, Debug)]
pub struct TruncatedOn {
    pub w: WittRing,
}

/// n blocks of n coefficients: block i is the Witt coordinate of S^i.
pub type OElem = Vec<u64>;

impl TruncatedOn {
    pub fn new(p: u64, n: usize, precision: u32) -> Result<Self> {
        Ok(TruncatedOn { w: WittRing::new(p, n, precision)? })
    }

    pub fn n(&self) -> usize {
        self.w.n
    }

    pub fn zero(&self) -> OElem {
        vec![0; self.w.n * self.w.n]
    }

    pub fn one(&self) -> OElem {
        let mut v = self.zero();
        v[0] = 1 % self.w.modulus;
        v
    }

    pub fn from_witt(&self, a: &WElem) -> OElem {
        let mut v = self.zero();
        v[..self.w.n].copy_from_slice(a);
        v
    }

    pub fn from_u64(&self, c: u64) -> OElem {
        self.from_witt(&self.w.from_u64(c))
    }

    /// S^k, k < n.
    pub fn s_pow(&self, k: usize) -> OElem {
        assert!(k < self.w.n);
        let mut v = self.zero();
        v[k * self.w.n] = 1 % self.w.modulus;
        v
    }

    fn block(&self, a: &OElem, i: usize) -> WElem {
        a[i * self.w.n..(i + 1) * self.w.n].to_vec()
    }

    pub fn add(&self, a: &OElem, b: &OElem) -> OElem {
        a.iter().zip(b).map(|(&x, &y)| fp::add_mod(x, y, self.w.modulus)).collect()
    }

    pub fn sub(&self, a: &OElem, b: &OElem) -> OElem {
        a.iter().zip(b).map(|(&x, &y)| fp::sub_mod(x, y, self.w.modulus)).collect()
    }

    pub fn neg(&self, a: &OElem) -> OElem {
        a.iter().map(|&x| (self.w.modulus - x % self.w.modulus) % self.w.modulus).collect()
    }

    pub fn scale(&self, a: &OElem, c: u64) -> OElem {
        a.iter().map(|&x| fp::mul_mod(x, c, self.w.modulus)).collect()
    }

    /// (a_i S^i)(b_j S^j) = a_i sigma^i(b_j) S^{i+j}, with S^n = p.
    pub fn mul(&self, a: &OElem, b: &OElem) -> OElem {
        let n = self.w.n;
        let mut out = self.zero();
        for i in 0..n {
            let ai = self.block(a, i);
            if ai.iter().all(|&x| x == 0) {
                continue;
            }
            for j in 0..n {
                let bj = self.block(b, j);
                if bj.iter().all(|&x| x == 0) {
                    continue;
                }
                let mut c = self.w.mul(&ai, &self.w.frobenius(&bj, i));
                let mut k = i + j;
                if k >= n {
                    k -= n;
                    c = self.w.scale(&c, self.w.p);
                }
                for (t, &x) in c.iter().enumerate() {
                    let idx = k * n + t;
                    out[idx] = fp::add_mod(out[idx], x, self.w.modulus);
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &OElem, e: u64) -> OElem {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order, bounded; None if it exceeds the bound.
    pub fn elem_order(&self, a: &OElem, bound: u64) -> Option<u64> {
        let one = self.one();
        let mut x = a.clone();
        for k in 1..=bound {
            if x == one {
                return Some(k);
            }
            x = self.mul(&x, a);
        }
        None
    }

    /// Coordinates divisible by p^k, exactly divided.
    pub fn divide_exact(&self, a: &OElem, k: u32) -> Result<OElem> {
        let d = self.w.p.pow(k);
        a.iter()
            .map(|&x| {
                if x % d != 0 {
                    Err(Error::Invariant("coordinate not divisible".into()))
                } else {
                    Ok(x / d)
                }
            })
            .collect()
    }

    pub fn reduce_coords(&self, a: &OElem, m: u64) -> Vec<u64> {
        a.iter().map(|&x| x % m).collect()
    }
}

/// Z/p^N[X]/(X^n + p): the ring where the order-p unit is solved for.
struct XRing {
    n: usize,
    p: u64,
    modulus: u64,
}

type XElem = Vec<u64>;

impl XRing {
    fn zero(&self) -> XElem {
        vec![0; self.n]
    }
    fn one(&self) -> XElem {
        let mut v = self.zero();
        v[0] = 1 % self.modulus;
        v
    }
    fn from_u64(&self, c: u64) -> XElem {
        let mut v = self.zero();
        v[0] = c % self.modulus;
        v
    }
    fn add(&self, a: &XElem, b: &XElem) -> XElem {
        a.iter().zip(b).map(|(&x, &y)| fp::add_mod(x, y, self.modulus)).collect()
    }
    fn sub(&self, a: &XElem, b: &XElem) -> XElem {
        a.iter().zip(b).map(|(&x, &y)| fp::sub_mod(x, y, self.modulus)).collect()
    }
    fn mul(&self, a: &XElem, b: &XElem) -> XElem {
        let n = self.n;
        let mut raw = vec![0u64; 2 * n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                raw[i + j] = fp::add_mod(raw[i + j], fp::mul_mod(x, y, self.modulus), self.modulus);
            }
        }
        // X^n = -p
        for d in (n..2 * n).rev() {
            let c = raw[d];
            if c == 0 {
                continue;
            }
            raw[d] = 0;
            raw[d - n] = fp::sub_mod(raw[d - n], fp::mul_mod(c, self.p, self.modulus), self.modulus);
        }
        raw.truncate(n);
        raw
    }
    /// Invert v (unit iff constant term is a unit mod p) by linear solve.
    fn inv(&self, v: &XElem) -> Result<XElem> {
        let n = self.n;
        // multiplication-by-v matrix: rows are images of X^i
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut xi = self.zero();
                xi[i] = 1;
                self.mul(&xi, v)
            })
            .collect();
        let sol = solve_mod_pk(&rows, &[self.one()], self.p, self.modulus)?;
        Ok(sol[0].clone())
    }
}

/// Binomial coefficient C(p, k) / p for 0 < k < p, exact in u64 for the
/// word-size primes used here.
fn binom_over_p(p: u64, k: u64) -> u64 {
    let mut num = 1u128;
    let mut den = 1u128;
    for t in 0..k {
        num *= (p - t) as u128;
        den *= (t + 1) as u128;
    }
    let c = num / den;
    debug_assert_eq!(num % den, 0);
    debug_assert_eq!(c % p as u128, 0);
    (c / p as u128) as u64
}

/// Output of the order-p unit construction.
pub struct ZetaTau {
    pub ring: TruncatedOn,
    pub zeta: OElem,
    pub tau: OElem,
    /// tau zeta tau^{-1} = zeta^e; e is a primitive root mod p.
    pub e: u64,
}

/// For n = p - 1: find zeta of exact order p in the truncated order by a
/// Newton iteration in Z/p^N[X]/(X^n + p), embed it, adjoin tau of order n^2
/// from the Teichmueller units, and read off the conjugation exponent e.
pub fn hensel_zeta_tau(p: u64, precision: u32) -> Result<ZetaTau> {
    let n = (p - 1) as usize;
    if n == 0 {
        return Err(Error::OrderMismatch("p must be at least 2".into()));
    }
    let ring = TruncatedOn::new(p, n, precision)?;
    let modulus = ring.w.modulus;
    let x = XRing { n, p, modulus };
    // G(u) = sum_{k=1}^{p-1} c_k X^{k-1} u^k - u^p, c_k = C(p,k)/p; c_1 = 1.
    // (1 + X u)^p - 1 = X p G(u), and G'(u) = 1 mod X, so Newton from u = 1
    // converges to the unique root with u = 1 mod X.
    let coeffs: Vec<u64> = (1..p).map(|k| binom_over_p(p, k)).collect();
    let g_at = |u: &XElem| -> XElem {
        let mut acc = x.zero();
        let mut upow = u.to_vec(); // u^k
        for k in 1..p {
            let mut term = upow.clone();
            // multiply by c_k X^{k-1}
            term = x.mul(&term, &{
                let mut t = x.zero();
                t[(k - 1) as usize] = coeffs[(k - 1) as usize] % modulus;
                t
            });
            acc = x.add(&acc, &term);
            upow = x.mul(&upow, u);
        }
        // upow is now u^p
        x.sub(&acc, &upow)
    };
    let gprime_at = |u: &XElem| -> XElem {
        let mut acc = x.zero();
        let mut upow = x.one(); // u^{k-1}
        for k in 1..p {
            let mut t = x.zero();
            t[(k - 1) as usize] = fp::mul_mod(k, coeffs[(k - 1) as usize], modulus);
            acc = x.add(&acc, &x.mul(&upow, &t));
            upow = x.mul(&upow, u);
        }
        // upow is now u^{p-1}
        let last = x.mul(&upow, &x.from_u64(p));
        x.sub(&acc, &last)
    };
    let mut u = x.one();
    let mut converged = false;
    for _ in 0..(2 * precision + 8) {
        let g = g_at(&u);
        if g.iter().all(|&c| c == 0) {
            converged = true;
            break;
        }
        let step = x.mul(&g, &x.inv(&gprime_at(&u))?);
        u = x.sub(&u, &step);
    }
    if !converged {
        return Err(Error::HenselNonconvergent);
    }

    // Embed: X -> omega^{n/2} S for n >= 2 (omega^{(p^n-1)/2} = -1 makes
    // (omega^{n/2} S)^n = -p); for n = 1, X = -p directly.
    let field_order = p.pow(n as u32);
    let x_img = if n == 1 {
        ring.from_u64(modulus - p % modulus)
    } else {
        let w_half = ring.w.pow(&ring.w.gen_w(), (n / 2) as u64);
        ring.mul(&ring.from_witt(&w_half), &ring.s_pow(1))
    };
    // check X^n = -p in the order
    let minus_p = ring.from_u64(modulus - p % modulus);
    if ring.pow(&x_img, n as u64) != minus_p {
        return Err(Error::Invariant("embedded X does not satisfy X^n = -p".into()));
    }
    let embed = |v: &XElem| -> OElem {
        let mut acc = ring.zero();
        let mut xp = ring.one();
        for &c in v.iter() {
            acc = ring.add(&acc, &ring.scale(&xp, c));
            xp = ring.mul(&xp, &x_img);
        }
        acc
    };
    let xu = x.mul(&{
        let mut t = x.zero();
        if n == 1 {
            // X itself is the constant -p
            t[0] = (modulus - p % modulus) % modulus;
        } else {
            t[1] = 1;
        }
        t
    }, &u);
    let zeta = ring.add(&ring.one(), &embed(&xu));
    if ring.pow(&zeta, p) != ring.one() || zeta == ring.one() {
        return Err(Error::OrderMismatch("zeta does not have exact order p".into()));
    }

    // tau = omega^{(p^n - 1)/n^2}
    let nn = (n * n) as u64;
    if (field_order - 1) % nn != 0 {
        return Err(Error::OrderMismatch("n^2 does not divide p^n - 1".into()));
    }
    let tau_w = ring.w.pow(&ring.w.gen_w(), (field_order - 1) / nn);
    let tau = ring.from_witt(&tau_w);
    if ring.elem_order(&tau, nn) != Some(nn.max(1)) {
        return Err(Error::OrderMismatch("tau does not have exact order n^2".into()));
    }

    // tau zeta tau^{-1} = zeta^e
    let tau_inv = ring.pow(&tau, nn - 1);
    let conj = ring.mul(&ring.mul(&tau, &zeta), &tau_inv);
    let mut e_found = None;
    for e in 1..p {
        if ring.pow(&zeta, e) == conj {
            e_found = Some(e);
            break;
        }
    }
    let e = e_found.ok_or_else(|| Error::Invariant("conjugate of zeta is not a power of zeta".into()))?;
    if !fp::is_primitive_root(e, p) && p > 2 {
        return Err(Error::Invariant(format!("conjugation exponent {e} is not a primitive root")));
    }
    Ok(ZetaTau { ring, zeta, tau, e })
}

/// Invariant factors of the layer (1 + p^i O) / (1 + p^j O) for
/// i < j <= 2i, computed by honest unit multiplication and element-order
/// counting. The outcome is (Z/p^{j-i})^{n^2}.
pub fn lower_p_series_data(p: u64, n: usize, i: u32, j: u32) -> Result<Vec<u64>> {
    if i == 0 || j <= i {
        return Err(Error::IndexOutOfRange("need 1 <= i < j".into()));
    }
    if j > 2 * i {
        return Err(Error::OutOfAbelianRange);
    }
    let rank = n * n;
    let layer = j - i;
    let count_log2 = (rank as u32) * layer * (64 - p.leading_zeros());
    if count_log2 > 21 {
        return Err(Error::TooLarge("layer has too many elements to enumerate".into()));
    }
    let size = p.pow(layer).pow(rank as u32);
    if size > 1 << 21 {
        return Err(Error::TooLarge("layer has too many elements to enumerate".into()));
    }
    let ring = TruncatedOn::new(p, n, j)?;
    let pl = p.pow(layer);
    let pi = p.pow(i);
    // element: vector y in (Z/p^layer)^rank standing for 1 + p^i y
    let decode = |mut code: u64| -> Vec<u64> {
        let mut v = Vec::with_capacity(rank);
        for _ in 0..rank {
            v.push(code % pl);
            code /= pl;
        }
        v
    };
    let encode = |v: &[u64]| -> u64 {
        v.iter().rev().fold(0u64, |acc, &c| acc * pl + c % pl)
    };
    let to_unit = |y: &[u64]| -> OElem {
        let mut u = ring.one();
        for (t, &c) in y.iter().enumerate() {
            u[t] = fp::add_mod(u[t], fp::mul_mod(pi, c, ring.w.modulus), ring.w.modulus);
        }
        u
    };
    let op = |a: u64, b: u64| -> Result<u64> {
        let prod = ring.mul(&to_unit(&decode(a)), &to_unit(&decode(b)));
        let diff = ring.sub(&prod, &ring.one());
        let y = ring.divide_exact(&diff, i)?;
        Ok(encode(&y))
    };
    // order of every element; the group must be abelian of exponent p^layer
    let mut orders = Vec::with_capacity(size as usize);
    for code in 0..size {
        let mut x = code;
        let mut k = 1u64;
        while x != 0 {
            x = op(x, code)?;
            k += 1;
            if k > pl {
                return Err(Error::Invariant("element order exceeds the layer exponent".into()));
            }
        }
        orders.push(k);
    }
    // divisor counts -> invariant factors (all powers of p)
    let mut factors = Vec::new();
    let mut prev_log = 0u32;
    for k in 1..=layer {
        let pk = p.pow(k);
        let dk = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
        // dk = p^{sum_i min(k, m_i)}; track how many m_i are >= k
        let mut log = 0u32;
        let mut t = dk;
        while t > 1 {
            t /= p;
            log += 1;
        }
        let at_least_k = log - prev_log;
        factors.push(at_least_k);
        prev_log = log;
    }
    // factors[k-1] = #invariant factors with exponent >= k
    let mut out = Vec::new();
    for k in 1..=layer as usize {
        let ge_k = factors[k - 1];
        let ge_k1 = if k < layer as usize { factors[k] } else { 0 };
        for _ in 0..(ge_k - ge_k1) {
            out.push(p.pow(k as u32));
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Truncated exponential on p^i O: termwise x^k / k! with enough guard
/// precision that the stated congruences are exact mod p^N.
pub struct ExpReport {
    pub terms_used: u64,
    pub samples_checked: usize,
}

pub fn exp_identity_check(
    p: u64,
    n: usize,
    i: u32,
    precision: u32,
    samples: usize,
) -> Result<ExpReport> {
    if (p - 1) * i as u64 <= 1 {
        return Err(Error::SeriesDivergence(format!(
            "exp converges on p^i O only when (p-1)i > 1; got p = {p}, i = {i}"
        )));
    }
    let vp_fact = |k: u64| -> u32 {
        let mut v = 0u32;
        let mut q = p;
        while q <= k {
            v += (k / q) as u32;
            match q.checked_mul(p) {
                Some(next) => q = next,
                None => break,
            }
        }
        v
    };
    // last term index whose valuation k*i - v_p(k!) falls below N
    let mut kmax = 1u64;
    for k in 1..=4000u64 {
        let val = (k as i64) * (i as i64) - vp_fact(k) as i64;
        if val < precision as i64 {
            kmax = k;
        }
    }
    // beyond 4000 the valuation dominates any sane precision here
    let guard = vp_fact(kmax);
    let m_prec = precision + guard;
    if (m_prec as u64) * (64 - p.leading_zeros()) as u64 > 62 {
        return Err(Error::PrecisionTooLow("guard precision overflows u64".into()));
    }
    let ring = TruncatedOn::new(p, n, m_prec)?;
    let p_n = p.pow(precision);
    let p_2i = p.pow((2 * i).min(precision));
    let pi = p.pow(i);

    let exp_of = |xin: &OElem| -> Result<OElem> {
        let mut sum = ring.one();
        let mut term = ring.one(); // x^k / k!
        for k in 1..=kmax {
            term = ring.mul(&term, xin);
            let a = p.pow(vp_fact(k) - vp_fact(k - 1));
            let unit = k / a;
            term = ring.divide_exact(&term, vp_fact(k) - vp_fact(k - 1))?;
            let inv = fp::inv_mod(unit % ring.w.modulus, ring.w.modulus)
                .ok_or_else(|| Error::Invariant("unit part of k not invertible".into()))?;
            term = ring.scale(&term, inv);
            sum = ring.add(&sum, &term);
        }
        Ok(sum)
    };

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let samples = samples.max(1);
    for s in 0..samples {
        let y: OElem = if s == 0 {
            ring.one()
        } else {
            (0..n * n).map(|_| rng.gen_range(0..ring.w.modulus)).collect()
        };
        let x = ring.scale(&y, pi);
        let ex = exp_of(&x)?;
        // exp(x) = 1 + x mod p^{2i}
        let lhs = ring.reduce_coords(&ex, p_2i);
        let rhs = ring.reduce_coords(&ring.add(&ring.one(), &x), p_2i);
        if lhs != rhs {
            return Err(Error::Invariant("exp(x) != 1 + x mod p^{2i}".into()));
        }
        // exp(-x) exp(x) = 1 mod p^N
        let exneg = exp_of(&ring.neg(&x))?;
        let prod = ring.reduce_coords(&ring.mul(&exneg, &ex), p_n);
        let one = ring.reduce_coords(&ring.one(), p_n);
        if prod != one {
            return Err(Error::Invariant("exp(-x) exp(x) != 1".into()));
        }
        // exp lands in 1 + p^i O
        let diff = ring.sub(&ex, &ring.one());
        if diff.iter().any(|&c| c % pi != 0) {
            return Err(Error::Invariant("exp(x) - 1 not divisible by p^i".into()));
        }
    }
    Ok(ExpReport { terms_used: kmax, samples_checked: samples })
}
