//! u64 modular arithmetic, factorization of machine integers, primitive
//! roots, and small dense matrices over a prime field F_q.

use crate::error::{Error, Result};

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % m as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    (a + m - b % m) % m
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    base %= m;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Inverse of a mod m when gcd(a, m) = 1.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// Trial division; fine for the machine-word sizes used here.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n > 1 && factor(n) == vec![(n, 1)]
}

/// Multiplicative order of a mod m; requires gcd(a, m) = 1.
pub fn order_mod(a: u64, m: u64) -> Result<u64> {
    if m == 1 {
        return Ok(1);
    }
    if gcd(a % m, m) != 1 {
        return Err(Error::NotUnit);
    }
    // order divides phi(m); factor phi and strip primes
    let phi = euler_phi(m);
    let mut ord = phi;
    for (p, _) in factor(phi) {
        while ord % p == 0 && pow_mod(a, ord / p, m) == 1 {
            ord /= p;
        }
    }
    debug_assert_eq!(pow_mod(a, ord, m), 1);
    Ok(ord)
}

pub fn euler_phi(n: u64) -> u64 {
    let mut out = n;
    for (p, _) in factor(n) {
        out = out / p * (p - 1);
    }
    out
}

pub fn is_primitive_root(g: u64, p: u64) -> bool {
    if g % p == 0 {
        return false;
    }
    factor(p - 1).iter().all(|&(q, _)| pow_mod(g, (p - 1) / q, p) != 1)
}

/// Smallest primitive root mod prime p.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    (2..p).find(|&g| is_primitive_root(g, p)).expect("prime has a primitive root")
}

/// Square root mod odd prime q by scanning; q stays small here.
pub fn sqrt_mod(a: u64, q: u64) -> Option<u64> {
    let a = a % q;
    (0..q).find(|&x| mul_mod(x, x, q) == a)
}

/// Dense matrix over F_q, q prime. Used for character-table linear algebra,
/// where dimensions stay below a hundred.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqMat {
    pub q: u64,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl FqMat {
    pub fn zero(q: u64, rows: usize, cols: usize) -> Self {
        FqMat { q, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(q: u64, n: usize) -> Self {
        let mut m = FqMat::zero(q, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.q;
    }

    pub fn mul(&self, other: &FqMat) -> FqMat {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.q, other.q);
        let mut out = FqMat::zero(self.q, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = add_mod(out.get(i, j), mul_mod(a, other.get(k, j), self.q), self.q);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &FqMat) -> FqMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = add_mod(*a, *b, self.q);
        }
        out
    }

    pub fn scale(&self, c: u64) -> FqMat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = mul_mod(*a, c, self.q);
        }
        out
    }

    pub fn trace(&self) -> u64 {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).fold(0, |acc, i| add_mod(acc, self.get(i, i), self.q))
    }

    /// Row echelon in place; returns pivot columns.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else { continue };
            for j in 0..self.cols {
                let (a, b) = (self.get(r, j), self.get(pr, j));
                self.set(r, j, b);
                self.set(pr, j, a);
            }
            let inv = inv_mod(self.get(r, c), self.q).expect("prime modulus");
            for j in c..self.cols {
                let v = mul_mod(self.get(r, j), inv, self.q);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && self.get(i, c) != 0 {
                    let f = self.get(i, c);
                    for j in c..self.cols {
                        let v = sub_mod(self.get(i, j), mul_mod(f, self.get(r, j), self.q), self.q);
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_reduce().len()
    }

    /// Basis of the right kernel (column vectors x with Mx = 0).
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.row_reduce();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut x = vec![0u64; self.cols];
            x[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = sub_mod(0, m.get(r, free), self.q);
            }
            basis.push(x);
        }
        basis
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut s = 0u64;
                for j in 0..self.cols {
                    s = add_mod(s, mul_mod(self.get(i, j), x[j], self.q), self.q);
                }
                s
            })
            .collect()
    }

    /// Characteristic polynomial, low degree first, monic. Requires q > rows
    /// (exact divisions by 1..=rows occur).
    pub fn charpoly(&self) -> Vec<u64> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        assert!((self.q as usize) > n, "field too small for trace recursion");
        // Faddeev-LeVerrier: M_0 = I, c_n = 1; M_k = A M_{k-1} + c_{n-k+1} I,
        // c_{n-k} = -tr(A M_{k-1}) / k.
        let mut coeffs = vec![0u64; n + 1];
        coeffs[n] = 1;
        let mut m = FqMat::identity(self.q, n);
        for k in 1..=n {
            let am = self.mul(&m);
            let t = am.trace();
            let kinv = inv_mod(k as u64 % self.q, self.q).expect("q > n");
            let c = sub_mod(0, mul_mod(t, kinv, self.q), self.q);
            coeffs[n - k] = c;
            m = am;
            for i in 0..n {
                let v = add_mod(m.get(i, i), c, self.q);
                m.set(i, i, v);
            }
        }
        coeffs
    }
}

/// Evaluate a polynomial (low degree first) at x over F_q.
pub fn poly_eval(coeffs: &[u64], x: u64, q: u64) -> u64 {
    coeffs.iter().rev().fold(0u64, |acc, &c| add_mod(mul_mod(acc, x, q), c, q))
}

/// All roots in F_q found by scanning, with multiplicity via repeated
/// division by (x - r).
pub fn poly_roots(coeffs: &[u64], q: u64) -> Vec<(u64, usize)> {
    let mut f: Vec<u64> = coeffs.to_vec();
    while f.last() == Some(&0) && f.len() > 1 {
        f.pop();
    }
    let mut out = Vec::new();
    for r in 0..q {
        if poly_eval(&f, r, q) != 0 {
            continue;
        }
        let mut mult = 0;
        while f.len() > 1 && poly_eval(&f, r, q) == 0 {
            // synthetic division by (x - r)
            let mut quo = vec![0u64; f.len() - 1];
            let mut carry = 0u64;
            for i in (0..f.len() - 1).rev() {
                carry = add_mod(f[i + 1], mul_mod(carry, r, q), q);
                quo[i] = carry;
            }
            debug_assert_eq!(add_mod(f[0], mul_mod(carry, r, q), q), 0);
            f = quo;
            mult += 1;
        }
        out.push((r, mult));
        if f.len() == 1 {
            break;
        }
    }
    out
}
