//! Exact values in Z[zeta_N]. The carrier is Z[x]/(x^N - 1), where
//! multiplication is cyclic convolution; two values are equal when their
//! difference vanishes mod the N-th cyclotomic polynomial. Keeping the
//! carrier un-reduced makes Galois twists and conjugation cheap, while
//! equality-mod-Phi_N gives genuine value semantics for zeta_N.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Monic cyclotomic polynomial Phi_n, coefficients low degree first.
/// Memoized: equality checks reduce mod Phi_n constantly.
pub fn cyclotomic_polynomial(n: usize) -> Vec<BigInt> {
    thread_local! {
        static CACHE: std::cell::RefCell<std::collections::HashMap<usize, Vec<BigInt>>> =
            std::cell::RefCell::new(std::collections::HashMap::new());
    }
    if let Some(hit) = CACHE.with(|c| c.borrow().get(&n).cloned()) {
        return hit;
    }
    assert!(n >= 1);
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut f = vec![BigInt::zero(); n + 1];
    f[0] = -BigInt::one();
    f[n] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            f = poly_div_exact(&f, &cyclotomic_polynomial(d));
        }
    }
    CACHE.with(|c| c.borrow_mut().insert(n, f.clone()));
    f
}

/// Exact division of polynomials over Z with monic divisor.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false), "divisor must be monic");
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        assert!(rem.iter().all(|c| c.is_zero()));
        return vec![BigInt::zero()];
    }
    let mut quo = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quo[i - dd] = c.clone();
        for (k, dc) in den.iter().enumerate() {
            let sub = dc * &c;
            rem[i - dd + k] -= sub;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division was not exact");
    quo
}

/// Remainder mod a monic polynomial, coefficients low degree first.
fn poly_rem(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem: Vec<BigInt> = num.to_vec();
    for i in (dd..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        for (k, dc) in den.iter().enumerate() {
            let sub = dc * &c;
            rem[i - dd + k] -= sub;
        }
    }
    rem.truncate(dd.max(1));
    rem
}

#[derive(Clone, Debug)]
pub struct CyclotomicValue {
    /// Conductor: this value lives in Z[zeta_n].
    pub n: usize,
    /// Coefficients of the carrier Z[x]/(x^n - 1), length exactly n.
    pub coeffs: Vec<BigInt>,
}

impl CyclotomicValue {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1);
        CyclotomicValue { n, coeffs: vec![BigInt::zero(); n] }
    }

    pub fn from_int(n: usize, c: impl Into<BigInt>) -> Self {
        let mut v = Self::zero(n);
        v.coeffs[0] = c.into();
        v
    }

    /// zeta_n^k
    pub fn zeta_pow(n: usize, k: i64) -> Self {
        let mut v = Self::zero(n);
        let idx = k.rem_euclid(n as i64) as usize;
        v.coeffs[idx] = BigInt::one();
        v
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        CyclotomicValue {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        CyclotomicValue {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        CyclotomicValue { n: self.n, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        CyclotomicValue { n: self.n, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Cyclic convolution in the carrier.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[(i + j) % n] += a * b;
            }
        }
        CyclotomicValue { n, coeffs: out }
    }

    /// Multiply by zeta_n^k: a coefficient rotation.
    pub fn mul_zeta_pow(&self, k: i64) -> Self {
        let n = self.n;
        let shift = k.rem_euclid(n as i64) as usize;
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[(i + shift) % n] = a.clone();
        }
        CyclotomicValue { n, coeffs: out }
    }

    /// Galois twist zeta |-> zeta^j; j must be a unit mod n.
    pub fn galois(&self, j: usize) -> Self {
        let n = self.n;
        assert_eq!(crate::fp::gcd(j as u64 % n as u64, n as u64), 1, "twist must be a unit");
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[(i * j) % n] += a;
        }
        CyclotomicValue { n, coeffs: out }
    }

    /// Complex conjugation zeta |-> zeta^{-1}.
    pub fn conj(&self) -> Self {
        self.galois(self.n - 1 + usize::from(self.n == 1))
    }

    /// Canonical representative: remainder mod Phi_n, degree < phi(n).
    pub fn canonical(&self) -> Vec<BigInt> {
        poly_rem(&self.coeffs, &cyclotomic_polynomial(self.n))
    }

    pub fn is_zero(&self) -> bool {
        self.canonical().iter().all(|c| c.is_zero())
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.n == other.n && self.sub(other).is_zero()
    }

    /// Some(c) when the value is the rational integer c.
    pub fn as_integer(&self) -> Option<BigInt> {
        // 1, zeta, .., zeta^(phi(n)-1) is a Z-basis, so the value is an
        // integer exactly when its canonical form is concentrated in degree 0
        let canon = self.canonical();
        if canon[1..].iter().all(|c| c.is_zero()) {
            Some(canon[0].clone())
        } else {
            None
        }
    }

    /// Re-express at a larger conductor m (n | m) via zeta_n = zeta_m^{m/n}.
    pub fn lift(&self, m: usize) -> Self {
        assert!(m >= 1 && m % self.n == 0, "conductor must be a multiple");
        let stride = m / self.n;
        let mut out = CyclotomicValue::zero(m);
        for (i, a) in self.coeffs.iter().enumerate() {
            out.coeffs[i * stride] += a;
        }
        out
    }

    /// Evaluate the canonical representative with zeta replaced by zeta^k,
    /// as a new value at the same conductor.
    pub fn power_map(&self, k: usize) -> Self {
        let n = self.n;
        let canon = self.canonical();
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in canon.iter().enumerate() {
            out[(i * k) % n] += a;
        }
        CyclotomicValue { n, coeffs: out }
    }
}

impl PartialEq for CyclotomicValue {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}
impl Eq for CyclotomicValue {}
