//! Sparse multivariate polynomials over Q, symmetric-function reduction to
//! elementary symmetric polynomials, and Newton power sums.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Exponent vectors are fixed-length; BTreeMap keys sort lexicographically,
/// which is exactly the monomial order the reduction algorithm wants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, BigRational>,
}

impl SymPoly {
    pub fn zero(nvars: usize) -> Self {
        SymPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    /// The single variable t_i.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, BigRational::one());
        p
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: BigRational) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let entry = out.terms.entry(m.clone()).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                out.terms.remove(m);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        SymPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        SymPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Vec<u32> = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                let entry = out.terms.entry(m.clone()).or_insert_with(BigRational::zero);
                *entry += ca * cb;
                if entry.is_zero() {
                    out.terms.remove(&m);
                }
            }
        }
        out
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Substitute 0 for every variable in `vars`.
    pub fn kill_vars(&self, vars: &[usize]) -> Self {
        let mut out = Self::zero(self.nvars);
        'term: for (m, c) in &self.terms {
            for &v in vars {
                if m[v] > 0 {
                    continue 'term;
                }
            }
            out.terms.insert(m.clone(), c.clone());
        }
        out
    }

    /// Apply a permutation of the variables.
    fn permute_vars(&self, perm: &[usize]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; self.nvars];
            for (i, &x) in m.iter().enumerate() {
                e[perm[i]] = x;
            }
            out.terms.insert(e, c.clone());
        }
        out
    }

    /// Symmetric under every adjacent transposition, hence under all of S_n.
    pub fn is_symmetric(&self) -> bool {
        for i in 0..self.nvars.saturating_sub(1) {
            let mut perm: Vec<usize> = (0..self.nvars).collect();
            perm.swap(i, i + 1);
            if self.permute_vars(&perm) != *self {
                return false;
            }
        }
        true
    }

    /// Total degree of the lex-leading term.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    /// Coefficients as integers mod p; fails if a denominator is divisible by p.
    pub fn coeffs_mod(&self, p: u64) -> Result<BTreeMap<Vec<u32>, u64>> {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let r = rational_mod(c, p)?;
            if r != 0 {
                out.insert(m.clone(), r);
            }
        }
        Ok(out)
    }
}

pub fn rational_mod(c: &BigRational, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let num = c.numer().clone() % &pb;
    let den = c.denom().clone() % &pb;
    let num_u = ((num + &pb) % &pb).try_into().unwrap_or(0u64);
    let den_u: u64 = ((den + &pb) % &pb).try_into().unwrap_or(0u64);
    let inv = crate::fp::inv_mod(den_u, p)
        .ok_or_else(|| Error::PrecisionTooLow(format!("denominator not invertible mod {p}")))?;
    Ok(crate::fp::mul_mod(num_u, inv, p))
}

/// e_k(t_1..t_m) as an explicit polynomial in m variables.
pub fn elementary_symmetric(m: usize, k: usize) -> SymPoly {
    let mut out = SymPoly::zero(m);
    if k > m {
        return out;
    }
    // iterate k-subsets of 0..m
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mut e = vec![0u32; m];
        for &i in &idx {
            e[i] = 1;
        }
        out.terms.insert(e, BigRational::one());
        if k == 0 {
            break;
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + m - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

/// p_k(t_1..t_m) = sum t_i^k.
pub fn power_sum(m: usize, k: u32) -> SymPoly {
    let mut out = SymPoly::zero(m);
    for i in 0..m {
        let mut e = vec![0u32; m];
        e[i] = k;
        out.terms.insert(e, BigRational::one());
    }
    out
}

/// Rewrite a symmetric polynomial in t_1..t_m as a polynomial in the
/// elementary symmetric polynomials; output variable i stands for e_{i+1}.
/// Classic leading-monomial elimination: the lex-leading exponent of a
/// symmetric polynomial is weakly decreasing, and subtracting the matching
/// product of e_i's strictly lowers it.
pub fn sym_to_elementary(f: &SymPoly) -> Result<SymPoly> {
    if !f.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let m = f.nvars;
    let mut rem = f.clone();
    let mut out = SymPoly::zero(m);
    let e_polys: Vec<SymPoly> = (1..=m).map(|k| elementary_symmetric(m, k)).collect();
    while let Some((lead, c)) = rem.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
        if lead.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotSymmetric);
        }
        // e_1^{a1-a2} e_2^{a2-a3} ... e_m^{am} has the same leading monomial
        let mut e_exps = vec![0u32; m];
        for i in 0..m {
            let next = if i + 1 < m { lead[i + 1] } else { 0 };
            e_exps[i] = lead[i] - next;
        }
        out = out.add(&SymPoly::monomial(m, e_exps.clone(), c.clone()));
        let mut prod = SymPoly::one(m);
        for (i, &k) in e_exps.iter().enumerate() {
            if k > 0 {
                prod = prod.mul(&e_polys[i].pow(k));
            }
        }
        rem = rem.sub(&prod.scale(&c));
    }
    Ok(out)
}

/// Newton power sum s_k written in the elementary symmetric generators;
/// variable i stands for e_{i+1}, with m variables available.
/// Recursion: s_k = e_1 s_{k-1} - e_2 s_{k-2} + ... + (-1)^{k-1} k e_k.
pub fn newton_s_k(k: usize, m: usize) -> SymPoly {
    let mut s: Vec<SymPoly> = Vec::with_capacity(k + 1);
    s.push(SymPoly::constant(m, BigRational::from(BigInt::from(m as i64)))); // s_0 = m
    for kk in 1..=k {
        let mut acc = SymPoly::zero(m);
        for i in 1..=kk.min(m) {
            let term = if i == kk {
                SymPoly::constant(m, BigRational::from(BigInt::from(kk as i64)))
            } else {
                s[kk - i].clone()
            };
            let ei = SymPoly::var(m, i - 1);
            let signed = if (i - 1) % 2 == 0 { term } else { term.neg() };
            acc = acc.add(&ei.mul(&signed));
        }
        s.push(acc);
    }
    s.swap_remove(k)
}
