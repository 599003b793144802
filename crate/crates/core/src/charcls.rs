//! Characteristic classes of representations evaluated in group cohomology:
//! Chern coefficients on cyclic groups, the spin class lambda = d c_1 - c_2,
//! lambda tables for the two unit groups that detect torsion at p = 3 and
//! p = 2, Chern character coefficients mod p, total Stiefel-Whitney classes
//! over the quaternion group, and the Wu-type congruence relating the top
//! Steenrod operation on a Thom class to the top Pontryagin class.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fp;
use crate::group::FiniteGroup;
use crate::rep::{
    character_table, decompose_real, eigenvalue_multiplicities, real_irreducibles, restrict,
    Character, CharacterTable, RealBasis, RealRepClass,
};
use crate::sympoly::{sym_to_elementary, SymPoly};

/// How a value entered a computation: derived inside this crate, or taken as
/// a normalization from outside it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Computed,
    Given,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Computed => "computed",
            Provenance::Given => "given",
        }
    }
}

/// Chern coefficients of a complex representation of C_k, written against the
/// standard generator: H^{2i}(C_k; Z) = Z/k and c_i = e_i(multipliers).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernData {
    /// order of the cyclic group, hence the modulus of every coefficient
    pub order: u64,
    /// c_1, c_2, ... up to the dimension, each reduced mod order
    pub coeffs: Vec<u64>,
}

/// Elementary symmetric functions of the multipliers mod k, by running
/// product of the linear factors (1 + m x).
pub fn chern_on_cyclic(order: u64, multipliers: &[u64]) -> Result<ChernData> {
    if order == 0 {
        return Err(Error::IndexOutOfRange("cyclic group of order zero".into()));
    }
    let mut poly: Vec<u64> = vec![1];
    for &m in multipliers {
        let m = m % order;
        let mut next = vec![0u64; poly.len() + 1];
        for (i, &c) in poly.iter().enumerate() {
            next[i] = (next[i] + c) % order;
            next[i + 1] = ((next[i + 1] as u128 + c as u128 * m as u128) % order as u128) as u64;
        }
        poly = next;
    }
    Ok(ChernData { order, coeffs: poly[1..].to_vec() })
}

/// The class lambda = d c_1 - c_2 in H^4(C_k; Z) = Z/k, where d is a degree-2
/// class with 2d = c_1. For even k the two solutions d must agree in lambda;
/// an odd c_1 admits no d at all.
pub fn lambda_on_cyclic(c: &ChernData) -> Result<u64> {
    let k = c.order;
    let c1 = c.coeffs.first().copied().unwrap_or(0) % k;
    let c2 = c.coeffs.get(1).copied().unwrap_or(0) % k;
    let lam = |d: u64| -> u64 {
        let prod = (d as u128 * c1 as u128) % k as u128;
        ((prod + k as u128 - c2 as u128 % k as u128) % k as u128) as u64
    };
    if k % 2 == 1 {
        // 2 is invertible, so d = c_1 (k+1)/2 is the unique halving
        let d = (c1 as u128 * ((k as u128 + 1) / 2) % k as u128) as u64;
        return Ok(lam(d));
    }
    if c1 % 2 == 1 {
        return Err(Error::NotSpinnable);
    }
    let d0 = c1 / 2;
    let d1 = (d0 + k / 2) % k;
    let (l0, l1) = (lam(d0), lam(d1));
    if l0 != l1 {
        return Err(Error::SpinAmbiguity);
    }
    Ok(l0)
}

/// Multipliers of a chosen stable complex structure on a real class, read off
/// one per conjugate eigenvalue pair at the given conjugacy class. An odd
/// number of -1 eigenvalues obstructs any choice. Signed multiplicities from
/// virtual classes are returned alongside each multiplier.
fn complex_structure_multipliers(
    t: &CharacterTable,
    w: &Character,
    class: usize,
) -> Result<Vec<(u64, BigInt)>> {
    let mults = eigenvalue_multiplicities(t, w, class)?;
    let o = mults.len() as u64;
    let mut out = Vec::new();
    for tt in 1..=(o - 1) / 2 {
        let n = &mults[tt as usize];
        if !n.is_zero() {
            out.push((tt, n.clone()));
        }
    }
    if o % 2 == 0 {
        let n = &mults[(o / 2) as usize];
        let (q, r) = n.div_rem(&BigInt::from(2));
        if !r.is_zero() {
            return Err(Error::NotSpinnable);
        }
        if !q.is_zero() {
            out.push((o / 2, q));
        }
    }
    Ok(out)
}

/// c_1 and c_2 of a formal product prod (1 + m x)^n over signed multiplicities,
/// exact in Z and reduced mod k at the end.
fn c1_c2_from_signed(order: u64, mults: &[(u64, BigInt)]) -> ChernData {
    let mut s1 = BigInt::zero();
    let mut s2 = BigInt::zero();
    for (m, n) in mults {
        let m = BigInt::from(*m);
        // (1 + m x)^n = 1 + n m x + n(n-1)/2 m^2 x^2 + ..., valid for n < 0 too
        let quad = n * (n - BigInt::one()) / BigInt::from(2) * &m * &m;
        s2 += quad + &s1 * n.clone() * &m;
        s1 += n * m;
    }
    let k = BigInt::from(order);
    let red = |v: BigInt| -> u64 { u64::try_from(v.mod_floor(&k)).expect("reduced") };
    ChernData { order, coeffs: vec![red(s1), red(s2)] }
}

/// lambda of a real (virtual) class at one conjugacy class, valued mod the
/// order of that class.
pub fn lambda_at_class(t: &CharacterTable, w: &Character, class: usize) -> Result<u64> {
    let o = t.data.orders[class] as u64;
    let mults = complex_structure_multipliers(t, w, class)?;
    lambda_on_cyclic(&c1_c2_from_signed(o, &mults))
}

fn same_character(a: &Character, b: &Character) -> bool {
    a.group_order == b.group_order
        && a.values.len() == b.values.len()
        && a.values.iter().zip(&b.values).all(|(x, y)| x.equals(y))
}

/// A torsion normalization taken from outside the crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaSeed {
    pub statement: String,
    pub value: u64,
}

/// lambda of every real irreducible of one group, valued mod `modulus`, with
/// the provenance of each entry and the list of seed values the computed
/// entries were propagated from.
#[derive(Debug)]
pub struct LambdaTable {
    pub group_order: usize,
    pub modulus: u64,
    /// one value per real irreducible, basis order
    pub values: Vec<u64>,
    pub provenance: Vec<Provenance>,
    pub seeds: Vec<LambdaSeed>,
}

/// lambda table of the binary dihedral group of order 12 (the norm-one units
/// of the order ramified at 3). Torsion lives on the cyclic subgroup of order
/// 3 and everything is computed from eigenvalues there.
pub fn lambda_table_order_twelve(t: &CharacterTable, b: &RealBasis) -> Result<LambdaTable> {
    let g = &t.group;
    if g.order != 12 || g.exponent() != 12 || g.is_abelian() || b.group_order != 12 {
        return Err(Error::WrongGroup);
    }
    let class3 = (0..t.class_count())
        .find(|&k| t.data.orders[k] == 3)
        .ok_or(Error::WrongGroup)?;
    let mut values = Vec::new();
    for ri in &b.irreducibles {
        values.push(lambda_at_class(t, &ri.character, class3)?);
    }
    // additivity check against the regular representation
    let reg = decompose_real(t, b, &t.regular())?;
    let direct = lambda_at_class(t, &t.regular(), class3)?;
    let combined: BigInt = reg
        .coeffs
        .iter()
        .zip(&values)
        .map(|(c, &v)| c * BigInt::from(v))
        .sum();
    if combined.mod_floor(&BigInt::from(3)) != BigInt::from(direct) {
        return Err(Error::Invariant("lambda is not additive on the regular class".into()));
    }
    let provenance = vec![Provenance::Computed; values.len()];
    Ok(LambdaTable { group_order: 12, modulus: 3, values, provenance, seeds: Vec::new() })
}

/// lambda table of the binary tetrahedral group of order 24 (the norm-one
/// units of the order ramified at 2), valued mod 8. Two entries rest on given
/// normalizations: the quaternionic 4-dimensional representation has lambda
/// equal to 1 (it generates the cyclic degree-4 cohomology), and the
/// conjugation representation on the trace-zero part plus a trivial summand
/// has lambda 2. The remaining entries, and the mod-4 shadow of every entry,
/// are computed from restrictions.
pub fn lambda_table_order_twentyfour(t: &CharacterTable, b: &RealBasis) -> Result<LambdaTable> {
    let g = &t.group;
    if g.order != 24 || t.dims() != vec![1, 1, 1, 2, 2, 2, 3] || b.group_order != 24 {
        return Err(Error::WrongGroup);
    }
    // the 2-Sylow subgroup is normal: all elements of order dividing 4
    let sylow: Vec<usize> = (0..24).filter(|&x| 4 % g.element_order(x) == 0).collect();
    if sylow.len() != 8 {
        return Err(Error::WrongGroup);
    }
    let sub = g.subgroup(&sylow)?;
    let ht = character_table(&sub.h)?;
    let hb = real_irreducibles(&ht)?;
    let h_quat = hb
        .irreducibles
        .iter()
        .find(|ri| ri.endo_degree == 4)
        .ok_or(Error::WrongGroup)?;

    let seeds = vec![
        LambdaSeed {
            statement: "lambda of the quaternionic 4-dimensional representation is 1".into(),
            value: 1,
        },
        LambdaSeed {
            statement: "lambda of the 4-dimensional conjugation representation is 2".into(),
            value: 2,
        },
    ];

    let mut values = Vec::new();
    let mut provenance = Vec::new();
    for ri in &b.irreducibles {
        let res = restrict(t, &sub, &ht, &ri.character)?;
        let (v, pr) = match (ri.dim, ri.endo_degree) {
            // trivial: restricts to the trivial class
            (1, 1) => (0, Provenance::Computed),
            // sum of the two nontrivial lines: restricts to 2 over the 2-Sylow,
            // where all torsion is detected (transfer of an index-3 inclusion)
            (2, 2) => {
                if !same_character(&res, &ht.trivial().scale(2)) {
                    return Err(Error::Invariant("line pair must restrict trivially".into()));
                }
                (0, Provenance::Computed)
            }
            // trace-zero conjugation summand: plus a trivial line it is the
            // regular class of the 2-Sylow minus its quaternionic class, so
            // its lambda is the second seed
            (3, 1) => {
                let lhs = res.add(&ht.trivial())?;
                let rhs = ht.regular().sub(&h_quat.character)?;
                if !same_character(&lhs, &rhs) {
                    return Err(Error::Invariant(
                        "conjugation summand restriction mismatch".into(),
                    ));
                }
                (seeds[1].value, Provenance::Given)
            }
            // quaternionic class: the first seed outright
            (4, 4) => {
                if !same_character(&res, &h_quat.character) {
                    return Err(Error::Invariant("quaternionic restriction mismatch".into()));
                }
                (seeds[0].value, Provenance::Given)
            }
            // conjugate pair of 2-dimensional classes: restricts to the same
            // class as the quaternionic one, hence the same lambda
            (4, 2) => {
                if !same_character(&res, &h_quat.character) {
                    return Err(Error::Invariant("pair restriction mismatch".into()));
                }
                (seeds[0].value, Provenance::Given)
            }
            _ => return Err(Error::WrongGroup),
        };
        values.push(v);
        provenance.push(pr);
    }

    // every entry must agree mod 4 with the cyclic detector of order 4
    let class4 = (0..t.class_count())
        .find(|&k| t.data.orders[k] == 4)
        .ok_or(Error::WrongGroup)?;
    for (ri, &v) in b.irreducibles.iter().zip(&values) {
        if lambda_at_class(t, &ri.character, class4)? != v % 4 {
            return Err(Error::Invariant("mod-4 detector disagrees with the table".into()));
        }
    }

    Ok(LambdaTable { group_order: 24, modulus: 8, values, provenance, seeds })
}

/// lambda of a virtual class, by additivity over the table.
pub fn lambda_on_group(table: &LambdaTable, b: &RealBasis, w: &RealRepClass) -> Result<u64> {
    if table.group_order != w.group_order || table.group_order != b.group_order {
        return Err(Error::WrongGroup);
    }
    if table.values.len() != w.coeffs.len() {
        return Err(Error::IncompleteTable);
    }
    let total: BigInt = w
        .coeffs
        .iter()
        .zip(&table.values)
        .map(|(c, &v)| c * BigInt::from(v))
        .sum();
    let m = BigInt::from(table.modulus);
    Ok(u64::try_from(total.mod_floor(&m)).expect("reduced"))
}

/// k-th Chern character coefficient s_k(c_1..c_k)/k! of a complex
/// representation of C_p given by its multipliers, valued in Z/p. Integral
/// precisely for k < p, hence the range restriction.
pub fn chern_character_on_multipliers(p: u64, k: u32, multipliers: &[u64]) -> Result<u64> {
    if !fp::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 || k as u64 >= p {
        return Err(Error::IndexOutOfRange(format!(
            "chern character coefficient {k} is not p-integral for p = {p}"
        )));
    }
    let mut fact = 1u64;
    for i in 2..=k as u64 {
        fact = fact * i % p;
    }
    let inv_fact = fp::inv_mod(fact, p).ok_or(Error::NotPrime(p))?;
    let mut acc = 0u64;
    for &m in multipliers {
        acc = fp::add_mod(acc, fp::pow_mod(m % p, k as u64, p), p);
    }
    Ok(fp::mul_mod(acc, inv_fact, p))
}

/// Same coefficient for a real (virtual) class at a conjugacy class of order
/// exactly p, halving because complexification doubles every even component.
pub fn chern_character_at_class(
    t: &CharacterTable,
    w: &Character,
    class: usize,
    k: u32,
    p: u64,
) -> Result<u64> {
    if !fp::is_prime(p) || p == 2 {
        return Err(Error::NotPrime(p));
    }
    if t.data.orders[class] as u64 != p {
        return Err(Error::IndexOutOfRange(format!(
            "detector class has order {}, wanted {p}",
            t.data.orders[class]
        )));
    }
    if k == 0 || k % 2 == 1 || k as u64 >= p {
        return Err(Error::IndexOutOfRange(format!(
            "real chern character coefficient needs even 0 < k < p, got k = {k}"
        )));
    }
    let mults = eigenvalue_multiplicities(t, w, class)?;
    let mut fact = 1u64;
    for i in 2..=k as u64 {
        fact = fact * i % p;
    }
    let inv_fact = fp::inv_mod(fact, p).expect("k! coprime to p");
    let inv2 = fp::inv_mod(2, p).expect("p odd");
    let pb = BigInt::from(p);
    let mut acc = 0u64;
    for (tt, n) in mults.iter().enumerate() {
        let n = u64::try_from(n.mod_floor(&pb)).expect("reduced");
        let term = fp::mul_mod(n, fp::pow_mod(tt as u64, k as u64, p), p);
        acc = fp::add_mod(acc, term, p);
    }
    Ok(fp::mul_mod(fp::mul_mod(acc, inv_fact, p), inv2, p))
}

const SW_DIM: usize = 7;
const SW_DEGREES: [u32; SW_DIM] = [0, 1, 1, 2, 2, 3, 4];
const SW_NAMES: [&str; SW_DIM] = ["1", "a", "b", "a^2", "ab", "a^2b", "P"];

/// An element of the mod-2 cohomology of the quaternion group in degrees at
/// most 4, over the basis 1, a, b, a^2, ab, a^2b, P with the relations
/// b^2 = a^2 + ab, a^3 = 0, and everything of degree above 4 truncated away.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwClass {
    pub coeffs: [u8; SW_DIM],
}

/// basis product table: index of the product, or None when it is zero
/// (relations or truncation)
fn sw_basis_mul(i: usize, j: usize) -> Vec<usize> {
    if i > j {
        return sw_basis_mul(j, i);
    }
    match (i, j) {
        (0, j) => vec![j],
        (1, 1) => vec![3],          // a*a = a^2
        (1, 2) => vec![4],          // a*b = ab
        (2, 2) => vec![3, 4],       // b*b = a^2 + ab
        (1, 4) | (2, 3) | (2, 4) => vec![5], // a*ab = b*a^2 = b*ab = a^2b
        (1, 3) => vec![],           // a*a^2 = 0
        _ => vec![],                // degree > 4 truncated, higher products of a, b vanish
    }
}

impl SwClass {
    pub fn one() -> SwClass {
        let mut coeffs = [0u8; SW_DIM];
        coeffs[0] = 1;
        SwClass { coeffs }
    }

    pub fn from_coeffs(coeffs: [u8; SW_DIM]) -> SwClass {
        let mut c = coeffs;
        for x in c.iter_mut() {
            *x %= 2;
        }
        SwClass { coeffs: c }
    }

    pub fn add(&self, other: &SwClass) -> SwClass {
        let mut coeffs = [0u8; SW_DIM];
        for i in 0..SW_DIM {
            coeffs[i] = (self.coeffs[i] + other.coeffs[i]) % 2;
        }
        SwClass { coeffs }
    }

    pub fn mul(&self, other: &SwClass) -> SwClass {
        let mut coeffs = [0u8; SW_DIM];
        for i in 0..SW_DIM {
            if self.coeffs[i] == 0 {
                continue;
            }
            for j in 0..SW_DIM {
                if other.coeffs[j] == 0 {
                    continue;
                }
                for k in sw_basis_mul(i, j) {
                    coeffs[k] ^= 1;
                }
            }
        }
        SwClass { coeffs }
    }

    /// Inverse of a class with constant term 1, via the finite Neumann series
    /// of its nilpotent part.
    pub fn inverse(&self) -> Result<SwClass> {
        if self.coeffs[0] != 1 {
            return Err(Error::NotUnit);
        }
        let nu = self.add(&SwClass::one());
        let mut inv = SwClass::one();
        let mut pow = SwClass::one();
        for _ in 0..4 {
            pow = pow.mul(&nu);
            inv = inv.add(&pow);
        }
        Ok(inv)
    }

    /// Power with any integer exponent. Squaring kills the nilpotent part in
    /// two steps, so the unit group has exponent 4 and e only matters mod 8.
    pub fn pow(&self, e: &BigInt) -> SwClass {
        let mut k = u64::try_from(e.mod_floor(&BigInt::from(8))).expect("reduced");
        let mut acc = SwClass::one();
        let mut sq = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            k >>= 1;
        }
        acc
    }

    pub fn component(&self, degree: u32) -> Vec<&'static str> {
        (0..SW_DIM)
            .filter(|&i| SW_DEGREES[i] == degree && self.coeffs[i] == 1)
            .map(|i| SW_NAMES[i])
            .collect()
    }

    pub fn pretty(&self) -> String {
        let terms: Vec<&str> = (0..SW_DIM)
            .filter(|&i| self.coeffs[i] == 1)
            .map(|i| SW_NAMES[i])
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Total Stiefel-Whitney class of every real irreducible of the quaternion
/// group, basis order. The degree-1 generators a and b are dual to the first
/// two order-4 conjugacy classes in class order.
#[derive(Debug)]
pub struct SwTable {
    pub group_order: usize,
    pub classes: Vec<SwClass>,
}

pub fn sw_table_q8(t: &CharacterTable, b: &RealBasis) -> Result<SwTable> {
    let g = &t.group;
    let one_invol = (0..g.order).filter(|&x| g.element_order(x) == 2).count() == 1;
    if g.order != 8 || t.dims() != vec![1, 1, 1, 1, 2] || !one_invol || b.group_order != 8 {
        return Err(Error::WrongGroup);
    }
    let c4: Vec<usize> = (0..t.class_count()).filter(|&k| t.data.orders[k] == 4).collect();
    if c4.len() != 3 {
        return Err(Error::WrongGroup);
    }
    let minus_one = |v: &crate::cyclotomic::CyclotomicValue| -> Result<bool> {
        match v.as_integer() {
            Some(n) if n == BigInt::one() => Ok(false),
            Some(n) if n == -BigInt::one() => Ok(true),
            _ => Err(Error::Invariant("line character value must be a sign".into())),
        }
    };
    let mut classes = Vec::new();
    for ri in &b.irreducibles {
        let cls = match (ri.dim, ri.endo_degree) {
            (1, 1) => {
                // w_1 of a line is its own sign character, written against the
                // basis dual to the first two order-4 classes
                let mut coeffs = [0u8; SW_DIM];
                coeffs[0] = 1;
                coeffs[1] = minus_one(&ri.character.values[c4[0]])? as u8;
                coeffs[2] = minus_one(&ri.character.values[c4[1]])? as u8;
                SwClass::from_coeffs(coeffs)
            }
            (4, 4) => {
                // c_1 = 0 and the top class is the Euler class, c_2 mod 2
                let mut coeffs = [0u8; SW_DIM];
                coeffs[0] = 1;
                coeffs[6] = 1;
                SwClass::from_coeffs(coeffs)
            }
            _ => return Err(Error::WrongGroup),
        };
        classes.push(cls);
    }
    Ok(SwTable { group_order: 8, classes })
}

/// Total Stiefel-Whitney class of a virtual class, by multiplicativity.
pub fn total_sw(b: &RealBasis, table: &SwTable, w: &RealRepClass) -> Result<SwClass> {
    if table.group_order != w.group_order || table.group_order != b.group_order {
        return Err(Error::WrongGroup);
    }
    if table.classes.len() != w.coeffs.len() {
        return Err(Error::IncompleteTable);
    }
    let mut acc = SwClass::one();
    for (c, cls) in w.coeffs.iter().zip(&table.classes) {
        let factor = if c.is_negative() { cls.inverse()?.pow(&-c.clone()) } else { cls.pow(c) };
        acc = acc.mul(&factor);
    }
    Ok(acc)
}

/// Outcome of the Wu-type congruence check for an odd prime p = 2r + 1 and
/// block size n: q_n, the symmetrization of t^r over rn variables, is congruent
/// to (-1)^{n(r+1)} r p_rn modulo the ideal of lower Pontryagin classes; here
/// everything is written against elementary symmetric polynomials e_i = p_i.
#[derive(Debug)]
pub struct WuReport {
    pub p: u64,
    pub n: u32,
    pub r: u64,
    pub nvars: usize,
    /// q_n written over e_1..e_nvars, coefficients mod p; exponent vectors index e
    pub expansion: BTreeMap<Vec<u32>, u64>,
    /// q_n with e_1..e_{nvars-1} killed
    pub reduced: BTreeMap<Vec<u32>, u64>,
    /// (-1)^{n(r+1)} r e_nvars
    pub target: BTreeMap<Vec<u32>, u64>,
    pub holds: bool,
}

fn subsets_of_size(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(start: usize, m: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, n, cur, out);
            cur.pop();
        }
    }
    rec(0, m, n, &mut cur, &mut out);
    out
}

pub fn wu_congruence_check(p: u64, n: u32) -> Result<WuReport> {
    if !fp::is_prime(p) || p == 2 {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::IndexOutOfRange("block size must be positive".into()));
    }
    let r = (p - 1) / 2;
    let m = (r as usize) * (n as usize);
    if m > 8 {
        return Err(Error::TooManyVariables(format!(
            "wu check needs {m} variables, capped at 8"
        )));
    }
    // q_n = e_n(t_1^r, ..., t_m^r): one monomial per n-subset
    let mut q = SymPoly::zero(m);
    for s in subsets_of_size(m, n as usize) {
        let mut exps = vec![0u32; m];
        for i in s {
            exps[i] = r as u32;
        }
        q = q.add(&SymPoly::monomial(m, exps, BigRational::one()));
    }
    let in_e = sym_to_elementary(&q)?;
    let expansion = in_e.coeffs_mod(p)?;
    let lower: Vec<usize> = (0..m - 1).collect();
    let reduced = in_e.kill_vars(&lower).coeffs_mod(p)?;
    let sign_odd = (n as u64 * (r + 1)) % 2 == 1;
    let coeff = if sign_odd { BigRational::from(BigInt::from(-(r as i64))) } else {
        BigRational::from(BigInt::from(r as i64))
    };
    let target_poly = SymPoly::var(m, m - 1).scale(&coeff);
    let target = target_poly.coeffs_mod(p)?;
    let holds = reduced == target;
    Ok(WuReport { p, n, r, nvars: m, expansion, reduced, target, holds })
}

/// Convenience: the e-basis expansion map rendered as readable monomials, for
/// dumps ("3 e2 e4^2" style).
pub fn render_e_expansion(map: &BTreeMap<Vec<u32>, u64>) -> Vec<String> {
    map.iter()
        .map(|(exps, c)| {
            let mut s = format!("{c}");
            for (i, &e) in exps.iter().enumerate() {
                if e == 1 {
                    s.push_str(&format!(" e{}", i + 1));
                } else if e > 1 {
                    s.push_str(&format!(" e{}^{}", i + 1, e));
                }
            }
            s
        })
        .collect()
}

/// Recognizers used by dump surfaces: returns the stable name of each real
/// irreducible of the order-8 and order-24 groups, by dimension profile.
pub fn real_basis_labels(g: &FiniteGroup, b: &RealBasis) -> Result<Vec<String>> {
    let mut labels = Vec::new();
    for ri in &b.irreducibles {
        let l = match (g.order, ri.dim, ri.endo_degree) {
            (_, 1, 1) => "line".to_string(),
            (8, 4, 4) | (24, 4, 4) => "quaternionic".to_string(),
            (24, 2, 2) | (12, 2, 2) => "line pair".to_string(),
            (24, 3, 1) => "trace zero".to_string(),
            (12, 2, 1) => "plane".to_string(),
            (12, 4, 4) => "quaternionic".to_string(),
            (o, d, e) => format!("dim {d} endo {e} of order {o}"),
        };
        labels.push(l);
    }
    Ok(labels)
}
