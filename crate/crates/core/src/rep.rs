//! Exact complex character tables, real representation rings, restriction and
//! induction, determinant characters, and conjugation representations of the
//! quaternionic orders.
//!
//! Tables are computed by the Burnside-Dixon method: the class-sum matrices
//! are simultaneously diagonalized over F_q for a prime q = 1 mod exponent(G),
//! degrees are recovered from orthogonality mod q, and values are lifted to
//! exact cyclotomic integers by discrete Fourier inversion of the eigenvalue
//! multiplicities. Row orthogonality of the lifted table is then verified
//! exactly before the table is returned.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cyclotomic::CyclotomicValue;
use crate::error::{Error, Result};
use crate::fp::{self, FqMat};
use crate::group::{FiniteGroup, Subgroup};
use crate::lattice::{check_stability, Lattice};
use crate::matrix::{solve_left, IntMatrix};
use crate::order::StructOrder;

pub const MAX_TABLE_ORDER: usize = 512;

/// Conjugacy-class bookkeeping shared by every operation on one group.
#[derive(Clone, Debug)]
pub struct ClassData {
    pub classes: Vec<Vec<usize>>,
    /// class index of each element
    pub class_of: Vec<usize>,
    /// minimal element of each class
    pub reps: Vec<usize>,
    pub sizes: Vec<usize>,
    /// element order of the class representative
    pub orders: Vec<usize>,
    /// class index of the inverses
    pub inverse: Vec<usize>,
    /// power[c][s] = class of reps[c]^s for s in 0..orders[c]
    pub power: Vec<Vec<usize>>,
    pub ident_class: usize,
}

fn class_data(g: &FiniteGroup) -> ClassData {
    let classes = g.conjugacy_classes();
    let class_of = g.class_of(&classes);
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
    let orders: Vec<usize> = reps.iter().map(|&r| g.element_order(r)).collect();
    let inverse: Vec<usize> = reps.iter().map(|&r| class_of[g.inv(r)]).collect();
    let power: Vec<Vec<usize>> = reps
        .iter()
        .zip(&orders)
        .map(|(&r, &o)| (0..o).map(|s| class_of[g.pow(r, s as i64)]).collect())
        .collect();
    let ident_class = class_of[g.identity];
    ClassData { classes, class_of, reps, sizes, orders, inverse, power, ident_class }
}

/// An exact class function: one cyclotomic value per conjugacy class, at
/// conductor exponent(G). Virtual characters are allowed everywhere.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    /// |G|, kept to catch cross-group mixups early
    pub group_order: usize,
    pub values: Vec<CyclotomicValue>,
}

impl Character {
    pub fn dim(&self, t: &CharacterTable) -> Result<BigInt> {
        self.values[t.data.ident_class]
            .as_integer()
            .ok_or_else(|| Error::Invariant("dimension must be a rational integer".into()))
    }

    pub fn add(&self, other: &Character) -> Result<Character> {
        if self.group_order != other.group_order {
            return Err(Error::MixedGroups);
        }
        let values =
            self.values.iter().zip(&other.values).map(|(a, b)| a.add(b)).collect();
        Ok(Character { group_order: self.group_order, values })
    }

    pub fn sub(&self, other: &Character) -> Result<Character> {
        if self.group_order != other.group_order {
            return Err(Error::MixedGroups);
        }
        let values =
            self.values.iter().zip(&other.values).map(|(a, b)| a.sub(b)).collect();
        Ok(Character { group_order: self.group_order, values })
    }

    /// Tensor product: pointwise multiplication of values.
    pub fn tensor(&self, other: &Character) -> Result<Character> {
        if self.group_order != other.group_order {
            return Err(Error::MixedGroups);
        }
        let values =
            self.values.iter().zip(&other.values).map(|(a, b)| a.mul(b)).collect();
        Ok(Character { group_order: self.group_order, values })
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> Character {
        let c = c.into();
        Character {
            group_order: self.group_order,
            values: self.values.iter().map(|v| v.scale(&c)).collect(),
        }
    }

    pub fn conj(&self) -> Character {
        Character {
            group_order: self.group_order,
            values: self.values.iter().map(CyclotomicValue::conj).collect(),
        }
    }
}

#[derive(Debug)]
pub struct CharacterTable {
    pub group: FiniteGroup,
    pub exponent: usize,
    pub modulus: u64,
    pub data: ClassData,
    /// sorted by (dimension, lexicographic canonical values)
    pub irreducibles: Vec<Character>,
}

impl CharacterTable {
    pub fn class_count(&self) -> usize {
        self.data.classes.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.irreducibles
            .iter()
            .map(|chi| {
                let d = chi.values[self.data.ident_class].as_integer().expect("verified");
                usize::try_from(d).expect("verified positive")
            })
            .collect()
    }

    pub fn trivial(&self) -> Character {
        let one = CyclotomicValue::from_int(self.exponent, 1);
        Character {
            group_order: self.group.order,
            values: vec![one; self.class_count()],
        }
    }

    /// Character of the regular representation: |G| at 1, zero elsewhere.
    pub fn regular(&self) -> Character {
        let mut values = vec![CyclotomicValue::zero(self.exponent); self.class_count()];
        values[self.data.ident_class] =
            CyclotomicValue::from_int(self.exponent, self.group.order as i64);
        Character { group_order: self.group.order, values }
    }

    fn check(&self, w: &Character) -> Result<()> {
        if w.group_order != self.group.order || w.values.len() != self.class_count() {
            return Err(Error::MixedGroups);
        }
        Ok(())
    }
}

/// Build a class function from per-element values, verifying constancy on
/// conjugacy classes.
pub fn character_from_element_values(
    t: &CharacterTable,
    vals: &[CyclotomicValue],
) -> Result<Character> {
    if vals.len() != t.group.order {
        return Err(Error::DimensionMismatch(format!(
            "{} values for a group of order {}",
            vals.len(),
            t.group.order
        )));
    }
    for class in &t.data.classes {
        for &x in &class[1..] {
            if !vals[x].equals(&vals[class[0]]) {
                return Err(Error::NotAClassFunction);
            }
        }
    }
    let values = t.data.reps.iter().map(|&r| vals[r].lift(t.exponent)).collect();
    Ok(Character { group_order: t.group.order, values })
}

/// Smallest prime q = 1 mod exponent with q^2 > 4|G| and q > #classes; the
/// first bound makes degrees recoverable from their residues, the second is
/// what the charpoly recursion needs.
fn choose_modulus(order: usize, exponent: usize, classes: usize) -> u64 {
    let mut q = exponent as u64 + 1;
    loop {
        if fp::is_prime(q)
            && (q as u128) * (q as u128) > 4 * order as u128
            && q > classes as u64
        {
            return q;
        }
        q += exponent as u64;
    }
}

/// (M_i)_{jk} = #{x in C_i : x^{-1} z_k in C_j}, the matrix of the class sum
/// K_i on the center; central characters are its common eigenvectors.
fn class_matrix(g: &FiniteGroup, data: &ClassData, i: usize, q: u64) -> FqMat {
    let r = data.classes.len();
    let mut m = FqMat::zero(q, r, r);
    for (k, &zk) in data.reps.iter().enumerate() {
        for &x in &data.classes[i] {
            let j = data.class_of[g.mul(g.inv(x), zk)];
            let v = fp::add_mod(m.get(j, k), 1, q);
            m.set(j, k, v);
        }
    }
    m
}

/// A subspace of F_q^r in reduced column-echelon form: column t has a 1 at
/// pivot row pivots[t] and zeros at every other pivot row, so coordinates of
/// any member are read off at the pivot rows.
struct Space {
    cols: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

fn column_echelon(q: u64, raw: Vec<Vec<u64>>) -> Space {
    let mut cols: Vec<Vec<u64>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for mut v in raw {
        for (t, &pr) in pivots.iter().enumerate() {
            let c = v[pr];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(&cols[t]) {
                    *x = fp::sub_mod(*x, fp::mul_mod(c, *y, q), q);
                }
            }
        }
        let Some(pr) = v.iter().position(|&x| x != 0) else { continue };
        let inv = fp::inv_mod(v[pr], q).expect("prime modulus");
        for x in v.iter_mut() {
            *x = fp::mul_mod(*x, inv, q);
        }
        for col in cols.iter_mut() {
            let c = col[pr];
            if c != 0 {
                for (x, y) in col.iter_mut().zip(&v) {
                    *x = fp::sub_mod(*x, fp::mul_mod(c, *y, q), q);
                }
            }
        }
        cols.push(v);
        pivots.push(pr);
    }
    let mut order: Vec<usize> = (0..pivots.len()).collect();
    order.sort_by_key(|&t| pivots[t]);
    Space {
        cols: order.iter().map(|&t| cols[t].clone()).collect(),
        pivots: order.iter().map(|&t| pivots[t]).collect(),
    }
}

/// Split sp into the eigenspaces of m (which must commute with everything
/// that carved sp out, hence preserve it).
fn eigensplit(q: u64, m: &FqMat, sp: &Space) -> Result<Vec<Space>> {
    let s = sp.cols.len();
    let images: Vec<Vec<u64>> = sp.cols.iter().map(|b| m.apply(b)).collect();
    let mut a = FqMat::zero(q, s, s);
    for (u, w) in images.iter().enumerate() {
        for t in 0..s {
            a.set(t, u, w[sp.pivots[t]]);
        }
    }
    // the subspace must really be invariant: the image of each basis column
    // has to be reproduced exactly by its pivot-row coordinates
    let r = sp.cols[0].len();
    for (u, w) in images.iter().enumerate() {
        for row in 0..r {
            let mut acc = 0u64;
            for t in 0..s {
                acc = fp::add_mod(acc, fp::mul_mod(a.get(t, u), sp.cols[t][row], q), q);
            }
            if acc != w[row] {
                return Err(Error::Invariant("class matrix left an eigenspace".into()));
            }
        }
    }
    let roots = fp::poly_roots(&a.charpoly(), q);
    let mut out = Vec::new();
    let mut total = 0;
    for (lam, _) in roots {
        let mut shifted = a.clone();
        for t in 0..s {
            let v = fp::sub_mod(shifted.get(t, t), lam, q);
            shifted.set(t, t, v);
        }
        let kernel = shifted.kernel();
        if kernel.is_empty() {
            continue;
        }
        let lifted: Vec<Vec<u64>> = kernel
            .iter()
            .map(|kv| {
                let mut v = vec![0u64; r];
                for (u, &c) in kv.iter().enumerate() {
                    if c != 0 {
                        for (x, y) in v.iter_mut().zip(&sp.cols[u]) {
                            *x = fp::add_mod(*x, fp::mul_mod(c, *y, q), q);
                        }
                    }
                }
                v
            })
            .collect();
        let sub = column_echelon(q, lifted);
        total += sub.cols.len();
        out.push(sub);
    }
    if total != s {
        return Err(Error::Invariant("class matrix failed to diagonalize".into()));
    }
    Ok(out)
}

pub fn character_table(g: &FiniteGroup) -> Result<CharacterTable> {
    if g.order > MAX_TABLE_ORDER {
        return Err(Error::TooLarge(format!(
            "order {} exceeds the character-table bound {MAX_TABLE_ORDER}",
            g.order
        )));
    }
    let data = class_data(g);
    let r = data.classes.len();
    let exponent = g.exponent();
    let q = choose_modulus(g.order, exponent, r);

    // simultaneous eigenspaces of the class-sum matrices over F_q
    let full = column_echelon(q, (0..r).map(|i| {
        let mut e = vec![0u64; r];
        e[i] = 1;
        e
    }).collect());
    let mut spaces = vec![full];
    for ci in 0..r {
        if ci == data.ident_class {
            continue;
        }
        if spaces.iter().all(|s| s.cols.len() == 1) {
            break;
        }
        let m = class_matrix(g, &data, ci, q);
        let mut next = Vec::new();
        for sp in spaces {
            if sp.cols.len() == 1 {
                next.push(sp);
            } else {
                next.extend(eigensplit(q, &m, &sp)?);
            }
        }
        spaces = next;
    }
    if spaces.len() != r || spaces.iter().any(|s| s.cols.len() != 1) {
        return Err(Error::Invariant("class matrices failed to separate characters".into()));
    }

    let inv = |a: u64| fp::inv_mod(a % q, q).ok_or(Error::Invariant("modulus divides |G| data".into()));
    let zeta_q = fp::primitive_root(q);
    let mut table = Vec::with_capacity(r);
    for sp in &spaces {
        let v = &sp.cols[0];
        // normalize to a central character: omega(identity class) = 1
        let scale = inv(v[data.ident_class])?;
        let omega: Vec<u64> = v.iter().map(|&x| fp::mul_mod(x, scale, q)).collect();
        // degree from first orthogonality: d^2 sum_k omega_k omega_{k*}/|C_k| = |G|
        let mut s2 = 0u64;
        for k in 0..r {
            let term = fp::mul_mod(omega[k], omega[data.inverse[k]], q);
            s2 = fp::add_mod(s2, fp::mul_mod(term, inv(data.sizes[k] as u64)?, q), q);
        }
        let d2 = fp::mul_mod(g.order as u64 % q, inv(s2)?, q);
        let d = fp::sqrt_mod(d2, q)
            .ok_or_else(|| Error::Invariant("degree residue is not a square".into()))?;
        // modular character values
        let mc: Vec<u64> = (0..r)
            .map(|k| Ok(fp::mul_mod(fp::mul_mod(d, omega[k], q), inv(data.sizes[k] as u64)?, q)))
            .collect::<Result<_>>()?;
        // lift each value by Fourier-inverting the eigenvalue multiplicities
        let mut values = Vec::with_capacity(r);
        for k in 0..r {
            let o = data.orders[k] as u64;
            let theta = fp::pow_mod(zeta_q, (q - 1) / o, q);
            let theta_inv = inv(theta)?;
            let o_inv = inv(o)?;
            let mut value = CyclotomicValue::zero(exponent);
            let mut total = 0u64;
            for t in 0..o {
                let mut acc = 0u64;
                for s in 0..o {
                    let w = fp::pow_mod(theta_inv, s * t % o, q);
                    acc = fp::add_mod(acc, fp::mul_mod(mc[data.power[k][s as usize]], w, q), q);
                }
                let mult = fp::mul_mod(acc, o_inv, q);
                total += mult;
                if mult != 0 {
                    let zp = CyclotomicValue::zeta_pow(
                        exponent,
                        (t as i64) * (exponent as u64 / o) as i64,
                    );
                    value = value.add(&zp.scale(&BigInt::from(mult)));
                }
            }
            // multiplicities of a degree-d restriction must sum to d
            if total != d {
                return Err(Error::Invariant("eigenvalue multiplicities do not sum to the degree".into()));
            }
            values.push(value);
        }
        table.push(Character { group_order: g.order, values });
    }

    // deterministic order: by degree, then lexicographic canonical values
    let sort_key = |chi: &Character| -> (BigInt, Vec<Vec<BigInt>>) {
        let d = chi.values[data.ident_class].as_integer().expect("degree is integral");
        (d, chi.values.iter().map(CyclotomicValue::canonical).collect())
    };
    table.sort_by_key(sort_key);

    let t = CharacterTable { group: g.clone(), exponent, modulus: q, data, irreducibles: table };

    // exit checks: degree census and exact row orthogonality
    let dims = t.dims();
    if dims.iter().map(|d| d * d).sum::<usize>() != g.order {
        return Err(Error::Invariant("degree squares do not sum to the group order".into()));
    }
    for (a, ca) in t.irreducibles.iter().enumerate() {
        for (b, cb) in t.irreducibles.iter().enumerate().skip(a) {
            let mut acc = CyclotomicValue::zero(t.exponent);
            for k in 0..t.class_count() {
                let term = ca.values[k].mul(&cb.values[k].conj());
                acc = acc.add(&term.scale(&BigInt::from(t.data.sizes[k] as i64)));
            }
            let expected = if a == b { g.order as i64 } else { 0 };
            if !acc.equals(&CyclotomicValue::from_int(t.exponent, expected)) {
                return Err(Error::Invariant("row orthogonality failed".into()));
            }
        }
    }
    Ok(t)
}

/// Exact inner product <a, b> = (1/|G|) sum |C_k| a_k conj(b_k); errors when
/// the result is not a rational integer.
pub fn inner_product(t: &CharacterTable, a: &Character, b: &Character) -> Result<BigInt> {
    t.check(a)?;
    t.check(b)?;
    let mut acc = CyclotomicValue::zero(t.exponent);
    for k in 0..t.class_count() {
        let term = a.values[k].mul(&b.values[k].conj());
        acc = acc.add(&term.scale(&BigInt::from(t.data.sizes[k] as i64)));
    }
    let n = acc.as_integer().ok_or(Error::NoDecomposition)?;
    let order = BigInt::from(t.group.order as i64);
    if (&n % &order).is_zero() {
        Ok(n / order)
    } else {
        Err(Error::NoDecomposition)
    }
}

/// Multiplicities of w over the complex irreducibles, with exact reassembly.
pub fn decompose(t: &CharacterTable, w: &Character) -> Result<Vec<BigInt>> {
    t.check(w)?;
    let mults: Vec<BigInt> = t
        .irreducibles
        .iter()
        .map(|chi| inner_product(t, w, chi))
        .collect::<Result<_>>()?;
    let mut rebuilt = Character {
        group_order: w.group_order,
        values: vec![CyclotomicValue::zero(t.exponent); t.class_count()],
    };
    for (m, chi) in mults.iter().zip(&t.irreducibles) {
        if !m.is_zero() {
            rebuilt = rebuilt.add(&chi.scale(m.clone()))?;
        }
    }
    for k in 0..t.class_count() {
        if !rebuilt.values[k].equals(&w.values[k]) {
            return Err(Error::NoDecomposition);
        }
    }
    Ok(mults)
}

/// Frobenius-Schur indicator (1/|G|) sum chi(g^2), always -1, 0, or +1.
pub fn fs_indicator(t: &CharacterTable, chi: &Character) -> Result<i64> {
    t.check(chi)?;
    let mut acc = CyclotomicValue::zero(t.exponent);
    for k in 0..t.class_count() {
        let sq = t.data.power[k][2 % t.data.orders[k]];
        acc = acc.add(&chi.values[sq].scale(&BigInt::from(t.data.sizes[k] as i64)));
    }
    let n = acc.as_integer().ok_or(Error::NoDecomposition)?;
    let order = BigInt::from(t.group.order as i64);
    if !(&n % &order).is_zero() {
        return Err(Error::Invariant("indicator sum not divisible by |G|".into()));
    }
    let ind = n / order;
    match i64::try_from(ind) {
        Ok(v @ (-1 | 0 | 1)) => Ok(v),
        _ => Err(Error::Invariant("indicator outside {-1,0,1}".into())),
    }
}

/// One basis element of RO(G).
#[derive(Clone, Debug)]
pub struct RealIrreducible {
    /// Frobenius-Schur indicator of the complex constituent(s)
    pub indicator: i64,
    /// indices into the complex table: one entry, or a conjugate pair
    pub constituents: Vec<usize>,
    /// character of the underlying real representation
    pub character: Character,
    /// real dimension
    pub dim: usize,
    /// dimension of the endomorphism division algebra: 1, 2, or 4
    pub endo_degree: usize,
}

#[derive(Debug)]
pub struct RealBasis {
    pub group_order: usize,
    /// indicator per complex irreducible, table order
    pub indicators: Vec<i64>,
    /// sorted by (real dimension, first complex constituent)
    pub irreducibles: Vec<RealIrreducible>,
}

pub fn real_irreducibles(t: &CharacterTable) -> Result<RealBasis> {
    let indicators: Vec<i64> = t
        .irreducibles
        .iter()
        .map(|chi| fs_indicator(t, chi))
        .collect::<Result<_>>()?;
    let dims = t.dims();
    let mut used = vec![false; t.irreducibles.len()];
    let mut out = Vec::new();
    for (i, chi) in t.irreducibles.iter().enumerate() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let item = match indicators[i] {
            1 => RealIrreducible {
                indicator: 1,
                constituents: vec![i],
                character: chi.clone(),
                dim: dims[i],
                endo_degree: 1,
            },
            -1 => RealIrreducible {
                indicator: -1,
                constituents: vec![i],
                character: chi.scale(2),
                dim: 2 * dims[i],
                endo_degree: 4,
            },
            _ => {
                let cj = chi.conj();
                let j = t
                    .irreducibles
                    .iter()
                    .enumerate()
                    .position(|(j, other)| {
                        !used[j] && other.values.iter().zip(&cj.values).all(|(x, y)| x.equals(y))
                    })
                    .ok_or_else(|| {
                        Error::Invariant("conjugate partner missing from the table".into())
                    })?;
                used[j] = true;
                RealIrreducible {
                    indicator: 0,
                    constituents: vec![i, j],
                    character: chi.add(&cj)?,
                    dim: 2 * dims[i],
                    endo_degree: 2,
                }
            }
        };
        out.push(item);
    }
    out.sort_by_key(|ri| (ri.dim, ri.constituents[0]));
    Ok(RealBasis { group_order: t.group.order, indicators, irreducibles: out })
}

/// An element of RO(G): integer coordinates over the real-irreducible basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealRepClass {
    pub group_order: usize,
    pub coeffs: Vec<BigInt>,
}

impl RealRepClass {
    pub fn zero(b: &RealBasis) -> RealRepClass {
        RealRepClass {
            group_order: b.group_order,
            coeffs: vec![BigInt::zero(); b.irreducibles.len()],
        }
    }

    pub fn unit(b: &RealBasis, i: usize) -> RealRepClass {
        let mut w = RealRepClass::zero(b);
        w.coeffs[i] = BigInt::one();
        w
    }

    pub fn add(&self, other: &RealRepClass) -> Result<RealRepClass> {
        if self.group_order != other.group_order {
            return Err(Error::MixedGroups);
        }
        Ok(RealRepClass {
            group_order: self.group_order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &RealRepClass) -> Result<RealRepClass> {
        if self.group_order != other.group_order {
            return Err(Error::MixedGroups);
        }
        Ok(RealRepClass {
            group_order: self.group_order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn is_genuine(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn dim(&self, b: &RealBasis) -> BigInt {
        self.coeffs
            .iter()
            .zip(&b.irreducibles)
            .map(|(c, ri)| c * BigInt::from(ri.dim as i64))
            .sum()
    }

    pub fn character(&self, t: &CharacterTable, b: &RealBasis) -> Result<Character> {
        if self.group_order != b.group_order || b.group_order != t.group.order {
            return Err(Error::MixedGroups);
        }
        let mut out = Character {
            group_order: t.group.order,
            values: vec![CyclotomicValue::zero(t.exponent); t.class_count()],
        };
        for (c, ri) in self.coeffs.iter().zip(&b.irreducibles) {
            if !c.is_zero() {
                out = out.add(&ri.character.scale(c.clone()))?;
            }
        }
        Ok(out)
    }
}

/// Integer coordinates of a real-valued (virtual) character over RO(G).
pub fn decompose_real(t: &CharacterTable, b: &RealBasis, w: &Character) -> Result<RealRepClass> {
    t.check(w)?;
    if b.group_order != t.group.order {
        return Err(Error::MixedGroups);
    }
    let mut coeffs = Vec::with_capacity(b.irreducibles.len());
    for ri in &b.irreducibles {
        let m = inner_product(t, w, &t.irreducibles[ri.constituents[0]])?;
        let c = if ri.indicator == -1 {
            // the quaternionic basis character is 2 chi
            let (q, r) = num_integer::Integer::div_rem(&m, &BigInt::from(2));
            if !r.is_zero() {
                return Err(Error::NoDecomposition);
            }
            q
        } else {
            m
        };
        coeffs.push(c);
    }
    let out = RealRepClass { group_order: t.group.order, coeffs };
    let rebuilt = out.character(t, b)?;
    for k in 0..t.class_count() {
        if !rebuilt.values[k].equals(&w.values[k]) {
            return Err(Error::NoDecomposition);
        }
    }
    Ok(out)
}

fn check_subgroup(gt: &CharacterTable, sub: &Subgroup, ht: &CharacterTable) -> Result<()> {
    let g = &gt.group;
    let h = &sub.h;
    if ht.group.order != h.order || sub.embed.len() != h.order {
        return Err(Error::MixedGroups);
    }
    if sub.embed.iter().any(|&x| x >= g.order) {
        return Err(Error::NotSubgroup);
    }
    for a in 0..h.order {
        for b in 0..h.order {
            if sub.embed[h.mul(a, b)] != g.mul(sub.embed[a], sub.embed[b]) {
                return Err(Error::NotSubgroup);
            }
        }
    }
    Ok(())
}

/// Multiplicity of each o-th root of unity among the eigenvalues of w at the
/// representative of the given class (o = its order): Fourier inversion of
/// the restriction to the cyclic subgroup it generates.
pub fn eigenvalue_multiplicities(
    t: &CharacterTable,
    w: &Character,
    class: usize,
) -> Result<Vec<BigInt>> {
    t.check(w)?;
    let o = t.data.orders[class];
    let stride = (t.exponent / o) as i64;
    let mut out = Vec::with_capacity(o);
    for tt in 0..o {
        let mut acc = CyclotomicValue::zero(t.exponent);
        for s in 0..o {
            let rot = -((s * tt) as i64 % o as i64) * stride;
            acc = acc.add(&w.values[t.data.power[class][s]].mul_zeta_pow(rot));
        }
        let n = acc.as_integer().ok_or(Error::NoDecomposition)?;
        let (q, r) = num_integer::Integer::div_rem(&n, &BigInt::from(o as i64));
        if !r.is_zero() {
            return Err(Error::NoDecomposition);
        }
        out.push(q);
    }
    Ok(out)
}

/// Restriction of a (virtual) character along H < G, re-expressed at the
/// subgroup's own conductor via eigenvalue multiplicities.
pub fn restrict(
    gt: &CharacterTable,
    sub: &Subgroup,
    ht: &CharacterTable,
    w: &Character,
) -> Result<Character> {
    gt.check(w)?;
    check_subgroup(gt, sub, ht)?;
    let mut values = Vec::with_capacity(ht.class_count());
    for &rh in &ht.data.reps {
        let gclass = gt.data.class_of[sub.embed[rh]];
        let mults = eigenvalue_multiplicities(gt, w, gclass)?;
        let o = mults.len();
        let mut v = CyclotomicValue::zero(ht.exponent);
        for (tt, m) in mults.iter().enumerate() {
            if !m.is_zero() {
                let zp = CyclotomicValue::zeta_pow(ht.exponent, (tt * (ht.exponent / o)) as i64);
                v = v.add(&zp.scale(m));
            }
        }
        values.push(v);
    }
    Ok(Character { group_order: ht.group.order, values })
}

/// Induction of a (virtual) character along H < G:
/// (Ind w)(z) = (1/|H|) sum over x in G with x z x^{-1} in H of w(x z x^{-1}).
pub fn induce(
    gt: &CharacterTable,
    sub: &Subgroup,
    ht: &CharacterTable,
    w: &Character,
) -> Result<Character> {
    ht.check(w)?;
    check_subgroup(gt, sub, ht)?;
    let g = &gt.group;
    let horder = BigInt::from(ht.group.order as i64);
    let mut values = Vec::with_capacity(gt.class_count());
    for &z in &gt.data.reps {
        let mut acc = CyclotomicValue::zero(ht.exponent);
        for x in 0..g.order {
            let c = g.conj(z, x);
            if let Ok(pos) = sub.embed.binary_search(&c) {
                acc = acc.add(&w.values[ht.data.class_of[pos]]);
            }
        }
        // divide in the canonical basis, where divisibility is coefficientwise
        let canon = acc.canonical();
        let mut v = CyclotomicValue::zero(ht.exponent);
        for (i, c) in canon.iter().enumerate() {
            let (q, r) = num_integer::Integer::div_rem(c, &horder);
            if !r.is_zero() {
                return Err(Error::Invariant("induced value not divisible by |H|".into()));
            }
            v.coeffs[i] = q;
        }
        values.push(v.lift(gt.exponent));
    }
    Ok(Character { group_order: gt.group.order, values })
}

/// Determinant character of a real class: one sign per conjugacy class,
/// computed from the eigenvalue multiset of the restriction to each cyclic
/// subgroup. Multiplicative in direct sums, so virtual classes are fine.
pub fn det_character(t: &CharacterTable, b: &RealBasis, w: &RealRepClass) -> Result<Vec<i64>> {
    let chi = w.character(t, b)?;
    det_signs(t, &chi)
}

/// Same determinant signs straight from a real-valued (virtual) character.
pub fn det_signs(t: &CharacterTable, chi: &Character) -> Result<Vec<i64>> {
    let mut out = Vec::with_capacity(t.class_count());
    for k in 0..t.class_count() {
        let o = t.data.orders[k];
        let mults = eigenvalue_multiplicities(t, chi, k)?;
        let mut s: i64 = 0;
        for (tt, m) in mults.iter().enumerate() {
            let m = i64::try_from(m.clone())
                .map_err(|_| Error::TooLarge("eigenvalue multiplicity".into()))?;
            s = (s + (tt as i64 % o as i64) * m).rem_euclid(o as i64);
        }
        if s == 0 {
            out.push(1);
        } else if 2 * s == o as i64 {
            out.push(-1);
        } else {
            return Err(Error::Invariant("determinant of a real class must be a sign".into()));
        }
    }
    Ok(out)
}

/// The conjugation representation of C_p x| C_{n^2} (n = p-1, t acting by a
/// primitive root e) on the rank-n^2 lattice Z(zeta_p){1, tau, .., tau^{n-1}},
/// with basis zeta^a tau^j for 0 <= a <= p-2, 0 <= j <= n-1:
///
///    z . zeta^a tau^j = zeta^{a+1-e^j} tau^j
///    t . zeta^a tau^j = zeta^{ae} tau^j
///
/// and exponents landing on p-1 rewritten by zeta^{p-1} = -(1+zeta+..+zeta^{p-2}).
#[derive(Debug)]
pub struct AdjointRep {
    pub group: FiniteGroup,
    /// one matrix per group element, rows are images of basis vectors
    pub matrices: Vec<IntMatrix>,
    pub character: Character,
}

pub fn adjoint_conjugation_rep(p: u64, e: u64) -> Result<AdjointRep> {
    if !fp::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !fp::is_primitive_root(e, p) {
        return Err(Error::OrderMismatch(format!("{e} is not a primitive root mod {p}")));
    }
    let group = crate::group::metacyclic_maximal(p, e)?;
    let n = (p - 1) as usize;
    let dim = n * n;
    let pu = p as usize;
    let e_pow: Vec<u64> = {
        let nn = n * n;
        (0..nn.max(n)).map(|m| fp::pow_mod(e, m as u64, p)).collect()
    };
    let basis_index = |a: usize, j: usize| a + (pu - 1) * j;
    let mut matrices = Vec::with_capacity(group.order);
    for g in 0..group.order {
        // element z^i t^m, indexed i + p*m
        let (i, m) = (g % pu, g / pu);
        let mut mat = IntMatrix::zero(dim, dim);
        for j in 0..n {
            let twist = (i as u64 * (p + 1 - e_pow[j]) % p) % p;
            for a in 0..pu - 1 {
                let alpha = ((a as u64 * e_pow[m] + twist) % p) as usize;
                let row = basis_index(a, j);
                if alpha <= pu - 2 {
                    mat.set(row, basis_index(alpha, j), BigInt::one());
                } else {
                    for b in 0..pu - 1 {
                        mat.set(row, basis_index(b, j), -BigInt::one());
                    }
                }
            }
        }
        matrices.push(mat);
    }
    // Rows hold basis-vector images, so left action g.(h.x) = (gh).x reads
    // M(gh) = M(h) M(g); checking it on the two generators extends to all of G.
    for gen in [1usize, pu] {
        for h in 0..group.order {
            let prod = matrices[h].mul(&matrices[gen])?;
            if prod != matrices[group.mul(gen, h)] {
                return Err(Error::Invariant("conjugation formulas are not multiplicative".into()));
            }
        }
    }
    let exponent = group.exponent();
    let data = class_data(&group);
    let values = data
        .reps
        .iter()
        .map(|&r| {
            let tr: BigInt = (0..dim).map(|i| matrices[r].get(i, i).clone()).sum();
            CyclotomicValue::from_int(exponent, tr)
        })
        .collect();
    let character = Character { group_order: group.order, values };
    Ok(AdjointRep { group, matrices, character })
}

/// Explicit conjugation representation x -> u x u^{-1} of a finite unit
/// group on a full sublattice of a quaternionic order.
#[derive(Debug)]
pub struct ConjugationRep {
    pub group: FiniteGroup,
    /// order coordinates of each group element, aligned with group indices
    pub unit_coords: Vec<Vec<BigInt>>,
    /// per element, the action on the lattice basis (rows are images)
    pub matrices: Vec<IntMatrix>,
    /// trace class function, at conductor exponent(group)
    pub character: Character,
}

pub fn conjugation_rep(
    ord: &StructOrder,
    lat: &Lattice,
    units: &[Vec<BigInt>],
) -> Result<ConjugationRep> {
    if lat.ambient_dim() != 4 || lat.rank() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "conjugation acts on full rank-4 lattices, got rank {} in dim {}",
            lat.rank(),
            lat.ambient_dim()
        )));
    }
    let mut elems: Vec<Vec<BigInt>> = units.to_vec();
    elems.sort();
    elems.dedup();
    let n = elems.len();
    let mut table = vec![0usize; n * n];
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate() {
            let prod = ord.mul_coords(a, b);
            table[i * n + j] = elems
                .binary_search(&prod)
                .map_err(|_| Error::NotAGroup("units not closed under multiplication".into()))?;
        }
    }
    let names = elems.iter().map(|c| ord.pretty_name(c)).collect();
    let group = FiniteGroup::from_table(table, names)?;

    let ambient: Vec<IntMatrix> =
        elems.iter().map(|u| ord.conj_action_matrix(u)).collect::<Result<_>>()?;
    check_stability(lat, &ambient)?;
    let basis = lat.canonical_basis()?;
    let mut matrices = Vec::with_capacity(n);
    for m4 in &ambient {
        let mut m = IntMatrix::zero(4, 4);
        for i in 0..4 {
            let img = IntMatrix::row_vec_mul(basis.row(i), m4)?;
            let coords = solve_left(&basis, &img)?.ok_or(Error::NotStable)?;
            for (j, c) in coords.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        matrices.push(m);
    }

    let exponent = group.exponent();
    let data = class_data(&group);
    let values = data
        .reps
        .iter()
        .map(|&r| {
            let tr: BigInt = (0..4).map(|i| matrices[r].get(i, i).clone()).sum();
            CyclotomicValue::from_int(exponent, tr)
        })
        .collect();
    let character = Character { group_order: group.order, values };
    Ok(ConjugationRep { group, unit_coords: elems, matrices, character })
}
