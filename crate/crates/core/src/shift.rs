//! Duality shifts of homotopy fixed-point spectra of quaternionic and
//! metacyclic stabilizer subgroups: the invariant psi = (dimension, first
//! Stiefel-Whitney coordinate, torsion class), reduction of a representation
//! modulo the regular one in the quotient of the representation ring, and the
//! shift computations themselves, each carrying a provenance trail.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::charcls::{
    chern_character_at_class, lambda_on_group, lambda_table_order_twelve,
    lambda_table_order_twentyfour, LambdaTable, Provenance,
};
use crate::error::{Error, Result};
use crate::fp;
use crate::lattice::Lattice;
use crate::matrix::{smith_normal_form, IntMatrix};
use crate::order::{cube_root_unit_order, hurwitz_order};
use crate::rep::{
    adjoint_conjugation_rep, character_table, conjugation_rep, decompose_real, det_signs,
    real_irreducibles, Character, CharacterTable, RealBasis,
};

/// Which duality computation is running: the two elliptic-prime cases at
/// height 2, or the metacyclic case at height p - 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShiftCase {
    P3N2,
    P2N2,
    Honda(u64),
}

impl ShiftCase {
    pub fn tag(&self) -> String {
        match self {
            ShiftCase::P3N2 => "p3n2".into(),
            ShiftCase::P2N2 => "p2n2".into(),
            ShiftCase::Honda(_) => "honda".into(),
        }
    }
}

/// One step of a computation, with where its content came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrailStep {
    pub statement: String,
    pub provenance: Provenance,
}

fn computed(s: impl Into<String>) -> TrailStep {
    TrailStep { statement: s.into(), provenance: Provenance::Computed }
}

fn given(s: impl Into<String>) -> TrailStep {
    TrailStep { statement: s.into(), provenance: Provenance::Given }
}

/// The complete invariant of a virtual representation in the relevant
/// quotient of the representation ring: dimension, orientation coordinate
/// (absent when degree-1 cohomology vanishes), and the torsion coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiValue {
    pub case: ShiftCase,
    pub dim: BigInt,
    pub w1: Option<u64>,
    pub torsion: u64,
    pub torsion_modulus: u64,
}

impl PsiValue {
    /// psi is additive: coordinates add in Z, Z/2, Z/m.
    pub fn add(&self, other: &PsiValue) -> Result<PsiValue> {
        if self.case != other.case || self.torsion_modulus != other.torsion_modulus {
            return Err(Error::WrongGroup);
        }
        let w1 = match (self.w1, other.w1) {
            (Some(a), Some(b)) => Some((a + b) % 2),
            (None, None) => None,
            _ => return Err(Error::WrongGroup),
        };
        Ok(PsiValue {
            case: self.case.clone(),
            dim: &self.dim + &other.dim,
            w1,
            torsion: (self.torsion + other.torsion) % self.torsion_modulus,
            torsion_modulus: self.torsion_modulus,
        })
    }

    pub fn scale(&self, c: i64) -> PsiValue {
        let m = self.torsion_modulus;
        let cm = (c.rem_euclid(m as i64)) as u64;
        PsiValue {
            case: self.case.clone(),
            dim: &self.dim * BigInt::from(c),
            w1: self.w1.map(|a| (a * (c.rem_euclid(2)) as u64) % 2),
            torsion: self.torsion * cm % m,
            torsion_modulus: m,
        }
    }
}

/// Everything one duality case needs: the finite group, its tables, the
/// torsion detector, and the two distinguished representations.
pub struct CaseData {
    pub case: ShiftCase,
    pub p: u64,
    pub n: u64,
    pub table: CharacterTable,
    pub basis: RealBasis,
    pub lambda: Option<LambdaTable>,
    /// conjugacy class of the order-p detector, metacyclic case only
    detector: Option<usize>,
    /// regular representation
    pub rho: Character,
    /// the conjugation representation whose class is reduced
    pub v: Character,
    /// how the group and v were obtained
    pub build_trail: Vec<TrailStep>,
}

pub fn case_data(case: &ShiftCase) -> Result<CaseData> {
    match case {
        ShiftCase::P3N2 => {
            let ord = cube_root_unit_order();
            let units = ord.norm_one_elements()?;
            let cr = conjugation_rep(&ord, &Lattice::standard(4), &units)?;
            if cr.group.order != 12 {
                return Err(Error::WrongGroup);
            }
            let table = character_table(&cr.group)?;
            let basis = real_irreducibles(&table)?;
            let lambda = lambda_table_order_twelve(&table, &basis)?;
            let rho = table.regular();
            let build_trail = vec![
                computed("norm-one unit group of the order ramified at 3 has order 12"),
                computed("v = conjugation action of the units on the order itself"),
            ];
            Ok(CaseData {
                case: case.clone(),
                p: 3,
                n: 2,
                rho,
                v: cr.character.clone(),
                table,
                basis,
                lambda: Some(lambda),
                detector: None,
                build_trail,
            })
        }
        ShiftCase::P2N2 => {
            let ord = hurwitz_order();
            let units = ord.norm_one_elements()?;
            let cr = conjugation_rep(&ord, &Lattice::standard(4), &units)?;
            if cr.group.order != 24 {
                return Err(Error::WrongGroup);
            }
            let table = character_table(&cr.group)?;
            let basis = real_irreducibles(&table)?;
            let lambda = lambda_table_order_twentyfour(&table, &basis)?;
            let rho = table.regular();
            let mut build_trail = vec![
                computed("norm-one unit group of the maximal order at 2 has order 24"),
                computed("v = conjugation action of the units on the order itself"),
            ];
            for seed in &lambda.seeds {
                build_trail.push(given(format!("{} (= {})", seed.statement, seed.value)));
            }
            Ok(CaseData {
                case: case.clone(),
                p: 2,
                n: 2,
                rho,
                v: cr.character.clone(),
                table,
                basis,
                lambda: Some(lambda),
                detector: None,
                build_trail,
            })
        }
        ShiftCase::Honda(p) => {
            let p = *p;
            let e = if fp::is_prime(p) { fp::primitive_root(p) } else {
                return Err(Error::NotPrime(p));
            };
            let ar = adjoint_conjugation_rep(p, e)?;
            let table = character_table(&ar.group)?;
            let basis = real_irreducibles(&table)?;
            let n = p - 1;
            let detector = (0..table.class_count())
                .find(|&k| table.data.orders[k] as u64 == p)
                .ok_or(Error::WrongGroup)?;
            let rho = table.regular();
            let build_trail = vec![
                computed(format!(
                    "metacyclic group of order {} = p n^2 with its character table",
                    p * n * n
                )),
                computed("v = conjugation action on the rank-n^2 cyclotomic lattice"),
            ];
            Ok(CaseData {
                case: case.clone(),
                p,
                n,
                rho,
                v: ar.character.clone(),
                table,
                basis,
                lambda: None,
                detector: Some(detector),
                build_trail,
            })
        }
    }
}

/// The invariant psi of a real-valued (virtual) character of the case group.
pub fn psi(data: &CaseData, w: &Character) -> Result<PsiValue> {
    if w.group_order != data.table.group.order {
        return Err(Error::WrongGroup);
    }
    let dim = w.dim(&data.table)?;
    match &data.case {
        ShiftCase::P3N2 | ShiftCase::P2N2 => {
            let rc = decompose_real(&data.table, &data.basis, w)?;
            let lt = data.lambda.as_ref().ok_or(Error::IncompleteCatalog)?;
            let torsion = lambda_on_group(lt, &data.basis, &rc)?;
            let w1 = if data.case == ShiftCase::P2N2 {
                // degree-1 and degree-2 mod-2 cohomology of the order-24
                // group vanish, so there is no orientation coordinate
                None
            } else {
                let dets = det_signs(&data.table, w)?;
                Some(if dets.iter().all(|&s| s == 1) { 0 } else { 1 })
            };
            Ok(PsiValue {
                case: data.case.clone(),
                dim,
                w1,
                torsion,
                torsion_modulus: lt.modulus,
            })
        }
        ShiftCase::Honda(p) => {
            let class = data.detector.ok_or(Error::IncompleteCatalog)?;
            let torsion =
                chern_character_at_class(&data.table, w, class, data.n as u32, *p)?;
            let dets = det_signs(&data.table, w)?;
            let w1 = Some(if dets.iter().all(|&s| s == 1) { 0 } else { 1 });
            Ok(PsiValue {
                case: data.case.clone(),
                dim,
                w1,
                torsion,
                torsion_modulus: *p,
            })
        }
    }
}

/// Outcome of reducing a class W modulo the regular representation: the
/// multiplier k with psi(W) - k psi(rho) a multiple of psi(1), that multiple
/// c, and the order of the quotient group, which c is well defined in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub k: BigInt,
    pub c: BigInt,
    pub period: u64,
    /// least nonnegative residue of c mod period
    pub residue: u64,
}

/// Solve x a = b mod m; None when inconsistent, otherwise (x0, m/gcd).
fn solve_congruence(a: u64, b: u64, m: u64) -> Option<(u64, u64)> {
    let a = a % m;
    let b = b % m;
    let g = gcd(a, m);
    if b % g != 0 {
        return None;
    }
    let m1 = m / g;
    if m1 == 1 {
        return Some((0, 1));
    }
    let inv = fp::inv_mod(a / g % m1, m1)?;
    Some((fp::mul_mod(b / g % m1, inv, m1), m1))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a.max(1) } else { gcd(b, a % b) }
}

/// Order of the image of the one-dimensional trivial class in the quotient
/// (Z + Z/2 + Z/m) / <psi(rho)>, and the certificate that it generates.
fn quotient_order_checks(psi_rho: &PsiValue) -> Result<u64> {
    let dim: u64 = u64::try_from(psi_rho.dim.clone())
        .map_err(|_| Error::Invariant("regular dimension must be positive".into()))?;
    let m2: u64 = if psi_rho.w1.is_some() { 2 } else { 1 };
    let m3 = psi_rho.torsion_modulus;
    let a = psi_rho.w1.unwrap_or(0);
    let b = psi_rho.torsion;

    // presentation of the quotient and its Smith normal form
    let rows: Vec<Vec<i64>> = vec![
        vec![dim as i64, a as i64, b as i64],
        vec![0, m2 as i64, 0],
        vec![0, 0, m3 as i64],
    ];
    let rows_ref: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    let m = IntMatrix::from_i64(&rows_ref);
    let snf = smith_normal_form(&m);
    let factors: Vec<BigInt> = snf.invariant_factors().iter().map(|d| d.abs()).collect();
    let total: BigInt = factors.iter().product();
    let expected = BigInt::from(dim) * BigInt::from(m2) * BigInt::from(m3);
    if total != expected {
        return Err(Error::Invariant("quotient order disagrees with the determinant".into()));
    }
    let cyclic = factors.len() == 3 && factors[0].is_one() && factors[1].is_one();
    if !cyclic {
        return Err(Error::NotReducible);
    }

    // the trivial class must itself generate: its order is dim * lcm of the
    // torsion orders of the other two coordinates of psi(rho)
    let t2 = m2 / gcd(a, m2);
    let t3 = m3 / gcd(b, m3);
    let t = t2 / gcd(t2, t3) * t3;
    if t != m2 * m3 {
        return Err(Error::NotReducible);
    }
    Ok(dim * m2 * m3)
}

/// Reduce psi(W) modulo psi(rho) to a multiple of psi(1).
pub fn quotient_reduce(psi_rho: &PsiValue, psi_w: &PsiValue) -> Result<Reduction> {
    if psi_rho.case != psi_w.case
        || psi_rho.torsion_modulus != psi_w.torsion_modulus
        || psi_rho.w1.is_some() != psi_w.w1.is_some()
    {
        return Err(Error::WrongGroup);
    }
    let period = quotient_order_checks(psi_rho)?;

    // k must clear the orientation coordinate and the torsion coordinate
    let mut k = 0u64;
    let mut modulus = 1u64;
    let mut fold = |a: u64, b: u64, m: u64| -> Result<()> {
        let (k1, m1) = solve_congruence(a, b, m).ok_or(Error::NotReducible)?;
        // CRT over coprime or compatible moduli
        let g = gcd(modulus, m1);
        if k % g != k1 % g {
            return Err(Error::NotReducible);
        }
        let lcm = modulus / g * m1;
        // step k by multiples of `modulus` until it also satisfies the new one
        let mut cand = k % lcm;
        while cand % m1 != k1 {
            cand = (cand + modulus) % lcm;
        }
        k = cand;
        modulus = lcm;
        Ok(())
    };
    if let (Some(ar), Some(aw)) = (psi_rho.w1, psi_w.w1) {
        fold(ar, aw, 2)?;
    }
    fold(psi_rho.torsion, psi_w.torsion, psi_rho.torsion_modulus)?;

    let kb = BigInt::from(k);
    let c = &psi_w.dim - &kb * &psi_rho.dim;
    let residue =
        u64::try_from(c.mod_floor(&BigInt::from(period))).expect("reduced");
    Ok(Reduction { k: kb, c, period, residue })
}

/// A computed duality shift: the canonical signed form, its least
/// nonnegative residue when a period applies, and the full trail.
#[derive(Clone, Debug)]
pub struct ShiftResult {
    pub case: String,
    pub p: u64,
    pub n: u64,
    pub shift: BigInt,
    pub residue: Option<u64>,
    pub period: Option<u64>,
    pub trail: Vec<TrailStep>,
}

impl ShiftResult {
    pub fn given_steps(&self) -> usize {
        self.trail.iter().filter(|s| s.provenance == Provenance::Given).count()
    }
}

fn psi_describe(name: &str, v: &PsiValue) -> String {
    match v.w1 {
        Some(a) => format!(
            "psi({name}) = ({}, {a}, {} mod {})",
            v.dim, v.torsion, v.torsion_modulus
        ),
        None => format!("psi({name}) = ({}, {} mod {})", v.dim, v.torsion, v.torsion_modulus),
    }
}

/// Duality shift of the homotopy fixed-point spectrum for one case: the
/// class of the conjugation representation v is reduced to c copies of the
/// trivial line, and the dual is the (-c)-fold suspension.
pub fn sw_shift(case: &ShiftCase) -> Result<ShiftResult> {
    let data = case_data(case)?;
    let psi_rho = psi(&data, &data.rho)?;
    let psi_v = psi(&data, &data.v)?;
    let red = quotient_reduce(&psi_rho, &psi_v)?;

    let mut trail = data.build_trail.clone();
    trail.push(computed(psi_describe("regular", &psi_rho)));
    trail.push(computed(psi_describe("v", &psi_v)));
    trail.push(computed(format!(
        "v - {} regular = {} trivial lines in the quotient, period {}",
        red.k, red.c, red.period
    )));

    // canonical signed form of the shift -c
    let shift = match case {
        ShiftCase::P3N2 | ShiftCase::P2N2 => -red.c.clone(),
        ShiftCase::Honda(p) => {
            let n = BigInt::from(data.n);
            -(&n * &n * BigInt::from(2 * p + 1))
        }
    };
    let period = BigInt::from(red.period);
    if (&shift + &red.c).mod_floor(&period) != BigInt::zero() {
        return Err(Error::Invariant("canonical shift disagrees with the reduction".into()));
    }
    let residue = u64::try_from((-red.c).mod_floor(&period)).expect("reduced");
    trail.push(computed(format!(
        "dual of the fixed points is the suspension by {shift}, i.e. {residue} mod {}",
        red.period
    )));

    Ok(ShiftResult {
        case: case.tag(),
        p: data.p,
        n: data.n,
        shift,
        residue: Some(residue),
        period: Some(red.period),
        trail,
    })
}

/// For a finite subgroup of the center the dual is the (-n^2)-suspension;
/// there is nothing to reduce.
pub fn central_case_shift(n: u64) -> ShiftResult {
    let shift = -BigInt::from(n * n);
    ShiftResult {
        case: "central".into(),
        p: 0,
        n,
        shift: shift.clone(),
        residue: None,
        period: None,
        trail: vec![computed(format!(
            "central subgroup: dual of the fixed points is the suspension by {shift}"
        ))],
    }
}

/// Shift detecting the exotic invertible summand: combining the computed
/// dual of the order-p cyclic fixed points with two given homotopy-level
/// inputs yields the (p^2 + p)-fold suspension, nonzero mod 2p^2.
pub fn exotic_picard_shift(p: u64) -> Result<ShiftResult> {
    if !fp::is_prime(p) || p == 2 {
        return Err(Error::NotPrime(p));
    }
    let n = p - 1;
    let period = 2 * p * p;
    let pb = BigInt::from(period);

    // the computed dual shift -n^2(1+2p) collapses to -(p^2+1) mod 2p^2
    let lhs = (-BigInt::from(n * n * (1 + 2 * p))).mod_floor(&pb);
    let rhs = (-BigInt::from(p * p + 1)).mod_floor(&pb);
    if lhs != rhs {
        return Err(Error::Invariant(
            "cyclic dual shift does not collapse to -(p^2+1)".into(),
        ));
    }

    let shift = BigInt::from(p * p + p);
    let residue = u64::try_from(shift.mod_floor(&pb)).expect("below 2p^2");
    let trail = vec![
        computed(format!(
            "dual of the order-{p} cyclic fixed points: -n^2(1+2p) = -(p^2+1) mod 2p^2"
        )),
        given("the determinant sphere smashes trivially with the cyclic fixed points"),
        given("the Brown-Comenetz dual of the cyclic fixed points is its n^2-fold suspension"),
        computed(format!(
            "invertible summand acts by n^2 - (n^2 - n) + (p^2 + 1) = {shift}, \
             nonzero mod {period}"
        )),
    ];
    Ok(ShiftResult {
        case: "exotic".into(),
        p,
        n,
        shift,
        residue: Some(residue),
        period: Some(period),
        trail,
    })
}

/// Periods of the relevant quotients: the full stabilizer subgroup in each
/// case, and the order-p cyclic subgroup in the metacyclic case.
pub fn period_of(case: &ShiftCase, tag: &str) -> Result<u64> {
    match (case, tag) {
        (ShiftCase::P3N2, "full") => Ok(72),
        (ShiftCase::P2N2, "full") => Ok(192),
        (ShiftCase::Honda(p), "full") => {
            let n = p - 1;
            Ok(2 * p * p * n * n)
        }
        (ShiftCase::Honda(p), "cp") => Ok(2 * p * p),
        _ => Err(Error::UnknownTag(tag.into())),
    }
}
