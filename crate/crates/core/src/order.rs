//! Orders in definite rational quaternion algebras: exact structure
//! constants, the reduced norm form, enumeration of the finite unit group,
//! and the integral conjugation action of a unit on the order.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::matrix::IntMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Quat = [BigRational; 4];

fn br(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

fn quat_zero() -> Quat {
    [BigRational::zero(), BigRational::zero(), BigRational::zero(), BigRational::zero()]
}

/// The algebra (a, b): i^2 = a, j^2 = b, k = ij, ji = -ij.
#[derive(Clone, Debug)]
pub struct QuatAlgebra {
    pub a: BigRational,
    pub b: BigRational,
}

impl QuatAlgebra {
    pub fn new(a: i64, b: i64) -> Self {
        QuatAlgebra { a: br(a), b: br(b) }
    }

    pub fn mul(&self, x: &Quat, y: &Quat) -> Quat {
        let (a, b) = (&self.a, &self.b);
        let ab = a * b;
        // basis products: see the unit relations above
        [
            &x[0] * &y[0] + a * &x[1] * &y[1] + b * &x[2] * &y[2] - &ab * &x[3] * &y[3],
            &x[0] * &y[1] + &x[1] * &y[0] - b * &x[2] * &y[3] + b * &x[3] * &y[2],
            &x[0] * &y[2] + &x[2] * &y[0] + a * &x[1] * &y[3] - a * &x[3] * &y[1],
            &x[0] * &y[3] + &x[3] * &y[0] + &x[1] * &y[2] - &x[2] * &y[1],
        ]
    }

    pub fn conj(&self, x: &Quat) -> Quat {
        [x[0].clone(), -&x[1], -&x[2], -&x[3]]
    }

    pub fn norm(&self, x: &Quat) -> BigRational {
        let c = self.conj(x);
        let n = self.mul(x, &c);
        debug_assert!(n[1].is_zero() && n[2].is_zero() && n[3].is_zero());
        n[0].clone()
    }

    pub fn reduced_trace(&self, x: &Quat) -> BigRational {
        &x[0] * br(2)
    }
}

/// A rank-4 order given by a basis inside a quaternion algebra. All
/// structure data is validated to be integral at construction.
#[derive(Clone, Debug)]
pub struct StructOrder {
    pub algebra: QuatAlgebra,
    /// basis[i] = coordinates of e_i in the algebra basis {1, i, j, k}
    pub basis: Vec<Quat>,
    pub basis_names: Vec<String>,
    /// e_i e_j = sum_k struct_consts[(i*4+j)*4+k] e_k
    struct_consts: Vec<BigInt>,
    /// bar(e_i) = sum_j bar_mat[i][j] e_j
    pub bar_mat: IntMatrix,
    /// trace form: T[i][j] = trd(e_i bar(e_j)), so N(x) = x T x^t / 2
    pub trace_form: IntMatrix,
}

/// Solve coords * basis = target over Q (basis rows are quaternions).
fn in_basis(basis: &[Quat], target: &Quat) -> Result<Vec<BigRational>> {
    // 4x5 augmented rational elimination
    let mut aug: Vec<Vec<BigRational>> = (0..4)
        .map(|col| {
            let mut row: Vec<BigRational> = basis.iter().map(|b| b[col].clone()).collect();
            row.push(target[col].clone());
            row
        })
        .collect();
    let mut piv_rows = Vec::new();
    for c in 0..4 {
        let Some(pr) = (0..4).find(|&r| !piv_rows.contains(&r) && !aug[r][c].is_zero()) else {
            continue;
        };
        let inv = aug[pr][c].recip();
        for x in aug[pr].iter_mut() {
            *x *= &inv;
        }
        for r in 0..4 {
            if r != pr && !aug[r][c].is_zero() {
                let f = aug[r][c].clone();
                for cc in 0..5 {
                    let sub = &f * &aug[pr][cc];
                    aug[r][cc] -= sub;
                }
            }
        }
        piv_rows.push(pr);
    }
    if piv_rows.len() != 4 {
        return Err(Error::SingularBasis);
    }
    let mut coords = vec![BigRational::zero(); 4];
    for c in 0..4 {
        let r = (0..4).find(|&r| aug[r][c].is_one() && piv_rows.contains(&r)).unwrap();
        coords[c] = aug[r][4].clone();
    }
    Ok(coords)
}

fn as_integer(r: &BigRational) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::NonIntegralEntries)
    }
}

impl StructOrder {
    pub fn new(algebra: QuatAlgebra, basis: Vec<Quat>, basis_names: Vec<String>) -> Result<Self> {
        assert_eq!(basis.len(), 4);
        assert_eq!(basis_names.len(), 4);
        let mut struct_consts = vec![BigInt::zero(); 64];
        for i in 0..4 {
            for j in 0..4 {
                let prod = algebra.mul(&basis[i], &basis[j]);
                let coords = in_basis(&basis, &prod)?;
                for (k, c) in coords.iter().enumerate() {
                    struct_consts[(i * 4 + j) * 4 + k] = as_integer(c)?;
                }
            }
        }
        let mut bar_mat = IntMatrix::zero(4, 4);
        for i in 0..4 {
            let coords = in_basis(&basis, &algebra.conj(&basis[i]))?;
            for (j, c) in coords.iter().enumerate() {
                bar_mat.set(i, j, as_integer(c)?);
            }
        }
        let mut trace_form = IntMatrix::zero(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                let prod = algebra.mul(&basis[i], &algebra.conj(&basis[j]));
                let t = algebra.reduced_trace(&prod);
                trace_form.set(i, j, as_integer(&t)?);
            }
        }
        Ok(StructOrder { algebra, basis, basis_names, struct_consts, bar_mat, trace_form })
    }

    pub fn to_quat(&self, coords: &[BigInt]) -> Quat {
        let mut q = quat_zero();
        for (i, c) in coords.iter().enumerate() {
            let cr = BigRational::from(c.clone());
            for t in 0..4 {
                q[t] += &cr * &self.basis[i][t];
            }
        }
        q
    }

    pub fn mul_coords(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); 4];
        for i in 0..4 {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if y[j].is_zero() {
                    continue;
                }
                let f = &x[i] * &y[j];
                for k in 0..4 {
                    out[k] += &f * &self.struct_consts[(i * 4 + j) * 4 + k];
                }
            }
        }
        out
    }

    pub fn conj_coords(&self, x: &[BigInt]) -> Vec<BigInt> {
        (0..4)
            .map(|j| (0..4).map(|i| &x[i] * self.bar_mat.get(i, j)).sum())
            .collect()
    }

    pub fn norm_coords(&self, x: &[BigInt]) -> BigInt {
        let mut two_n = BigInt::zero();
        for i in 0..4 {
            for j in 0..4 {
                two_n += &x[i] * &x[j] * self.trace_form.get(i, j);
            }
        }
        debug_assert!((&two_n % BigInt::from(2)).is_zero());
        two_n / BigInt::from(2)
    }

    pub fn one_coords(&self) -> Result<Vec<BigInt>> {
        let one = [BigRational::one(), BigRational::zero(), BigRational::zero(), BigRational::zero()];
        in_basis(&self.basis, &one)?.iter().map(as_integer).collect()
    }

    /// All elements of reduced norm 1, as coordinate vectors, enumerated by
    /// exact lattice-point search in the norm form. Errors when the form has
    /// a non-positive pivot, which happens exactly for indefinite algebras.
    pub fn norm_one_elements(&self) -> Result<Vec<Vec<BigInt>>> {
        // LDL^t on the rational Gram matrix T/2
        let mut g: Vec<Vec<BigRational>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| BigRational::from(self.trace_form.get(i, j).clone()) / br(2))
                    .collect()
            })
            .collect();
        // d[i], u[i][j] for j > i: Q(x) = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2
        let mut d = vec![BigRational::zero(); 4];
        let mut u = vec![vec![BigRational::zero(); 4]; 4];
        for i in 0..4 {
            d[i] = g[i][i].clone();
            if !d[i].is_positive() {
                return Err(Error::NormNotDefinite);
            }
            for j in i + 1..4 {
                u[i][j] = &g[i][j] / &d[i];
            }
            for r in i + 1..4 {
                for c in i + 1..4 {
                    let delta = &d[i] * &u[i][r] * &u[i][c];
                    g[r][c] -= delta;
                }
            }
        }
        let target = BigRational::one();
        let mut out = Vec::new();
        let mut x = [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()];
        search_level(3, &target, &d, &u, &mut x, &mut out);
        out.sort();
        Ok(out)
    }

    /// The unit group as a finite group plus the coordinates of each unit.
    /// Units here are exactly the norm-one elements since the form is definite.
    pub fn finite_units(&self) -> Result<(FiniteGroup, Vec<Vec<BigInt>>)> {
        let elems = self.norm_one_elements()?;
        let n = elems.len();
        let lookup = |c: &Vec<BigInt>| -> Result<usize> {
            elems.binary_search(c).map_err(|_| Error::Invariant("units not closed".into()))
        };
        let mut table = vec![0usize; n * n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                table[i * n + j] = lookup(&self.mul_coords(a, b))?;
            }
        }
        let names = elems.iter().map(|c| self.pretty_name(c)).collect();
        let g = FiniteGroup::from_table(table, names)?;
        Ok((g, elems))
    }

    /// x |-> u x u^{-1} as an integer matrix on the order (rows are images
    /// of basis vectors). u must have norm 1; the action must preserve the
    /// order, and always has determinant 1.
    pub fn conj_action_matrix(&self, u: &[BigInt]) -> Result<IntMatrix> {
        if !self.norm_coords(u).is_one() {
            return Err(Error::NotUnit);
        }
        let u_inv = self.conj_coords(u); // u^{-1} = bar(u) at norm 1
        let mut m = IntMatrix::zero(4, 4);
        for i in 0..4 {
            let mut e = vec![BigInt::zero(); 4];
            e[i] = BigInt::one();
            let img = self.mul_coords(&self.mul_coords(u, &e), &u_inv);
            for (j, c) in img.iter().enumerate() {
                m.set(i, j, c.clone());
            }
        }
        if !m.det()?.is_one() {
            return Err(Error::Invariant("conjugation action must have determinant 1".into()));
        }
        Ok(m)
    }

    /// Deterministic display name from the algebra coordinates.
    pub fn pretty_name(&self, coords: &[BigInt]) -> String {
        let q = self.to_quat(coords);
        let den: BigInt = q
            .iter()
            .fold(BigInt::one(), |acc, r| {
                let d = r.denom();
                (&acc * d) / num_integer::Integer::gcd(&acc, d)
            });
        let nums: Vec<BigInt> = q.iter().map(|r| (r * BigRational::from(den.clone())).to_integer()).collect();
        let syms = ["", "i", "j", "k"];
        let mut body = String::new();
        for (t, c) in nums.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.magnitude().to_string();
            let coef = if mag == "1" && t != 0 { String::new() } else { mag };
            if body.is_empty() {
                if c.is_negative() {
                    body.push('-');
                }
            } else {
                body.push(if c.is_negative() { '-' } else { '+' });
            }
            body.push_str(&coef);
            body.push_str(syms[t]);
        }
        if body.is_empty() {
            return "0".into();
        }
        if den.is_one() {
            body
        } else {
            format!("({body})/{den}")
        }
    }
}

/// Backtracking over x[level] with the diagonalized form; exact rationals.
fn search_level(
    level: usize,
    remaining: &BigRational,
    d: &[BigRational],
    u: &[Vec<BigRational>],
    x: &mut [BigInt; 4],
    out: &mut Vec<Vec<BigInt>>,
) {
    // inner offset c = sum_{j > level} u[level][j] x_j
    let mut c = BigRational::zero();
    for j in level + 1..4 {
        c += &u[level][j] * BigRational::from(x[j].clone());
    }
    // need d[level] (x + c)^2 <= remaining
    let bound = remaining / &d[level];
    // scan integers x with (x + c)^2 <= bound, centered near -c
    let center = (-&c).round().to_integer();
    let fits = |k: &BigInt| {
        let v = BigRational::from(k.clone()) + &c;
        &v * &v <= bound
    };
    let mut lo = center.clone();
    while fits(&(&lo - 1)) {
        lo -= 1;
    }
    let mut hi = center.clone();
    while fits(&(&hi + 1)) {
        hi += 1;
    }
    if !fits(&lo) {
        return;
    }
    let mut k = lo;
    while k <= hi {
        let v = BigRational::from(k.clone()) + &c;
        let used = &d[level] * &v * &v;
        let rem2 = remaining - &used;
        x[level] = k.clone();
        if level == 0 {
            if rem2.is_zero() {
                out.push(x.to_vec());
            }
        } else {
            search_level(level - 1, &rem2, d, u, x, out);
        }
        k += 1;
    }
    x[level] = BigInt::zero();
}

/// The Hurwitz maximal order Z{1, i, j, (1+i+j+k)/2} in (-1,-1).
pub fn hurwitz_order() -> StructOrder {
    let alg = QuatAlgebra::new(-1, -1);
    let h = BigRational::new(BigInt::one(), BigInt::from(2));
    let basis = vec![
        [br(1), br(0), br(0), br(0)],
        [br(0), br(1), br(0), br(0)],
        [br(0), br(0), br(1), br(0)],
        [h.clone(), h.clone(), h.clone(), h],
    ];
    let names = ["1", "i", "j", "(1+i+j+k)/2"].map(String::from).to_vec();
    StructOrder::new(alg, basis, names).expect("integral order")
}

/// The Lipschitz order Z{1, i, j, k} in (-1,-1).
pub fn lipschitz_order() -> StructOrder {
    let alg = QuatAlgebra::new(-1, -1);
    let basis = vec![
        [br(1), br(0), br(0), br(0)],
        [br(0), br(1), br(0), br(0)],
        [br(0), br(0), br(1), br(0)],
        [br(0), br(0), br(0), br(1)],
    ];
    let names = ["1", "i", "j", "k"].map(String::from).to_vec();
    StructOrder::new(alg, basis, names).expect("integral order")
}

/// Maximal order Z{1, i, s, is} in (-1,-3), where s = -(1+j)/2 is a cube
/// root of unity. Its unit group has order 12.
pub fn cube_root_unit_order() -> StructOrder {
    let alg = QuatAlgebra::new(-1, -3);
    let h = BigRational::new(BigInt::from(-1), BigInt::from(2));
    // s = -(1+j)/2, is = -(i+k)/2
    let basis = vec![
        [br(1), br(0), br(0), br(0)],
        [br(0), br(1), br(0), br(0)],
        [h.clone(), br(0), h.clone(), br(0)],
        [br(0), h.clone(), br(0), h],
    ];
    let names = ["1", "i", "(-1-j)/2", "(-i-k)/2"].map(String::from).to_vec();
    StructOrder::new(alg, basis, names).expect("integral order")
}

/// The suborder Z{1, i, j, ij} of (-1,-3); unit group is cyclic of order 4.
/// This is the lattice on which the 4-dimensional representation acts.
pub fn four_dim_rep_order() -> StructOrder {
    let alg = QuatAlgebra::new(-1, -3);
    let basis = vec![
        [br(1), br(0), br(0), br(0)],
        [br(0), br(1), br(0), br(0)],
        [br(0), br(0), br(1), br(0)],
        [br(0), br(0), br(0), br(1)],
    ];
    let names = ["1", "i", "j", "ij"].map(String::from).to_vec();
    StructOrder::new(alg, basis, names).expect("integral order")
}
