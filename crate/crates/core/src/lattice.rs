//! Integer lattices given by generating rows, with p-saturation, membership,
//! relative index, and stability under integer matrix actions.

use crate::error::{Error, Result};
use crate::matrix::{smith_normal_form, solve_left, IntMatrix};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug)]
pub struct Lattice {
    /// Rows generate the lattice inside Z^ambient.
    pub gens: IntMatrix,
}

impl Lattice {
    pub fn new(gens: IntMatrix) -> Self {
        Lattice { gens }
    }

    pub fn standard(dim: usize) -> Self {
        Lattice { gens: IntMatrix::identity(dim) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.gens.cols
    }

    pub fn rank(&self) -> usize {
        smith_normal_form(&self.gens).rank()
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        Ok(solve_left(&self.gens, v)?.is_some())
    }

    pub fn contains_lattice(&self, other: &Lattice) -> Result<bool> {
        for i in 0..other.gens.rows {
            if !self.contains(other.gens.row(i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Lattice) -> Result<bool> {
        Ok(self.contains_lattice(other)? && other.contains_lattice(self)?)
    }

    /// Canonical generating rows: the nonzero rows of D * V^{-1} from the
    /// Smith form, so equal lattices get equal bases.
    pub fn canonical_basis(&self) -> Result<IntMatrix> {
        let snf = smith_normal_form(&self.gens);
        let full = snf.d.mul(&snf.v_inv)?;
        let r = snf.rank();
        if r == 0 {
            // keep the ambient dimension; the zero lattice gets a zero row
            return Ok(IntMatrix::zero(1, self.ambient_dim()));
        }
        let mut rows = Vec::with_capacity(r);
        for i in 0..r {
            rows.push(full.row(i).to_vec());
        }
        IntMatrix::from_rows(rows)
    }

    /// Divide every p-power out of the elementary divisors: the result is
    /// the smallest lattice containing this one whose quotient has no
    /// p-torsion. Rank is preserved.
    pub fn saturate_at_p(&self, p: u64) -> Result<Lattice> {
        let snf = smith_normal_form(&self.gens);
        let pb = BigInt::from(p);
        let mut d = snf.d.clone();
        let bound = d.rows.min(d.cols);
        for i in 0..bound {
            let mut x = d.get(i, i).clone();
            while !x.is_zero() && (&x % &pb).is_zero() {
                x /= &pb;
            }
            d.set(i, i, x);
        }
        let full = d.mul(&snf.v_inv)?;
        let r = snf.rank();
        if r == 0 {
            return Ok(Lattice::new(IntMatrix::zero(1, self.ambient_dim())));
        }
        let mut rows = Vec::with_capacity(r);
        for i in 0..r {
            rows.push(full.row(i).to_vec());
        }
        Ok(Lattice::new(IntMatrix::from_rows(rows)?))
    }

    /// Index [super : sub] when sub is a finite-index sublattice of self.
    pub fn index_of_sublattice(&self, sub: &Lattice) -> Result<BigInt> {
        // coordinates of sub generators in terms of self
        let mut coord_rows = Vec::with_capacity(sub.gens.rows);
        for i in 0..sub.gens.rows {
            let c = solve_left(&self.gens, sub.gens.row(i))?.ok_or(Error::NotContained)?;
            coord_rows.push(c);
        }
        let coords = IntMatrix::from_rows(coord_rows)?;
        let snf = smith_normal_form(&coords);
        if snf.rank() != self.rank() {
            return Err(Error::DimensionMismatch("sublattice has smaller rank".into()));
        }
        let mut idx = BigInt::one();
        for f in snf.invariant_factors() {
            idx *= f;
        }
        Ok(idx.abs())
    }

    /// Does v * m stay in the lattice for every generator v?
    pub fn is_stable_under(&self, m: &IntMatrix) -> Result<bool> {
        if m.rows != self.ambient_dim() || m.cols != self.ambient_dim() {
            return Err(Error::DimensionMismatch("action matrix vs ambient".into()));
        }
        for i in 0..self.gens.rows {
            let img = IntMatrix::row_vec_mul(self.gens.row(i), m)?;
            if !self.contains(&img)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Error (NotStable) when any of the matrices moves the lattice off itself.
pub fn check_stability(lat: &Lattice, actions: &[IntMatrix]) -> Result<()> {
    for m in actions {
        if !lat.is_stable_under(m)? {
            return Err(Error::NotStable);
        }
    }
    Ok(())
}
