//! Exact computational algebra for duality-shift arithmetic: finite groups,
//! p-adic orders, mod-p group cohomology, characteristic classes of
//! representations, and the resulting Picard-group shift computations.
//!
//! Everything is exact (arbitrary-precision integers, residues, cyclotomic
//! values); there is no floating point anywhere in this crate.

pub mod charcls;
pub mod cohomology;
pub mod cyclotomic;
pub mod error;
pub mod fp;
pub mod group;
pub mod lattice;
pub mod matrix;
pub mod order;
pub mod rep;
pub mod shift;
pub mod sympoly;
pub mod truncated;
pub mod verify;

pub use error::Error;

/// Size and precision caps, overridable from the CLI.
#[derive(Clone, Debug)]
pub struct Config {
    /// p-adic working precision: rings are truncated mod p^precision.
    pub precision: u32,
    /// Degree bound for bar-resolution cohomology.
    pub max_degree: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { precision: 6, max_degree: 4 }
    }
}
