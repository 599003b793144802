//! One error type for the whole crate.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not square")]
    NotSquare,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("basis is singular")]
    SingularBasis,
    #[error("structure constants are not integral")]
    NonIntegralEntries,
    #[error("norm form is not positive definite")]
    NormNotDefinite,
    #[error("element is not a unit")]
    NotUnit,
    #[error("map is not a ring homomorphism")]
    NotHomomorphism,
    #[error("map is not an automorphism")]
    NotAutomorphism,
    #[error("not symmetric in the given variables")]
    NotSymmetric,
    #[error("group too large: {0}")]
    TooLarge(String),
    #[error("multiplication table fails the group axioms: {0}")]
    NotAGroup(String),
    #[error("subgroup embedding is not closed or not injective")]
    NotSubgroup,
    #[error("elements belong to different groups")]
    MixedGroups,
    #[error("p-adic precision too low: {0}")]
    PrecisionTooLow(String),
    #[error("Newton iteration failed to converge")]
    HenselNonconvergent,
    #[error("series diverges: {0}")]
    SeriesDivergence(String),
    #[error("quotient is outside the abelian range")]
    OutOfAbelianRange,
    #[error("element order does not match: {0}")]
    OrderMismatch(String),
    #[error("lattice is not stable under the action")]
    NotStable,
    #[error("vector is not contained in the lattice")]
    NotContained,
    #[error("multiplier is not invertible for the given order")]
    BadMultiplier,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("values do not form a class function")]
    NotAClassFunction,
    #[error("character table is incomplete or inconsistent")]
    IncompleteTable,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("first Chern class is odd: no spin structure choice exists")]
    NotSpinnable,
    #[error("spin structure choice is ambiguous")]
    SpinAmbiguity,
    #[error("representation does not split into lines and trivial summands")]
    NoDecomposition,
    #[error("too many variables: {0}")]
    TooManyVariables(String),
    #[error("class table does not cover this representation")]
    IncompleteCatalog,
    #[error("value is claimed for the wrong group")]
    WrongGroup,
    #[error("quotient of the representation ring is not cyclic on the stated generator")]
    NotReducible,
    #[error("unknown verification suite: {0}")]
    UnknownSuite(String),
    #[error("unknown subgroup tag: {0}")]
    UnknownTag(String),
    /// A cross-checked internal invariant failed. This is a bug, never user error.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
