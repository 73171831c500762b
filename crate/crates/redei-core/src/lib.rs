//! Exact verification toolkit for the minimal nonabelian 2-groups
//!
//! ```text
//! D(r,s) = < x, y | x^(2^r) = y^(2^s) = [x,y]^2 = [x,x,y] = [y,x,y] = 1 >,   r >= s >= 1.
//! ```
//!
//! Everything is integer-exact: normal-form group arithmetic, Cayley tables
//! for constructed groups (quotients, the semidirect products A4 x| C_{2^r}),
//! automorphism and fusion computations, subsection bookkeeping, block
//! invariant formulas with their inequality gates, Smith normal forms and
//! binary quadratic form reduction, and the generalized decomposition column
//! families with their orthogonality and exclusion searches.
//!
//! The `checks` module binds all of it into a catalog of named, citable
//! checks with JSON reports; the `redei` binary exposes them on the command
//! line.

pub mod checks;
pub mod decomp;
pub mod generic_group;
pub mod intforms;
pub mod invariants;
pub mod morphisms;
pub mod nf_group;
pub mod subsections;

pub use nf_group::{AbelianType, GroupParams, NfElement};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),
    #[error("group is not abelian")]
    NotAbelian,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("form is not positive definite")]
    NotPositiveDefinite,
    #[error("invalid discriminant: {0}")]
    InvalidDiscriminant(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("dimension mismatch: {0}")]
    SizeMismatch(String),
    #[error("unknown check id: {0}")]
    UnknownCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
