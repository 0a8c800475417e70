//! Exact arithmetic substrate: cyclotomic integers, integer matrices and
//! their normal forms, fraction-free determinants and lattice indices.

pub mod arith;
pub mod cyclotomic;
pub mod det;
pub mod lattice;
pub mod matrix;

pub use arith::{p_part, p_valuation};
pub use cyclotomic::CyclotomicInt;
pub use det::{det_exact, ExactRing};
pub use lattice::{lattice_volume_index, LatticeIndex};
pub use matrix::{HnfResult, IntMatrix};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("cannot embed Z[zeta_{from}] into Z[zeta_{to}]: {from} does not divide {to}")]
    BadEmbedding { from: u32, to: u32 },
    #[error("p-adic valuation of zero is undefined")]
    ZeroValuation,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("exact division failed during elimination; this indicates an arithmetic bug")]
    InexactDivision,
    #[error("sublattice is not contained in the ambient lattice")]
    NotContained,
    #[error("bases do not have equal full rank ({0} vs {1})")]
    RankMismatch(usize, usize),
}
