//! Ordinary characters: Dixon–Schneider tables, restriction, induction and
//! inner products.

pub mod dixon;
pub mod modular;
pub mod table;

pub use dixon::dixon_character_table;
pub use table::{induce_character, restrict_character, CharacterTable, ClassFunction, ClassInfo};

use thiserror::Error;

use crate::group::GroupError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharacterError {
    #[error("class function length does not match the class count")]
    Length,
    #[error("inner product is not a rational integer; the table is corrupted")]
    NonIntegral,
    #[error("class function is not a virtual character of this table")]
    NotVirtual,
    #[error("eigenspace splitting failed to reach one-dimensional spaces")]
    SplitFailure,
    #[error("lifting modular character values to cyclotomic integers failed")]
    LiftFailure,
    #[error("no suitable Dixon prime found")]
    PrimeSearch,
    #[error("orthogonality check failed: {0}")]
    Orthogonality(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}
