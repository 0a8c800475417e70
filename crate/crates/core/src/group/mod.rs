//! Finite groups by full enumeration.

pub mod classes;
pub mod element;
#[allow(clippy::module_inception)]
pub mod group;
pub mod sylow;

pub use classes::{ClassSet, ConjugacyClass};
pub use element::{ElementKind, GroupElement};
pub use group::FiniteGroup;
pub use sylow::{class_fusion_map, is_p_group, sylow_subgroup};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group too large: enumeration exceeded the cap of {cap} elements (set FUSCHAR_MAX_ORDER to raise it)")]
    TooLarge { cap: usize },
    #[error("invalid group data: {0}")]
    Invalid(String),
    #[error("word resolution failed: {0}")]
    Word(String),
    #[error("subgroup is not contained in the overgroup")]
    NotSubgroup,
}
