//! Explicit groups and fusion systems on a Sylow p-subgroup of `PSp_4(p)`,
//! together with the orbit counts and character tables used to study them.

pub mod exotic;
pub mod groups;
pub mod orbits;
pub mod tables;

pub use groups::{build_group, gamma_group, GroupKind};
pub use orbits::{count_n_v_psi, gamma_orbit_analysis, induced_value_formula, OrbitInfo};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::arith::{is_prime, is_square_mod, primitive_root};
use crate::character::CharacterError;
use crate::fusion::FusionError;
use crate::group::GroupError;
use crate::stable::StableError;
use crate::verify::VerifyError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Stable(#[from] StableError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("table alignment failed: {0}")]
    Alignment(String),
}

/// Which subgroup of `F_p^× × PGL_2(p)` acts on the quadratic forms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaVariant {
    /// `Γ = Γ_(1)`.
    #[default]
    Full,
    /// `Γ_(2)`, used when `p ≡ 3 (mod 4)`.
    Index2,
    /// `Γ*_(4)`, used when `p ≡ 1 (mod 4)`.
    Star4,
}

impl GammaVariant {
    pub fn e(self) -> u64 {
        match self {
            GammaVariant::Full => 1,
            GammaVariant::Index2 => 2,
            GammaVariant::Star4 => 4,
        }
    }

    pub fn star(self) -> bool {
        self == GammaVariant::Star4
    }

    /// The variant giving `O^{p'}` of the full system at this prime.
    pub fn op_prime(p: u64) -> Self {
        if p % 4 == 3 {
            GammaVariant::Index2
        } else {
            GammaVariant::Star4
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionParams {
    pub p: u64,
    pub e: u64,
    pub star: bool,
    /// `−ε` is a non-square.
    pub epsilon: u64,
    pub lambda: u64,
    pub b: u64,
}

impl ConstructionParams {
    /// Parameters for `Γ_(1)`, with the smallest admissible `ε`, `λ` and `b`.
    pub fn new(p: u64) -> Result<Self, ConstructionError> {
        if p < 3 || !is_prime(p) || p > 251 {
            return Err(ConstructionError::Inadmissible(format!(
                "p = {p} must be an odd prime below 256"
            )));
        }
        let epsilon = (1..p)
            .find(|&e| !is_square_mod(p - e, p))
            .expect("−1 or −2 ... some value is a non-square");
        let lambda = primitive_root(p);
        Ok(ConstructionParams {
            p,
            e: 1,
            star: false,
            epsilon,
            lambda,
            b: lambda,
        })
    }

    pub fn with_variant(p: u64, variant: GammaVariant) -> Result<Self, ConstructionError> {
        let mut params = Self::new(p)?;
        match variant {
            GammaVariant::Full => {}
            GammaVariant::Index2 if p % 4 != 3 => {
                return Err(ConstructionError::Inadmissible(format!(
                    "Γ_(2) requires p ≡ 3 (mod 4), got p = {p}"
                )))
            }
            GammaVariant::Star4 if p % 4 != 1 => {
                return Err(ConstructionError::Inadmissible(format!(
                    "Γ*_(4) requires p ≡ 1 (mod 4), got p = {p}"
                )))
            }
            _ => {}
        }
        params.e = variant.e();
        params.star = variant.star();
        Ok(params)
    }

    /// Arbitrary `(e, star)` with `e | p − 1`; the twisted form needs even `e`.
    pub fn with_gamma(p: u64, e: u64, star: bool) -> Result<Self, ConstructionError> {
        let mut params = Self::new(p)?;
        if e == 0 || !(p - 1).is_multiple_of(e) {
            return Err(ConstructionError::Inadmissible(format!("e = {e} must divide p − 1 = {}", p - 1)));
        }
        if star && !e.is_multiple_of(2) {
            return Err(ConstructionError::Inadmissible("the twisted variant needs even e".into()));
        }
        params.e = e;
        params.star = star;
        Ok(params)
    }

    /// `|Γ_(e)| = (p − 1)(p³ − p)/e`.
    pub fn gamma_order(&self) -> u64 {
        (self.p - 1) * (self.p.pow(3) - self.p) / self.e
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_choices() {
        let got: Vec<(u64, u64)> = [3, 5, 7]
            .iter()
            .map(|&p| {
                let c = ConstructionParams::new(p).unwrap();
                (c.epsilon, c.lambda)
            })
            .collect();
        assert_eq!(got, vec![(1, 2), (2, 2), (1, 3)]);
        assert!(ConstructionParams::with_variant(5, GammaVariant::Index2).is_err());
        assert!(ConstructionParams::with_variant(7, GammaVariant::Star4).is_err());
        assert!(ConstructionParams::with_gamma(7, 4, false).is_err());
    }
}
