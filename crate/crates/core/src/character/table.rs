use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::CharacterError;
use crate::algebra::CyclotomicInt;
use crate::group::{class_fusion_map, FiniteGroup};

/// A class function: one cyclotomic value per class, in class order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassFunction {
    pub values: Vec<CyclotomicInt>,
}

impl ClassFunction {
    pub fn new(values: Vec<CyclotomicInt>) -> Self {
        ClassFunction { values }
    }

    pub fn zero(classes: usize, order: u32) -> Self {
        ClassFunction {
            values: vec![CyclotomicInt::zero(order); classes],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at the identity class.
    pub fn degree(&self) -> &CyclotomicInt {
        &self.values[0]
    }

    pub fn degree_i64(&self) -> Option<i64> {
        self.values[0].as_i64()
    }

    pub fn order(&self) -> u32 {
        self.values
            .iter()
            .map(CyclotomicInt::order)
            .fold(1, |a, b| num_integer::Integer::lcm(&a, &b))
    }

    /// Re-expresses every value in `Z[ζ_order]`.
    pub fn lifted(&self, order: u32) -> ClassFunction {
        ClassFunction {
            values: self
                .values
                .iter()
                .map(|v| v.embed(order).expect("order is a common multiple"))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        ClassFunction {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        ClassFunction {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, n: &BigInt) -> Self {
        ClassFunction {
            values: self.values.iter().map(|v| v.scale(n)).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        ClassFunction {
            values: self.values.iter().map(CyclotomicInt::conj).collect(),
        }
    }

    /// Value-level equality across conductors.
    pub fn same_values(&self, other: &Self) -> bool {
        self.len() == other.len()
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| (a - b).is_zero())
    }

    /// Integer combination `Σ c_i f_i`.
    pub fn combination(coeffs: &[BigInt], fs: &[ClassFunction]) -> ClassFunction {
        assert_eq!(coeffs.len(), fs.len());
        let order = fs.iter().map(ClassFunction::order).fold(1u32, |a, b| {
            num_integer::Integer::lcm(&a, &b)
        });
        let k = fs.first().map_or(0, ClassFunction::len);
        let mut acc = ClassFunction::zero(k, order);
        for (c, f) in coeffs.iter().zip(fs) {
            if c.is_zero() {
                continue;
            }
            for (a, v) in acc.values.iter_mut().zip(&f.values) {
                *a += &v.scale(c);
            }
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    pub size: u64,
    pub centralizer_order: u64,
    pub rep_order: u64,
    pub rep_word: String,
}

/// Irreducible characters of a group together with the class data needed to
/// work with them.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub group_order: u64,
    pub conductor: u32,
    pub classes: Vec<ClassInfo>,
    pub irreducibles: Vec<ClassFunction>,
}

impl CharacterTable {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn trivial(&self) -> ClassFunction {
        ClassFunction {
            values: vec![CyclotomicInt::one(self.conductor); self.classes.len()],
        }
    }

    pub fn regular(&self) -> ClassFunction {
        let mut f = ClassFunction::zero(self.classes.len(), self.conductor);
        f.values[0] = CyclotomicInt::from_int(self.conductor, self.group_order);
        f
    }

    /// `(1/|G|) Σ_g a(g) conj(b(g))`, computed classwise and divided exactly.
    pub fn inner_product(
        &self,
        a: &ClassFunction,
        b: &ClassFunction,
    ) -> Result<CyclotomicInt, CharacterError> {
        if a.len() != self.classes.len() || b.len() != self.classes.len() {
            return Err(CharacterError::Length);
        }
        let mut acc = CyclotomicInt::zero(self.conductor);
        for ((x, y), c) in a.values.iter().zip(&b.values).zip(&self.classes) {
            if x.is_zero() || y.is_zero() {
                continue;
            }
            acc += &(x * &y.conj()).scale(&BigInt::from(c.size));
        }
        acc.div_int(&BigInt::from(self.group_order))
            .ok_or(CharacterError::NonIntegral)
    }

    /// Inner product asserted to be a rational integer.
    pub fn inner_product_int(
        &self,
        a: &ClassFunction,
        b: &ClassFunction,
    ) -> Result<BigInt, CharacterError> {
        self.inner_product(a, b)?
            .as_integer()
            .cloned()
            .ok_or(CharacterError::NonIntegral)
    }

    /// Coordinates of a virtual character in the irreducible basis, verified by
    /// reconstruction.
    pub fn decompose(&self, f: &ClassFunction) -> Result<Vec<BigInt>, CharacterError> {
        let coeffs: Vec<BigInt> = self
            .irreducibles
            .iter()
            .map(|chi| self.inner_product_int(f, chi))
            .collect::<Result<_, _>>()?;
        let rebuilt = ClassFunction::combination(&coeffs, &self.irreducibles);
        if !rebuilt.same_values(f) {
            return Err(CharacterError::NotVirtual);
        }
        Ok(coeffs)
    }

    /// Exact first orthogonality and the degree-square sum.
    pub fn check_row_orthogonality(&self) -> Result<(), CharacterError> {
        let k = self.irreducibles.len();
        if k != self.classes.len() {
            return Err(CharacterError::Orthogonality(format!(
                "{k} irreducibles for {} classes",
                self.classes.len()
            )));
        }
        let mut square_sum = BigInt::zero();
        for (i, chi) in self.irreducibles.iter().enumerate() {
            let d = chi.degree().as_integer().ok_or(CharacterError::NonIntegral)?;
            square_sum += d * d;
            for (j, psi) in self.irreducibles.iter().enumerate().skip(i) {
                let ip = self.inner_product_int(chi, psi)?;
                let expected = if i == j { BigInt::one() } else { BigInt::zero() };
                if ip != expected {
                    return Err(CharacterError::Orthogonality(format!(
                        "<chi_{i}, chi_{j}> = {ip}"
                    )));
                }
            }
        }
        if square_sum != BigInt::from(self.group_order) {
            return Err(CharacterError::Orthogonality(format!(
                "sum of squared degrees {square_sum} != {}",
                self.group_order
            )));
        }
        Ok(())
    }

    /// Exact second orthogonality: `Σ_χ conj(χ(s)) χ(t) = δ_st |C_G(s)|`.
    pub fn check_column_orthogonality(&self) -> Result<(), CharacterError> {
        let k = self.classes.len();
        for s in 0..k {
            for t in s..k {
                let mut acc = CyclotomicInt::zero(self.conductor);
                for chi in &self.irreducibles {
                    acc += &(&chi.values[s].conj() * &chi.values[t]);
                }
                let expected = if s == t {
                    BigInt::from(self.classes[s].centralizer_order)
                } else {
                    BigInt::zero()
                };
                if acc.as_integer() != Some(&expected) {
                    return Err(CharacterError::Orthogonality(format!(
                        "columns {s}, {t} give {acc}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Value at each `S`-class of a class function on `G`, given the class fusion map.
pub fn restrict_character(chi: &ClassFunction, fusion_map: &[usize]) -> ClassFunction {
    ClassFunction {
        values: fusion_map.iter().map(|&c| chi.values[c].clone()).collect(),
    }
}

/// `θ^G(x) = (|C_G(x)| / |H|) Σ_{c ⊆ x^G ∩ H} |c| θ(c)`.
pub fn induce_character(
    theta: &ClassFunction,
    h: &FiniteGroup,
    g: &FiniteGroup,
) -> Result<ClassFunction, CharacterError> {
    let map = class_fusion_map(g, h)?;
    let gc = g.classes();
    let hc = h.classes();
    let order = theta.order();
    let mut sums = vec![CyclotomicInt::zero(order); gc.len()];
    for (c, &target) in map.iter().enumerate() {
        sums[target] += &theta.values[c].scale(&BigInt::from(hc.get(c).size));
    }
    let h_order = BigInt::from(h.order());
    let values = sums
        .into_iter()
        .enumerate()
        .map(|(x, s)| {
            s.scale(&BigInt::from(gc.get(x).centralizer_order))
                .div_int(&h_order)
                .ok_or(CharacterError::NonIntegral)
        })
        .collect::<Result<_, _>>()?;
    Ok(ClassFunction { values })
}
