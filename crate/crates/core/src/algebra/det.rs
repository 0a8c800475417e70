//! Fraction-free determinants over integral domains.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{AlgebraError, CyclotomicInt};

/// An integral domain with verified exact division.
pub trait ExactRing: Clone {
    /// Precomputed data for repeatedly dividing by a fixed element.
    type Divisor;

    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_value(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn prepare_divisor(&self) -> Self::Divisor;
    fn div_exact_by(&self, d: &Self::Divisor) -> Option<Self>;
}

impl ExactRing for BigInt {
    type Divisor = BigInt;

    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero_value(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn prepare_divisor(&self) -> BigInt {
        self.clone()
    }
    fn div_exact_by(&self, d: &BigInt) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }
}

/// Division by a cyclotomic integer `d` is multiplication by the product of
/// its other Galois conjugates followed by division by the rational norm.
pub struct CycloDivisor {
    cofactor: CyclotomicInt,
    norm: BigInt,
}

impl ExactRing for CyclotomicInt {
    type Divisor = CycloDivisor;

    fn zero_like(&self) -> Self {
        CyclotomicInt::zero(self.order())
    }
    fn one_like(&self) -> Self {
        CyclotomicInt::one(self.order())
    }
    fn is_zero_value(&self) -> bool {
        CyclotomicInt::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn prepare_divisor(&self) -> CycloDivisor {
        if let Some(n) = self.as_integer() {
            return CycloDivisor {
                cofactor: CyclotomicInt::one(self.order()),
                norm: n.clone(),
            };
        }
        let cofactor = self.norm_cofactor();
        let norm = (self * &cofactor)
            .as_integer()
            .expect("norm of a cyclotomic integer is rational")
            .clone();
        CycloDivisor { cofactor, norm }
    }
    fn div_exact_by(&self, d: &CycloDivisor) -> Option<Self> {
        if d.cofactor.as_integer().is_some_and(One::is_one) {
            return self.div_int(&d.norm);
        }
        (self * &d.cofactor).div_int(&d.norm)
    }
}

/// Determinant by Bareiss elimination; every division is verified exact.
pub fn det_exact<R: ExactRing>(m: &[Vec<R>], unit: &R) -> Result<R, AlgebraError> {
    let n = m.len();
    if let Some(bad) = m.iter().find(|r| r.len() != n) {
        return Err(AlgebraError::NotSquare {
            rows: n,
            cols: bad.len(),
        });
    }
    if n == 0 {
        return Ok(unit.one_like());
    }
    let mut a: Vec<Vec<R>> = m.to_vec();
    let mut sign_flip = false;
    let mut prev: Option<R::Divisor> = None;
    for k in 0..n - 1 {
        if a[k][k].is_zero_value() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero_value()) else {
                return Ok(unit.zero_like());
            };
            a.swap(k, swap);
            sign_flip = !sign_flip;
        }
        let pivot = a[k][k].clone();
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            let aik = row[k].clone();
            for j in k + 1..n {
                let mut v = pivot.mul(&row[j]);
                if !aik.is_zero_value() && !pivot_row[j].is_zero_value() {
                    v = v.sub(&aik.mul(&pivot_row[j]));
                }
                row[j] = match &prev {
                    Some(d) => v.div_exact_by(d).ok_or(AlgebraError::InexactDivision)?,
                    None => v,
                };
            }
            row[k] = unit.zero_like();
        }
        prev = Some(pivot.prepare_divisor());
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign_flip { d.neg() } else { d })
}

pub fn det_int(m: &super::IntMatrix) -> Result<BigInt, AlgebraError> {
    det_exact(&m.to_rows(), &BigInt::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::IntMatrix;

    #[test]
    fn transitive_matrix() {
        let m = IntMatrix::from_rows(&[vec![1, 1], vec![7, -1]]);
        assert_eq!(det_int(&m).unwrap(), BigInt::from(-8));
    }

    #[test]
    fn identity_and_pivoting() {
        assert_eq!(det_int(&IntMatrix::identity(5)).unwrap(), BigInt::one());
        let m = IntMatrix::from_rows(&[vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]);
        assert_eq!(det_int(&m).unwrap(), BigInt::from(-2));
        let s = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert!(det_int(&s).unwrap().is_zero());
    }

    #[test]
    fn cyclotomic_diagonal() {
        let z = CyclotomicInt::root_of_unity(3, 1);
        let z2 = CyclotomicInt::root_of_unity(3, 2);
        let m = vec![
            vec![z.clone(), CyclotomicInt::zero(3)],
            vec![CyclotomicInt::zero(3), z2],
        ];
        assert_eq!(det_exact(&m, &z).unwrap().as_i64(), Some(1));
    }

    #[test]
    fn cyclotomic_vandermonde() {
        // det of the character table of C_5 is a Vandermonde determinant with
        // |det|^2 = 5^5.
        let rows: Vec<Vec<CyclotomicInt>> = (0..5)
            .map(|i| (0..5).map(|j| CyclotomicInt::root_of_unity(5, i * j)).collect())
            .collect();
        let d = det_exact(&rows, &rows[0][0]).unwrap();
        assert_eq!((&d * &d.conj()).as_i64(), Some(3125));
    }
}
