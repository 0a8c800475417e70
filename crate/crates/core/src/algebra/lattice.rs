//! Volumes and indices of full-rank integer lattices.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::det::det_int;
use super::matrix::RowSolver;
use super::{AlgebraError, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeIndex {
    pub vol_l: BigInt,
    pub vol_m: BigInt,
    /// The group index `|L : M|`.
    pub index: BigInt,
    /// Smith invariants of the change-of-basis matrix `T` with `M = T·L`.
    pub elementary_divisors: Vec<BigInt>,
}

/// Volume of the lattice spanned by the rows of `basis`. For a non-square
/// basis this is the square root of the Gram determinant, which must be a
/// perfect square here.
pub fn volume(basis: &IntMatrix) -> Result<BigInt, AlgebraError> {
    if basis.nrows() == basis.ncols() {
        return Ok(det_int(basis)?.abs());
    }
    let gram = basis.mul(&basis.transpose())?;
    let g = det_int(&gram)?;
    let r = g.sqrt();
    if &r * &r == g {
        Ok(r)
    } else {
        Err(AlgebraError::Dimension(
            "volume of a non-full-rank lattice is irrational".into(),
        ))
    }
}

/// Computes `vol(L)`, `vol(M)` and `|L : M|` for `M ⊆ L` of equal rank.
///
/// The index comes from the change-of-basis matrix `T` (`M = T·L`), as
/// `|det T|`, and is cross-checked against the product of Smith invariants.
/// With this orientation `vol(M) = |L : M| · vol(L)`.
pub fn lattice_volume_index(l: &IntMatrix, m: &IntMatrix) -> Result<LatticeIndex, AlgebraError> {
    let rl = l.rank();
    let rm = m.rank();
    if rl != l.nrows() || rm != m.nrows() || rl != rm {
        return Err(AlgebraError::RankMismatch(rl, rm));
    }
    let solver = RowSolver::new(l)?;
    let mut t_rows = Vec::with_capacity(m.nrows());
    for row in m.rows_iter() {
        t_rows.push(solver.solve(row).ok_or(AlgebraError::NotContained)?);
    }
    let t = IntMatrix::from_rows_with_cols(&t_rows, rl);
    let index = det_int(&t)?.abs();
    let divisors = t.smith_diagonal();
    let product: BigInt = divisors.iter().product();
    if product != index || index.is_zero() {
        return Err(AlgebraError::InexactDivision);
    }
    let vol_l = volume(l)?;
    let vol_m = volume(m)?;
    if vol_m != &index * &vol_l {
        return Err(AlgebraError::InexactDivision);
    }
    Ok(LatticeIndex {
        vol_l,
        vol_m,
        index,
        elementary_divisors: divisors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaled_lattice() {
        let l = IntMatrix::identity(2);
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]]);
        let r = lattice_volume_index(&l, &m).unwrap();
        assert_eq!(r.vol_l, BigInt::from(1));
        assert_eq!(r.vol_m, BigInt::from(4));
        assert_eq!(r.index, BigInt::from(4));
    }

    #[test]
    fn equal_lattices() {
        let l = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let m = IntMatrix::from_rows(&[vec![4, 6], vec![3, 4]]);
        assert_eq!(lattice_volume_index(&l, &m).unwrap().index, BigInt::from(1));
    }

    #[test]
    fn not_contained() {
        let l = IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]]);
        let m = IntMatrix::identity(2);
        assert_eq!(lattice_volume_index(&l, &m), Err(AlgebraError::NotContained));
    }

    #[test]
    fn rank_deficient_embedding() {
        // rank-1 lattices in Z^2
        let l = IntMatrix::from_rows(&[vec![0, 1]]);
        let m = IntMatrix::from_rows(&[vec![0, 3]]);
        let r = lattice_volume_index(&l, &m).unwrap();
        assert_eq!(r.index, BigInt::from(3));
    }
}
