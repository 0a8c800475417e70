//! The lattice of `F`-stable virtual characters, decomposition matrices and
//! bounded searches for indecomposable stable characters.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::lattice::volume;
use crate::algebra::matrix::RowSolver;
use crate::algebra::det::det_int;
use crate::algebra::{AlgebraError, IntMatrix};
use crate::character::{restrict_character, CharacterError, CharacterTable, ClassFunction};
use crate::fusion::FusionData;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StableError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error("stable lattice has rank {rank} but the fusion system has {k} classes")]
    RankMismatch { rank: usize, k: usize },
    #[error("coordinate characters have {chars} columns, fusion data has {columns}")]
    ColumnMismatch { chars: usize, columns: usize },
    #[error("{0} is not constant on the classes of F")]
    Unstable(String),
    #[error("indecomposable search exceeded the cap of {0} lattice points")]
    Cap(usize),
}

/// Coordinate characters: a Z-basis of an ambient lattice of class functions,
/// given by their values on the fusion columns. In group mode these are
/// `Irr(S)`; in table mode a basis of `Ch(S)^N` for an overgroup `N`.
#[derive(Clone, Debug)]
pub struct Ambient {
    pub labels: Vec<String>,
    pub chars: Vec<ClassFunction>,
    pub conductor: u32,
}

impl Ambient {
    pub fn from_table(table: &CharacterTable) -> Self {
        Ambient {
            labels: (0..table.irreducibles.len()).map(|i| format!("X.{i}")).collect(),
            chars: table.irreducibles.iter().map(|c| c.lifted(table.conductor)).collect(),
            conductor: table.conductor,
        }
    }

    pub fn new(labels: Vec<String>, chars: Vec<ClassFunction>) -> Self {
        let conductor = chars
            .iter()
            .map(ClassFunction::order)
            .fold(1u32, |a, b| num_integer::Integer::lcm(&a, &b));
        Ambient {
            labels,
            chars: chars.iter().map(|c| c.lifted(conductor)).collect(),
            conductor,
        }
    }

    pub fn dim(&self) -> usize {
        self.chars.len()
    }

    pub fn degrees(&self) -> Vec<BigInt> {
        self.chars
            .iter()
            .map(|c| c.degree().as_integer().cloned().unwrap_or_default())
            .collect()
    }

    /// `Σ x_i χ_i`.
    pub fn evaluate(&self, coords: &[BigInt]) -> ClassFunction {
        ClassFunction::combination(coords, &self.chars)
    }
}

#[derive(Clone, Debug)]
pub struct StableLattice {
    pub ambient: Ambient,
    /// Rows are basis vectors in ambient coordinates, in Hermite normal form.
    pub basis: IntMatrix,
    pub rank: usize,
    solver: RowSolver,
}

/// Whether a class function on the fusion columns is constant on every class.
pub fn is_stable(f: &ClassFunction, fusion: &FusionData) -> bool {
    fusion.classes().iter().all(|class| {
        let first = &f.values[class.columns[0]];
        class.columns[1..].iter().all(|&c| (&f.values[c] - first).is_zero())
    })
}

/// Computes `Ch(S)^F` inside the ambient lattice.
pub fn stable_character_basis(ambient: &Ambient, fusion: &FusionData) -> Result<StableLattice, StableError> {
    let m = ambient.dim();
    if let Some(c) = ambient.chars.iter().find(|c| c.len() != fusion.columns.len()) {
        return Err(StableError::ColumnMismatch {
            chars: c.len(),
            columns: fusion.columns.len(),
        });
    }
    let mut constraint_cols: Vec<Vec<BigInt>> = Vec::new();
    for class in fusion.classes() {
        let c0 = class.columns[0];
        for &ci in &class.columns[1..] {
            let diffs: Vec<_> = ambient
                .chars
                .iter()
                .map(|chi| &chi.values[c0] - &chi.values[ci])
                .collect();
            let width = ambient.conductor as usize;
            for t in 0..width {
                let col: Vec<BigInt> = diffs
                    .iter()
                    .map(|d| d.coeffs().get(t).cloned().unwrap_or_default())
                    .collect();
                if col.iter().any(|x| !x.is_zero()) {
                    constraint_cols.push(col);
                }
            }
        }
    }
    let basis = if constraint_cols.is_empty() {
        IntMatrix::identity(m)
    } else {
        IntMatrix::from_rows_with_cols(&constraint_cols, m)
            .transpose()
            .left_kernel()
    };
    let rank = basis.nrows();
    if rank != fusion.k() {
        return Err(StableError::RankMismatch { rank, k: fusion.k() });
    }
    let solver = RowSolver::new(&basis)?;
    let lattice = StableLattice {
        ambient: ambient.clone(),
        basis,
        rank,
        solver,
    };
    for i in 0..rank {
        if !is_stable(&lattice.basis_function(i), fusion) {
            return Err(StableError::Unstable(format!("basis row {i}")));
        }
    }
    Ok(lattice)
}

impl StableLattice {
    pub fn basis_function(&self, i: usize) -> ClassFunction {
        self.ambient.evaluate(self.basis.row(i))
    }

    pub fn basis_functions(&self) -> Vec<ClassFunction> {
        (0..self.rank).map(|i| self.basis_function(i)).collect()
    }

    /// Lattice coordinates of an ambient vector, if it lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        self.solver.solve(v)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Ambient coordinates of a class function, found by solving against the
    /// coordinate characters' values. Returns `None` if it is not an integral
    /// combination.
    pub fn ambient_coordinates(&self, f: &ClassFunction) -> Option<Vec<BigInt>> {
        ambient_solve(&self.ambient, f)
    }

    pub fn volume(&self) -> Result<BigInt, StableError> {
        Ok(volume(&self.basis)?)
    }

    /// Whether the rows of `other` (ambient coordinates) form a basis of this lattice.
    pub fn is_basis(&self, other: &IntMatrix) -> Result<bool, StableError> {
        if other.nrows() != self.rank || other.rank() != self.rank {
            return Ok(false);
        }
        if !other.rows_iter().all(|r| self.contains(r)) {
            return Ok(false);
        }
        // Equal spans iff the change of basis is unimodular.
        let solver = RowSolver::new(other)?;
        Ok(self.basis.rows_iter().all(|r| solver.solve(r).is_some()))
    }
}

/// Solves `Σ x_i χ_i = f` over the integers using the cyclotomic coefficients
/// of the values as linear equations.
pub fn ambient_solve(ambient: &Ambient, f: &ClassFunction) -> Option<Vec<BigInt>> {
    let f = f.lifted(num_integer::Integer::lcm(&f.order(), &ambient.conductor));
    let order = f.order();
    let chars: Vec<ClassFunction> = ambient.chars.iter().map(|c| c.lifted(order)).collect();
    let mut rows: Vec<Vec<BigInt>> = chars.iter().map(|_| Vec::new()).collect();
    let mut target = Vec::new();
    for col in 0..f.len() {
        for t in 0..order as usize {
            for (row, chi) in rows.iter_mut().zip(&chars) {
                row.push(chi.values[col].coeffs()[t].clone());
            }
            target.push(f.values[col].coeffs()[t].clone());
        }
    }
    let ncols = target.len();
    let keep: Vec<usize> = (0..ncols)
        .filter(|&j| !target[j].is_zero() || rows.iter().any(|r| !r[j].is_zero()))
        .collect();
    let rows: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|r| keep.iter().map(|&j| r[j].clone()).collect())
        .collect();
    let target: Vec<BigInt> = keep.iter().map(|&j| target[j].clone()).collect();
    let m = IntMatrix::from_rows_with_cols(&rows, keep.len());
    RowSolver::new(&m).ok()?.solve(&target)
}

/// Restrictions of `Irr(G)` written in a stable basis.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompositionData {
    /// Rows indexed by `Irr(G)`, columns by the basis.
    pub d: IntMatrix,
    /// `Dᵀ D`.
    pub c: IntMatrix,
    pub det_c: BigInt,
    /// Whether every restriction was an integral combination of the basis.
    pub integral: bool,
}

/// Decomposes each `χ|_S`, `χ ∈ Irr(G)`, in the lattice basis.
pub fn decomposition_matrix(
    irr_g: &CharacterTable,
    irr_s: &CharacterTable,
    fusion_map: &[usize],
    lattice: &StableLattice,
) -> Result<DecompositionData, StableError> {
    let mut rows = Vec::with_capacity(irr_g.irreducibles.len());
    let mut integral = true;
    for chi in &irr_g.irreducibles {
        let res = restrict_character(chi, fusion_map);
        let coords = irr_s.decompose(&res)?;
        match lattice.coordinates(&coords) {
            Some(x) => rows.push(x),
            None => {
                integral = false;
                rows.push(vec![BigInt::zero(); lattice.rank]);
            }
        }
    }
    let d = IntMatrix::from_rows_with_cols(&rows, lattice.rank);
    let c = d.transpose().mul(&d)?;
    let det_c = det_int(&c)?;
    Ok(DecompositionData { d, c, det_c, integral })
}

/// Result of a bounded search for indecomposable stable characters.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IndecomposableReport {
    /// Ambient coordinates, ordered by degree then lexicographically.
    pub characters: Vec<Vec<BigInt>>,
    pub degrees: Vec<BigInt>,
    /// The list is complete for degrees up to this bound.
    pub degree_bound: u64,
    /// Number of genuine stable characters visited.
    pub visited: usize,
}

/// Enumerates the nonzero genuine stable characters of degree at most
/// `degree_bound` and keeps those that are not sums of two such characters.
/// Here "genuine" means nonnegative in ambient coordinates.
pub fn indecomposables_bounded(
    lattice: &StableLattice,
    degree_bound: u64,
    cap: usize,
) -> Result<IndecomposableReport, StableError> {
    let degrees: Vec<i64> = lattice
        .ambient
        .degrees()
        .iter()
        .map(|d| d.to_i64().unwrap_or(i64::MAX))
        .collect();
    if degrees.iter().any(|&d| d <= 0) {
        return Err(StableError::Unstable("coordinate character of nonpositive degree".into()));
    }
    let h = &lattice.basis;
    let r = lattice.rank;
    let m = lattice.ambient.dim();
    let hrows: Vec<Vec<i64>> = (0..r)
        .map(|i| h.row(i).iter().map(|x| x.to_i64().expect("small HNF entries")).collect())
        .collect();
    let pivots: Vec<usize> = hrows
        .iter()
        .map(|row| row.iter().position(|&x| x != 0).expect("nonzero basis row"))
        .collect();
    let mut found: Vec<Vec<i64>> = Vec::new();
    let mut state = Search {
        hrows: &hrows,
        pivots: &pivots,
        degrees: &degrees,
        bound: degree_bound as i64,
        cap,
        visited: 0,
        m,
    };
    let mut x = vec![0i64; m];
    state.walk(0, &mut x, &mut found)?;
    found.retain(|v| v.iter().any(|&c| c != 0));
    let deg = |v: &Vec<i64>| v.iter().zip(&degrees).map(|(a, d)| a * d).sum::<i64>();
    found.sort_by(|a, b| deg(a).cmp(&deg(b)).then_with(|| a.cmp(b)));
    let mut ind: Vec<Vec<i64>> = Vec::new();
    for (i, v) in found.iter().enumerate() {
        let dv = deg(v);
        let decomposable = found[..i]
            .iter()
            .any(|w| deg(w) < dv && w.iter().zip(v).all(|(a, b)| a <= b));
        if !decomposable {
            ind.push(v.clone());
        }
    }
    Ok(IndecomposableReport {
        degrees: ind.iter().map(|v| BigInt::from(deg(v))).collect(),
        characters: ind
            .into_iter()
            .map(|v| v.into_iter().map(BigInt::from).collect())
            .collect(),
        degree_bound,
        visited: state.visited,
    })
}

struct Search<'a> {
    hrows: &'a [Vec<i64>],
    pivots: &'a [usize],
    degrees: &'a [i64],
    bound: i64,
    cap: usize,
    visited: usize,
    m: usize,
}

impl Search<'_> {
    /// `x` holds the partial sum of the rows chosen so far. Row `i` is chosen
    /// next; once it is fixed, every column before the next pivot is final.
    fn walk(&mut self, i: usize, x: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) -> Result<(), StableError> {
        self.visited += 1;
        if self.visited > self.cap {
            return Err(StableError::Cap(self.cap));
        }
        if i == self.hrows.len() {
            out.push(x.clone());
            return Ok(());
        }
        let row = &self.hrows[i];
        let p = self.pivots[i];
        let next_pivot = self.pivots.get(i + 1).copied().unwrap_or(self.m);
        let lead = row[p];
        // Degree already committed by final columns before this pivot.
        let committed: i64 = (0..p).map(|c| x[c] * self.degrees[c]).sum();
        let room = self.bound - committed;
        if room < 0 {
            return Ok(());
        }
        // x[p] + c·lead must lie in [0, room / deg_p].
        let hi = room / self.degrees[p];
        let c_min = div_ceil(-x[p], lead);
        let c_max = (hi - x[p]).div_euclid(lead);
        for c in c_min..=c_max {
            for (xj, rj) in x.iter_mut().zip(row) {
                *xj += c * rj;
            }
            let ok = (p..next_pivot).all(|col| x[col] >= 0)
                && (0..next_pivot).map(|col| x[col] * self.degrees[col]).sum::<i64>() <= self.bound;
            if ok {
                self.walk(i + 1, x, out)?;
            }
            for (xj, rj) in x.iter_mut().zip(row) {
                *xj -= c * rj;
            }
        }
        Ok(())
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// Unique factorisation holds iff the indecomposables number `𝐤(F)`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FactorialityReport {
    pub factorial: bool,
    pub indecomposables: usize,
    pub k: usize,
    /// The answer is only as complete as the search bound.
    pub degree_bound: u64,
}

pub fn factoriality_check(lattice: &StableLattice, ind: &IndecomposableReport) -> FactorialityReport {
    FactorialityReport {
        factorial: ind.characters.len() == lattice.rank,
        indecomposables: ind.characters.len(),
        k: lattice.rank,
        degree_bound: ind.degree_bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::character::dixon_character_table;
    use crate::group::{FiniteGroup, GroupElement};
    use std::sync::Arc;

    fn c8() -> Arc<FiniteGroup> {
        let a = GroupElement::permutation(&[1, 2, 3, 4, 5, 6, 7, 0]).unwrap();
        Arc::new(FiniteGroup::generate(a.kind(), vec![a]).unwrap())
    }

    #[test]
    fn trivial_fusion_gives_identity() {
        let s = c8();
        let t = dixon_character_table(&s).unwrap();
        let f = FusionData::of_group_itself(s, 2).unwrap();
        let l = stable_character_basis(&Ambient::from_table(&t), &f).unwrap();
        assert_eq!(l.basis, IntMatrix::identity(8));
    }

    #[test]
    fn transitive_rank_two() {
        let s = c8();
        let t = dixon_character_table(&s).unwrap();
        let f = FusionData::of_group_itself(s, 2).unwrap().transitive().unwrap();
        let amb = Ambient::from_table(&t);
        let l = stable_character_basis(&amb, &f).unwrap();
        assert_eq!(l.rank, 2);
        let trivial = amb.chars.iter().position(|c| c.same_values(&t.trivial())).unwrap();
        let mut one = vec![BigInt::zero(); 8];
        one[trivial] = BigInt::one();
        let reg_minus_one: Vec<BigInt> = (0..8).map(|i| BigInt::from(i64::from(i != trivial))).collect();
        assert!(l.is_basis(&IntMatrix::from_rows(&[one, reg_minus_one])).unwrap());
    }

    #[test]
    fn ambient_solve_roundtrip() {
        let s = c8();
        let t = dixon_character_table(&s).unwrap();
        let amb = Ambient::from_table(&t);
        let x: Vec<BigInt> = (0..8).map(|i| BigInt::from(i * 3 - 7)).collect();
        let f = amb.evaluate(&x);
        assert_eq!(ambient_solve(&amb, &f), Some(x));
    }
}
