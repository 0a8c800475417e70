//! Dense matrices over `Z` with Hermite and Smith normal forms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::AlgebraError;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

/// Row-style Hermite normal form together with the unimodular transform.
#[derive(Clone, Debug)]
pub struct HnfResult {
    pub hnf: IntMatrix,
    pub transform: IntMatrix,
    pub rank: usize,
    /// Pivot column of each of the first `rank` rows.
    pub pivots: Vec<usize>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like [`IntMatrix::from_rows`] but with an explicit column count, so
    /// that matrices with zero rows keep their width.
    pub fn from_rows_with_cols<T: Into<BigInt> + Clone>(rows: &[Vec<T>], cols: usize) -> Self {
        let data: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix rows");
                r.iter().cloned().map(Into::into).collect()
            })
            .collect();
        IntMatrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[BigInt]> {
        self.data.iter().map(Vec::as_slice)
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.data.clone()
    }

    pub fn push_row(&mut self, row: Vec<BigInt>) {
        assert_eq!(row.len(), self.cols);
        self.data.push(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![BigInt::zero(); self.cols];
        for (a, row) in v.iter().zip(&self.data) {
            if a.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(row) {
                if !b.is_zero() {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(Zero::is_zero)
    }

    /// Row-style Hermite normal form.
    ///
    /// Columns are scanned left to right; in each column the entry of least
    /// absolute value is used as pivot until it divides everything below it.
    /// Pivots are made positive and entries above each pivot are reduced into
    /// `[0, pivot)`.
    pub fn hnf(&self) -> HnfResult {
        let m = self.rows;
        let mut a = self.data.clone();
        let mut t: Vec<Vec<BigInt>> = IntMatrix::identity(m).data;
        let mut r = 0;
        let mut pivots = Vec::new();
        for c in 0..self.cols {
            if r == m {
                break;
            }
            loop {
                let best = (r..m)
                    .filter(|&i| !a[i][c].is_zero())
                    .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()).then(i.cmp(&j)));
                let Some(best) = best else { break };
                a.swap(r, best);
                t.swap(r, best);
                let mut done = true;
                for i in r + 1..m {
                    if a[i][c].is_zero() {
                        continue;
                    }
                    let q = a[i][c].div_floor(&a[r][c]);
                    sub_row_multiple(&mut a, i, r, &q);
                    sub_row_multiple(&mut t, i, r, &q);
                    if !a[i][c].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if a[r][c].is_zero() {
                continue;
            }
            if a[r][c].is_negative() {
                negate_row(&mut a[r]);
                negate_row(&mut t[r]);
            }
            for i in 0..r {
                let q = a[i][c].div_floor(&a[r][c]);
                if !q.is_zero() {
                    sub_row_multiple(&mut a, i, r, &q);
                    sub_row_multiple(&mut t, i, r, &q);
                }
            }
            pivots.push(c);
            r += 1;
        }
        HnfResult {
            hnf: IntMatrix {
                rows: m,
                cols: self.cols,
                data: a,
            },
            transform: IntMatrix {
                rows: m,
                cols: m,
                data: t,
            },
            rank: r,
            pivots,
        }
    }

    /// Nonzero rows of the Hermite normal form: a canonical basis of the row lattice.
    pub fn row_lattice_basis(&self) -> IntMatrix {
        let h = self.hnf();
        IntMatrix {
            rows: h.rank,
            cols: self.cols,
            data: h.hnf.data[..h.rank].to_vec(),
        }
    }

    /// HNF basis of `{x ∈ Z^rows : x·self = 0}`.
    pub fn left_kernel(&self) -> IntMatrix {
        let h = self.hnf();
        let kernel: Vec<Vec<BigInt>> = h.transform.data[h.rank..].to_vec();
        IntMatrix::from_rows_with_cols(&kernel, self.rows).row_lattice_basis()
    }

    /// HNF basis of `{x ∈ Z^cols : self·x = 0}`, as rows.
    pub fn right_kernel(&self) -> IntMatrix {
        self.transpose().left_kernel()
    }

    pub fn rank(&self) -> usize {
        self.hnf().rank
    }

    /// Absolute values of the nonzero Smith invariant factors `d_1 | d_2 | …`.
    pub fn smith_diagonal(&self) -> Vec<BigInt> {
        let mut a = self.data.clone();
        let (m, n) = (self.rows, self.cols);
        let mut diag = Vec::new();
        for t in 0..m.min(n) {
            loop {
                let mut best: Option<(usize, usize)> = None;
                for i in t..m {
                    for j in t..n {
                        if !a[i][j].is_zero()
                            && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                        {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((bi, bj)) = best else {
                    return diag;
                };
                a.swap(t, bi);
                for row in a.iter_mut() {
                    row.swap(t, bj);
                }
                let mut clean = true;
                for i in t + 1..m {
                    if !a[i][t].is_zero() {
                        let q = a[i][t].div_floor(&a[t][t]);
                        sub_row_multiple(&mut a, i, t, &q);
                        clean &= a[i][t].is_zero();
                    }
                }
                for j in t + 1..n {
                    if !a[t][j].is_zero() {
                        let q = a[t][j].div_floor(&a[t][t]);
                        for row in a.iter_mut() {
                            let s = &row[t] * &q;
                            row[j] -= s;
                        }
                        clean &= a[t][j].is_zero();
                    }
                }
                if !clean {
                    continue;
                }
                // The pivot must divide the rest of the submatrix.
                let bad = (t + 1..m)
                    .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
                match bad {
                    Some((i, _)) => {
                        let (head, tail) = a.split_at_mut(i);
                        for (x, y) in head[t].iter_mut().zip(&tail[0]) {
                            *x += y;
                        }
                    }
                    None => break,
                }
            }
            diag.push(a[t][t].abs());
        }
        diag
    }
}

fn sub_row_multiple(a: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (s, t) = if src < target {
        let (lo, hi) = a.split_at_mut(target);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(src);
        (&hi[0], &mut lo[target])
    };
    for (x, y) in t.iter_mut().zip(s) {
        if !y.is_zero() {
            *x -= y * q;
        }
    }
}

fn negate_row(row: &mut [BigInt]) {
    for x in row {
        *x = -std::mem::take(x);
    }
}

/// Reusable integral solver for `x · B = v` where `B` has independent rows.
#[derive(Clone, Debug)]
pub struct RowSolver {
    hnf: HnfResult,
}

impl RowSolver {
    pub fn new(basis: &IntMatrix) -> Result<Self, AlgebraError> {
        let hnf = basis.hnf();
        if hnf.rank != basis.nrows() {
            return Err(AlgebraError::RankMismatch(hnf.rank, basis.nrows()));
        }
        Ok(RowSolver { hnf })
    }

    /// The unique integer vector `x` with `x · B = v`, if any.
    pub fn solve(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let h = &self.hnf;
        let mut rem = v.to_vec();
        let mut y = vec![BigInt::zero(); h.rank];
        for (i, &c) in h.pivots.iter().enumerate() {
            if rem[c].is_zero() {
                continue;
            }
            let (q, r) = rem[c].div_rem(h.hnf.get(i, c));
            if !r.is_zero() {
                return None;
            }
            for (x, b) in rem.iter_mut().zip(h.hnf.row(i)) {
                if !b.is_zero() {
                    *x -= &q * b;
                }
            }
            y[i] = q;
        }
        if rem.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(h.transform.vec_mul(&y))
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for row in &self.data {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn hnf_examples() {
        let h = m(&[vec![2, 0], vec![1, 1]]).hnf();
        assert_eq!(h.hnf, m(&[vec![1, 1], vec![0, 2]]));
        assert_eq!(h.rank, 2);

        let id = IntMatrix::identity(3);
        let h = id.hnf();
        assert_eq!(h.hnf, id);
        assert_eq!(h.transform, id);

        let h = m(&[vec![3, 3], vec![6, 6]]).hnf();
        assert_eq!(h.hnf, m(&[vec![3, 3], vec![0, 0]]));
        assert_eq!(h.rank, 1);
    }

    #[test]
    fn transform_reproduces_hnf() {
        let a = m(&[vec![4, 6, 2], vec![-3, 5, 7], vec![1, 1, 1], vec![2, 4, 6]]);
        let h = a.hnf();
        assert_eq!(h.transform.mul(&a).unwrap(), h.hnf);
    }

    #[test]
    fn kernels() {
        let a = m(&[vec![1, 2], vec![2, 4], vec![0, 1]]);
        let k = a.left_kernel();
        assert_eq!(k.nrows(), 1);
        assert!(k.mul(&a).unwrap().is_zero());
        assert_eq!(k.row(0), &[BigInt::from(2), BigInt::from(-1), BigInt::zero()][..]);
    }

    #[test]
    fn smith() {
        let a = m(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let d = a.smith_diagonal();
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let b = m(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(b.smith_diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn solver() {
        let b = m(&[vec![1, 1], vec![0, 3]]);
        let s = RowSolver::new(&b).unwrap();
        let x = s.solve(&[BigInt::from(2), BigInt::from(5)]).unwrap();
        assert_eq!(x, vec![BigInt::from(2), BigInt::from(1)]);
        assert!(s.solve(&[BigInt::from(0), BigInt::from(1)]).is_none());
    }
}
