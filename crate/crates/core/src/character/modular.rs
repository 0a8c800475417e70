//! Linear algebra over a prime field `F_ℓ` with `ℓ < 2^32`.

#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub l: u64,
}

impl Fp {
    pub fn new(l: u64) -> Self {
        assert!(l < (1 << 32));
        Fp { l }
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.l
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.l - b) % self.l
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.l
    }

    pub fn pow(self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.l;
        b %= self.l;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.l), "inverse of zero in F_{}", self.l);
        self.pow(a, self.l - 2)
    }

    pub fn from_i64(self, a: i64) -> u64 {
        a.rem_euclid(self.l as i64) as u64
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(self, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, p);
            let inv = self.inv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let f = row[c];
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        if y != 0 {
                            *x = self.sub(*x, self.mul(f, y));
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        pivots
    }

    /// Basis of `{y : A y = 0}` for a square matrix `A`.
    pub fn right_kernel(self, a: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let n = a.first().map_or(0, Vec::len);
        let mut m = a.to_vec();
        let pivots = self.rref(&mut m);
        let mut basis = Vec::new();
        for free in (0..n).filter(|c| !pivots.contains(c)) {
            let mut y = vec![0u64; n];
            y[free] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                y[pc] = self.sub(0, row[free]);
            }
            basis.push(y);
        }
        basis
    }

    /// Characteristic polynomial `det(xI − A)`, coefficients lowest degree first,
    /// via reduction to Hessenberg form.
    pub fn charpoly(self, a: &[Vec<u64>]) -> Vec<u64> {
        let n = a.len();
        let mut h = a.to_vec();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
                continue;
            };
            if i != m {
                h.swap(i, m);
                for row in h.iter_mut() {
                    row.swap(i, m);
                }
            }
            let inv = self.inv(h[m][m - 1]);
            for i in m + 1..n {
                let u = self.mul(h[i][m - 1], inv);
                if u == 0 {
                    continue;
                }
                for j in 0..n {
                    let t = self.mul(u, h[m][j]);
                    h[i][j] = self.sub(h[i][j], t);
                }
                for row in h.iter_mut() {
                    let t = self.mul(u, row[i]);
                    row[m] = self.add(row[m], t);
                }
            }
        }
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for m in 1..=n {
            // (x − h_mm) p_{m−1}
            let prev = &polys[m - 1];
            let mut pm = vec![0u64; m + 1];
            for (d, &c) in prev.iter().enumerate() {
                pm[d + 1] = self.add(pm[d + 1], c);
                pm[d] = self.sub(pm[d], self.mul(c, h[m - 1][m - 1]));
            }
            let mut t = 1u64;
            for i in (1..m).rev() {
                t = self.mul(t, h[i][i - 1]);
                let coef = self.mul(t, h[i - 1][m - 1]);
                if coef == 0 {
                    continue;
                }
                for (d, &c) in polys[i - 1].iter().enumerate() {
                    pm[d] = self.sub(pm[d], self.mul(coef, c));
                }
            }
            polys.push(pm);
        }
        polys.pop().unwrap()
    }

    pub fn eval(self, poly: &[u64], x: u64) -> u64 {
        poly.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Distinct roots in `F_ℓ` by exhaustive evaluation.
    pub fn roots(self, poly: &[u64]) -> Vec<u64> {
        (0..self.l).filter(|&x| self.eval(poly, x) == 0).collect()
    }

    /// A generator of the multiplicative group.
    pub fn primitive_root(self) -> u64 {
        crate::algebra::arith::primitive_root(self.l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_of_companion() {
        let f = Fp::new(101);
        // companion matrix of x^3 − 6x^2 + 11x − 6 = (x−1)(x−2)(x−3)
        let a = vec![vec![0, 0, 6], vec![1, 0, f.from_i64(-11)], vec![0, 1, 6]];
        let p = f.charpoly(&a);
        assert_eq!(p, vec![f.from_i64(-6), 11, f.from_i64(-6), 1]);
        assert_eq!(f.roots(&p), vec![1, 2, 3]);
    }

    #[test]
    fn charpoly_dense() {
        let f = Fp::new(13);
        let a = vec![vec![2, 1, 0, 5], vec![3, 3, 1, 0], vec![1, 0, 4, 2], vec![7, 1, 1, 1]];
        let p = f.charpoly(&a);
        // Cayley–Hamilton: p(A) = 0
        let n = 4;
        let matmul = |x: &Vec<Vec<u64>>, y: &Vec<Vec<u64>>| -> Vec<Vec<u64>> {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..n).fold(0, |acc, k| f.add(acc, f.mul(x[i][k], y[k][j]))))
                        .collect()
                })
                .collect()
        };
        let mut acc = vec![vec![0u64; n]; n];
        let mut pw: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
        for &c in &p {
            for i in 0..n {
                for j in 0..n {
                    acc[i][j] = f.add(acc[i][j], f.mul(c, pw[i][j]));
                }
            }
            pw = matmul(&pw, &a);
        }
        assert!(acc.iter().flatten().all(|&x| x == 0));
    }

    #[test]
    fn kernel() {
        let f = Fp::new(7);
        let a = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 0, 1]];
        let k = f.right_kernel(&a);
        assert_eq!(k, vec![vec![5, 1, 0]]);
    }
}
