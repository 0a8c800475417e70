//! Permutations and invertible matrices over prime fields.

use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::GroupError;

pub type Encoding = SmallVec<[u8; 16]>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ElementKind {
    /// Permutations of `{0, …, degree-1}`.
    Permutation { degree: u8 },
    /// `dim × dim` invertible matrices over `F_p`.
    Matrix { dim: u8, p: u8 },
}

/// A group element: its kind plus a canonical byte encoding (image array for
/// permutations, row-major entries for matrices). Elements compare by encoding.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    kind: ElementKind,
    data: Encoding,
}

impl ElementKind {
    pub fn identity(self) -> GroupElement {
        let data = match self {
            ElementKind::Permutation { degree } => (0..degree).collect(),
            ElementKind::Matrix { dim, .. } => {
                let d = dim as usize;
                (0..d * d).map(|k| u8::from(k / d == k % d)).collect()
            }
        };
        GroupElement { kind: self, data }
    }
}

impl GroupElement {
    /// Builds a permutation from its image array.
    pub fn permutation(images: &[usize]) -> Result<Self, GroupError> {
        let n = images.len();
        if n > 255 {
            return Err(GroupError::Invalid(format!("degree {n} exceeds 255")));
        }
        let mut seen = vec![false; n];
        for &i in images {
            if i >= n || seen[i] {
                return Err(GroupError::Invalid(format!(
                    "{images:?} is not a permutation of 0..{n}"
                )));
            }
            seen[i] = true;
        }
        Ok(GroupElement {
            kind: ElementKind::Permutation { degree: n as u8 },
            data: images.iter().map(|&i| i as u8).collect(),
        })
    }

    /// Builds a matrix over `F_p`; entries are reduced modulo `p`.
    pub fn matrix(p: u64, rows: &[Vec<i64>]) -> Result<Self, GroupError> {
        let d = rows.len();
        if !(2..=251).contains(&p) || d == 0 || d > 15 {
            return Err(GroupError::Invalid(format!(
                "unsupported matrix group: dimension {d} over F_{p}"
            )));
        }
        let mut data = Encoding::new();
        for r in rows {
            if r.len() != d {
                return Err(GroupError::Invalid("matrix is not square".into()));
            }
            data.extend(r.iter().map(|&x| x.rem_euclid(p as i64) as u8));
        }
        let g = GroupElement {
            kind: ElementKind::Matrix {
                dim: d as u8,
                p: p as u8,
            },
            data,
        };
        if g.try_inverse().is_none() {
            return Err(GroupError::Invalid(format!("matrix {g} is singular mod {p}")));
        }
        Ok(g)
    }

    pub fn kind(&self) -> ElementKind {
        self.kind
    }

    pub fn encoding(&self) -> &Encoding {
        &self.data
    }

    pub fn from_encoding(kind: ElementKind, data: Encoding) -> Self {
        GroupElement { kind, data }
    }

    pub fn is_identity(&self) -> bool {
        *self == self.kind.identity()
    }

    /// Matrix entry `(i, j)`; panics for permutations.
    pub fn entry(&self, i: usize, j: usize) -> u8 {
        match self.kind {
            ElementKind::Matrix { dim, .. } => self.data[i * dim as usize + j],
            ElementKind::Permutation { .. } => panic!("entry() on a permutation"),
        }
    }

    /// Product `self * other`. Permutations compose left to right
    /// (`i ↦ other(self(i))`); matrices multiply as matrices acting on row vectors.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.kind, other.kind);
        let data = match self.kind {
            ElementKind::Permutation { .. } => {
                self.data.iter().map(|&i| other.data[i as usize]).collect()
            }
            ElementKind::Matrix { dim, p } => {
                let d = dim as usize;
                let p = p as u32;
                let mut out = Encoding::from_elem(0, d * d);
                for i in 0..d {
                    for j in 0..d {
                        let mut acc = 0u32;
                        for k in 0..d {
                            acc += self.data[i * d + k] as u32 * other.data[k * d + j] as u32;
                        }
                        out[i * d + j] = (acc % p) as u8;
                    }
                }
                out
            }
        };
        GroupElement {
            kind: self.kind,
            data,
        }
    }

    pub fn inverse(&self) -> Self {
        self.try_inverse().expect("group elements are invertible")
    }

    fn try_inverse(&self) -> Option<Self> {
        match self.kind {
            ElementKind::Permutation { .. } => {
                let mut inv = self.data.clone();
                for (i, &x) in self.data.iter().enumerate() {
                    inv[x as usize] = i as u8;
                }
                Some(GroupElement {
                    kind: self.kind,
                    data: inv,
                })
            }
            ElementKind::Matrix { dim, p } => {
                let d = dim as usize;
                let p = p as i64;
                let mut a: Vec<Vec<i64>> = (0..d)
                    .map(|i| {
                        let mut row: Vec<i64> =
                            (0..d).map(|j| self.data[i * d + j] as i64).collect();
                        row.extend((0..d).map(|j| i64::from(i == j)));
                        row
                    })
                    .collect();
                for c in 0..d {
                    let piv = (c..d).find(|&r| a[r][c] != 0)?;
                    a.swap(c, piv);
                    let inv = mod_inverse(a[c][c], p);
                    for x in a[c].iter_mut() {
                        *x = *x * inv % p;
                    }
                    for r in 0..d {
                        if r != c && a[r][c] != 0 {
                            let f = a[r][c];
                            for k in 0..2 * d {
                                a[r][k] = (a[r][k] - f * a[c][k]).rem_euclid(p);
                            }
                        }
                    }
                }
                let data = a
                    .iter()
                    .flat_map(|row| row[d..].iter().map(|&x| x as u8))
                    .collect();
                Some(GroupElement {
                    kind: self.kind,
                    data,
                })
            }
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.kind.identity();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.inverse().mul(self).mul(g)
    }

    pub fn order(&self) -> u64 {
        let id = self.kind.identity();
        let mut x = self.clone();
        let mut n = 1;
        while x != id {
            x = x.mul(self);
            n += 1;
        }
        n
    }
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    let mut r = 1i64;
    let mut b = a.rem_euclid(p);
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ElementKind::Permutation { .. } => write!(f, "{:?}", self.data.as_slice()),
            ElementKind::Matrix { dim, .. } => {
                let d = dim as usize;
                let rows: Vec<String> = self
                    .data
                    .chunks(d)
                    .map(|r| format!("{:?}", r))
                    .collect();
                write!(f, "[{}]", rows.join(","))
            }
        }
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_composition_is_left_to_right() {
        let a = GroupElement::permutation(&[1, 0, 2]).unwrap();
        let b = GroupElement::permutation(&[0, 2, 1]).unwrap();
        // i ↦ b(a(i)): 0 → 1 → 2, 1 → 0 → 0, 2 → 2 → 1
        assert_eq!(a.mul(&b), GroupElement::permutation(&[2, 0, 1]).unwrap());
        assert_eq!(a.mul(&b).order(), 3);
    }

    #[test]
    fn bad_permutation_rejected() {
        assert!(GroupElement::permutation(&[0, 0, 1]).is_err());
    }

    #[test]
    fn matrix_inverse_and_order() {
        let u = GroupElement::matrix(5, &[vec![1, 0], vec![1, 1]]).unwrap();
        assert_eq!(u.order(), 5);
        assert!(u.mul(&u.inverse()).is_identity());
        assert_eq!(u.pow(-1), u.pow(4));
        assert!(GroupElement::matrix(5, &[vec![1, 2], vec![2, 4]]).is_err());
    }
}
