//! Element-level fusion data on a p-group: a partition of "columns" (the
//! conjugacy classes of `S`, or in table mode the classes of an overgroup
//! meeting `S`) into `F`-classes.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{class_fusion_map, is_p_group, FiniteGroup, GroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FusionError {
    #[error("{0}")]
    Group(#[from] GroupError),
    #[error("S is not a p-group for p = {0}")]
    NotPGroup(u64),
    #[error("unknown column label {0:?}")]
    UnknownColumn(String),
    #[error("fusion data is malformed: {0}")]
    Malformed(String),
}

/// One atom of the partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionColumn {
    pub label: String,
    /// Number of elements of `S` in this column.
    pub size: u64,
    /// `|C_S(s)|` for the elements of this column.
    pub cs_order: u64,
    /// Element order, when known.
    pub rep_order: Option<u64>,
    /// Canonical tie-break key (smaller wins).
    pub key: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionClass {
    /// Sorted column indices.
    pub columns: Vec<usize>,
    /// The fully centralised representative column.
    pub rep: usize,
    pub size: u64,
    pub cs_order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    Group { label: String, sylow: bool },
    Merged { base: Box<Provenance>, merges: Vec<(String, String)> },
    Table { label: String },
}

#[derive(Clone, Debug)]
pub struct FusionData {
    pub p: u64,
    pub s_order: u64,
    /// The group `S` itself in group mode.
    pub s: Option<Arc<FiniteGroup>>,
    pub columns: Vec<FusionColumn>,
    classes: Vec<FusionClass>,
    pub provenance: Provenance,
    pub saturation_certified: bool,
}

impl FusionData {
    /// Builds fusion data from an explicit partition of columns.
    pub fn from_partition(
        p: u64,
        s_order: u64,
        s: Option<Arc<FiniteGroup>>,
        columns: Vec<FusionColumn>,
        partition: Vec<Vec<usize>>,
        provenance: Provenance,
        saturation_certified: bool,
    ) -> Result<Self, FusionError> {
        let mut seen = vec![false; columns.len()];
        for &c in partition.iter().flatten() {
            if c >= columns.len() || seen[c] {
                return Err(FusionError::Malformed(format!("column {c} repeated or out of range")));
            }
            seen[c] = true;
        }
        if seen.iter().any(|&x| !x) {
            return Err(FusionError::Malformed("partition does not cover all columns".into()));
        }
        let total: u64 = columns.iter().map(|c| c.size).sum();
        if total != s_order {
            return Err(FusionError::Malformed(format!(
                "column sizes sum to {total}, expected |S| = {s_order}"
            )));
        }
        let mut classes: Vec<FusionClass> = partition
            .into_iter()
            .map(|mut cols| {
                cols.sort_unstable();
                let rep = *cols
                    .iter()
                    .max_by(|&&a, &&b| {
                        columns[a]
                            .cs_order
                            .cmp(&columns[b].cs_order)
                            .then(columns[b].key.cmp(&columns[a].key))
                    })
                    .expect("classes are nonempty");
                FusionClass {
                    size: cols.iter().map(|&c| columns[c].size).sum(),
                    cs_order: columns[rep].cs_order,
                    columns: cols,
                    rep,
                }
            })
            .collect();
        classes.sort_by_key(|c| {
            (
                c.size,
                columns[c.rep].rep_order.unwrap_or(0),
                columns[c.rep].key,
            )
        });
        let data = FusionData {
            p,
            s_order,
            s,
            columns,
            classes,
            provenance,
            saturation_certified,
        };
        let id = data.class_of_column(0);
        if data.classes[id].columns.len() != 1 || data.columns[0].size != 1 {
            return Err(FusionError::Malformed("identity must be a singleton class".into()));
        }
        Ok(data)
    }

    /// `F_S(G)`: `G`-conjugacy restricted to `S`.
    pub fn from_group(g: &FiniteGroup, s: Arc<FiniteGroup>, p: u64) -> Result<Self, FusionError> {
        if !is_p_group(&s, p) {
            return Err(FusionError::NotPGroup(p));
        }
        let map = class_fusion_map(g, &s)?;
        let columns = s_columns(&s);
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (c, &gc) in map.iter().enumerate() {
            groups.entry(gc).or_default().push(c);
        }
        let mut gp = g.order();
        let mut g_p_part = 1;
        while gp.is_multiple_of(p) {
            gp /= p;
            g_p_part *= p;
        }
        let sylow = s.order() == g_p_part;
        let s_order = s.order();
        Self::from_partition(
            p,
            s_order,
            Some(s),
            columns,
            groups.into_values().collect(),
            Provenance::Group {
                label: format!("F_S(G), |G| = {}", g.order()),
                sylow,
            },
            sylow,
        )
    }

    /// `F_S(S)`.
    pub fn of_group_itself(s: Arc<FiniteGroup>, p: u64) -> Result<Self, FusionError> {
        if !is_p_group(&s, p) {
            return Err(FusionError::NotPGroup(p));
        }
        let columns = s_columns(&s);
        let partition = (0..columns.len()).map(|c| vec![c]).collect();
        let s_order = s.order();
        Self::from_partition(
            p,
            s_order,
            Some(s),
            columns,
            partition,
            Provenance::Group {
                label: "F_S(S)".into(),
                sylow: true,
            },
            true,
        )
    }

    pub fn k(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[FusionClass] {
        &self.classes
    }

    pub fn class_of_column(&self, col: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.columns.binary_search(&col).is_ok())
            .expect("every column lies in a class")
    }

    /// Column containing an element of `S` (group mode) given by a word.
    pub fn column_of_word(&self, word: &str) -> Result<usize, FusionError> {
        match &self.s {
            Some(s) => {
                let x = s.eval_word(word)?;
                let i = s
                    .index_of(&x)
                    .ok_or_else(|| GroupError::Word(format!("{word} is not in S")))?;
                Ok(s.classes().class_of(i))
            }
            None => self
                .columns
                .iter()
                .position(|c| c.label == word)
                .ok_or_else(|| FusionError::UnknownColumn(word.to_string())),
        }
    }

    /// Finest coarsening in which every pair lies in one class.
    /// Returns the new data and the number of effective unions.
    pub fn apply_merges(&self, merges: &[(String, String)]) -> Result<(FusionData, usize), FusionError> {
        let n = self.columns.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for class in &self.classes {
            for &c in &class.columns[1..] {
                let a = find(&mut parent, class.columns[0]);
                let b = find(&mut parent, c);
                parent[b] = a;
            }
        }
        let mut unions = 0;
        for (a, b) in merges {
            let ca = self.column_of_word(a)?;
            let cb = self.column_of_word(b)?;
            let ra = find(&mut parent, ca);
            let rb = find(&mut parent, cb);
            if ra != rb {
                parent[rb.max(ra)] = rb.min(ra);
                unions += 1;
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for c in 0..n {
            let r = find(&mut parent, c);
            groups.entry(r).or_default().push(c);
        }
        let data = FusionData::from_partition(
            self.p,
            self.s_order,
            self.s.clone(),
            self.columns.clone(),
            groups.into_values().collect(),
            Provenance::Merged {
                base: Box::new(self.provenance.clone()),
                merges: merges.to_vec(),
            },
            false,
        )?;
        Ok((data, unions))
    }

    /// Merges every non-identity column into one class.
    pub fn transitive(&self) -> Result<FusionData, FusionError> {
        let n = self.columns.len();
        let partition = if n > 1 {
            vec![vec![0], (1..n).collect()]
        } else {
            vec![vec![0]]
        };
        FusionData::from_partition(
            self.p,
            self.s_order,
            self.s.clone(),
            self.columns.clone(),
            partition,
            Provenance::Merged {
                base: Box::new(self.provenance.clone()),
                merges: vec![("*".into(), "*".into())],
            },
            false,
        )
    }

    /// Representative column and `|C_S|` for each class, in class order.
    pub fn fully_centralised_reps(&self) -> Vec<(usize, u64)> {
        self.classes.iter().map(|c| (c.rep, c.cs_order)).collect()
    }

    /// `Π |C_S(s)|` over the fully centralised representatives.
    pub fn centralizer_product(&self) -> BigInt {
        self.classes
            .iter()
            .fold(BigInt::one(), |acc, c| acc * BigInt::from(c.cs_order))
    }

    /// Sorted element indices of class `i` (group mode only).
    pub fn members(&self, i: usize) -> Option<Vec<u32>> {
        let s = self.s.as_ref()?;
        let cs = s.classes();
        let mut out: Vec<u32> = self.classes[i]
            .columns
            .iter()
            .flat_map(|&c| cs.get(c).members.iter().copied())
            .collect();
        out.sort_unstable();
        Some(out)
    }

    /// Word naming the representative of class `i`.
    pub fn rep_label(&self, i: usize) -> String {
        self.columns[self.classes[i].rep].label.clone()
    }
}

fn s_columns(s: &FiniteGroup) -> Vec<FusionColumn> {
    s.classes()
        .classes()
        .iter()
        .map(|c| FusionColumn {
            label: s.word_of(s.element(c.rep)).unwrap_or_else(|| s.word(c.rep)),
            size: c.size as u64,
            cs_order: c.centralizer_order,
            rep_order: Some(c.rep_order),
            key: c.rep as u64,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupElement;

    fn c8() -> Arc<FiniteGroup> {
        let a = GroupElement::permutation(&[1, 2, 3, 4, 5, 6, 7, 0]).unwrap();
        Arc::new(FiniteGroup::generate(a.kind(), vec![a]).unwrap())
    }

    #[test]
    fn example_c8_merge() {
        let base = FusionData::of_group_itself(c8(), 2).unwrap();
        assert_eq!(base.k(), 8);
        let (f, unions) = base
            .apply_merges(&[("g0^2".into(), "g0^6".into())])
            .unwrap();
        assert_eq!(unions, 1);
        assert_eq!(f.k(), 7);
        assert_eq!(f.centralizer_product(), BigInt::from(1u64 << 21));
        assert!(!f.saturation_certified);
        // merging again changes nothing
        let (g, unions) = f.apply_merges(&[("g0^6".into(), "g0^2".into())]).unwrap();
        assert_eq!((g.k(), unions), (7, 0));
    }

    #[test]
    fn transitive_system() {
        let base = FusionData::of_group_itself(c8(), 2).unwrap();
        let t = base.transitive().unwrap();
        assert_eq!(t.k(), 2);
        assert_eq!(t.centralizer_product(), BigInt::from(64));
    }

    #[test]
    fn wrong_prime_rejected() {
        assert!(FusionData::of_group_itself(c8(), 3).is_err());
    }
}
