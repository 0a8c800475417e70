use rayon::prelude::*;

use super::group::FiniteGroup;

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    /// Element index of the canonical (smallest) member.
    pub rep: usize,
    pub size: usize,
    pub centralizer_order: u64,
    pub rep_order: u64,
    /// Sorted element indices.
    pub members: Vec<u32>,
}

/// Conjugacy classes ordered by (size, representative order, representative).
#[derive(Clone, Debug)]
pub struct ClassSet {
    classes: Vec<ConjugacyClass>,
    class_of: Vec<u32>,
}

const DIRECT_CHECK_LIMIT: usize = 1000;

impl ClassSet {
    pub(crate) fn compute(g: &FiniteGroup) -> ClassSet {
        let n = g.elements().len();
        let gens: Vec<_> = g.generators().iter().map(|x| (x.inverse(), x.clone())).collect();
        let mut class_of = vec![u32::MAX; n];
        let mut raw: Vec<Vec<u32>> = Vec::new();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let id = raw.len() as u32;
            class_of[start] = id;
            let mut orbit = vec![start as u32];
            let mut head = 0;
            while head < orbit.len() {
                let x = g.element(orbit[head] as usize).clone();
                head += 1;
                for (gi, gg) in &gens {
                    let y = gi.mul(&x).mul(gg);
                    let j = g.index_of(&y).expect("conjugate lies in the group");
                    if class_of[j] == u32::MAX {
                        class_of[j] = id;
                        orbit.push(j as u32);
                    }
                }
            }
            orbit.sort_unstable();
            raw.push(orbit);
        }
        let order = g.order();
        let mut classes: Vec<ConjugacyClass> = raw
            .into_par_iter()
            .map(|members| {
                let rep = members[0] as usize;
                let size = members.len();
                let rep_elt = g.element(rep);
                let centralizer_order = order / size as u64;
                assert_eq!(order % size as u64, 0, "class size must divide |G|");
                if size <= DIRECT_CHECK_LIMIT && order <= 200_000 {
                    assert_eq!(
                        g.centralizer_order(rep_elt),
                        centralizer_order,
                        "centralizer count disagrees with class size"
                    );
                }
                ConjugacyClass {
                    rep,
                    size,
                    centralizer_order,
                    rep_order: rep_elt.order(),
                    members,
                }
            })
            .collect();
        classes.sort_by_key(|c| (c.size, c.rep_order, c.rep));
        for (ci, c) in classes.iter().enumerate() {
            for &m in &c.members {
                class_of[m as usize] = ci as u32;
            }
        }
        ClassSet { classes, class_of }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn get(&self, c: usize) -> &ConjugacyClass {
        &self.classes[c]
    }

    /// Class index of the element with index `i`.
    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i] as usize
    }

    /// Class of `rep(c)^k`.
    pub fn power_class(&self, g: &FiniteGroup, c: usize, k: i64) -> usize {
        let x = g.element(self.classes[c].rep).pow(k);
        self.class_of(g.index_of(&x).expect("power lies in the group"))
    }

    /// Class containing `rep(c)⁻¹`.
    pub fn inverse_class(&self, g: &FiniteGroup, c: usize) -> usize {
        self.power_class(g, c, -1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupElement;

    #[test]
    fn symmetric_three() {
        let a = GroupElement::permutation(&[1, 2, 0]).unwrap();
        let b = GroupElement::permutation(&[1, 0, 2]).unwrap();
        let g = FiniteGroup::generate(a.kind(), vec![a, b]).unwrap();
        let sizes: Vec<usize> = g.classes().classes().iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![1, 2, 3]);
        let total: usize = sizes.iter().sum();
        assert_eq!(total, 6);
    }

    #[test]
    fn cyclic_eight_singletons() {
        let a = GroupElement::permutation(&[1, 2, 3, 4, 5, 6, 7, 0]).unwrap();
        let g = FiniteGroup::generate(a.kind(), vec![a]).unwrap();
        let cs = g.classes();
        assert_eq!(cs.len(), 8);
        assert!(cs.classes().iter().all(|c| c.size == 1 && c.centralizer_order == 8));
    }
}
