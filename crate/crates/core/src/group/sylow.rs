use super::group::FiniteGroup;
use super::GroupError;

fn is_p_power(mut n: u64, p: u64) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

fn p_part(mut n: u64, p: u64) -> u64 {
    let mut r = 1;
    while n.is_multiple_of(p) {
        n /= p;
        r *= p;
    }
    r
}

/// A Sylow `p`-subgroup, grown from the cyclic group of a p-element of
/// maximal order by repeatedly adjoining p-elements of the normalizer.
pub fn sylow_subgroup(g: &FiniteGroup, p: u64) -> Result<FiniteGroup, GroupError> {
    let target = p_part(g.order(), p);
    let orders: Vec<u64> = g.elements().iter().map(|x| x.order()).collect();
    let start = orders
        .iter()
        .enumerate()
        .filter(|(_, &o)| is_p_power(o, p))
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .map(|(i, _)| i)
        .expect("identity is a p-element");
    let mut gens = if orders[start] > 1 {
        vec![g.element(start).clone()]
    } else {
        vec![]
    };
    let mut pgrp = g.subgroup(gens.clone())?;
    while pgrp.order() < target {
        let normalizer = g.normalizer_elements(&pgrp);
        let next = normalizer
            .into_iter()
            .find(|&i| orders[i] > 1 && is_p_power(orders[i], p) && !pgrp.contains(g.element(i)))
            .ok_or_else(|| GroupError::Invalid("Sylow extension failed".into()))?;
        gens.push(g.element(next).clone());
        pgrp = g.subgroup(gens.clone())?;
    }
    Ok(pgrp)
}

/// For each class of `s`, the index of the `g`-class containing it.
pub fn class_fusion_map(g: &FiniteGroup, s: &FiniteGroup) -> Result<Vec<usize>, GroupError> {
    if s.kind() != g.kind() || !s.elements().iter().all(|x| g.contains(x)) {
        return Err(GroupError::NotSubgroup);
    }
    let gc = g.classes();
    Ok(s.classes()
        .classes()
        .iter()
        .map(|c| gc.class_of(g.index_of(s.element(c.rep)).expect("checked containment")))
        .collect())
}

pub fn is_p_group(g: &FiniteGroup, p: u64) -> bool {
    is_p_power(g.order(), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupElement;

    fn s4() -> FiniteGroup {
        let a = GroupElement::permutation(&[1, 2, 3, 0]).unwrap();
        let b = GroupElement::permutation(&[1, 0, 2, 3]).unwrap();
        FiniteGroup::generate(a.kind(), vec![a, b]).unwrap()
    }

    #[test]
    fn sylow_of_s4() {
        let g = s4();
        assert_eq!(sylow_subgroup(&g, 2).unwrap().order(), 8);
        assert_eq!(sylow_subgroup(&g, 3).unwrap().order(), 3);
        assert_eq!(sylow_subgroup(&g, 5).unwrap().order(), 1);
    }

    #[test]
    fn dihedral_fusion_in_s4() {
        let g = s4();
        // D8 = <(0 1 2 3), (0 2)>
        let r = GroupElement::permutation(&[1, 2, 3, 0]).unwrap();
        let t = GroupElement::permutation(&[2, 1, 0, 3]).unwrap();
        let s = g.subgroup(vec![r, t.clone()]).unwrap();
        let map = class_fusion_map(&g, &s).unwrap();
        assert_eq!(s.classes().len(), 5);
        let distinct: std::collections::BTreeSet<_> = map.iter().collect();
        assert_eq!(distinct.len(), 4);
        // (0 2) and (0 2)(1 3) are not fused
        let double = GroupElement::permutation(&[2, 3, 0, 1]).unwrap();
        let class_in_s = |x: &GroupElement| s.classes().class_of(s.index_of(x).unwrap());
        assert_ne!(map[class_in_s(&t)], map[class_in_s(&double)]);
        // (1 3) is S-conjugate to (0 2) already; the two non-central involution
        // classes of S containing (0 2) and (0 1)(2 3) fuse in S4
        let other = GroupElement::permutation(&[1, 0, 3, 2]).unwrap();
        assert_eq!(map[class_in_s(&other)], map[class_in_s(&double)]);
    }
}
