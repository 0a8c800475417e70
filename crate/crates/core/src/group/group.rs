use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;
use std::sync::OnceLock;

use num_integer::Integer;
use rustc_hash::FxHashMap;

use super::classes::ClassSet;
use super::element::{ElementKind, Encoding, GroupElement};
use super::GroupError;

pub const DEFAULT_MAX_ORDER: usize = 2_000_000;

/// Enumeration cap, overridable through `FUSCHAR_MAX_ORDER`.
pub fn max_order() -> usize {
    std::env::var("FUSCHAR_MAX_ORDER")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_ORDER)
}

/// A fully enumerated finite group with elements in canonical (encoding) order.
pub struct FiniteGroup {
    kind: ElementKind,
    generators: Vec<GroupElement>,
    elements: Vec<GroupElement>,
    index: FxHashMap<Encoding, u32>,
    /// For each non-identity element: (index of prefix, generator index), so
    /// that `element = prefix * generator`.
    parent: Vec<(u32, u16)>,
    exponent: u64,
    names: BTreeMap<String, GroupElement>,
    classes: OnceLock<ClassSet>,
}

impl FiniteGroup {
    /// Breadth-first closure of `generators` under right multiplication.
    pub fn generate(kind: ElementKind, generators: Vec<GroupElement>) -> Result<Self, GroupError> {
        Self::generate_with_cap(kind, generators, max_order())
    }

    pub fn generate_with_cap(
        kind: ElementKind,
        generators: Vec<GroupElement>,
        cap: usize,
    ) -> Result<Self, GroupError> {
        if let Some(g) = generators.iter().find(|g| g.kind() != kind) {
            return Err(GroupError::Invalid(format!(
                "generator {g} has kind {:?}, expected {kind:?}",
                g.kind()
            )));
        }
        let id = kind.identity();
        let mut found: FxHashMap<Encoding, u32> = FxHashMap::default();
        let mut elems = vec![id.clone()];
        let mut parent = vec![(0u32, u16::MAX)];
        found.insert(id.encoding().clone(), 0);
        let mut queue = VecDeque::from([0u32]);
        while let Some(i) = queue.pop_front() {
            for (gi, g) in generators.iter().enumerate() {
                let y = elems[i as usize].mul(g);
                if found.contains_key(y.encoding()) {
                    continue;
                }
                if elems.len() >= cap {
                    return Err(GroupError::TooLarge { cap });
                }
                let idx = elems.len() as u32;
                found.insert(y.encoding().clone(), idx);
                elems.push(y);
                parent.push((i, gi as u16));
                queue.push_back(idx);
            }
        }
        // Re-index in canonical order.
        let mut perm: Vec<u32> = (0..elems.len() as u32).collect();
        perm.sort_by(|&a, &b| elems[a as usize].cmp(&elems[b as usize]));
        let mut new_of_old = vec![0u32; elems.len()];
        for (new, &old) in perm.iter().enumerate() {
            new_of_old[old as usize] = new as u32;
        }
        let mut elements = Vec::with_capacity(elems.len());
        let mut new_parent = Vec::with_capacity(elems.len());
        for &old in &perm {
            let (pi, g) = parent[old as usize];
            new_parent.push((new_of_old[pi as usize], g));
            elements.push(std::mem::replace(&mut elems[old as usize], id.clone()));
        }
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.encoding().clone(), i as u32))
            .collect();
        let exponent = elements.iter().fold(1u64, |acc, e| acc.lcm(&e.order()));
        Ok(FiniteGroup {
            kind,
            generators,
            elements,
            index,
            parent: new_parent,
            exponent,
            names: BTreeMap::new(),
            classes: OnceLock::new(),
        })
    }

    /// Subgroup generated by elements of `self`.
    pub fn subgroup(&self, generators: Vec<GroupElement>) -> Result<FiniteGroup, GroupError> {
        let mut h = FiniteGroup::generate(self.kind, generators)?;
        for e in &h.elements {
            if !self.contains(e) {
                return Err(GroupError::NotSubgroup);
            }
        }
        for (name, g) in &self.names {
            if h.contains(g) {
                h.names.insert(name.clone(), g.clone());
            }
        }
        Ok(h)
    }

    pub fn kind(&self) -> ElementKind {
        self.kind
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn identity(&self) -> GroupElement {
        self.kind.identity()
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g.encoding()).map(|&i| i as usize)
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.kind() == self.kind && self.index.contains_key(g.encoding())
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    /// Registers a designated element under a name usable in words.
    pub fn set_name(&mut self, name: &str, g: GroupElement) -> Result<(), GroupError> {
        if !self.contains(&g) {
            return Err(GroupError::Word(format!("named element {name} is not in the group")));
        }
        self.names.insert(name.to_string(), g);
        Ok(())
    }

    pub fn named(&self, name: &str) -> Option<&GroupElement> {
        self.names.get(name)
    }

    pub fn names(&self) -> &BTreeMap<String, GroupElement> {
        &self.names
    }

    /// Lazily computed conjugacy classes.
    pub fn classes(&self) -> &ClassSet {
        self.classes.get_or_init(|| ClassSet::compute(self))
    }

    /// A word in the generators evaluating to element `i`, such as `g0^2*g1`.
    pub fn word(&self, i: usize) -> String {
        let mut gens = Vec::new();
        let mut cur = i;
        while self.parent[cur].1 != u16::MAX {
            let (p, g) = self.parent[cur];
            gens.push(g);
            cur = p as usize;
        }
        if gens.is_empty() {
            return "1".to_string();
        }
        gens.reverse();
        let mut out = String::new();
        let mut k = 0;
        while k < gens.len() {
            let g = gens[k];
            let mut run = 1;
            while k + run < gens.len() && gens[k + run] == g {
                run += 1;
            }
            if !out.is_empty() {
                out.push('*');
            }
            let _ = write!(out, "g{g}");
            if run > 1 {
                let _ = write!(out, "^{run}");
            }
            k += run;
        }
        out
    }

    pub fn word_of(&self, g: &GroupElement) -> Option<String> {
        if let Some((name, _)) = self.names.iter().find(|(_, h)| *h == g) {
            return Some(name.clone());
        }
        self.index_of(g).map(|i| self.word(i))
    }

    /// Evaluates a word such as `g0*g1^-1`, `z`, `u^2*v1` or `1`.
    pub fn eval_word(&self, word: &str) -> Result<GroupElement, GroupError> {
        let mut acc = self.identity();
        for token in word.split('*') {
            let token = token.trim();
            if token.is_empty() {
                return Err(GroupError::Word(format!("empty factor in {word:?}")));
            }
            let (base, exp) = match token.split_once('^') {
                Some((b, e)) => {
                    let e: i64 = e
                        .trim()
                        .parse()
                        .map_err(|_| GroupError::Word(format!("bad exponent in {token:?}")))?;
                    (b.trim(), e)
                }
                None => (token, 1),
            };
            let g = if base == "1" || base == "e" || base == "id" {
                self.identity()
            } else if let Some(g) = self.names.get(base) {
                g.clone()
            } else if let Some(idx) = base.strip_prefix('g').and_then(|s| s.parse::<usize>().ok())
            {
                self.generators
                    .get(idx)
                    .cloned()
                    .ok_or_else(|| GroupError::Word(format!("no generator {base} in {word:?}")))?
            } else {
                return Err(GroupError::Word(format!("unknown symbol {base:?} in {word:?}")));
            };
            acc = acc.mul(&g.pow(exp));
        }
        Ok(acc)
    }

    /// Order of the centralizer of `g` by direct count.
    pub fn centralizer_order(&self, g: &GroupElement) -> u64 {
        use rayon::prelude::*;
        self.elements
            .par_iter()
            .filter(|x| x.mul(g) == g.mul(x))
            .count() as u64
    }

    /// Elements of the normalizer of the subgroup `h` (given as a group on the same kind).
    pub fn normalizer_elements(&self, h: &FiniteGroup) -> Vec<usize> {
        use rayon::prelude::*;
        (0..self.elements.len())
            .into_par_iter()
            .filter(|&i| {
                let x = &self.elements[i];
                let xi = x.inverse();
                h.generators
                    .iter()
                    .all(|g| h.contains(&xi.mul(g).mul(x)))
            })
            .collect()
    }
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FiniteGroup {{ kind: {:?}, order: {}, generators: {:?} }}",
            self.kind,
            self.order(),
            self.generators
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> FiniteGroup {
        let g: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let g = GroupElement::permutation(&g).unwrap();
        FiniteGroup::generate(g.kind(), vec![g]).unwrap()
    }

    #[test]
    fn cyclic_eight() {
        let c8 = cyclic(8);
        assert_eq!(c8.order(), 8);
        assert_eq!(c8.exponent(), 8);
        assert!(c8.is_abelian());
    }

    #[test]
    fn trivial_group() {
        let kind = ElementKind::Permutation { degree: 3 };
        let g = FiniteGroup::generate(kind, vec![]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.word(0), "1");
    }

    #[test]
    fn words_round_trip() {
        let a = GroupElement::permutation(&[1, 2, 3, 0]).unwrap();
        let b = GroupElement::permutation(&[0, 3, 2, 1]).unwrap();
        let g = FiniteGroup::generate(a.kind(), vec![a, b]).unwrap();
        assert_eq!(g.order(), 8);
        for i in 0..g.elements().len() {
            let w = g.word(i);
            assert_eq!(&g.eval_word(&w).unwrap(), g.element(i), "word {w}");
        }
        assert_eq!(g.eval_word("g0*g0^-1").unwrap(), g.identity());
        assert!(g.eval_word("g7").is_err());
        assert!(g.eval_word("q").is_err());
    }

    #[test]
    fn cap_enforced() {
        let a = GroupElement::permutation(&[1, 2, 3, 4, 0]).unwrap();
        let b = GroupElement::permutation(&[1, 0, 2, 3, 4]).unwrap();
        let err = FiniteGroup::generate_with_cap(a.kind(), vec![a, b], 50).unwrap_err();
        assert_eq!(err, GroupError::TooLarge { cap: 50 });
    }
}
