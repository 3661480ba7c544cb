use std::collections::{HashMap, VecDeque};

use crate::algebra::LatticeMap;
use crate::{Error, Result, DEFAULT_GROUP_CAP};

use super::RootSystem;

/// The subgroup of the Weyl group generated by a set of simple reflections,
/// enumerated breadth-first from the identity by right multiplication with
/// generators in index order. The stored word of each element is therefore
/// its lexicographically smallest reduced word.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    generators: Vec<usize>,
    elements: Vec<LatticeMap>,
    words: Vec<Vec<usize>>,
    index: HashMap<LatticeMap, usize>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Simple root indices (0-based) of the generators.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn elements(&self) -> &[LatticeMap] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &LatticeMap {
        &self.elements[i]
    }

    /// Reduced word of element `i` as 0-based simple root indices.
    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub fn length(&self, i: usize) -> usize {
        self.words[i].len()
    }

    pub fn index_of(&self, w: &LatticeMap) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn contains(&self, w: &LatticeMap) -> bool {
        self.index.contains_key(w)
    }

    /// Index of `elements[a] ∘ elements[b]`.
    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }

    pub fn inverse(&self, a: usize) -> usize {
        let inv = self.elements[a].inverse().expect("Weyl group elements are invertible");
        self.index[&inv]
    }
}

/// `W(Σ)` for the simple roots with 0-based indices `sigma`; all simple roots
/// give `W`.
pub fn build_weyl_group(roots: &RootSystem, sigma: &[usize]) -> Result<WeylGroup> {
    build_weyl_group_with_cap(roots, sigma, DEFAULT_GROUP_CAP)
}

pub fn build_weyl_group_with_cap(roots: &RootSystem, sigma: &[usize], cap: usize) -> Result<WeylGroup> {
    roots.check_subset(sigma)?;
    let mut generators = sigma.to_vec();
    generators.sort_unstable();
    generators.dedup();
    let identity = LatticeMap::identity(roots.dim());
    let mut elements = vec![identity.clone()];
    let mut words = vec![Vec::new()];
    let mut index = HashMap::from([(identity, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for &g in &generators {
            let w = elements[i].compose(roots.simple_reflection(g));
            if index.contains_key(&w) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::CapExceeded(cap));
            }
            let mut word = words[i].clone();
            word.push(g);
            index.insert(w.clone(), elements.len());
            queue.push_back(elements.len());
            elements.push(w);
            words.push(word);
        }
    }
    Ok(WeylGroup { generators, elements, words, index })
}

/// The left cosets `W / W(Σ)` with representatives of minimal length (ties
/// broken by the smallest reduced word).
#[derive(Clone, Debug)]
pub struct CosetSpace {
    representatives: Vec<usize>,
    coset_of: Vec<usize>,
}

impl CosetSpace {
    pub fn new(group: &WeylGroup, subgroup: &WeylGroup) -> Result<Self> {
        let mut coset_of = vec![usize::MAX; group.order()];
        let mut representatives = Vec::new();
        for w in 0..group.order() {
            if coset_of[w] != usize::MAX {
                continue;
            }
            let id = representatives.len();
            representatives.push(w);
            for u in subgroup.elements() {
                let wu = group.elements[w].compose(u);
                let k = group
                    .index_of(&wu)
                    .ok_or_else(|| Error::InvalidArgument("W(Σ) is not a subgroup of W".into()))?;
                coset_of[k] = id;
            }
        }
        Ok(CosetSpace { representatives, coset_of })
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// Element index of the representative of coset `c`.
    pub fn representative(&self, c: usize) -> usize {
        self.representatives[c]
    }

    /// Coset of the element with index `w`.
    pub fn coset_of(&self, w: usize) -> usize {
        self.coset_of[w]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let a2 = RootSystem::type_a(2).unwrap();
        assert_eq!(build_weyl_group(&a2, &[0, 1]).unwrap().order(), 6);
        assert_eq!(build_weyl_group(&a2, &[1]).unwrap().order(), 2);
        let c2 = RootSystem::type_c(2).unwrap();
        assert_eq!(build_weyl_group(&c2, &[0, 1]).unwrap().order(), 8);
        let a3 = RootSystem::type_a(3).unwrap();
        assert_eq!(build_weyl_group(&a3, &[0, 1, 2]).unwrap().order(), 24);
    }

    #[test]
    fn cap_is_enforced() {
        let a3 = RootSystem::type_a(3).unwrap();
        assert!(matches!(build_weyl_group_with_cap(&a3, &[0, 1, 2], 10), Err(Error::CapExceeded(10))));
    }

    #[test]
    fn words_are_reduced_and_lex_minimal() {
        let a2 = RootSystem::type_a(2).unwrap();
        let w = build_weyl_group(&a2, &[0, 1]).unwrap();
        let words: Vec<&[usize]> = (0..6).map(|i| w.word(i)).collect();
        assert_eq!(words, vec![&[][..], &[0], &[1], &[0, 1], &[1, 0], &[0, 1, 0]]);
    }

    #[test]
    fn cosets_of_a_parabolic() {
        let a2 = RootSystem::type_a(2).unwrap();
        let w = build_weyl_group(&a2, &[0, 1]).unwrap();
        let h = build_weyl_group(&a2, &[1]).unwrap();
        let c = CosetSpace::new(&w, &h).unwrap();
        assert_eq!(c.len(), 3);
        for k in 0..c.len() {
            assert_eq!(c.coset_of(c.representative(k)), k);
        }
    }
}
