use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::perm::{CycleType, PermGroup, Permutation};

/// Default cap on the order of the `p`-group whose subgroups are catalogued.
pub const DEFAULT_MAX_SYLOW: u64 = 128;

/// One subgroup of the catalogued `p`-group.
#[derive(Clone, Debug)]
pub struct SubgroupEntry {
    pub group: PermGroup,
    /// Sorted element list.
    pub elements: Vec<Permutation>,
    /// Index of the catalog entry representing this subgroup's conjugacy
    /// class (under whatever group [`SubgroupCatalog::mark_representatives`]
    /// was last called with); equal to its own index for representatives.
    pub representative: usize,
}

impl SubgroupEntry {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_representative(&self, index: usize) -> bool {
        self.representative == index
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.elements.binary_search(g).is_ok()
    }
}

/// All subgroups of a `p`-group, ordered by (order descending, generator
/// string, element list).
#[derive(Clone, Debug)]
pub struct SubgroupCatalog {
    pub entries: Vec<SubgroupEntry>,
}

/// Closure of `base ∪ {x}` assuming `x` normalizes `base` and `x^p ∈ base`:
/// the union of the cosets `base·x^i`, `0 ≤ i < p`.
fn cyclic_extension(base: &[Permutation], x: &Permutation, p: u64) -> Vec<Permutation> {
    let mut out = Vec::with_capacity(base.len() * p as usize);
    let mut power = Permutation::identity(x.degree());
    for _ in 0..p {
        out.extend(base.iter().map(|b| b * &power));
        power = &power * x;
    }
    out.sort();
    out.dedup();
    out
}

impl SubgroupCatalog {
    /// Every subgroup of the `p`-group `s`, grown from the trivial subgroup
    /// by cyclic extensions `⟨Q, x⟩` with `x ∈ N_S(Q)`, `x^p ∈ Q`. Each
    /// entry starts as its own representative.
    pub fn build(s: &PermGroup, p: u64, max_order: u64) -> Result<Self> {
        let order = s.order()?;
        if order > max_order as u128 {
            return Err(Error::CapExceeded {
                what: "p-subgroup catalog",
                needed: order,
                limit: max_order,
            });
        }
        let elems = s.elements()?;
        let degree = s.degree();
        let mut seen: HashSet<Vec<Permutation>> = HashSet::new();
        let trivial = vec![Permutation::identity(degree)];
        seen.insert(trivial.clone());
        let mut layer = vec![trivial];
        let mut all = layer.clone();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for q in &layer {
                let members: HashSet<&Permutation> = q.iter().collect();
                for x in elems.list() {
                    if members.contains(x) || !members.contains(&x.pow(p as i64)) {
                        continue;
                    }
                    if !q.iter().all(|g| members.contains(&g.conjugate_by(x))) {
                        continue;
                    }
                    let ext = cyclic_extension(q, x, p);
                    if seen.insert(ext.clone()) {
                        next.push(ext);
                    }
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        let mut entries: Vec<SubgroupEntry> = all
            .into_iter()
            .map(|elements| {
                let group = PermGroup::from_elements(degree, elements.clone()).with_cap(s.cap());
                SubgroupEntry {
                    group,
                    elements,
                    representative: 0,
                }
            })
            .collect();
        entries.sort_by(|a, b| {
            b.order()
                .cmp(&a.order())
                .then_with(|| a.group.generator_string().cmp(&b.group.generator_string()))
                .then_with(|| a.elements.cmp(&b.elements))
        });
        for (i, e) in entries.iter_mut().enumerate() {
            e.representative = i;
        }
        Ok(SubgroupCatalog { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> &SubgroupEntry {
        &self.entries[i]
    }

    /// Marks conjugacy representatives under `g`: the first entry of each
    /// `g`-conjugacy class in catalog order.
    pub fn mark_representatives(&mut self, g: &PermGroup) -> Result<()> {
        let elems = g.elements()?;
        let signatures: Vec<Vec<CycleType>> = self.entries.iter().map(|e| signature(&e.elements)).collect();
        let mut reps: BTreeMap<(usize, Vec<CycleType>), Vec<usize>> = BTreeMap::new();
        for i in 0..self.entries.len() {
            let key = (self.entries[i].order(), signatures[i].clone());
            let bucket = reps.entry(key).or_default();
            let found = bucket.iter().copied().find(|&r| {
                conjugating_element(elems.list(), &self.entries[i], &self.entries[r].elements).is_some()
            });
            match found {
                Some(r) => self.entries[i].representative = r,
                None => {
                    self.entries[i].representative = i;
                    bucket.push(i);
                }
            }
        }
        Ok(())
    }

    pub fn representatives(&self) -> impl Iterator<Item = (usize, &SubgroupEntry)> {
        self.entries.iter().enumerate().filter(|(i, e)| e.is_representative(*i))
    }
}

/// Sorted multiset of cycle types: a conjugacy invariant.
pub fn signature(elements: &[Permutation]) -> Vec<CycleType> {
    let mut v: Vec<CycleType> = elements.iter().map(Permutation::cycle_type).collect();
    v.sort_by_key(|c| c.parts());
    v
}

/// Some `g` in `candidates` with `A^g = B` (`B` sorted, same order as `A`).
pub fn conjugating_element(candidates: &[Permutation], a: &SubgroupEntry, b: &[Permutation]) -> Option<Permutation> {
    if a.order() != b.len() {
        return None;
    }
    let gens = a.group.generators();
    candidates
        .iter()
        .find(|g| gens.iter().all(|x| b.binary_search(&x.conjugate_by(g)).is_ok()))
        .cloned()
}

/// Some `g` in `candidates` with `A^g ⊆ B` (`B` sorted).
pub fn subconjugating_element(candidates: &[Permutation], a: &PermGroup, b: &[Permutation]) -> Option<Permutation> {
    let gens = a.generators();
    candidates
        .iter()
        .find(|g| gens.iter().all(|x| b.binary_search(&x.conjugate_by(g)).is_ok()))
        .cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{sylow_symmetric, PermGroup};

    #[test]
    fn small_catalogs() {
        let c2 = PermGroup::generated(2, vec![Permutation::parse("(1 2)", 2).unwrap()]).unwrap();
        assert_eq!(SubgroupCatalog::build(&c2, 2, 128).unwrap().len(), 2);
        let t = PermGroup::trivial(3);
        assert_eq!(SubgroupCatalog::build(&t, 2, 128).unwrap().len(), 1);
    }

    #[test]
    fn dihedral_has_ten_subgroups() {
        let d8 = sylow_symmetric(4, 2).unwrap();
        let cat = SubgroupCatalog::build(&d8, 2, 128).unwrap();
        assert_eq!(cat.len(), 10);
        assert_eq!(cat.get(0).order(), 8);
        assert_eq!(cat.get(cat.len() - 1).order(), 1);
        // exhaustive oracle: closures of all subsets of size ≤ 2 give every subgroup of D8
        let elems = d8.elements().unwrap();
        let mut subgroups: HashSet<Vec<Permutation>> = HashSet::new();
        for a in elems.list() {
            for b in elems.list() {
                let mut h = crate::perm::closure(4, &[a.clone(), b.clone()], 1000).unwrap();
                h.sort();
                subgroups.insert(h);
            }
        }
        assert_eq!(subgroups.len(), 10);
        for e in &cat.entries {
            assert!(subgroups.contains(&e.elements));
        }
    }

    #[test]
    fn representatives_under_s4() {
        let d8 = sylow_symmetric(4, 2).unwrap();
        let mut cat = SubgroupCatalog::build(&d8, 2, 128).unwrap();
        cat.mark_representatives(&PermGroup::symmetric(4)).unwrap();
        // D8, C4, two Klein groups, ⟨(12)(34)⟩, ⟨(12)⟩, trivial
        let orders: Vec<usize> = cat.representatives().map(|(_, e)| e.order()).collect();
        assert_eq!(orders, vec![8, 4, 4, 4, 2, 2, 1]);
    }

    #[test]
    fn cap_is_enforced() {
        let w = sylow_symmetric(8, 2).unwrap();
        assert!(matches!(SubgroupCatalog::build(&w, 2, 64), Err(Error::CapExceeded { .. })));
    }
}
