use std::collections::BTreeSet;

use crate::blocks::SubgroupCatalog;
use crate::error::{Error, Result};
use crate::perm::{p_part, PermGroup, Permutation};

/// Automorphisms of `Q`, each stored as the induced permutation of `Q`'s
/// sorted element list (`auto[i]` is the index of the image of element `i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutSet {
    pub q_elements: Vec<Permutation>,
    pub autos: BTreeSet<Vec<u32>>,
}

impl AutSet {
    /// Automorphisms induced by conjugation with the given elements, each of
    /// which must normalize `Q`.
    pub fn from_conjugators<'a>(
        q_elements: &[Permutation],
        conjugators: impl IntoIterator<Item = &'a Permutation>,
    ) -> Result<Self> {
        let mut autos = BTreeSet::new();
        for g in conjugators {
            let image: Option<Vec<u32>> = q_elements
                .iter()
                .map(|x| q_elements.binary_search(&x.conjugate_by(g)).ok().map(|i| i as u32))
                .collect();
            let image = image.ok_or_else(|| Error::NotNormal(format!("{g} does not normalize the subgroup")))?;
            autos.insert(image);
        }
        Ok(AutSet {
            q_elements: q_elements.to_vec(),
            autos,
        })
    }

    pub fn order(&self) -> usize {
        self.autos.len()
    }

    /// Closed under composition, contains the identity, and every member is
    /// a bijection preserving products.
    pub fn is_automorphism_group(&self) -> bool {
        let n = self.q_elements.len();
        let identity: Vec<u32> = (0..n as u32).collect();
        if !self.autos.contains(&identity) {
            return false;
        }
        let index = |g: &Permutation| self.q_elements.binary_search(g).ok();
        for a in &self.autos {
            for i in 0..n {
                for j in 0..n {
                    let prod = &self.q_elements[i] * &self.q_elements[j];
                    let Some(k) = index(&prod) else { return false };
                    let img = &self.q_elements[a[i] as usize] * &self.q_elements[a[j] as usize];
                    if index(&img) != Some(a[k] as usize) {
                        return false;
                    }
                }
            }
            for b in &self.autos {
                let comp: Vec<u32> = (0..n).map(|i| b[a[i] as usize]).collect();
                if !self.autos.contains(&comp) {
                    return false;
                }
            }
        }
        true
    }

    /// Each automorphism as a permutation of the element indices (1-based
    /// cycle notation), in set order.
    pub fn to_strings(&self) -> Vec<String> {
        self.autos
            .iter()
            .map(|a| {
                let images: Vec<usize> = a.iter().map(|&i| i as usize).collect();
                Permutation::from_images(&images)
                    .map(|p| p.to_string())
                    .unwrap_or_else(|_| format!("{images:?}"))
            })
            .collect()
    }
}

/// `C_P(Q) ⊆ Q`, equivalently `C_P(Q) = Z(Q)`.
pub fn is_centric(p: &PermGroup, q: &PermGroup) -> Result<bool> {
    let q_elems = q.elements()?;
    let gens = q.generators();
    Ok(p.elements()?
        .list()
        .iter()
        .filter(|x| gens.iter().all(|s| s.commutes_with(x)))
        .all(|x| q_elems.contains(x)))
}

/// Centric subgroups of `P` up to `P`-conjugacy, in catalog order (order
/// descending, then generator strings).
pub fn centric_subgroups(p: &PermGroup, prime: u64, max_order: u64) -> Result<Vec<PermGroup>> {
    let mut cat = SubgroupCatalog::build(p, prime, max_order)?;
    cat.mark_representatives(p)?;
    let mut out = Vec::new();
    for (_, e) in cat.representatives() {
        if is_centric(p, &e.group)? {
            out.push(e.group.clone());
        }
    }
    Ok(out)
}

/// Every centric subgroup of `P`, not only representatives.
pub fn all_centric_subgroups(p: &PermGroup, prime: u64, max_order: u64) -> Result<Vec<PermGroup>> {
    let cat = SubgroupCatalog::build(p, prime, max_order)?;
    let mut out = Vec::new();
    for e in &cat.entries {
        if is_centric(p, &e.group)? {
            out.push(e.group.clone());
        }
    }
    Ok(out)
}

/// `Aut_H(Q)`: the image of `N_H(Q)` in `Aut(Q)`.
pub fn aut_group(h: &PermGroup, q: &PermGroup) -> Result<AutSet> {
    let q_elems = q.elements()?;
    let gens = q.generators();
    let h_elems = h.elements()?;
    let normalizing = h_elems
        .list()
        .iter()
        .filter(|g| gens.iter().all(|s| q_elems.contains(&s.conjugate_by(g))));
    AutSet::from_conjugators(q_elems.list(), normalizing)
}

/// `|X|_p` for an automorphism set.
pub fn p_part_of_order(a: &AutSet, p: u64) -> u128 {
    p_part(a.order() as u128, p as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::sylow_symmetric;

    fn sub(gens: &[&str], n: usize) -> PermGroup {
        PermGroup::generated(n, gens.iter().map(|s| Permutation::parse(s, n).unwrap()).collect()).unwrap()
    }

    #[test]
    fn centric_tests() {
        let d8 = sylow_symmetric(4, 2).unwrap();
        assert!(is_centric(&d8, &d8).unwrap());
        assert!(!is_centric(&d8, &PermGroup::trivial(4)).unwrap());
        let c4 = sub(&["(1 3 2 4)"], 4);
        assert!(c4.is_subgroup_of(&d8).unwrap() || !c4.is_subgroup_of(&d8).unwrap());
        let cyclic = d8
            .elements()
            .unwrap()
            .list()
            .iter()
            .find(|x| x.order() == 4)
            .cloned()
            .unwrap();
        let c4 = PermGroup::generated(4, vec![cyclic]).unwrap();
        assert!(is_centric(&d8, &c4).unwrap());
    }

    #[test]
    fn centrics_of_small_groups() {
        let c2 = sub(&["(1 2)"], 2);
        assert_eq!(centric_subgroups(&c2, 2, 128).unwrap().len(), 1);
        let v4 = sub(&["(1 2)", "(3 4)"], 4);
        let c = centric_subgroups(&v4, 2, 128).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].order().unwrap(), 4);
        let d8 = sylow_symmetric(4, 2).unwrap();
        let orders: Vec<u128> = centric_subgroups(&d8, 2, 128)
            .unwrap()
            .iter()
            .map(|q| q.order().unwrap())
            .collect();
        assert_eq!(orders, vec![8, 4, 4, 4]);
    }

    #[test]
    fn automorphism_groups() {
        let s3 = PermGroup::symmetric(3);
        let c3 = sub(&["(1 2 3)"], 3);
        let a = aut_group(&s3, &c3).unwrap();
        assert_eq!(a.order(), 2);
        assert!(a.is_automorphism_group());
        let inner = aut_group(&c3, &c3).unwrap();
        assert_eq!(inner.order(), 1);
        let t = PermGroup::trivial(3);
        assert_eq!(aut_group(&s3, &t).unwrap().order(), 1);
        // Aut_{S_4}(V4) ≅ S_3 on the normal Klein group
        let v = sub(&["(1 2)(3 4)", "(1 3)(2 4)"], 4);
        let a = aut_group(&PermGroup::symmetric(4), &v).unwrap();
        assert_eq!(a.order(), 6);
        assert!(a.is_automorphism_group());
    }
}
