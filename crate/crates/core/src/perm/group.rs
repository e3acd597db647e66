use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use super::classes::ClassTable;
use super::permutation::{factorial, Permutation};
use crate::error::{Error, Result};

/// Default cap on the number of elements any enumeration may produce (10!).
pub const DEFAULT_MAX_ORDER: u64 = 3_628_800;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Symmetric,
    Alternating,
    Generic,
}

/// Sorted element list of a group together with a reverse index.
#[derive(Debug)]
pub struct Elements {
    list: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
}

impl Elements {
    fn new(mut list: Vec<Permutation>) -> Self {
        list.sort();
        list.dedup();
        let index = list
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i as u32))
            .collect();
        Elements { list, index }
    }

    pub fn list(&self) -> &[Permutation] {
        &self.list
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.index.contains_key(g)
    }

    pub fn get(&self, i: usize) -> &Permutation {
        &self.list[i]
    }
}

/// A permutation group given by generators, with lazily cached elements and
/// conjugacy classes. Values are immutable; caches are write-once.
pub struct PermGroup {
    degree: usize,
    kind: GroupKind,
    gens: Vec<Permutation>,
    cap: u64,
    elements: OnceLock<Arc<Elements>>,
    classes: OnceLock<Arc<ClassTable>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let elements = OnceLock::new();
        if let Some(e) = self.elements.get() {
            let _ = elements.set(e.clone());
        }
        let classes = OnceLock::new();
        if let Some(c) = self.classes.get() {
            let _ = classes.set(c.clone());
        }
        PermGroup {
            degree: self.degree,
            kind: self.kind,
            gens: self.gens.clone(),
            cap: self.cap,
            elements,
            classes,
        }
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup({:?}, deg {}, <", self.kind, self.degree)?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">)")
    }
}

impl PermGroup {
    fn raw(degree: usize, kind: GroupKind, gens: Vec<Permutation>) -> Self {
        PermGroup {
            degree,
            kind,
            gens,
            cap: DEFAULT_MAX_ORDER,
            elements: OnceLock::new(),
            classes: OnceLock::new(),
        }
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[vec![0, 1]]).unwrap());
        }
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[(0..n).collect()]).unwrap());
        }
        Self::raw(n, GroupKind::Symmetric, gens)
    }

    pub fn alternating(n: usize) -> Self {
        let gens = (2..n)
            .map(|i| Permutation::from_cycles(n, &[vec![0, 1, i]]).unwrap())
            .collect();
        Self::raw(n, GroupKind::Alternating, gens)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::raw(degree, GroupKind::Generic, Vec::new())
    }

    /// Symmetric group on a subset of the points, as a subgroup of degree `degree`.
    pub fn symmetric_on(degree: usize, points: &[usize]) -> Self {
        let gens = points
            .windows(2)
            .map(|w| Permutation::from_cycles(degree, &[vec![w[0], w[1]]]).unwrap())
            .collect();
        Self::raw(degree, GroupKind::Generic, gens)
    }

    /// Alternating group on a subset of the points.
    pub fn alternating_on(degree: usize, points: &[usize]) -> Self {
        let gens = if points.len() >= 3 {
            points[2..]
                .iter()
                .map(|&c| Permutation::from_cycles(degree, &[vec![points[0], points[1], c]]).unwrap())
                .collect()
        } else {
            Vec::new()
        };
        Self::raw(degree, GroupKind::Generic, gens)
    }

    /// Generic group generated by the given permutations.
    pub fn generated(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(Self::raw(degree, GroupKind::Generic, gens))
    }

    /// Generic group from a complete, closed element list. A small
    /// generating set is chosen greedily in element order.
    pub fn from_elements(degree: usize, elements: Vec<Permutation>) -> Self {
        let elements = Elements::new(elements);
        let gens = greedy_generators(degree, elements.list());
        let group = Self::raw(degree, GroupKind::Generic, gens);
        let _ = group.elements.set(Arc::new(elements));
        group
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    /// Order known without enumeration, when available.
    pub fn projected_order(&self) -> Option<u128> {
        if let Some(e) = self.elements.get() {
            return Some(e.len() as u128);
        }
        match self.kind {
            GroupKind::Symmetric => Some(factorial(self.degree as u64)),
            GroupKind::Alternating => Some(if self.degree >= 2 {
                factorial(self.degree as u64) / 2
            } else {
                1
            }),
            GroupKind::Generic => None,
        }
    }

    pub fn order(&self) -> Result<u128> {
        match self.projected_order() {
            Some(o) => Ok(o),
            None => Ok(self.elements()?.len() as u128),
        }
    }

    /// Complete sorted element list, computed once.
    pub fn elements(&self) -> Result<Arc<Elements>> {
        if let Some(e) = self.elements.get() {
            return Ok(e.clone());
        }
        if let Some(order) = self.projected_order() {
            if order > self.cap as u128 {
                return Err(Error::CapExceeded {
                    what: "group enumeration",
                    needed: order,
                    limit: self.cap,
                });
            }
        }
        let list = match self.kind {
            GroupKind::Symmetric => all_permutations(self.degree),
            GroupKind::Alternating => all_permutations(self.degree)
                .into_iter()
                .filter(Permutation::is_even)
                .collect(),
            GroupKind::Generic => closure(self.degree, &self.gens, self.cap)?,
        };
        let e = Arc::new(Elements::new(list));
        let _ = self.elements.set(e.clone());
        Ok(self.elements.get().cloned().unwrap_or(e))
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return Ok(false);
        }
        Ok(match self.kind {
            GroupKind::Symmetric => true,
            GroupKind::Alternating => g.is_even(),
            GroupKind::Generic => self.elements()?.contains(g),
        })
    }

    pub fn classes(&self) -> Result<Arc<ClassTable>> {
        if let Some(c) = self.classes.get() {
            return Ok(c.clone());
        }
        let table = Arc::new(ClassTable::compute(self)?);
        let _ = self.classes.set(table.clone());
        Ok(self.classes.get().cloned().unwrap_or(table))
    }

    /// Subgroup of elements satisfying a predicate; the predicate must cut
    /// out a subgroup.
    pub fn filter_subgroup(&self, pred: impl Fn(&Permutation) -> bool) -> Result<PermGroup> {
        let elems = self.elements()?;
        let list: Vec<Permutation> = elems.list().iter().filter(|g| pred(g)).cloned().collect();
        Ok(PermGroup::from_elements(self.degree, list).with_cap(self.cap))
    }

    /// `C_G(g)` by scanning the elements. See [`super::centralizer`] for the
    /// structural construction in symmetric groups.
    pub fn centralizer_scan(&self, g: &Permutation) -> Result<PermGroup> {
        if !self.contains(g)? {
            return Err(Error::NotInGroup(g.to_string()));
        }
        self.filter_subgroup(|x| x.commutes_with(g))
    }

    /// `C_G(g)`; structural for symmetric groups, a scan otherwise.
    pub fn centralizer(&self, g: &Permutation) -> Result<PermGroup> {
        if !self.contains(g)? {
            return Err(Error::NotInGroup(g.to_string()));
        }
        match self.kind {
            GroupKind::Symmetric => {
                let structure = super::centralizer::centralizer_structure(g);
                PermGroup::generated(self.degree, structure.generators())
                    .map(|h| h.with_cap(self.cap))
            }
            _ => self.centralizer_scan(g),
        }
    }

    /// `C_G(H)` for a subgroup `H` (by scanning `G`).
    pub fn centralizer_of_subgroup(&self, h: &PermGroup) -> Result<PermGroup> {
        let gens = h.generators().to_vec();
        self.filter_subgroup(|x| gens.iter().all(|s| x.commutes_with(s)))
    }

    /// `N_G(Q) = {g ∈ G : Q^g = Q}`.
    pub fn normalizer(&self, q: &PermGroup) -> Result<PermGroup> {
        let q_elems = q.elements()?;
        for s in q.generators() {
            if !self.contains(s)? {
                return Err(Error::NotInGroup(s.to_string()));
            }
        }
        let gens = q.generators().to_vec();
        self.filter_subgroup(|g| gens.iter().all(|s| q_elems.contains(&s.conjugate_by(g))))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> Result<bool> {
        for g in &self.gens {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Same element set.
    pub fn same_elements(&self, other: &PermGroup) -> Result<bool> {
        Ok(self.order()? == other.order()? && self.is_subgroup_of(other)?)
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .enumerate()
            .all(|(i, a)| self.gens[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// Image of the group under conjugation by `g`.
    pub fn conjugate_by(&self, g: &Permutation) -> PermGroup {
        let gens = self.gens.iter().map(|s| s.conjugate_by(g)).collect();
        let mut out = Self::raw(self.degree, GroupKind::Generic, gens);
        out.cap = self.cap;
        if let Some(e) = self.elements.get() {
            let list = e.list().iter().map(|x| x.conjugate_by(g)).collect();
            let _ = out.elements.set(Arc::new(Elements::new(list)));
        }
        out
    }

    /// Points moved by some element.
    pub fn moved_points(&self) -> Vec<usize> {
        (0..self.degree)
            .filter(|&x| self.gens.iter().any(|g| g.image(x) != x))
            .collect()
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree)
            .filter(|&x| self.gens.iter().all(|g| g.image(x) == x))
            .collect()
    }

    /// Orbits on points, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut k = 0;
            while k < orbit.len() {
                let x = orbit[k];
                for g in &self.gens {
                    let y = g.image(x);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// Canonical text of the deterministic generating set.
    pub fn generator_string(&self) -> String {
        if self.gens.is_empty() {
            return "<>".into();
        }
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        format!("<{}>", parts.join(", "))
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![Permutation::from_images(&cur).unwrap()];
    loop {
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Permutation::from_images(&cur).unwrap());
    }
    out
}

/// Closure of a generating set under right multiplication.
pub fn closure(degree: usize, gens: &[Permutation], cap: u64) -> Result<Vec<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = &x * s;
            if !seen.contains(&y) {
                if seen.len() as u64 >= cap {
                    return Err(Error::CapExceeded {
                        what: "group enumeration",
                        needed: seen.len() as u128 + 1,
                        limit: cap,
                    });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Greedy generating set: scan sorted elements, keep any not yet generated.
pub fn greedy_generators(degree: usize, sorted: &[Permutation]) -> Vec<Permutation> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut span: HashSet<Permutation> = HashSet::from([Permutation::identity(degree)]);
    for g in sorted {
        if span.contains(g) {
            continue;
        }
        gens.push(g.clone());
        span = closure(degree, &gens, u64::MAX)
            .expect("uncapped closure")
            .into_iter()
            .collect();
        if span.len() == sorted.len() {
            break;
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn enumerate_small_groups() {
        assert_eq!(PermGroup::symmetric(3).elements().unwrap().len(), 6);
        assert_eq!(PermGroup::alternating(4).elements().unwrap().len(), 12);
        let klein = PermGroup::generated(4, vec![p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)]).unwrap();
        assert_eq!(klein.elements().unwrap().len(), 4);
        assert_eq!(PermGroup::symmetric(1).elements().unwrap().len(), 1);
        assert_eq!(PermGroup::alternating(2).elements().unwrap().len(), 1);
    }

    #[test]
    fn enumeration_is_sorted_and_matches_closure() {
        let s4 = PermGroup::symmetric(4);
        let list = s4.elements().unwrap();
        assert!(list.list().windows(2).all(|w| w[0] < w[1]));
        let generic = PermGroup::generated(4, s4.generators().to_vec()).unwrap();
        assert_eq!(generic.elements().unwrap().list(), list.list());
        let a5 = PermGroup::alternating(5);
        let generic = PermGroup::generated(5, a5.generators().to_vec()).unwrap();
        assert_eq!(generic.elements().unwrap().list(), a5.elements().unwrap().list());
    }

    #[test]
    fn cap_is_enforced() {
        let s6 = PermGroup::symmetric(6).with_cap(100);
        assert!(matches!(s6.elements(), Err(Error::CapExceeded { .. })));
        let g = PermGroup::generated(6, PermGroup::symmetric(6).generators().to_vec())
            .unwrap()
            .with_cap(100);
        assert!(matches!(g.elements(), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn normalizers() {
        let s3 = PermGroup::symmetric(3);
        let c3 = PermGroup::generated(3, vec![p("(1 2 3)", 3)]).unwrap();
        assert_eq!(s3.normalizer(&c3).unwrap().order().unwrap(), 6);
        assert_eq!(s3.normalizer(&s3).unwrap().order().unwrap(), 6);
        let s4 = PermGroup::symmetric(4);
        let t = PermGroup::generated(4, vec![p("(1 2)", 4)]).unwrap();
        let n = s4.normalizer(&t).unwrap();
        let expect = PermGroup::generated(4, vec![p("(1 2)", 4), p("(3 4)", 4)]).unwrap();
        assert!(n.same_elements(&expect).unwrap());
        assert_eq!(n.order().unwrap(), 4);
    }

    #[test]
    fn centralizer_of_identity_is_whole_group() {
        let a4 = PermGroup::alternating(4);
        assert_eq!(a4.centralizer(&Permutation::identity(4)).unwrap().order().unwrap(), 12);
        let s4 = PermGroup::symmetric(4);
        assert_eq!(s4.centralizer(&Permutation::identity(4)).unwrap().order().unwrap(), 24);
    }

    #[test]
    fn centralizer_rejects_outsider() {
        let a4 = PermGroup::alternating(4);
        assert!(matches!(a4.centralizer(&p("(1 2)", 4)), Err(Error::NotInGroup(_))));
    }

    #[test]
    fn from_elements_generators_regenerate() {
        let s4 = PermGroup::symmetric(4);
        let d = PermGroup::from_elements(4, s4.elements().unwrap().list().to_vec());
        let regen = PermGroup::generated(4, d.generators().to_vec()).unwrap();
        assert_eq!(regen.order().unwrap(), 24);
    }
}
