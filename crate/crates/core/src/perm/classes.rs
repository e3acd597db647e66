use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::group::{GroupKind, PermGroup};
use super::permutation::{CycleType, Permutation};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitTag {
    Whole,
    Plus,
    Minus,
}

#[derive(Clone, Debug)]
pub struct ConjClass {
    /// Lexicographically least member.
    pub rep: Permutation,
    pub size: usize,
    pub cycle_type: CycleType,
    pub split: SplitTag,
    pub label: String,
    /// Member indices into the owning group's sorted element list.
    pub members: Vec<u32>,
}

/// Conjugacy classes of a group, ordered by cycle type (lexicographic on the
/// non-increasing parts) and then by least member, so the identity class
/// is always class 0.
#[derive(Clone, Debug)]
pub struct ClassTable {
    classes: Vec<ConjClass>,
    class_of: Vec<u32>,
}

impl ClassTable {
    /// Orbits of the group acting on itself by conjugation, computed by
    /// closing each element under conjugation by the generators.
    pub fn compute(group: &PermGroup) -> Result<Self> {
        let elems = group.elements()?;
        let n = elems.len();
        let mut class_of = vec![u32::MAX; n];
        let mut raw: Vec<Vec<u32>> = Vec::new();
        let gens = group.generators();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let id = raw.len() as u32;
            class_of[start] = id;
            let mut members = vec![start as u32];
            let mut k = 0;
            while k < members.len() {
                let x = elems.get(members[k] as usize);
                for s in gens {
                    let y = x.conjugate_by(s);
                    let j = elems.index_of(&y).expect("group closed under conjugation");
                    if class_of[j] == u32::MAX {
                        class_of[j] = id;
                        members.push(j as u32);
                    }
                }
                k += 1;
            }
            members.sort_unstable();
            raw.push(members);
        }

        let mut classes: Vec<ConjClass> = raw
            .into_iter()
            .map(|members| {
                let rep = elems.get(members[0] as usize).clone();
                ConjClass {
                    cycle_type: rep.cycle_type(),
                    rep,
                    size: members.len(),
                    split: SplitTag::Whole,
                    label: String::new(),
                    members,
                }
            })
            .collect();
        classes.sort_by(|a, b| {
            (a.cycle_type.parts(), &a.rep).cmp(&(b.cycle_type.parts(), &b.rep))
        });

        let mut by_type: HashMap<CycleType, Vec<usize>> = HashMap::new();
        for (i, c) in classes.iter().enumerate() {
            by_type.entry(c.cycle_type.clone()).or_default().push(i);
        }
        for c in classes.iter_mut() {
            c.label = c.cycle_type.to_string();
        }
        for idx in by_type.values() {
            if idx.len() < 2 {
                continue;
            }
            if group.kind() == GroupKind::Alternating && idx.len() == 2 {
                classes[idx[0]].split = SplitTag::Plus;
                classes[idx[0]].label.push('+');
                classes[idx[1]].split = SplitTag::Minus;
                classes[idx[1]].label.push('-');
            } else {
                for (k, &i) in idx.iter().enumerate() {
                    classes[i].label.push_str(&format!("#{}", k + 1));
                }
            }
        }

        let mut class_of = vec![0u32; n];
        for (i, c) in classes.iter().enumerate() {
            for &m in &c.members {
                class_of[m as usize] = i as u32;
            }
        }
        Ok(ClassTable { classes, class_of })
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn get(&self, i: usize) -> &ConjClass {
        &self.classes[i]
    }

    /// Class index of the element with the given index in the sorted element list.
    pub fn class_of_index(&self, element_index: usize) -> usize {
        self.class_of[element_index] as usize
    }

    pub fn labels(&self) -> Vec<String> {
        self.classes.iter().map(|c| c.label.clone()).collect()
    }

    pub fn position_of_label(&self, label: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.label == label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sizes(g: &PermGroup) -> Vec<usize> {
        g.classes().unwrap().classes().iter().map(|c| c.size).collect()
    }

    #[test]
    fn symmetric_class_sizes() {
        assert_eq!(sizes(&PermGroup::symmetric(4)), vec![1, 6, 3, 8, 6]);
        assert_eq!(sizes(&PermGroup::symmetric(3)), vec![1, 3, 2]);
    }

    #[test]
    fn alternating_class_sizes() {
        assert_eq!(sizes(&PermGroup::alternating(4)), vec![1, 3, 4, 4]);
        assert_eq!(sizes(&PermGroup::alternating(5)), vec![1, 15, 20, 12, 12]);
    }

    #[test]
    fn split_tags_and_labels() {
        let a5 = PermGroup::alternating(5);
        let t = a5.classes().unwrap();
        assert_eq!(t.labels(), vec!["1^5", "2^2 1^1", "3^1 1^2", "5^1+", "5^1-"]);
        assert_eq!(t.get(3).split, SplitTag::Plus);
        assert_eq!(t.get(4).split, SplitTag::Minus);
        // plus holds the lexicographically least 5-cycle
        assert!(t.get(3).rep < t.get(4).rep);
    }

    #[test]
    fn classes_partition_and_sizes_divide_order() {
        for g in [PermGroup::symmetric(5), PermGroup::alternating(6)] {
            let t = g.classes().unwrap();
            let order = g.order().unwrap() as usize;
            assert_eq!(t.classes().iter().map(|c| c.size).sum::<usize>(), order);
            for c in t.classes() {
                assert_eq!(order % c.size, 0);
                let cent = g.centralizer(&c.rep).unwrap().order().unwrap() as usize;
                assert_eq!(c.size * cent, order);
            }
        }
    }

    #[test]
    fn symmetric_one_class_per_cycle_type() {
        let t = PermGroup::symmetric(6).classes().unwrap();
        assert_eq!(t.len(), 11);
        assert!(t.classes().iter().all(|c| c.split == SplitTag::Whole));
    }
}
