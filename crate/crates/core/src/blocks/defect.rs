use super::catalog::subconjugating_element;
use super::system::BlockSystem;
use crate::error::{Error, Result};
use crate::perm::{p_part, PermGroup, Permutation};

/// Defect group of one block, with the data used to cross-check it.
#[derive(Clone, Debug)]
pub struct DefectGroup {
    /// Index of the representative in the system's subgroup catalog.
    pub catalog_index: usize,
    pub group: PermGroup,
    pub order: usize,
    /// Points moved by the defect group (0-based).
    pub moved: Vec<usize>,
    /// An element of the block's support whose centralizer has the defect
    /// group as a Sylow subgroup.
    pub witness: Permutation,
    /// Fixed points of the witness (0-based).
    pub witness_fixed: Vec<usize>,
}

impl BlockSystem {
    /// Defect groups of all blocks, in block order.
    ///
    /// Among the catalog representatives `Q` with `Br_Q(e) ≠ 0`, the one of
    /// largest order is returned; every other such `Q` must be subconjugate
    /// to it, and some element of the support must have it as a Sylow
    /// subgroup of its centralizer.
    pub fn defect_groups(&self) -> Result<&[DefectGroup]> {
        if let Some(d) = self.defects.get() {
            return Ok(d);
        }
        let mut out = Vec::with_capacity(self.blocks().len());
        for b in self.blocks() {
            out.push(self.compute_defect(b.index)?);
        }
        let _ = self.defects.set(out);
        Ok(self.defects.get().unwrap())
    }

    pub fn defect_group(&self, block: usize) -> Result<&DefectGroup> {
        self.block(block)?;
        Ok(&self.defect_groups()?[block])
    }

    fn compute_defect(&self, block: usize) -> Result<DefectGroup> {
        let e = &self.block(block)?.idempotent;
        let cat = self.catalog()?;
        let mut nonzero = Vec::new();
        for (i, entry) in cat.representatives() {
            if self.brauer_nonzero(e, i)? {
                nonzero.push((i, entry));
            }
        }
        let top_order = nonzero
            .iter()
            .map(|(_, q)| q.order())
            .max()
            .ok_or_else(|| Error::falsified(format!("block {block} has zero Brauer image at the trivial subgroup")))?;
        let tops: Vec<usize> = nonzero
            .iter()
            .filter(|(_, q)| q.order() == top_order)
            .map(|(i, _)| *i)
            .collect();
        if tops.len() != 1 {
            return Err(Error::falsified(format!(
                "block {block}: {} non-conjugate maximal subgroups with nonzero Brauer image",
                tops.len()
            )));
        }
        let d_index = tops[0];
        let d = cat.get(d_index);
        let elems = self.ctx().elements();
        for (_, q) in &nonzero {
            if subconjugating_element(elems.list(), &q.group, &d.elements).is_none() {
                return Err(Error::falsified(format!(
                    "block {block}: {} has nonzero Brauer image but is not subconjugate to {}",
                    q.group.generator_string(),
                    d.group.generator_string()
                )));
            }
        }

        // some a in the support with D a Sylow subgroup of C_G(a)
        let meeting = self.classes_meeting_centralizer(d_index)?;
        let classes = self.ctx().classes();
        let group_order = elems.len() as u128;
        let p = self.p() as u128;
        let d_gens = d.group.generators();
        let witness = e
            .support()
            .into_iter()
            .filter(|l| meeting.contains(l))
            .filter(|&l| p_part(group_order / classes.get(l).size as u128, p) == d.order() as u128)
            .find_map(|l| {
                classes
                    .get(l)
                    .members
                    .iter()
                    .map(|&m| elems.get(m as usize))
                    .find(|a| d_gens.iter().all(|s| s.commutes_with(a)))
                    .cloned()
            })
            .ok_or_else(|| {
                Error::falsified(format!(
                    "block {block}: no support element has {} as a Sylow subgroup of its centralizer",
                    d.group.generator_string()
                ))
            })?;
        Ok(DefectGroup {
            catalog_index: d_index,
            group: d.group.clone(),
            order: d.order(),
            moved: d.group.moved_points(),
            witness_fixed: witness.fixed_points(),
            witness,
        })
    }
}

#[cfg(test)]
mod tests {
    use crate::algebra::AlgebraContext;
    use crate::blocks::{BlockConfig, BlockSystem};
    use crate::field::FieldSpec;
    use crate::perm::PermGroup;

    fn system(g: PermGroup, p: u32) -> BlockSystem {
        let ctx = AlgebraContext::new(g, FieldSpec::prime(p).unwrap()).unwrap();
        BlockSystem::new(&ctx, BlockConfig::default()).unwrap()
    }

    #[test]
    fn s3_mod_two() {
        let sys = system(PermGroup::symmetric(3), 2);
        let ctx = sys.ctx();
        let d = sys.defect_groups().unwrap();
        let c3 = ctx.class_sum(2);
        for (b, dg) in sys.blocks().iter().zip(d) {
            if b.idempotent == c3 {
                assert_eq!(dg.order, 1);
                assert!(dg.moved.is_empty());
            } else {
                assert_eq!(dg.order, 2);
                assert_eq!(dg.moved.len(), 2);
                assert!(dg.witness.is_identity());
            }
        }
    }

    #[test]
    fn s4_mod_two_full_sylow() {
        let sys = system(PermGroup::symmetric(4), 2);
        let d = sys.defect_groups().unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].order, 8);
        assert_eq!(d[0].moved, vec![0, 1, 2, 3]);
    }

    #[test]
    fn s5_mod_three() {
        let sys = system(PermGroup::symmetric(5), 3);
        let orders: Vec<usize> = sys.defect_groups().unwrap().iter().map(|d| d.order).collect();
        let mut sorted = orders.clone();
        sorted.sort();
        // principal and sign-twisted principal blocks of defect 3, plus defect-zero blocks
        assert_eq!(sorted.iter().filter(|&&o| o == 3).count(), 2);
        assert!(sorted.iter().all(|&o| o == 1 || o == 3));
    }
}
