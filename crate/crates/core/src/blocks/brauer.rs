use std::sync::Arc;

use super::system::{BlockSystem, LocalBlocks};
use crate::algebra::{AlgebraElement, CentralElement};
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// A `p`-subgroup `Q` with a block idempotent `f` of `kC_G(Q)`.
#[derive(Clone, Debug)]
pub struct BrauerPair {
    pub q: PermGroup,
    pub f: CentralElement,
    /// Index of `f` among the local blocks.
    pub local_index: usize,
    pub local: Arc<LocalBlocks>,
}

/// `Br_P` on a sparse element: keeps the terms in `C_G(P)`. The element must
/// be stable under conjugation by `P`.
pub fn brauer_sparse(z: &AlgebraElement, p: &PermGroup) -> Result<AlgebraElement> {
    let gens = p.generators();
    if gens.iter().any(|x| z.conjugate(x) != *z) {
        return Err(Error::NotStable);
    }
    Ok(z.truncate(|g| gens.iter().all(|s| g.commutes_with(s))))
}

fn check_normal(q: &PermGroup, p: &PermGroup) -> Result<()> {
    let q_elems = q.elements()?;
    let p_elems = p.elements()?;
    let normal = q.generators().iter().all(|s| p_elems.contains(s))
        && p
            .generators()
            .iter()
            .all(|x| q.generators().iter().all(|s| q_elems.contains(&s.conjugate_by(x))));
    if !normal {
        return Err(Error::NotNormal(format!("{} in {}", q.generator_string(), p.generator_string())));
    }
    Ok(())
}

impl BlockSystem {
    /// `Br_Q(e)` for `e ∈ Z(kG)`, as an element of `Z(kC_G(Q))`.
    pub fn brauer_central(&self, e: &CentralElement, q: &PermGroup) -> Result<CentralElement> {
        let local = self.local(q)?;
        local.ctx.truncate_from(self.ctx(), e)
    }

    /// Whether `f ∈ Z(kC_G(Q))` is fixed by conjugation by `P`, for `Q ⊴ P`.
    pub fn p_stable(&self, f: &CentralElement, q: &PermGroup, p: &PermGroup) -> Result<bool> {
        check_normal(q, p)?;
        let local = self.local(q)?;
        for x in p.generators() {
            if local.ctx.conjugate(f, x)? != *f {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `Br_{P/Q}(f)` for `P`-stable `f ∈ Z(kC_G(Q))`, `Q ⊴ P`.
    pub fn brauer_relative(&self, f: &CentralElement, q: &PermGroup, p: &PermGroup) -> Result<CentralElement> {
        if !self.p_stable(f, q, p)? {
            return Err(Error::NotStable);
        }
        let inner = self.local(q)?;
        let outer = self.local(p)?;
        outer.ctx.truncate_from(&inner.ctx, f)
    }

    /// All Brauer pairs at `Q`.
    pub fn pairs_at(&self, q: &PermGroup) -> Result<Vec<BrauerPair>> {
        let local = self.local(q)?;
        Ok(local
            .blocks
            .iter()
            .enumerate()
            .map(|(i, f)| BrauerPair {
                q: q.clone(),
                f: f.clone(),
                local_index: i,
                local: local.clone(),
            })
            .collect())
    }

    /// `(Q, f)` is associated to `e` iff `Br_Q(e)·f = f`.
    pub fn associated(&self, pair: &BrauerPair, e: &CentralElement) -> Result<bool> {
        let br = self.brauer_central(e, &pair.q)?;
        Ok(pair.local.ctx.mul(&br, &pair.f) == pair.f)
    }

    /// The unique block of `G` a pair is associated to.
    pub fn associated_block(&self, pair: &BrauerPair) -> Result<usize> {
        let mut hits = Vec::new();
        for b in self.blocks() {
            if self.associated(pair, &b.idempotent)? {
                hits.push(b.index);
            }
        }
        match hits.as_slice() {
            [i] => Ok(*i),
            _ => Err(Error::falsified(format!(
                "Brauer pair at {} is associated to {} blocks",
                pair.q.generator_string(),
                hits.len()
            ))),
        }
    }

    /// Number of Brauer pairs at `Q` associated to `e`.
    pub fn count_pairs_at(&self, q: &PermGroup, e: &CentralElement) -> Result<usize> {
        let mut n = 0;
        for pair in self.pairs_at(q)? {
            if self.associated(&pair, e)? {
                n += 1;
            }
        }
        Ok(n)
    }

    /// The unique `(Q, f) ≤ (P, e_P)`, found by descending the normalizer
    /// chain `Q ⊴ N_P(Q) ⊴ … ⊴ P`.
    pub fn restrict_pair(&self, top: &BrauerPair, q: &PermGroup) -> Result<BrauerPair> {
        let p = &top.q;
        if !q.is_subgroup_of(p)? {
            return Err(Error::Invalid(format!(
                "{} is not a subgroup of {}",
                q.generator_string(),
                p.generator_string()
            )));
        }
        let p_order = p.order()?;
        let mut chain = vec![q.clone()];
        while chain.last().unwrap().order()? < p_order {
            let next = p.normalizer(chain.last().unwrap())?;
            if next.order()? == chain.last().unwrap().order()? {
                return Err(Error::falsified("normalizer chain in a p-group stalled"));
            }
            chain.push(next);
        }
        let mut current = top.clone();
        for inner in chain.iter().rev().skip(1) {
            let mut found = Vec::new();
            for cand in self.pairs_at(inner)? {
                if !self.p_stable(&cand.f, inner, &current.q)? {
                    continue;
                }
                let br = self.brauer_relative(&cand.f, inner, &current.q)?;
                if current.local.ctx.mul(&br, &current.f) == current.f {
                    found.push(cand);
                }
            }
            if found.len() != 1 {
                return Err(Error::falsified(format!(
                    "{} candidate pairs at {} below the pair at {}",
                    found.len(),
                    inner.generator_string(),
                    current.q.generator_string()
                )));
            }
            current = found.pop().unwrap();
        }
        Ok(current)
    }

    /// `(Q, f)^g = (Q^g, f^g)` for `g ∈ N_G(Q)`; returns the local index of `f^g`.
    pub fn conjugate_pair_index(&self, pair: &BrauerPair, g: &Permutation) -> Result<usize> {
        let fg = pair.local.ctx.conjugate(&pair.f, g)?;
        pair.local
            .blocks
            .iter()
            .position(|b| *b == fg)
            .ok_or_else(|| Error::falsified("conjugate of a local block is not a local block"))
    }
}
