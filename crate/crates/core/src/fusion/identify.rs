use std::fmt;

use serde::Serialize;

use super::aut::{aut_group, centric_subgroups, p_part_of_order, AutSet};
use crate::blocks::{BlockSystem, BrauerPair};
use crate::error::{Error, Result};
use crate::perm::{GroupKind, PermGroup};

/// Per-centric-subgroup automorphism sets over a fixed `P`, ordered as
/// [`centric_subgroups`] returns them (so `P` comes first).
#[derive(Clone, Debug)]
pub struct FusionFingerprint {
    pub p: PermGroup,
    pub entries: Vec<(PermGroup, AutSet)>,
}

impl FusionFingerprint {
    /// The first centric subgroup where the two fingerprints differ.
    pub fn first_difference(&self, other: &FusionFingerprint) -> Option<usize> {
        if self.entries.len() != other.entries.len() {
            return Some(self.entries.len().min(other.entries.len()));
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .position(|((q1, a1), (q2, a2))| q1.generators() != q2.generators() || a1 != a2)
    }

    pub fn matches(&self, other: &FusionFingerprint) -> bool {
        self.first_difference(other).is_none()
    }
}

/// `F_P(H)` on the centric subgroups of `P`, for `P ≤ H`.
pub fn fingerprint_group(h: &PermGroup, p: &PermGroup, prime: u64, max_order: u64) -> Result<FusionFingerprint> {
    let centrics = centric_subgroups(p, prime, max_order)?;
    fingerprint_group_at(h, p, &centrics)
}

fn fingerprint_group_at(h: &PermGroup, p: &PermGroup, centrics: &[PermGroup]) -> Result<FusionFingerprint> {
    if !p.is_subgroup_of(h)? {
        return Err(Error::Invalid(format!(
            "{} is not contained in {}",
            p.generator_string(),
            h.generator_string()
        )));
    }
    let entries = centrics
        .iter()
        .map(|q| Ok((q.clone(), aut_group(h, q)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(FusionFingerprint { p: p.clone(), entries })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "S_M")]
    SymmetricM,
    #[serde(rename = "A_M")]
    AlternatingM,
    #[serde(rename = "A_L")]
    AlternatingL,
    #[serde(rename = "FALSIFIED")]
    Falsified,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::SymmetricM => "S_M",
            Verdict::AlternatingM => "A_M",
            Verdict::AlternatingL => "A_L",
            Verdict::Falsified => "FALSIFIED",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DefectSummary {
    pub order: usize,
    pub gens: String,
    /// Points moved by the defect group, 1-based.
    #[serde(rename = "M")]
    pub m: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CentricEntry {
    pub gens: String,
    pub order: usize,
    pub aut_block: Vec<String>,
    #[serde(rename = "aut_SM")]
    pub aut_sm: Vec<String>,
    #[serde(rename = "aut_AM")]
    pub aut_am: Vec<String>,
    pub pairs: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Matches {
    #[serde(rename = "S_M")]
    pub sm: bool,
    #[serde(rename = "A_M")]
    pub am: bool,
    /// Only computed for alternating groups when `S_M` matches and `A_M`
    /// does not.
    #[serde(rename = "A_L", skip_serializing_if = "Option::is_none")]
    pub al: Option<bool>,
}

/// Outcome of the swap test in two-pair cases.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ParityCheck {
    /// Number of `(Q, g)` with `g ∈ N_G(Q)` tested.
    pub checked: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FusionReport {
    pub block: usize,
    pub defect: DefectSummary,
    pub centrics: Vec<CentricEntry>,
    pub verdict: Verdict,
    pub pairs_per_centric: Vec<usize>,
    pub matches: Matches,
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    pub l: Option<Vec<usize>>,
    /// `|Aut_P(P)|` equals the `p`-part of `|Aut_F(P)|`.
    pub saturation: bool,
    pub parity: ParityCheck,
    /// First centric subgroup (generators) where the verdict's comparison
    /// failed, for falsified verdicts.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl FusionReport {
    /// Pair counts agree across centric subgroups and lie in `{1, 2}`, and
    /// are all 1 for symmetric groups.
    pub fn pair_counts_ok(&self, kind: GroupKind) -> bool {
        let first = self.pairs_per_centric.first().copied().unwrap_or(1);
        let constant = self.pairs_per_centric.iter().all(|&c| c == first);
        match kind {
            GroupKind::Symmetric => constant && first == 1,
            _ => constant && (first == 1 || first == 2),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PairCensus {
    pub fingerprint: FusionFingerprint,
    /// Pairs associated to the block at each centric subgroup.
    pub pairs: Vec<usize>,
    pub parity: ParityCheck,
}

impl BlockSystem {
    /// A maximal Brauer pair `(D, e_D)` associated to the block.
    pub fn maximal_pair(&self, block: usize) -> Result<BrauerPair> {
        let e = &self.block(block)?.idempotent;
        let d = self.defect_group(block)?.group.clone();
        for pair in self.pairs_at(&d)? {
            if self.associated(&pair, e)? {
                return Ok(pair);
            }
        }
        Err(Error::falsified(format!(
            "block {block}: no Brauer pair at the defect group {}",
            d.generator_string()
        )))
    }

    /// `Aut_F(Q)` for the block fusion system on the defect group of the
    /// top pair: conjugations by `g ∈ N_G(Q)` fixing the subpair at `Q`.
    pub fn aut_f_block(&self, top: &BrauerPair, q: &PermGroup) -> Result<AutSet> {
        let pair = self.restrict_pair(top, q)?;
        self.aut_of_pair(&pair)
    }

    fn aut_of_pair(&self, pair: &BrauerPair) -> Result<AutSet> {
        let normalizer = self.group().normalizer(&pair.q)?;
        let elems = normalizer.elements()?;
        let mut stabilizer = Vec::new();
        for g in elems.list() {
            if self.conjugate_pair_index(pair, g)? == pair.local_index {
                stabilizer.push(g);
            }
        }
        AutSet::from_conjugators(&pair.local.q_elements, stabilizer)
    }

    /// The block fusion system on its defect group, at each centric subgroup.
    pub fn fingerprint_block(&self, block: usize) -> Result<FusionFingerprint> {
        let top = self.maximal_pair(block)?;
        let centrics = centric_subgroups(&top.q, self.p() as u64, self.config().max_sylow)?;
        let mut entries = Vec::with_capacity(centrics.len());
        for q in centrics {
            let a = self.aut_f_block(&top, &q)?;
            entries.push((q, a));
        }
        Ok(FusionFingerprint { p: top.q, entries })
    }

    /// Block fingerprint together with the number of pairs associated to
    /// the block at each centric subgroup and, for alternating groups with
    /// two pairs, the swap test against the parity on the fixed points of `P`.
    pub fn pair_census(&self, block: usize) -> Result<PairCensus> {
        let kind = self.group().kind();
        let e = self.block(block)?.idempotent.clone();
        let top = self.maximal_pair(block)?;
        let p = top.q.clone();
        let centrics = centric_subgroups(&p, self.p() as u64, self.config().max_sylow)?;
        let fixed = p.fixed_points();
        let mut entries = Vec::with_capacity(centrics.len());
        let mut pairs = Vec::with_capacity(centrics.len());
        let mut parity = ParityCheck::default();
        for q in centrics {
            let pair = self.restrict_pair(&top, &q)?;
            let aut = self.aut_of_pair(&pair)?;
            let count = self.count_pairs_at(&q, &e)?;
            if count == 2 && kind == GroupKind::Alternating {
                let normalizer = self.group().normalizer(&q)?;
                for g in normalizer.elements()?.list() {
                    let swapped = self.conjugate_pair_index(&pair, g)? != pair.local_index;
                    parity.checked += 1;
                    if restricted_parity(g, &fixed) != Some(swapped) {
                        parity.failures += 1;
                    }
                }
            }
            pairs.push(count);
            entries.push((q, aut));
        }
        Ok(PairCensus {
            fingerprint: FusionFingerprint { p, entries },
            pairs,
            parity,
        })
    }

    /// Compares the block fusion system with `F_P(S_M)` and `F_P(A_M)` for
    /// `M` the points moved by the defect group, and with `F_P(A_L)` when
    /// an alternating block matches only `S_M`.
    pub fn identify(&self, block: usize) -> Result<FusionReport> {
        let kind = self.group().kind();
        if kind == GroupKind::Generic {
            return Err(Error::Invalid(
                "fusion identification needs a symmetric or alternating group".into(),
            ));
        }
        let n = self.group().degree();
        let prime = self.p() as u64;
        let defect = self.defect_group(block)?.clone();
        let census = self.pair_census(block)?;
        let block_fp = census.fingerprint;
        let p = &block_fp.p;
        let centrics: Vec<PermGroup> = block_fp.entries.iter().map(|(q, _)| q.clone()).collect();
        let pairs_per_centric = census.pairs;
        let parity = census.parity;

        let m = defect.moved.clone();
        let sm = fingerprint_group_at(&PermGroup::symmetric_on(n, &m), p, &centrics)?;
        let am = fingerprint_group_at(&PermGroup::alternating_on(n, &m), p, &centrics)
            .or_else(|err| match err {
                // P outside A_M only happens for symmetric groups
                Error::Invalid(_) if kind == GroupKind::Symmetric => Ok(FusionFingerprint {
                    p: p.clone(),
                    entries: Vec::new(),
                }),
                other => Err(other),
            })?;
        let mut matches = Matches {
            sm: block_fp.matches(&sm),
            am: block_fp.matches(&am),
            al: None,
        };
        let mut l = None;
        let mut witness_index = None;
        let verdict = match kind {
            GroupKind::Symmetric => {
                if matches.sm {
                    Verdict::SymmetricM
                } else {
                    witness_index = block_fp.first_difference(&sm);
                    Verdict::Falsified
                }
            }
            _ => {
                if matches.am {
                    Verdict::AlternatingM
                } else if !matches.sm || prime == 2 {
                    witness_index = block_fp.first_difference(&am);
                    Verdict::Falsified
                } else {
                    let extra: Vec<usize> = (0..n).filter(|x| !m.contains(x)).take(2).collect();
                    if extra.len() < 2 {
                        matches.al = Some(false);
                        witness_index = block_fp.first_difference(&am);
                        Verdict::Falsified
                    } else {
                        let mut pts = m.clone();
                        pts.extend(extra);
                        pts.sort_unstable();
                        let al = fingerprint_group_at(&PermGroup::alternating_on(n, &pts), p, &centrics)?;
                        let ok = block_fp.matches(&al);
                        matches.al = Some(ok);
                        l = Some(pts.iter().map(|x| x + 1).collect());
                        if ok {
                            Verdict::SymmetricM
                        } else {
                            witness_index = block_fp.first_difference(&al);
                            Verdict::Falsified
                        }
                    }
                }
            }
        };

        let aut_p = aut_group(p, p)?;
        let saturation = aut_p.order() as u128 == p_part_of_order(&block_fp.entries[0].1, prime);

        let centrics_out = block_fp
            .entries
            .iter()
            .enumerate()
            .map(|(i, (q, a))| CentricEntry {
                gens: q.generator_string(),
                order: a.q_elements.len(),
                aut_block: a.to_strings(),
                aut_sm: sm.entries.get(i).map(|e| e.1.to_strings()).unwrap_or_default(),
                aut_am: am.entries.get(i).map(|e| e.1.to_strings()).unwrap_or_default(),
                pairs: pairs_per_centric[i],
            })
            .collect();
        Ok(FusionReport {
            block,
            defect: DefectSummary {
                order: defect.order,
                gens: defect.group.generator_string(),
                m: m.iter().map(|x| x + 1).collect(),
            },
            centrics: centrics_out,
            verdict,
            pairs_per_centric,
            matches,
            l,
            saturation,
            parity,
            witness: witness_index.and_then(|i| block_fp.entries.get(i)).map(|(q, _)| q.generator_string()),
        })
    }
}

/// Parity of `g` restricted to `points`, or `None` if `g` does not
/// preserve them.
fn restricted_parity(g: &crate::perm::Permutation, points: &[usize]) -> Option<bool> {
    let mut seen = vec![false; g.degree()];
    let mut transpositions = 0;
    for &start in points {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            if points.binary_search(&x).is_err() {
                return None;
            }
            seen[x] = true;
            x = g.image(x);
            len += 1;
        }
        transpositions += len - 1;
    }
    Some(transpositions % 2 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraContext;
    use crate::blocks::BlockConfig;
    use crate::field::FieldSpec;
    use crate::perm::Permutation;

    fn system(g: PermGroup, p: u32) -> BlockSystem {
        let ctx = AlgebraContext::new(g, FieldSpec::prime(p).unwrap()).unwrap();
        BlockSystem::new(&ctx, BlockConfig::default()).unwrap()
    }

    #[test]
    fn restricted_parity_cases() {
        let g = Permutation::parse("(1 2)(3 4 5)", 6).unwrap();
        assert_eq!(restricted_parity(&g, &[0, 1]), Some(true));
        assert_eq!(restricted_parity(&g, &[2, 3, 4]), Some(false));
        assert_eq!(restricted_parity(&g, &[5]), Some(false));
        assert_eq!(restricted_parity(&g, &[1, 2]), None);
    }

    #[test]
    fn s3_principal_block() {
        let sys = system(PermGroup::symmetric(3), 2);
        for b in sys.blocks() {
            let r = sys.identify(b.index).unwrap();
            assert_eq!(r.verdict, Verdict::SymmetricM);
            assert!(r.saturation);
            if r.defect.order == 2 {
                assert_eq!(r.defect.m.len(), 2);
                assert_eq!(r.centrics.len(), 1);
                assert_eq!(r.centrics[0].aut_block.len(), 1);
            } else {
                assert!(r.defect.m.is_empty());
            }
        }
    }

    #[test]
    fn s4_block_matches_sylow_fusion() {
        let sys = system(PermGroup::symmetric(4), 2);
        let fp = sys.fingerprint_block(0).unwrap();
        let oracle = fingerprint_group(&PermGroup::symmetric(4), &fp.p, 2, 128).unwrap();
        assert!(fp.matches(&oracle));
        assert_eq!(fp.entries.len(), 4);
        let r = sys.identify(0).unwrap();
        assert_eq!(r.verdict, Verdict::SymmetricM);
        assert_eq!(r.defect.m, vec![1, 2, 3, 4]);
        assert!(r.pair_counts_ok(GroupKind::Symmetric));
    }

    #[test]
    fn unique_pair_gives_full_normalizer() {
        // with one pair at Q every element of N_G(Q) fixes it
        let sys = system(PermGroup::symmetric(4), 2);
        let top = sys.maximal_pair(0).unwrap();
        let e = &sys.blocks()[0].idempotent;
        for q in centric_subgroups(&top.q, 2, 128).unwrap() {
            if sys.count_pairs_at(&q, e).unwrap() == 1 {
                let a = sys.aut_f_block(&top, &q).unwrap();
                assert_eq!(a, aut_group(sys.group(), &q).unwrap());
            }
        }
    }

    #[test]
    fn a5_principal_mod_two() {
        let sys = system(PermGroup::alternating(5), 2);
        let principal = sys
            .blocks()
            .iter()
            .position(|b| sys.defect_group(b.index).unwrap().order == 4)
            .unwrap();
        let r = sys.identify(principal).unwrap();
        assert_eq!(r.verdict, Verdict::AlternatingM);
        assert!(r.saturation);
        assert!(r.pair_counts_ok(GroupKind::Alternating));
        assert_eq!(r.parity.failures, 0);
    }
}
