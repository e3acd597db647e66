use serde::Serialize;

use super::coef::{zero_hypothesis, ZeroWitness};
use crate::blocks::BlockSystem;
use crate::error::{Error, Result};
use crate::perm::{CycleType, GroupKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Sym,
    Alt,
}

/// Whether a `p`-regular cycle type satisfies the vanishing condition: at
/// least `p` cycles of some length `c > 1`, and for alternating groups at
/// `p = 2` additionally at least 4 such cycles or at least 2 cycles of some
/// other length `d`. `fixed_points` decides whether `d = 1` counts.
pub fn vanishing_criterion(kind: Kind, ctype: &CycleType, p: u64, fixed_points: bool) -> Result<bool> {
    if !ctype.is_p_regular(p as usize) {
        return Err(Error::Invalid(format!("cycle type {ctype} is not {p}-regular")));
    }
    let p = p as usize;
    let entries = ctype.entries();
    Ok(entries.iter().any(|&(c, m)| {
        if c <= 1 || m < p {
            return false;
        }
        if kind == Kind::Sym || p != 2 {
            return true;
        }
        m >= 4
            || entries
                .iter()
                .any(|&(d, md)| d != c && md >= 2 && (d > 1 || fixed_points))
    }))
}

#[derive(Clone, Debug, Serialize)]
pub struct VanishingEvent {
    pub class: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VanishingReport {
    /// Classes meeting the criterion, each checked against every block.
    pub criterion_classes: Vec<String>,
    /// Classes with a zero witness.
    pub witnesses: Vec<ZeroWitness>,
    /// Classes meeting the criterion without a zero witness (symmetric
    /// groups only; the criterion is expected to produce one).
    pub unlinked: Vec<String>,
    /// Classes admitted only because fixed points count as a repeated
    /// length, with whether every block vanishes on them.
    pub fixed_point_reading: Vec<(String, bool)>,
    pub events: Vec<VanishingEvent>,
}

impl VanishingReport {
    pub fn passed(&self) -> bool {
        self.events.is_empty() && self.unlinked.is_empty()
    }
}

/// Checks that every block idempotent vanishes on the classes meeting the
/// criterion, and that every class with a zero witness has coefficient zero
/// in `(Σ𝒞)^q` for all classes `𝒞`.
pub fn verify_vanishing(sys: &BlockSystem, fixed_points: bool, max_order: u64) -> Result<VanishingReport> {
    let ctx = sys.ctx();
    let kind = match sys.group().kind() {
        GroupKind::Symmetric => Kind::Sym,
        GroupKind::Alternating => Kind::Alt,
        GroupKind::Generic => {
            return Err(Error::Invalid("vanishing needs a symmetric or alternating group".into()));
        }
    };
    let p = ctx.p() as u64;
    let mut out = VanishingReport::default();
    let powers = (0..ctx.dimension())
        .map(|c| ctx.pow_regular(&ctx.class_sum(c)))
        .collect::<Result<Vec<_>>>()?;
    for (i, class) in ctx.classes().classes().iter().enumerate() {
        if !class.cycle_type.is_p_regular(p as usize) {
            continue;
        }
        let vanishes_everywhere = sys.blocks().iter().all(|b| b.idempotent.coeffs()[i].is_zero());
        let meets = vanishing_criterion(kind, &class.cycle_type, p, fixed_points)?;
        if meets {
            out.criterion_classes.push(class.label.clone());
            for b in sys.blocks() {
                if !b.idempotent.coeffs()[i].is_zero() {
                    out.events.push(VanishingEvent {
                        class: class.label.clone(),
                        detail: format!("nonzero coefficient in block {}", b.index),
                    });
                }
            }
        }
        if kind == Kind::Alt
            && vanishing_criterion(kind, &class.cycle_type, p, true)?
            && !vanishing_criterion(kind, &class.cycle_type, p, false)?
        {
            out.fixed_point_reading.push((class.label.clone(), vanishes_everywhere));
        }
        let witness = zero_hypothesis(ctx, &class.rep, max_order)?;
        if let Some(w) = witness {
            for (c, power) in powers.iter().enumerate() {
                if !power.coeffs()[i].is_zero() {
                    out.events.push(VanishingEvent {
                        class: class.label.clone(),
                        detail: format!(
                            "witness {} but nonzero coefficient in the power of class {}",
                            w.subgroup,
                            ctx.classes().get(c).label
                        ),
                    });
                }
            }
            out.witnesses.push(w);
        } else if meets && kind == Kind::Sym {
            out.unlinked.push(class.label.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraContext;
    use crate::blocks::BlockConfig;
    use crate::field::FieldSpec;
    use crate::perm::PermGroup;

    fn ct(lengths: &[usize]) -> CycleType {
        CycleType::from_lengths(lengths.iter().copied())
    }

    #[test]
    fn criterion_cases() {
        assert!(vanishing_criterion(Kind::Sym, &ct(&[3, 3]), 2, true).unwrap());
        assert!(!vanishing_criterion(Kind::Alt, &ct(&[3, 3]), 2, true).unwrap());
        assert!(vanishing_criterion(Kind::Alt, &ct(&[3, 3, 1, 1]), 2, true).unwrap());
        assert!(!vanishing_criterion(Kind::Alt, &ct(&[3, 3, 1, 1]), 2, false).unwrap());
        assert!(vanishing_criterion(Kind::Alt, &ct(&[3, 3, 3, 3]), 2, false).unwrap());
        assert!(vanishing_criterion(Kind::Alt, &ct(&[5, 5, 3, 3]), 2, false).unwrap());
        assert!(!vanishing_criterion(Kind::Sym, &ct(&[1, 1, 1]), 2, true).unwrap());
        assert!(!vanishing_criterion(Kind::Sym, &ct(&[2, 2, 1]), 3, true).unwrap());
        assert!(vanishing_criterion(Kind::Alt, &ct(&[2, 2, 2]), 3, true).unwrap());
        assert!(vanishing_criterion(Kind::Sym, &ct(&[2, 2]), 3, true).is_ok());
        assert!(vanishing_criterion(Kind::Sym, &ct(&[2, 1]), 2, true).is_err());
    }

    #[test]
    fn s5_mod_two_sweep() {
        let ctx = AlgebraContext::new(PermGroup::symmetric(5), FieldSpec::prime(2).unwrap()).unwrap();
        let sys = BlockSystem::new(&ctx, BlockConfig::default()).unwrap();
        let r = verify_vanishing(&sys, true, 128).unwrap();
        assert!(r.passed(), "{:?}", r.events);
        assert!(r.criterion_classes.is_empty() || !r.witnesses.is_empty());
    }

    #[test]
    fn s6_mod_three_double_transpositions() {
        let ctx = AlgebraContext::new(PermGroup::symmetric(6), FieldSpec::prime(3).unwrap()).unwrap();
        let sys = BlockSystem::new(&ctx, BlockConfig::default()).unwrap();
        let r = verify_vanishing(&sys, true, 128).unwrap();
        assert!(r.passed(), "{:?}", r.events);
        assert!(r.criterion_classes.contains(&"2^3".to_string()));
    }
}
