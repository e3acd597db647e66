use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AlgebraContext, AlgebraElement, CentralElement};
use crate::blocks::SubgroupCatalog;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::perm::{sylow_subgroup, PermGroup, Permutation};

/// Predicted and computed coefficient of `a` in `(Σ𝒞)^q`.
#[derive(Clone, Debug, Serialize)]
pub struct CoefReport {
    pub a: Permutation,
    pub class: String,
    pub q: u128,
    /// Number of `h ∈ H` with `a·h ∈ 𝒞`; zero when `a` is not `p`-regular.
    pub predicted_count: u64,
    /// `predicted_count mod p`.
    pub predicted: FieldElement,
    pub oracle: FieldElement,
    pub agree: bool,
}

/// An abelian normal `p`-subgroup of `C_G(S)` not centralized by `a`.
#[derive(Clone, Debug, Serialize)]
pub struct ZeroWitness {
    pub a: Permutation,
    /// Generators of a Sylow `p`-subgroup `S` of `C_G(a)`.
    pub sylow: String,
    /// Generators of the witness subgroup.
    pub subgroup: String,
    /// A generator of the witness moved by conjugation with `a`.
    pub moved: Permutation,
}

/// The local data for `a`: a Sylow subgroup `S` of `C_G(a)`, `C_G(S)`, and
/// the set `H` of `p`-elements of `C_G(S)`.
#[derive(Clone, Debug)]
pub struct CountingData {
    pub a: Permutation,
    pub sylow: PermGroup,
    pub centralizer: PermGroup,
    pub p_elements: Vec<Permutation>,
}

impl CountingData {
    pub fn new(ctx: &AlgebraContext, a: &Permutation) -> Result<Self> {
        let g = ctx.group();
        let p = ctx.p() as u64;
        let sylow = sylow_subgroup(&g.centralizer(a)?, p)?;
        let centralizer = g.centralizer_of_subgroup(&sylow)?;
        let p_elements = centralizer
            .elements()?
            .list()
            .iter()
            .filter(|h| h.is_p_element(p))
            .cloned()
            .collect();
        Ok(CountingData {
            a: a.clone(),
            sylow,
            centralizer,
            p_elements,
        })
    }

    /// `#{h ∈ H : a·h ∈ 𝒞}`.
    pub fn count(&self, ctx: &AlgebraContext, class: usize) -> Result<u64> {
        let mut n = 0;
        for h in &self.p_elements {
            if ctx.class_of(&(&self.a * h))? == class {
                n += 1;
            }
        }
        Ok(n)
    }
}

fn report(
    ctx: &AlgebraContext,
    a: &Permutation,
    class: usize,
    data: Option<&CountingData>,
    power: &CentralElement,
) -> Result<CoefReport> {
    let f = ctx.field();
    let count = match data {
        Some(d) => d.count(ctx, class)?,
        None => 0,
    };
    let predicted = f.from_int((count % ctx.p() as u64) as i64);
    let oracle = ctx.coefficient_of(power, a)?;
    Ok(CoefReport {
        a: a.clone(),
        class: ctx.classes().get(class).label.clone(),
        q: ctx.exponent().q()?,
        predicted_count: count,
        agree: predicted == oracle,
        predicted,
        oracle,
    })
}

/// Coefficient of `a` in `(Σ𝒞)^q` by the counting formula, next to the
/// value from central multiplication.
pub fn coef_formula(ctx: &AlgebraContext, a: &Permutation, class: usize) -> Result<CoefReport> {
    if class >= ctx.dimension() {
        return Err(Error::Invalid(format!("class index {class} out of range")));
    }
    ctx.class_of(a)?;
    let data = if a.is_p_regular(ctx.p() as u64) {
        Some(CountingData::new(ctx, a)?)
    } else {
        None
    };
    let power = ctx.pow_regular(&ctx.class_sum(class))?;
    report(ctx, a, class, data.as_ref(), &power)
}

/// All pairs (class representative `a`, class `𝒞`), in class order.
pub fn coef_sweep(ctx: &AlgebraContext) -> Result<Vec<CoefReport>> {
    let k = ctx.dimension();
    let powers: Vec<CentralElement> = (0..k)
        .into_par_iter()
        .map(|c| ctx.pow_regular(&ctx.class_sum(c)))
        .collect::<Result<_>>()?;
    let p = ctx.p() as u64;
    let rows: Vec<Vec<CoefReport>> = (0..k)
        .into_par_iter()
        .map(|i| {
            let a = &ctx.classes().get(i).rep;
            let data = if a.is_p_regular(p) {
                Some(CountingData::new(ctx, a)?)
            } else {
                None
            };
            (0..k)
                .map(|c| report(ctx, a, c, data.as_ref(), &powers[c]))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

/// First abelian `p`-subgroup `P ⊴ C_G(S)` with `a` not centralizing `P`,
/// searching the subgroups of a Sylow subgroup of `C_G(S)` by order
/// descending and then generator strings.
pub fn zero_hypothesis(ctx: &AlgebraContext, a: &Permutation, max_order: u64) -> Result<Option<ZeroWitness>> {
    let p = ctx.p() as u64;
    if !a.is_p_regular(p) {
        return Err(Error::Invalid(format!("{a} is not {p}-regular")));
    }
    let data = CountingData::new(ctx, a)?;
    let top = sylow_subgroup(&data.centralizer, p)?;
    let catalog = SubgroupCatalog::build(&top, p, max_order)?;
    let outer = data.centralizer.generators();
    for entry in &catalog.entries {
        let q = &entry.group;
        let gens = q.generators();
        if gens.is_empty() || !q.is_abelian() {
            continue;
        }
        let Some(moved) = gens.iter().find(|s| !s.commutes_with(a)) else {
            continue;
        };
        let normal = outer
            .iter()
            .all(|x| gens.iter().all(|s| entry.contains(&s.conjugate_by(x))));
        if normal {
            return Ok(Some(ZeroWitness {
                a: a.clone(),
                sylow: data.sylow.generator_string(),
                subgroup: q.generator_string(),
                moved: moved.clone(),
            }));
        }
    }
    Ok(None)
}

/// Coefficient of `a` in `(Σ𝒞)^q` by repeated multiplication of the full
/// class-sum expansion in the group algebra.
pub fn direct_power_coefficient(ctx: &AlgebraContext, a: &Permutation, class: usize) -> Result<FieldElement> {
    let f = ctx.field();
    let q = ctx.exponent().q()?;
    let q = u64::try_from(q).map_err(|_| Error::Overflow("exponent"))?;
    let sum = ctx.expand(&ctx.class_sum(class));
    let mut acc = AlgebraElement::basis(ctx.group().identity(), f);
    for _ in 0..q {
        acc = acc.mul(&sum, f);
    }
    Ok(acc.coefficient(a, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn ctx(g: PermGroup, p: u32) -> AlgebraContext {
        AlgebraContext::new(g, FieldSpec::prime(p).unwrap()).unwrap()
    }

    fn perm(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn s3_mod_two_examples() {
        let c = ctx(PermGroup::symmetric(3), 2);
        let t = c.class_of(&perm("(1 2)", 3)).unwrap();
        let r = c.class_of(&perm("(1 2 3)", 3)).unwrap();
        let rep = coef_formula(&c, &perm("(1 2 3)", 3), t).unwrap();
        assert_eq!((rep.q, rep.predicted_count), (4, 3));
        assert_eq!(rep.oracle, c.field().one());
        assert!(rep.agree);
        let rep = coef_formula(&c, &Permutation::identity(3), t).unwrap();
        assert_eq!(rep.predicted_count, 1);
        assert!(rep.agree);
        let rep = coef_formula(&c, &perm("(1 2)", 3), r).unwrap();
        assert_eq!(rep.predicted_count, 0);
        assert!(rep.oracle.is_zero());
    }

    #[test]
    fn sweep_agrees_small() {
        for g in [PermGroup::symmetric(4), PermGroup::alternating(4)] {
            for p in [2, 3] {
                let c = ctx(g.clone(), p);
                assert!(coef_sweep(&c).unwrap().iter().all(|r| r.agree));
            }
        }
    }

    #[test]
    fn direct_multiplication_matches() {
        let c = ctx(PermGroup::symmetric(3), 2);
        for i in 0..c.dimension() {
            let power = c.pow_regular(&c.class_sum(i)).unwrap();
            for cl in c.classes().classes() {
                assert_eq!(
                    direct_power_coefficient(&c, &cl.rep, i).unwrap(),
                    c.coefficient_of(&power, &cl.rep).unwrap()
                );
            }
        }
    }

    #[test]
    fn witnesses() {
        let c = ctx(PermGroup::symmetric(3), 2);
        assert!(zero_hypothesis(&c, &perm("(1 2 3)", 3), 128).unwrap().is_none());
        assert!(zero_hypothesis(&c, &Permutation::identity(3), 128).unwrap().is_none());
        assert!(zero_hypothesis(&c, &perm("(1 2)", 3), 128).is_err());

        let c = ctx(PermGroup::symmetric(6), 2);
        let a = perm("(1 2 3)(4 5 6)", 6);
        let w = zero_hypothesis(&c, &a, 128).unwrap().unwrap();
        assert!(!w.moved.commutes_with(&a));
        // the structural candidate, checked directly against S = <(1 4)(2 5)(3 6)>
        let s = PermGroup::generated(6, vec![perm("(1 4)(2 5)(3 6)", 6)]).unwrap();
        let cs = c.group().centralizer_of_subgroup(&s).unwrap();
        let z = PermGroup::generated(6, vec![perm("(1 4)", 6), perm("(2 5)", 6), perm("(3 6)", 6)]).unwrap();
        let ze = z.elements().unwrap();
        assert!(z.is_subgroup_of(&cs).unwrap());
        for x in cs.generators() {
            for g in z.generators() {
                assert!(ze.contains(&g.conjugate_by(x)));
            }
        }
        assert!(z.generators().iter().all(|g| !g.commutes_with(&a)));
    }
}
