use super::context::{AlgebraContext, CentralElement};
use crate::error::{Error, Result};
use crate::field::{factor, krylov_min_poly, Matrix, Poly};
use crate::perm::lcm;

/// A local component `e·Z(kG)` of the center.
#[derive(Clone, Debug)]
pub struct Component {
    pub idempotent: CentralElement,
    /// Degree over the coefficient field of the residue field of the component.
    pub residue_degree: usize,
    /// Per class `i`: the irreducible `f_i` with `μ(e·ΣC_i) = f_i^k` on the
    /// component. Once every residue degree is 1 this certifies primitivity:
    /// each basis element is then a scalar plus a nilpotent on the component.
    pub certificate: Vec<Poly>,
}

#[derive(Clone, Debug)]
pub struct IdempotentDecomposition {
    pub components: Vec<Component>,
}

impl IdempotentDecomposition {
    pub fn idempotents(&self) -> Vec<CentralElement> {
        self.components.iter().map(|c| c.idempotent.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// lcm of the residue degrees; 1 when the field splits every component.
    pub fn splitting_degree(&self) -> usize {
        self.components
            .iter()
            .fold(1, |acc, c| lcm(acc as u64, c.residue_degree as u64) as usize)
    }

    /// Checks `e_i² = e_i`, `e_i e_j = 0`, `Σ e_i = 1`, `e_i ≠ 0`.
    pub fn check_axioms(&self, ctx: &AlgebraContext) -> Result<()> {
        let es = self.idempotents();
        let mut sum = ctx.zero();
        for (i, e) in es.iter().enumerate() {
            if e.is_zero() {
                return Err(Error::falsified(format!("idempotent {i} is zero")));
            }
            if ctx.mul(e, e) != *e {
                return Err(Error::falsified(format!("e_{i}^2 != e_{i}")));
            }
            for (j, f) in es.iter().enumerate().skip(i + 1) {
                if !ctx.mul(e, f).is_zero() {
                    return Err(Error::falsified(format!("e_{i} e_{j} != 0")));
                }
            }
            sum = ctx.add(&sum, e);
        }
        if sum != ctx.one() {
            return Err(Error::falsified("idempotents do not sum to 1"));
        }
        Ok(())
    }
}

/// Horner evaluation of `g(z)·e`, where `e` is the unit of the component.
fn eval_on_component(ctx: &AlgebraContext, g: &Poly, z: &CentralElement, e: &CentralElement) -> CentralElement {
    g.coeffs().iter().rev().fold(ctx.zero(), |acc, c| {
        ctx.add(&ctx.mul(z, &acc), &ctx.scale(e, c))
    })
}

/// Splits the center into primitive idempotents, visiting basis elements in
/// class order.
pub fn primitive_idempotents(ctx: &AlgebraContext) -> Result<IdempotentDecomposition> {
    let order: Vec<usize> = (0..ctx.dimension()).collect();
    primitive_idempotents_in_order(ctx, &order)
}

/// Recursive splitting: for a component with unit `e` and basis element
/// `z = ΣC_i`, factor the minimal polynomial `μ = ∏ f_k^{a_k}` of `z` on
/// `e·Z`; if it has several irreducible factors, the CRT elements
/// `u_k ≡ 1 mod f_k^{a_k}`, `u_k ≡ 0 mod μ/f_k^{a_k}` give orthogonal
/// idempotents `u_k(z)·e` summing to `e`.
pub fn primitive_idempotents_in_order(ctx: &AlgebraContext, order: &[usize]) -> Result<IdempotentDecomposition> {
    let f = ctx.field();
    let k = ctx.dimension();
    if order.len() != k || (0..k).any(|i| !order.contains(&i)) {
        return Err(Error::Invalid("visit order must be a permutation of the classes".into()));
    }
    let mut work = vec![ctx.one()];
    let mut done = Vec::new();
    while let Some(e) = work.pop() {
        let mut certificate = vec![Poly::zero(); k];
        let mut residue = 1u64;
        let mut split = None;
        for &i in order {
            let z = ctx.class_sum(i);
            let mu = krylov_min_poly(|v| ctx.mul(&z, &CentralElement(v.to_vec())).0, e.coeffs(), f)?;
            let fac = factor(&mu, f, ctx.seed())?;
            if fac.factors.len() > 1 {
                split = Some((z, mu, fac));
                break;
            }
            let irr = fac.factors[0].0.clone();
            residue = lcm(residue, irr.degree().unwrap_or(1) as u64);
            certificate[i] = irr;
        }
        match split {
            None => done.push(Component {
                idempotent: e,
                residue_degree: residue as usize,
                certificate,
            }),
            Some((z, mu, fac)) => {
                for (g, a) in &fac.factors {
                    let power = g.pow(*a as u32, f);
                    let cofactor = mu.divrem(&power, f)?.0;
                    let (one, s, _) = cofactor.ext_gcd(&power, f)?;
                    debug_assert_eq!(one, Poly::one(f));
                    let u = s.mul(&cofactor, f).rem(&mu, f)?;
                    work.push(eval_on_component(ctx, &u, &z, &e));
                }
            }
        }
    }
    done.sort_by(|a, b| {
        (a.idempotent.support(), &a.idempotent).cmp(&(b.idempotent.support(), &b.idempotent))
    });
    Ok(IdempotentDecomposition { components: done })
}

/// Every idempotent of `Z(kG)` by exhaustive search. Enumerates the whole
/// center when it has at most `budget` elements; otherwise enumerates the
/// subspace fixed by `x ↦ x^{|k|}` (linear over `k`, and it contains every
/// idempotent).
pub fn brute_force_idempotents(ctx: &AlgebraContext, budget: u64) -> Result<Vec<CentralElement>> {
    let f = ctx.field();
    let k = ctx.dimension();
    let q = f.order();
    let full = (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    let basis: Vec<CentralElement> = if full <= budget as u128 {
        (0..k).map(|i| ctx.class_sum(i)).collect()
    } else {
        let columns = (0..k)
            .map(|i| {
                let b = ctx.class_sum(i);
                ctx.sub(&ctx.pow(&b, q as u128), &b).0
            })
            .collect();
        let m = Matrix::from_columns(columns, f)?;
        m.nullspace(f)?.into_iter().map(CentralElement).collect()
    };
    let r = basis.len() as u32;
    let count = (q as u128).checked_pow(r).unwrap_or(u128::MAX);
    if count > budget as u128 {
        return Err(Error::CapExceeded {
            what: "idempotent search space",
            needed: count,
            limit: budget,
        });
    }
    let scalars: Vec<_> = f.elements().collect();
    let mut out = Vec::new();
    for mut idx in 0..count as u64 {
        let mut x = ctx.zero();
        for b in &basis {
            let c = &scalars[(idx % q) as usize];
            idx /= q;
            if !c.is_zero() {
                x = ctx.add(&x, &ctx.scale(b, c));
            }
        }
        if ctx.mul(&x, &x) == x {
            out.push(x);
        }
    }
    out.sort();
    Ok(out)
}

/// Minimal nonzero idempotents of a full idempotent list.
pub fn primitive_among(ctx: &AlgebraContext, idempotents: &[CentralElement]) -> Vec<CentralElement> {
    let mut out: Vec<CentralElement> = idempotents
        .iter()
        .filter(|e| !e.is_zero())
        .filter(|e| {
            idempotents
                .iter()
                .filter(|g| !g.is_zero() && g != e)
                .all(|g| ctx.mul(e, g) != *g)
        })
        .cloned()
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::perm::PermGroup;

    fn ctx(g: PermGroup, p: u32, m: usize) -> AlgebraContext {
        AlgebraContext::new(g, FieldSpec::new(p, m).unwrap()).unwrap()
    }

    #[test]
    fn s3_mod_two() {
        let a = ctx(PermGroup::symmetric(3), 2, 1);
        let d = primitive_idempotents(&a).unwrap();
        d.check_axioms(&a).unwrap();
        let mut got = d.idempotents();
        got.sort();
        let c3 = a.class_sum(2);
        let mut expect = vec![c3.clone(), a.add(&a.one(), &c3)];
        expect.sort();
        assert_eq!(got, expect);
        let all = brute_force_idempotents(&a, 1 << 16).unwrap();
        assert_eq!(all.len(), 4);
        assert_eq!(primitive_among(&a, &all), expect);
    }

    #[test]
    fn s3_mod_three_matches_enumeration() {
        let a = ctx(PermGroup::symmetric(3), 3, 1);
        let d = primitive_idempotents(&a).unwrap();
        d.check_axioms(&a).unwrap();
        let all = brute_force_idempotents(&a, 27).unwrap();
        let mut got = d.idempotents();
        got.sort();
        assert_eq!(got, primitive_among(&a, &all));
    }

    #[test]
    fn s4_mod_two_single_block() {
        let a = ctx(PermGroup::symmetric(4), 2, 1);
        let d = primitive_idempotents(&a).unwrap();
        assert_eq!(d.idempotents(), vec![a.one()]);
        assert_eq!(brute_force_idempotents(&a, 32).unwrap().len(), 2);
    }

    #[test]
    fn trivial_group() {
        let a = ctx(PermGroup::trivial(1), 2, 1);
        assert_eq!(primitive_idempotents(&a).unwrap().idempotents(), vec![a.one()]);
    }

    #[test]
    fn a5_mod_three_needs_extension() {
        // the two split 5-cycle classes are swapped by the nontrivial automorphism of GF(9)
        let a = ctx(PermGroup::alternating(5), 3, 1);
        let d = primitive_idempotents(&a).unwrap();
        d.check_axioms(&a).unwrap();
        assert_eq!(d.splitting_degree(), 2);
        let b = a.over_field(FieldSpec::new(3, 2).unwrap()).unwrap();
        let d = primitive_idempotents(&b).unwrap();
        d.check_axioms(&b).unwrap();
        assert_eq!(d.splitting_degree(), 1);
        assert_eq!(d.len(), 3);
        let all = brute_force_idempotents(&b, 1 << 16).unwrap();
        let mut got = d.idempotents();
        got.sort();
        assert_eq!(got, primitive_among(&b, &all));
    }

    #[test]
    fn visit_order_does_not_matter() {
        for (g, p) in [(PermGroup::symmetric(5), 2), (PermGroup::symmetric(5), 3), (PermGroup::alternating(6), 2)] {
            let a = ctx(g, p, 1);
            let mut forward = primitive_idempotents(&a).unwrap().idempotents();
            let order: Vec<usize> = (0..a.dimension()).rev().collect();
            let mut backward = primitive_idempotents_in_order(&a, &order).unwrap().idempotents();
            forward.sort();
            backward.sort();
            assert_eq!(forward, backward);
        }
    }

    #[test]
    fn idempotents_are_fixed_by_regular_power() {
        let a = ctx(PermGroup::symmetric(5), 3, 1);
        for e in primitive_idempotents(&a).unwrap().idempotents() {
            assert_eq!(a.pow_regular(&e).unwrap(), e);
        }
    }
}
