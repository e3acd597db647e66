//! Seeded property checks on the group-theoretic primitives.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::verify::PropsSink;
use crate::error::Result;
use crate::fusion::aut_group;
use crate::perm::{
    closure, p_part, p_parts, p_regular_exponent, sylow_alternating, sylow_symmetric, PermGroup, Permutation,
};

fn pick<'a>(rng: &mut ChaCha8Rng, list: &'a [Permutation]) -> &'a Permutation {
    &list[rng.random_range(0..list.len())]
}

/// Runs every property; each check is one case.
pub fn run(seed: u64, sink: &mut PropsSink<'_>) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    konj_prod(&mut rng, sink)?;
    syl_konj(&mut rng, sink)?;
    cent_orb(&mut rng, sink)?;
    exp_reg(sink)?;
    p_part_uniqueness(sink)?;
    saturation(&mut rng, sink)?;
    Ok(())
}

/// `∏_{i<n} a^{b^{-i}} = (ab)^n b^{-n}`.
fn konj_prod(rng: &mut ChaCha8Rng, sink: &mut PropsSink<'_>) -> Result<()> {
    for _ in 0..400 {
        let deg = rng.random_range(2..=8);
        let g = PermGroup::symmetric(deg);
        let elems = g.elements()?;
        let a = pick(rng, elems.list()).clone();
        let b = pick(rng, elems.list()).clone();
        let n = rng.random_range(1..=8i64);
        let mut lhs = Permutation::identity(deg);
        for i in 0..n {
            lhs = &lhs * &a.conjugate_by(&b.pow(-i));
        }
        let rhs = &(&a * &b).pow(n) * &b.pow(-n);
        sink.check("konj-prod", lhs == rhs, || format!("a={a}, b={b}, n={n}"));
    }
    Ok(())
}

/// `⟨S^{a^k}⟩` contains the `p`-element `a`.
fn syl_konj(rng: &mut ChaCha8Rng, sink: &mut PropsSink<'_>) -> Result<()> {
    let cases: [(PermGroup, u64); 6] = [
        (PermGroup::symmetric(4), 2),
        (PermGroup::symmetric(4), 3),
        (PermGroup::symmetric(5), 2),
        (PermGroup::symmetric(5), 5),
        (PermGroup::alternating(5), 2),
        (PermGroup::alternating(5), 3),
    ];
    for _ in 0..200 {
        let (g, p) = &cases[rng.random_range(0..cases.len())];
        let n = g.degree();
        let elems = g.elements()?;
        let base = match g.kind() {
            crate::perm::GroupKind::Alternating => sylow_alternating(n, *p as usize)?,
            _ => sylow_symmetric(n, *p as usize)?,
        };
        let s = base.conjugate_by(pick(rng, elems.list()));
        let p_elems: Vec<Permutation> = elems.list().iter().filter(|x| x.is_p_element(*p)).cloned().collect();
        let a = pick(rng, &p_elems).clone();
        let mut gens = Vec::new();
        for k in 0..a.order() as i64 {
            gens.extend(s.generators().iter().map(|x| x.conjugate_by(&a.pow(k))));
        }
        let h = closure(n, &gens, u64::MAX)?;
        sink.check("syl-konj", h.contains(&a), || format!("a={a}, S={}", s.generator_string()));
    }
    Ok(())
}

/// Elements of `C_G(H)` permute the orbits of `H`.
fn cent_orb(rng: &mut ChaCha8Rng, sink: &mut PropsSink<'_>) -> Result<()> {
    for _ in 0..200 {
        let deg = rng.random_range(3..=6);
        let g = PermGroup::symmetric(deg);
        let elems = g.elements()?;
        let k = rng.random_range(1..=2);
        let gens: Vec<Permutation> = (0..k).map(|_| pick(rng, elems.list()).clone()).collect();
        let h = PermGroup::generated(deg, gens)?;
        let orbits = h.orbits();
        let c = g.centralizer_of_subgroup(&h)?;
        let ok = c.elements()?.list().iter().all(|x| {
            orbits.iter().all(|o| {
                let mut image: Vec<usize> = o.iter().map(|&pt| x.image(pt)).collect();
                image.sort_unstable();
                orbits.contains(&image)
            })
        });
        sink.check("cent-orb", ok, || format!("H={}", h.generator_string()));
    }
    Ok(())
}

/// `g^q = g_{p'}` for the `p`-regular exponent `q`.
fn exp_reg(sink: &mut PropsSink<'_>) -> Result<()> {
    for n in 1..=6 {
        for g in [PermGroup::symmetric(n), PermGroup::alternating(n)] {
            let elems = g.elements()?;
            for p in [2u64, 3, 5] {
                let q = p_regular_exponent(elems.len() as u128, p).q()?;
                for x in elems.list() {
                    let (_, reg) = p_parts(x, p);
                    sink.check("exp-reg", x.pow_u128(q) == reg, || format!("g={x}, p={p}, q={q}"));
                }
            }
        }
    }
    Ok(())
}

/// The factorization `g = g_p·g_{p'}` into commuting parts is unique.
fn p_part_uniqueness(sink: &mut PropsSink<'_>) -> Result<()> {
    for n in 1..=5 {
        let g = PermGroup::symmetric(n);
        let elems = g.elements()?;
        for p in [2u64, 3, 5] {
            for x in elems.list() {
                let found: Vec<(Permutation, Permutation)> = elems
                    .list()
                    .iter()
                    .filter(|a| a.is_p_element(p))
                    .map(|a| (a.clone(), &a.inverse() * x))
                    .filter(|(a, b)| b.is_p_regular(p) && a.commutes_with(b))
                    .collect();
                let expected = p_parts(x, p);
                sink.check("p-part uniqueness", found == vec![expected], || {
                    format!("g={x}, p={p}: {} factorizations", found.len())
                });
            }
        }
    }
    Ok(())
}

/// `Aut_P(P)` is a Sylow subgroup of `Aut_H(P)` for `P` Sylow in `H`.
fn saturation(rng: &mut ChaCha8Rng, sink: &mut PropsSink<'_>) -> Result<()> {
    let hosts: Vec<(PermGroup, usize)> = (2..=6)
        .flat_map(|n| [(PermGroup::symmetric(n), n), (PermGroup::alternating(n), n)])
        .collect();
    for _ in 0..60 {
        let (h, n) = &hosts[rng.random_range(0..hosts.len())];
        let p = [2usize, 3, 5][rng.random_range(0..3)];
        let base = match h.kind() {
            crate::perm::GroupKind::Alternating => sylow_alternating(*n, p)?,
            _ => sylow_symmetric(*n, p)?,
        };
        let elems = h.elements()?;
        let s = base.conjugate_by(pick(rng, elems.list()));
        let inner = aut_group(&s, &s)?.order() as u128;
        let outer = aut_group(h, &s)?.order() as u128;
        sink.check("saturation", inner == p_part(outer, p as u128), || {
            format!("H of degree {n}, p={p}: |Aut_P(P)|={inner}, |Aut_H(P)|={outer}")
        });
    }
    Ok(())
}
