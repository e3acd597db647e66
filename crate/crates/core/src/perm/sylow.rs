//! Sylow subgroups: iterated wreath products for symmetric groups, their
//! even parts for alternating groups, and a generic search for arbitrary
//! enumerable groups.

use std::collections::HashSet;

use super::group::PermGroup;
use super::permutation::{factorial, Permutation};
use crate::error::{Error, Result};

/// Exponent of `p` in `n`.
pub fn p_valuation(mut n: u128, p: u128) -> u32 {
    let mut k = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    k
}

/// Largest power of `p` dividing `n`.
pub fn p_part(n: u128, p: u128) -> u128 {
    p.pow(p_valuation(n, p))
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Generators of the iterated wreath product `C_p ≀ … ≀ C_p` (`level` times)
/// acting on the points `offset..offset + p^level`.
fn wreath_generators(degree: usize, p: usize, level: u32, offset: usize) -> Vec<Permutation> {
    if level == 0 {
        return Vec::new();
    }
    let block = p.pow(level - 1);
    let mut gens = wreath_generators(degree, p, level - 1, offset);
    // cycle the p blocks of size p^(level-1)
    let cycles: Vec<Vec<usize>> = (0..block)
        .map(|y| (0..p).map(|x| offset + x * block + y).collect())
        .collect();
    gens.push(Permutation::from_cycles(degree, &cycles).unwrap());
    gens
}

/// One factor `W_i` of the Sylow subgroup: its level and the points it moves.
#[derive(Clone, Debug)]
pub struct SylowFactor {
    pub level: u32,
    pub points: Vec<usize>,
}

/// Factor layout of the Sylow `p`-subgroup of `S_n` on the given points: the
/// base-`p` digits of `n`, largest factors first on the smallest points.
pub fn sylow_layout(points: &[usize], p: usize) -> Vec<SylowFactor> {
    let n = points.len();
    let mut digits = Vec::new();
    let mut rest = n;
    while rest > 0 {
        digits.push(rest % p);
        rest /= p;
    }
    let mut out = Vec::new();
    let mut next = 0;
    for level in (1..digits.len()).rev() {
        for _ in 0..digits[level] {
            let size = p.pow(level as u32);
            out.push(SylowFactor {
                level: level as u32,
                points: points[next..next + size].to_vec(),
            });
            next += size;
        }
    }
    out
}

/// Sylow `p`-subgroup of the symmetric group on `points` (inside degree `degree`).
pub fn sylow_symmetric_on(degree: usize, points: &[usize], p: usize) -> Result<PermGroup> {
    let mut gens = Vec::new();
    for f in sylow_layout(points, p) {
        // wreath generators on consecutive labels, then relabel onto the factor's points
        let local = wreath_generators(f.points.len(), p, f.level, 0);
        for g in local {
            let mut images: Vec<usize> = (0..degree).collect();
            for (k, &pt) in f.points.iter().enumerate() {
                images[pt] = f.points[g.image(k)];
            }
            gens.push(Permutation::from_images(&images)?);
        }
    }
    PermGroup::generated(degree, gens)
}

pub fn sylow_symmetric(n: usize, p: usize) -> Result<PermGroup> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    let points: Vec<usize> = (0..n).collect();
    sylow_symmetric_on(n, &points, p)
}

/// Sylow `p`-subgroup of the alternating group on `points`: the even part of
/// the symmetric Sylow for `p = 2`, the symmetric Sylow itself otherwise.
pub fn sylow_alternating_on(degree: usize, points: &[usize], p: usize) -> Result<PermGroup> {
    let w = sylow_symmetric_on(degree, points, p)?;
    if p != 2 {
        return Ok(w);
    }
    w.filter_subgroup(Permutation::is_even)
}

pub fn sylow_alternating(n: usize, p: usize) -> Result<PermGroup> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    let points: Vec<usize> = (0..n).collect();
    sylow_alternating_on(n, &points, p)
}

/// Expected Sylow order in `S_n`.
pub fn symmetric_sylow_order(n: usize, p: usize) -> u128 {
    p_part(factorial(n as u64), p as u128)
}

/// A Sylow `p`-subgroup of an enumerable group, grown greedily: extend the
/// current `p`-subgroup `P` by some `x ∈ N(P) \ P` with `x^p ∈ P` until the
/// order reaches the `p`-part of `|G|`.
pub fn sylow_subgroup(group: &PermGroup, p: u64) -> Result<PermGroup> {
    let elems = group.elements()?;
    let target = p_part(elems.len() as u128, p as u128) as usize;
    let degree = group.degree();
    let mut members: HashSet<Permutation> = HashSet::from([Permutation::identity(degree)]);
    let mut gens: Vec<Permutation> = Vec::new();
    while members.len() < target {
        let found = elems.list().iter().find(|x| {
            !members.contains(*x)
                && members.contains(&x.pow(p as i64))
                && gens.iter().all(|s| members.contains(&s.conjugate_by(x)))
        });
        let Some(x) = found else {
            return Err(Error::falsified("no extension of a non-Sylow p-subgroup"));
        };
        let x = x.clone();
        let current: Vec<Permutation> = members.iter().cloned().collect();
        let mut power = x.clone();
        for _ in 1..p {
            for m in &current {
                members.insert(m * &power);
            }
            power = &power * &x;
        }
        gens.push(x);
    }
    Ok(PermGroup::from_elements(degree, members.into_iter().collect()).with_cap(group.cap()))
}
