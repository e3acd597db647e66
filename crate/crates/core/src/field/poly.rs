use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::gf::{FieldElement, FieldSpec};
use crate::error::{Error, Result};

/// Polynomial over a [`FieldSpec`], little-endian, trailing zeros stripped.
/// The zero polynomial has no coefficients and degree `None`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly(Vec<FieldElement>);

impl Poly {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: FieldElement) -> Self {
        Poly::new(vec![c])
    }

    pub fn one(f: &FieldSpec) -> Self {
        Poly::constant(f.one())
    }

    pub fn x(f: &FieldSpec) -> Self {
        Poly(vec![f.zero(), f.one()])
    }

    /// `x − c`.
    pub fn linear(f: &FieldSpec, c: &FieldElement) -> Self {
        Poly(vec![f.neg(c), f.one()])
    }

    /// Coefficients given as prime-field residues.
    pub fn from_ints(f: &FieldSpec, coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| f.from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.0.last()
    }

    pub fn coeff(&self, i: usize, f: &FieldSpec) -> FieldElement {
        self.0.get(i).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn is_monic(&self, f: &FieldSpec) -> bool {
        self.leading() == Some(&f.one())
    }

    pub fn add(&self, other: &Poly, f: &FieldSpec) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::new((0..n).map(|i| f.add(&self.coeff(i, f), &other.coeff(i, f))).collect())
    }

    pub fn sub(&self, other: &Poly, f: &FieldSpec) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::new((0..n).map(|i| f.sub(&self.coeff(i, f), &other.coeff(i, f))).collect())
    }

    pub fn scale(&self, c: &FieldElement, f: &FieldSpec) -> Poly {
        Poly::new(self.0.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly, f: &FieldSpec) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![f.zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &Poly, f: &FieldSpec) -> Result<(Poly, Poly)> {
        let Some(dd) = d.degree() else {
            return Err(Error::ZeroPolynomial);
        };
        let lead_inv = f.inv(d.leading().unwrap())?;
        let mut r = self.0.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = f.mul(&r[k], &lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.0.iter().enumerate() {
                let idx = k - dd + j;
                r[idx] = f.sub(&r[idx], &f.mul(&c, dc));
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(q), Poly::new(r)))
    }

    pub fn rem(&self, d: &Poly, f: &FieldSpec) -> Result<Poly> {
        Ok(self.divrem(d, f)?.1)
    }

    /// Divides the leading coefficient out; zero stays zero.
    pub fn monic(&self, f: &FieldSpec) -> Result<Poly> {
        match self.leading() {
            None => Ok(Poly::zero()),
            Some(l) => Ok(self.scale(&f.inv(l)?, f)),
        }
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Poly, f: &FieldSpec) -> Result<Poly> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, f)?;
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// Returns `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly, f: &FieldSpec) -> Result<(Poly, Poly, Poly)> {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, f)?;
            let s = s0.sub(&q.mul(&s1, f), f);
            let t = t0.sub(&q.mul(&t1, f), f);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let Some(l) = r0.leading() else {
            return Ok((r0, s0, t0));
        };
        let li = f.inv(l)?;
        Ok((r0.scale(&li, f), s0.scale(&li, f), t0.scale(&li, f)))
    }

    pub fn derivative(&self, f: &FieldSpec) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| f.scale_int(c, i as u64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &FieldElement, f: &FieldSpec) -> FieldElement {
        self.0
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u128, m: &Poly, f: &FieldSpec) -> Result<Poly> {
        let mut base = self.rem(m, f)?;
        let mut acc = Poly::one(f).rem(m, f)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f).rem(m, f)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, f).rem(m, f)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32, f: &FieldSpec) -> Poly {
        (0..e).fold(Poly::one(f), |acc, _| acc.mul(self, f))
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coeff = if c.coeffs().len() == 1 {
                c.coeffs()[0].to_string()
            } else {
                format!("[{c}]")
            };
            let is_one = c.coeffs().first() == Some(&1) && c.coeffs()[1..].iter().all(|&x| x == 0);
            terms.push(match (i, is_one) {
                (0, _) => coeff,
                (1, true) => var.to_string(),
                (1, false) => format!("{coeff}*{var}"),
                (_, true) => format!("{var}^{i}"),
                (_, false) => format!("{coeff}*{var}^{i}"),
            });
        }
        terms.join(" + ")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("t"))
    }
}

/// Result of [`factor`]: `f = unit · ∏ factor^mult`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    /// Monic irreducibles with multiplicities, sorted by (degree, coefficients).
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    pub fn expand(&self, f: &FieldSpec) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.unit.clone()), |acc, (g, e)| {
                acc.mul(&g.pow(*e as u32, f), f)
            })
    }
}

pub const DEFAULT_SEED: u64 = 0x5eed_b10c;

/// Factors a nonzero polynomial into monic irreducibles: squarefree
/// decomposition, distinct-degree, then seeded equal-degree splitting.
pub fn factor(poly: &Poly, f: &FieldSpec, seed: u64) -> Result<Factorization> {
    let Some(lead) = poly.leading().cloned() else {
        return Err(Error::ZeroPolynomial);
    };
    let monic = poly.monic(f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors: Vec<(Poly, usize)> = Vec::new();
    for (sqf, mult) in squarefree(&monic, f)? {
        for (g, d) in distinct_degree(&sqf, f)? {
            for h in equal_degree(&g, d, f, &mut rng)? {
                factors.push((h, mult));
            }
        }
    }
    // merge equal factors (not expected, but keeps the output canonical)
    factors.sort_by_key(|a| poly_key(&a.0));
    let mut merged: Vec<(Poly, usize)> = Vec::new();
    for (g, e) in factors {
        match merged.last_mut() {
            Some((h, k)) if *h == g => *k += e,
            _ => merged.push((g, e)),
        }
    }
    Ok(Factorization {
        unit: lead,
        factors: merged,
    })
}

fn poly_key(p: &Poly) -> (usize, Vec<Vec<u32>>) {
    (
        p.0.len(),
        p.0.iter().rev().map(|c| c.coeffs().to_vec()).collect(),
    )
}

/// Substitutes `x^p → x` and takes `p`-th roots of coefficients; requires
/// every exponent present to be a multiple of `p`.
fn pth_root_poly(poly: &Poly, f: &FieldSpec) -> Poly {
    let p = f.p() as usize;
    Poly::new(poly.0.iter().step_by(p).map(|c| f.pth_root(c)).collect())
}

/// Yun-style squarefree decomposition over a perfect field of characteristic
/// `p`: monic pairwise-coprime squarefree parts with multiplicities.
fn squarefree(poly: &Poly, f: &FieldSpec) -> Result<Vec<(Poly, usize)>> {
    let mut out = Vec::new();
    if poly.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let p = f.p() as usize;
    let d = poly.derivative(f);
    if d.is_zero() {
        for (g, e) in squarefree(&pth_root_poly(poly, f), f)? {
            out.push((g, e * p));
        }
        return Ok(out);
    }
    let mut c = poly.gcd(&d, f)?;
    let mut w = poly.divrem(&c, f)?.0;
    let mut i = 1;
    while w.degree() != Some(0) {
        let y = w.gcd(&c, f)?;
        let z = w.divrem(&y, f)?.0;
        if z.degree() != Some(0) {
            out.push((z.monic(f)?, i));
        }
        i += 1;
        w = y;
        c = c.divrem(&w, f)?.0;
    }
    if c.degree() != Some(0) {
        for (g, e) in squarefree(&pth_root_poly(&c.monic(f)?, f), f)? {
            out.push((g, e * p));
        }
    }
    Ok(out)
}

/// Splits a monic squarefree polynomial into products of irreducibles of
/// equal degree `d`.
fn distinct_degree(poly: &Poly, f: &FieldSpec) -> Result<Vec<(Poly, usize)>> {
    let q = f.order() as u128;
    let mut out = Vec::new();
    let mut rest = poly.clone();
    let x = Poly::x(f);
    let mut h = x.clone();
    let mut d = 0;
    while let Some(deg) = rest.degree() {
        if deg == 0 {
            break;
        }
        d += 1;
        if 2 * d > deg {
            out.push((rest.monic(f)?, deg));
            break;
        }
        h = h.pow_mod(q, &rest, f)?;
        let g = rest.gcd(&h.sub(&x, f), f)?;
        if g.degree() != Some(0) {
            rest = rest.divrem(&g, f)?.0;
            h = h.rem(&rest, f)?;
            out.push((g, d));
        }
    }
    Ok(out)
}

/// Cantor–Zassenhaus: splits a product of distinct monic irreducibles of
/// degree `d` into its factors.
fn equal_degree(poly: &Poly, d: usize, f: &FieldSpec, rng: &mut ChaCha8Rng) -> Result<Vec<Poly>> {
    let n = poly.degree().unwrap_or(0);
    if n == d {
        return Ok(vec![poly.clone()]);
    }
    let q = f.order() as u128;
    loop {
        let a = Poly::new((0..n).map(|_| f.random(rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let g = poly.gcd(&a, f)?;
        let candidate = if g.degree() != Some(0) {
            g
        } else {
            let b = if f.p() == 2 {
                // trace map a + a^2 + … + a^{2^{md-1}}
                let mut t = a.rem(poly, f)?;
                let mut acc = t.clone();
                for _ in 1..(f.degree() * d) {
                    t = t.mul(&t, f).rem(poly, f)?;
                    acc = acc.add(&t, f);
                }
                acc
            } else {
                let e = (q.pow(d as u32) - 1) / 2;
                a.pow_mod(e, poly, f)?.sub(&Poly::one(f), f)
            };
            poly.gcd(&b, f)?
        };
        match candidate.degree() {
            Some(k) if k > 0 && k < n => {
                let other = poly.divrem(&candidate, f)?.0.monic(f)?;
                let mut out = equal_degree(&candidate, d, f, rng)?;
                out.extend(equal_degree(&other, d, f, rng)?);
                return Ok(out);
            }
            _ => continue,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn division_and_gcd() {
        let f = FieldSpec::prime(5).unwrap();
        let a = Poly::from_ints(&f, &[1, 2, 3, 4]);
        let b = Poly::from_ints(&f, &[2, 1]);
        let (q, r) = a.divrem(&b, &f).unwrap();
        assert_eq!(q.mul(&b, &f).add(&r, &f), a);
        assert!(r.degree().unwrap_or(0) < 1);
        let g = a.mul(&b, &f).gcd(&b.mul(&b, &f), &f).unwrap();
        assert_eq!(g, b.monic(&f).unwrap());
        let (g, s, t) = a.ext_gcd(&b, &f).unwrap();
        assert_eq!(s.mul(&a, &f).add(&t.mul(&b, &f), &f), g);
    }

    #[test]
    fn factor_visible_roots() {
        let f = FieldSpec::prime(3).unwrap();
        let fac = factor(&Poly::from_ints(&f, &[-1, 0, 1]), &f, DEFAULT_SEED).unwrap();
        assert_eq!(
            fac.factors,
            vec![(Poly::from_ints(&f, &[1, 1]), 1), (Poly::from_ints(&f, &[2, 1]), 1)]
        );
    }

    #[test]
    fn factor_irreducible_quadratic() {
        let f = FieldSpec::prime(3).unwrap();
        let g = Poly::from_ints(&f, &[1, 0, 1]);
        let fac = factor(&g, &f, DEFAULT_SEED).unwrap();
        assert_eq!(fac.factors, vec![(g.clone(), 1)]);
        assert!((0..3).all(|r| !g.eval(&f.from_int(r), &f).is_zero()));
    }

    #[test]
    fn factor_char_two_square() {
        let f = FieldSpec::prime(2).unwrap();
        let g = Poly::from_ints(&f, &[0, 0, 1, 0, 1]);
        let fac = factor(&g, &f, DEFAULT_SEED).unwrap();
        assert_eq!(
            fac.factors,
            vec![(Poly::from_ints(&f, &[0, 1]), 2), (Poly::from_ints(&f, &[1, 1]), 2)]
        );
    }

    #[test]
    fn factor_pure_pth_power() {
        let f = FieldSpec::new(3, 2).unwrap();
        // (x^2 + 1)^3 · (x + t)^4 over GF(9)
        let a = Poly::from_ints(&f, &[1, 0, 1]);
        let b = Poly::linear(&f, &f.generator());
        let g = a.pow(3, &f).mul(&b.pow(4, &f), &f);
        let fac = factor(&g, &f, 1).unwrap();
        assert_eq!(fac.expand(&f), g);
        // x^2+1 splits over GF(9)
        assert_eq!(fac.factors.iter().map(|(_, e)| e).sum::<usize>(), 3 + 3 + 4);
    }

    #[test]
    fn zero_polynomial_rejected() {
        let f = FieldSpec::prime(2).unwrap();
        assert!(matches!(factor(&Poly::zero(), &f, 0), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn seeded_round_trips() {
        for p in [2, 3, 5] {
            for m in [1, 2] {
                let f = FieldSpec::new(p, m).unwrap();
                let mut rng = ChaCha8Rng::seed_from_u64(7);
                for case in 0..200 {
                    let deg = rng.random_range(1..=8);
                    let mut coeffs: Vec<FieldElement> = (0..deg).map(|_| f.random(&mut rng)).collect();
                    let mut lead = f.random(&mut rng);
                    if lead.is_zero() {
                        lead = f.one();
                    }
                    coeffs.push(lead);
                    let g = Poly::new(coeffs);
                    let fac = factor(&g, &f, case).unwrap();
                    assert_eq!(fac.expand(&f), g, "p={p} m={m} case={case}");
                    for (h, _) in &fac.factors {
                        assert!(h.is_monic(&f));
                        assert!(super::super::gf::is_irreducible(h, &f).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn same_seed_same_output() {
        let f = FieldSpec::new(5, 2).unwrap();
        let g = Poly::from_ints(&f, &[1, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(factor(&g, &f, 3).unwrap(), factor(&g, &f, 3).unwrap());
    }
}
