use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::perm::is_prime;

/// An element of `GF(p^m)`: coefficients `c0, c1, …` of a polynomial in the
/// residue class of `t`, each reduced mod `p`. Elements do not carry their
/// field; every operation takes the [`FieldSpec`] explicitly.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FieldElement(pub Vec<u32>);

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `GF(p^m) = GF(p)[t] / (modulus)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FieldSpec {
    p: u32,
    m: usize,
    /// Monic, little-endian, length `m + 1`.
    modulus: Vec<u32>,
}

impl FieldSpec {
    /// The prime field `GF(p)`, with modulus `t` by convention.
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(FieldSpec {
            p,
            m: 1,
            modulus: vec![0, 1],
        })
    }

    /// `GF(p^m)` with the deterministic modulus from [`find_irreducible`].
    pub fn new(p: u32, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Invalid("extension degree must be at least 1".into()));
        }
        let base = Self::prime(p)?;
        if m == 1 {
            return Ok(base);
        }
        let modulus = find_irreducible(p, m)?;
        Ok(FieldSpec {
            p,
            m,
            modulus: modulus.coeffs().iter().map(|c| c.0[0]).collect(),
        })
    }

    /// `GF(p^m)` with an explicit monic modulus, verified irreducible.
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Self> {
        let base = Self::prime(p)?;
        let m = modulus.len().saturating_sub(1);
        if m == 0 || modulus[m] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::Invalid(format!("{modulus:?} is not a monic polynomial mod {p}")));
        }
        if m == 1 {
            return Ok(FieldSpec {
                p,
                m,
                modulus: modulus.to_vec(),
            });
        }
        let poly = Poly::new(modulus.iter().map(|&c| FieldElement(vec![c])).collect());
        if !is_irreducible(&poly, &base)? {
            return Err(Error::Invalid(format!("{modulus:?} is reducible mod {p}")));
        }
        Ok(FieldSpec {
            p,
            m,
            modulus: modulus.to_vec(),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Number of elements `p^m`.
    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.m as u32)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(vec![0; self.m])
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> FieldElement {
        let mut e = self.zero();
        e.0[0] = v.rem_euclid(self.p as i64) as u32;
        e
    }

    /// The class of `t` (for `m = 1`, the residue 0 is not a generator; this
    /// returns `t mod modulus` regardless).
    pub fn generator(&self) -> FieldElement {
        if self.m == 1 {
            return self.zero();
        }
        let mut e = self.zero();
        e.0[1] = 1;
        e
    }

    pub fn check(&self, a: &FieldElement) -> Result<()> {
        if a.0.len() != self.m || a.0.iter().any(|&c| c >= self.p) {
            return Err(Error::FieldMismatch(format!("{a} is not in GF({}^{})", self.p, self.m)));
        }
        Ok(())
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| (x + y) % self.p)
                .collect(),
        )
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| (x + self.p - y) % self.p)
                .collect(),
        )
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().map(|&x| (self.p - x) % self.p).collect())
    }

    /// Multiplication by an integer (image of `k` in the prime field).
    pub fn scale_int(&self, a: &FieldElement, k: u64) -> FieldElement {
        let k = (k % self.p as u64) as u32;
        FieldElement(a.0.iter().map(|&x| x * k % self.p).collect())
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let m = self.m;
        let p = self.p as u64;
        if m == 1 {
            return FieldElement(vec![((a.0[0] as u64 * b.0[0] as u64) % p) as u32]);
        }
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // reduce by the monic modulus from the top
        for d in (m..2 * m - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for k in 0..m {
                let sub = c * self.modulus[k] as u64 % p;
                prod[d - m + k] = (prod[d - m + k] + p - sub) % p;
            }
        }
        FieldElement(prod[..m].iter().map(|&c| c as u32).collect())
    }

    pub fn pow(&self, a: &FieldElement, mut e: u128) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.order() as u128 - 2))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        self.pow(a, self.p as u128)
    }

    /// Unique `p`-th root: `x^{p^{m-1}}`.
    pub fn pth_root(&self, a: &FieldElement) -> FieldElement {
        self.pow(a, (self.p as u128).pow(self.m as u32 - 1))
    }

    /// All elements in counting order (`c0` fastest).
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |mut k| {
            let mut v = vec![0u32; self.m];
            for c in v.iter_mut() {
                *c = (k % self.p as u64) as u32;
                k /= self.p as u64;
            }
            FieldElement(v)
        })
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement((0..self.m).map(|_| rng.random_range(0..self.p)).collect())
    }

    /// Parses `"c0,c1,…"`.
    pub fn parse(&self, text: &str) -> Result<FieldElement> {
        let coeffs: Vec<u32> = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad field element {text:?}")))
            })
            .collect::<Result<_>>()?;
        let e = FieldElement(coeffs);
        self.check(&e)?;
        Ok(e)
    }
}

/// Rabin test over `GF(q)`: `f | t^{q^m} − t` and `gcd(t^{q^{m/r}} − t, f) = 1`
/// for every prime `r | m`, where `m = deg f`.
pub fn is_irreducible(f: &Poly, base: &FieldSpec) -> Result<bool> {
    let Some(m) = f.degree() else {
        return Err(Error::ZeroPolynomial);
    };
    if m == 0 {
        return Ok(false);
    }
    if m == 1 {
        return Ok(true);
    }
    let q = base.order() as u128;
    let t = Poly::x(base);
    // t^{q^k} mod f by repeated p-th powers
    let frob_iter = |k: usize| -> Result<Poly> {
        let mut h = t.rem(f, base)?;
        for _ in 0..k {
            h = h.pow_mod(q, f, base)?;
        }
        Ok(h)
    };
    if !frob_iter(m)?.sub(&t, base).rem(f, base)?.is_zero() {
        return Ok(false);
    }
    for r in (2..=m).filter(|&r| m % r == 0 && is_prime(r as u64)) {
        let h = frob_iter(m / r)?.sub(&t, base);
        if f.gcd(&h, base)?.degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest monic irreducible of degree `m` over `GF(p)`, enumerating the
/// lower coefficients as the integer `Σ c_i p^i` in increasing order.
pub fn find_irreducible(p: u32, m: usize) -> Result<Poly> {
    let base = FieldSpec::prime(p)?;
    if m == 0 {
        return Err(Error::Invalid("degree must be at least 1".into()));
    }
    let count = (p as u64).pow(m as u32);
    for k in 0..count {
        let mut coeffs = Vec::with_capacity(m + 1);
        let mut rest = k;
        for _ in 0..m {
            coeffs.push(base.from_int((rest % p as u64) as i64));
            rest /= p as u64;
        }
        coeffs.push(base.one());
        let f = Poly::new(coeffs);
        if is_irreducible(&f, &base)? {
            return Ok(f);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_field_arithmetic() {
        let f2 = FieldSpec::prime(2).unwrap();
        assert!(f2.add(&f2.one(), &f2.one()).is_zero());
        let f3 = FieldSpec::prime(3).unwrap();
        let two = f3.from_int(2);
        assert_eq!(f3.mul(&two, &two), f3.one());
        let f4 = FieldSpec::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let t = f4.generator();
        assert_eq!(f4.mul(&t, &t), FieldElement(vec![1, 1]));
    }

    #[test]
    fn inverse_of_zero_fails() {
        let f = FieldSpec::new(3, 2).unwrap();
        assert!(matches!(f.inv(&f.zero()), Err(Error::ZeroInverse)));
    }

    #[test]
    fn inverses_exhaustive() {
        for (p, m) in [(2, 3), (3, 2), (5, 2)] {
            let f = FieldSpec::new(p, m).unwrap();
            for a in f.elements().filter(|a| !a.is_zero()) {
                assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            }
        }
    }

    #[test]
    fn deterministic_irreducibles() {
        let to_vec = |f: Poly| -> Vec<u32> { f.coeffs().iter().map(|c| c.0[0]).collect() };
        assert_eq!(to_vec(find_irreducible(2, 2).unwrap()), vec![1, 1, 1]);
        assert_eq!(to_vec(find_irreducible(3, 1).unwrap()), vec![0, 1]);
        assert_eq!(to_vec(find_irreducible(2, 3).unwrap()), vec![1, 1, 0, 1]);
    }

    #[test]
    fn explicit_modulus_is_checked() {
        assert!(FieldSpec::with_modulus(2, &[1, 1, 1]).is_ok());
        assert!(FieldSpec::with_modulus(2, &[1, 0, 1]).is_err());
        assert!(FieldSpec::with_modulus(4, &[1, 1]).is_err());
    }

    #[test]
    fn every_element_satisfies_x_pow_q() {
        for p in [2, 3] {
            for m in 1..=3 {
                let f = FieldSpec::new(p, m).unwrap();
                for a in f.elements() {
                    assert_eq!(f.pow(&a, f.order() as u128), a);
                }
            }
        }
    }

    #[test]
    fn characteristic_and_roots() {
        let f = FieldSpec::new(5, 2).unwrap();
        for a in f.elements() {
            assert!(f.scale_int(&a, 5).is_zero());
            assert_eq!(f.frobenius(&f.pth_root(&a)), a);
        }
    }

    #[test]
    fn parse_elements() {
        let f = FieldSpec::new(3, 2).unwrap();
        assert_eq!(f.parse("2,1").unwrap(), FieldElement(vec![2, 1]));
        assert!(f.parse("3,0").is_err());
        assert!(f.parse("1").is_err());
    }
}
