use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of the points `0..degree`.
///
/// Products compose left to right: `(p * q)(i) = q(p(i))`. With this
/// convention `g.conjugate_by(h) = h⁻¹·g·h` sends `h(x)` to `h(g(x))`, so
/// conjugation is relabeling by `h`.
///
/// Points are 0-based internally and 1-based in the text form
/// `"(1 2 3)(4 5)"`. The ordering is lexicographic on the image sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

pub const MAX_DEGREE: usize = 255;

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree {degree} too large");
        Permutation {
            images: (0..degree as u8).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(Error::Invalid(format!("degree {n} exceeds {MAX_DEGREE}")));
        }
        let mut seen = vec![false; n];
        for &i in images {
            if i >= n || seen[i] {
                return Err(Error::Invalid(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|&i| i as u8).collect(),
        })
    }

    /// Builds a permutation of the given degree from disjoint 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::Invalid(format!("degree {degree} exceeds {MAX_DEGREE}")));
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::Parse(format!("point {} exceeds degree {degree}", x + 1)));
                }
                if used[x] {
                    return Err(Error::Parse(format!("point {} repeated", x + 1)));
                }
                used[x] = true;
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(&images)
    }

    /// Parses cycle notation with 1-based points, e.g. `"(1 2 3)(4 5)"` or `"()"`.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
            let body = &open[..close];
            let mut cycle = Vec::new();
            for tok in body.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
                let pt: usize = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad point {tok:?} in {text:?}")))?;
                if pt == 0 {
                    return Err(Error::Parse("points are 1-based".into()));
                }
                cycle.push(pt - 1);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = open[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// Checked product `self · other` (apply `self` first).
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self * other)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// `h⁻¹ · self · h`.
    pub fn conjugate_by(&self, h: &Permutation) -> Permutation {
        assert_eq!(self.degree(), h.degree(), "degree mismatch");
        let mut out = vec![0u8; self.degree()];
        for x in 0..self.degree() {
            out[h.images[x] as usize] = h.images[self.images[x] as usize];
        }
        Permutation { images: out }
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        (0..self.degree()).all(|x| {
            self.images[other.images[x] as usize] == other.images[self.images[x] as usize]
        })
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let order = self.order() as i64;
        let mut e = exp.rem_euclid(order) as u64;
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Power with an arbitrarily large exponent, reduced by the element order.
    pub fn pow_u128(&self, exp: u128) -> Permutation {
        let order = self.order() as u128;
        self.pow((exp % order) as i64)
    }

    /// Disjoint cycles including fixed points, each starting at its least
    /// point, ordered by least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_lengths(self.cycles().iter().map(Vec::len))
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn parity(&self) -> Parity {
        let cycles = self.cycles().len();
        if (self.degree() - cycles).is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Parity::Even
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&x| self.image(x) == x).collect()
    }

    pub fn moved_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&x| self.image(x) != x).collect()
    }

    /// Order is a power of `p` (the identity counts).
    pub fn is_p_element(&self, p: u64) -> bool {
        let mut o = self.order();
        while o.is_multiple_of(p) {
            o /= p;
        }
        o == 1
    }

    pub fn is_p_regular(&self, p: u64) -> bool {
        !self.order().is_multiple_of(p)
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Panics on a degree mismatch; use [`Permutation::compose`] for a checked product.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        Permutation {
            images: self.images.iter().map(|&i| rhs.images[i as usize]).collect(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            write!(f, "(")?;
            for (k, x) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}[{}]", self.degree())
    }
}

/// Cycle type in canonical form: `(length, multiplicity)` pairs with strictly
/// decreasing lengths, fixed points included as length 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CycleType(Vec<(usize, usize)>);

impl CycleType {
    pub fn from_lengths(lengths: impl IntoIterator<Item = usize>) -> Self {
        let mut lens: Vec<usize> = lengths.into_iter().filter(|&l| l > 0).collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        let mut out: Vec<(usize, usize)> = Vec::new();
        for l in lens {
            match out.last_mut() {
                Some((c, m)) if *c == l => *m += 1,
                _ => out.push((l, 1)),
            }
        }
        CycleType(out)
    }

    pub fn entries(&self) -> &[(usize, usize)] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|(c, m)| c * m).sum()
    }

    /// Multiplicity of the given cycle length (0 when absent).
    pub fn multiplicity(&self, length: usize) -> usize {
        self.0
            .iter()
            .find(|(c, _)| *c == length)
            .map_or(0, |(_, m)| *m)
    }

    pub fn fixed_points(&self) -> usize {
        self.multiplicity(1)
    }

    /// Parts in non-increasing order, e.g. `[2, 1, 1]`. Classes are ordered
    /// lexicographically on this sequence.
    pub fn parts(&self) -> Vec<usize> {
        self.0
            .iter()
            .flat_map(|&(c, m)| std::iter::repeat_n(c, m))
            .collect()
    }

    pub fn is_p_regular(&self, p: usize) -> bool {
        self.0.iter().all(|(c, _)| c % p != 0)
    }

    pub fn parity(&self) -> Parity {
        let odd = self
            .0
            .iter()
            .filter(|(c, _)| c % 2 == 0)
            .map(|(_, m)| m)
            .sum::<usize>();
        if odd % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Order of the centralizer in the symmetric group: ∏ c^m · m!.
    pub fn centralizer_order(&self) -> u128 {
        self.0.iter().fold(1u128, |acc, &(c, m)| {
            acc * (c as u128).pow(m as u32) * factorial(m as u64)
        })
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1^0");
        }
        for (k, (c, m)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}^{m}")?;
        }
        Ok(())
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn factorial(n: u64) -> u128 {
    (1..=n as u128).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn compose_identity_and_involution() {
        let id = Permutation::identity(4);
        let g = p("(1 2 3)", 4);
        assert_eq!(&id * &g, g);
        let t = p("(1 2)", 4);
        assert!((&t * &t).is_identity());
    }

    #[test]
    fn compose_convention_pointwise() {
        // (1 2)·(1 3): 1 -> 2 -> 2, 2 -> 1 -> 3, 3 -> 3 -> 1
        let g = p("(1 2)", 3).compose(&p("(1 3)", 3)).unwrap();
        assert_eq!(g.images(), &[1, 2, 0]);
        assert_eq!(g.to_string(), "(1 2 3)");
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let err = p("(1 2)", 3).compose(&p("(1 2)", 4));
        assert!(matches!(err, Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn conjugation_matches_product() {
        let g = p("(1 2 3)(4 5)", 5);
        let h = p("(1 4)(2 5 3)", 5);
        let direct = &(&h.inverse() * &g) * &h;
        assert_eq!(g.conjugate_by(&h), direct);
        // relabeling: h(x) -> h(g(x))
        for x in 0..5 {
            assert_eq!(direct.image(h.image(x)), h.image(g.image(x)));
        }
    }

    #[test]
    fn cycle_types() {
        assert_eq!(Permutation::identity(4).cycle_type().to_string(), "1^4");
        assert_eq!(p("(1 2 3)(4 5)", 5).cycle_type().to_string(), "3^1 2^1");
        assert_eq!(p("(1 2)", 4).cycle_type().parts(), vec![2, 1, 1]);
    }

    #[test]
    fn parities() {
        assert_eq!(Permutation::identity(3).parity(), Parity::Even);
        assert_eq!(p("(1 2)", 3).parity(), Parity::Odd);
        assert_eq!(p("(1 2)(3 4)(5 6)", 6).parity(), Parity::Odd);
        assert_eq!(p("(1 2)(3 4)(5 6)", 6).cycle_type().parity(), Parity::Odd);
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert_eq!(p("()", 3), Permutation::identity(3));
        assert_eq!(p("", 2), Permutation::identity(2));
        assert_eq!(p(" (1 3) (2 4) ", 4).to_string(), "(1 3)(2 4)");
        assert!(Permutation::parse("(1 2 1)", 3).is_err());
        assert!(Permutation::parse("(1 2)(2 3)", 3).is_err());
        assert!(Permutation::parse("(1 4)", 3).is_err());
        assert!(Permutation::parse("(0 1)", 3).is_err());
        assert!(Permutation::parse("1 2", 3).is_err());
    }

    #[test]
    fn from_images_rejects_non_bijection() {
        assert!(Permutation::from_images(&[0, 0, 1]).is_err());
        assert!(Permutation::from_images(&[0, 3, 1]).is_err());
    }

    #[test]
    fn powers_and_orders() {
        let g = p("(1 2 3 4 5 6)", 6);
        assert_eq!(g.order(), 6);
        assert_eq!(g.pow(6), Permutation::identity(6));
        assert_eq!(g.pow(-1), g.inverse());
        assert_eq!(g.pow(3).to_string(), "(1 4)(2 5)(3 6)");
    }

    #[test]
    fn centralizer_order_formula() {
        assert_eq!(p("(1 2 3 4 5)", 5).cycle_type().centralizer_order(), 5);
        assert_eq!(p("(1 2)(3 4)", 4).cycle_type().centralizer_order(), 8);
        assert_eq!(Permutation::identity(4).cycle_type().centralizer_order(), 24);
    }
}
