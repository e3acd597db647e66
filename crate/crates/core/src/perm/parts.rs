//! `p`-parts of elements and `p`-regular exponents.

use super::permutation::Permutation;
use crate::error::{Error, Result};

/// Extended Euclid: returns `(g, x, y)` with `a·x + b·y = g`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// The unique commuting factorization `g = g_p · g_p′` with `g_p` a
/// `p`-element and `g_p′` of order prime to `p`. With `|g| = p^k·m`,
/// `x·m + y·p^k = 1` gives `g_p = g^{x·m}` and `g_p′ = g^{y·p^k}`.
pub fn p_parts(g: &Permutation, p: u64) -> (Permutation, Permutation) {
    let mut m = g.order();
    let mut pk = 1u64;
    while m.is_multiple_of(p) {
        m /= p;
        pk *= p;
    }
    let (_, x, y) = ext_gcd(m as i128, pk as i128);
    let order = g.order() as i128;
    let gp = g.pow(((x * m as i128).rem_euclid(order)) as i64);
    let gq = g.pow(((y * pk as i128).rem_euclid(order)) as i64);
    (gp, gq)
}

/// A `p`-regular exponent `q = p^n`: `g^q = g_p′` for every `g` in a group of
/// the given order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegularExponent {
    pub p: u64,
    /// The exponent `n` in `q = p^n`.
    pub n: u32,
}

impl RegularExponent {
    pub fn q(&self) -> Result<u128> {
        (self.p as u128)
            .checked_pow(self.n)
            .ok_or(Error::Overflow("p-regular exponent"))
    }
}

/// Smallest `q = p^n` with `n ≥ k` and `p^n ≡ 1 (mod m)`, where `order = p^k·m`.
pub fn p_regular_exponent(order: u128, p: u64) -> RegularExponent {
    let p128 = p as u128;
    let mut m = order;
    let mut k = 0u32;
    while m.is_multiple_of(p128) {
        m /= p128;
        k += 1;
    }
    // multiplicative order t of p mod m; p^n ≡ 1 iff t | n
    let t = if m == 1 {
        1
    } else {
        let mut t = 1u32;
        let mut acc = p128 % m;
        while acc != 1 {
            acc = acc * p128 % m;
            t += 1;
        }
        t
    };
    let n = if k == 0 { 0 } else { k.div_ceil(t) * t };
    RegularExponent { p, n }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn parts_of_regular_and_p_elements() {
        let c3 = p("(1 2 3)", 3);
        assert_eq!(p_parts(&c3, 2), (Permutation::identity(3), c3.clone()));
        let t = p("(1 2)", 3);
        assert_eq!(p_parts(&t, 2), (t.clone(), Permutation::identity(3)));
    }

    #[test]
    fn parts_of_six_cycle() {
        let g = p("(1 2 3 4 5 6)", 6);
        let (gp, gq) = p_parts(&g, 2);
        assert_eq!(gp, g.pow(3));
        assert_eq!(gq, g.pow(4));
        assert_eq!(gp.order(), 2);
        assert_eq!(gq.order(), 3);
        assert_eq!(&gp * &gq, g);
        assert_eq!(&gq * &gp, g);
    }

    #[test]
    fn regular_exponents() {
        assert_eq!(p_regular_exponent(6, 2).q().unwrap(), 4);
        assert_eq!(p_regular_exponent(24, 2).q().unwrap(), 16);
        assert_eq!(p_regular_exponent(24, 3).q().unwrap(), 9);
        assert_eq!(p_regular_exponent(1, 2).q().unwrap(), 1);
        assert_eq!(p_regular_exponent(5, 2).q().unwrap(), 1);
    }

    #[test]
    fn regular_exponent_is_smallest_by_scan() {
        for order in 1u128..=200 {
            for pr in [2u64, 3, 5, 7] {
                let got = p_regular_exponent(order, pr);
                let mut m = order;
                let mut k = 0;
                while m % pr as u128 == 0 {
                    m /= pr as u128;
                    k += 1;
                }
                let pow_mod = |n: u32| (0..n).fold(1 % m, |acc, _| acc * pr as u128 % m);
                let scan = (k..1000).find(|&n| pow_mod(n) == 1 % m).unwrap();
                assert_eq!(got.n, scan, "order={order} p={pr}");
            }
        }
    }
}
