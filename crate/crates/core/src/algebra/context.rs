use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec, DEFAULT_SEED};
use crate::perm::{p_regular_exponent, ClassTable, Elements, PermGroup, Permutation, RegularExponent};

/// Integer structure constants of the class-sum basis:
/// `ΣC_i · ΣC_j = Σ_l N[i][j][l] · ΣC_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    k: usize,
    counts: Vec<u32>,
}

impl StructureConstants {
    /// For each target class `l` with representative `z`, counts the pairs
    /// `(class(x), class(x⁻¹z))` over all `x ∈ G`.
    pub fn compute(group: &PermGroup) -> Result<Self> {
        let elems = group.elements()?;
        let classes = group.classes()?;
        let k = classes.len();
        let columns: Vec<Vec<u32>> = (0..k)
            .into_par_iter()
            .map(|l| {
                let z = &classes.get(l).rep;
                let mut col = vec![0u32; k * k];
                for (xi, x) in elems.list().iter().enumerate() {
                    let y = &x.inverse() * z;
                    let yi = elems.index_of(&y).expect("closed under products");
                    let i = classes.class_of_index(xi);
                    let j = classes.class_of_index(yi);
                    col[i * k + j] += 1;
                }
                col
            })
            .collect();
        let mut counts = vec![0u32; k * k * k];
        for (l, col) in columns.into_iter().enumerate() {
            for (ij, c) in col.into_iter().enumerate() {
                counts[ij * k + l] = c;
            }
        }
        Ok(StructureConstants { k, counts })
    }

    pub fn classes(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize, l: usize) -> u32 {
        self.counts[(i * self.k + j) * self.k + l]
    }

    /// Nonzero entries as `(i, j, l, count)`.
    pub fn quadruples(&self) -> Vec<(u32, u32, u32, u32)> {
        let k = self.k;
        let mut out = Vec::new();
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    let c = self.get(i, j, l);
                    if c != 0 {
                        out.push((i as u32, j as u32, l as u32, c));
                    }
                }
            }
        }
        out
    }

    pub fn from_quadruples(k: usize, quads: &[(u32, u32, u32, u32)]) -> Result<Self> {
        let mut counts = vec![0u32; k * k * k];
        for &(i, j, l, c) in quads {
            let (i, j, l) = (i as usize, j as usize, l as usize);
            if i >= k || j >= k || l >= k {
                return Err(Error::Invalid(format!("structure constant index out of range ({i},{j},{l})")));
            }
            counts[(i * k + j) * k + l] = c;
        }
        Ok(StructureConstants { k, counts })
    }
}

/// A vector over the class-sum basis of `Z(kG)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CentralElement(pub Vec<FieldElement>);

impl CentralElement {
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(FieldElement::is_zero)
    }

    /// Indices of classes with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }
}

/// `(label, coefficient)` pair used in reports.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LabeledCoefficient(pub String, pub String);

/// The center of `kG` for a fixed group, prime, and coefficient field.
#[derive(Clone, Debug)]
pub struct AlgebraContext {
    group: PermGroup,
    elements: Arc<Elements>,
    classes: Arc<ClassTable>,
    field: FieldSpec,
    exponent: RegularExponent,
    constants: Arc<StructureConstants>,
    /// Per `(i, j)`: nonzero `(l, N mod p)`.
    reduced: Arc<Vec<Vec<(u32, u32)>>>,
    seed: u64,
}

impl AlgebraContext {
    pub fn new(group: PermGroup, field: FieldSpec) -> Result<Self> {
        let constants = StructureConstants::compute(&group)?;
        Self::with_constants(group, field, constants, DEFAULT_SEED)
    }

    pub fn with_constants(
        group: PermGroup,
        field: FieldSpec,
        constants: StructureConstants,
        seed: u64,
    ) -> Result<Self> {
        let elements = group.elements()?;
        let classes = group.classes()?;
        let k = classes.len();
        if constants.classes() != k {
            return Err(Error::Invalid(format!(
                "structure constants for {} classes, group has {k}",
                constants.classes()
            )));
        }
        let p = field.p();
        let reduced = (0..k * k)
            .map(|ij| {
                (0..k)
                    .filter_map(|l| {
                        let c = constants.counts[ij * k + l] % p;
                        (c != 0).then_some((l as u32, c))
                    })
                    .collect()
            })
            .collect();
        let exponent = p_regular_exponent(elements.len() as u128, p as u64);
        Ok(AlgebraContext {
            group,
            elements,
            classes,
            field,
            exponent,
            constants: Arc::new(constants),
            reduced: Arc::new(reduced),
            seed,
        })
    }

    /// Same group and constants over another field of the same characteristic.
    pub fn over_field(&self, field: FieldSpec) -> Result<Self> {
        if field.p() != self.field.p() {
            return Err(Error::FieldMismatch(format!(
                "characteristic {} vs {}",
                field.p(),
                self.field.p()
            )));
        }
        Ok(AlgebraContext {
            field,
            ..self.clone()
        })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn elements(&self) -> &Elements {
        &self.elements
    }

    pub fn classes(&self) -> &ClassTable {
        &self.classes
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn exponent(&self) -> RegularExponent {
        self.exponent
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn dimension(&self) -> usize {
        self.classes.len()
    }

    /// Class index of an element of `G`.
    pub fn class_of(&self, g: &Permutation) -> Result<usize> {
        let idx = self
            .elements
            .index_of(g)
            .ok_or_else(|| Error::NotInGroup(g.to_string()))?;
        Ok(self.classes.class_of_index(idx))
    }

    pub fn zero(&self) -> CentralElement {
        CentralElement(vec![self.field.zero(); self.dimension()])
    }

    pub fn one(&self) -> CentralElement {
        self.class_sum(0)
    }

    pub fn class_sum(&self, class: usize) -> CentralElement {
        let mut u = self.zero();
        u.0[class] = self.field.one();
        u
    }

    pub fn add(&self, u: &CentralElement, v: &CentralElement) -> CentralElement {
        CentralElement(u.0.iter().zip(&v.0).map(|(a, b)| self.field.add(a, b)).collect())
    }

    pub fn sub(&self, u: &CentralElement, v: &CentralElement) -> CentralElement {
        CentralElement(u.0.iter().zip(&v.0).map(|(a, b)| self.field.sub(a, b)).collect())
    }

    pub fn scale(&self, u: &CentralElement, c: &FieldElement) -> CentralElement {
        CentralElement(u.0.iter().map(|a| self.field.mul(a, c)).collect())
    }

    pub fn mul(&self, u: &CentralElement, v: &CentralElement) -> CentralElement {
        let k = self.dimension();
        let f = &self.field;
        let mut out = self.zero();
        for (i, a) in u.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.0.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = f.mul(a, b);
                for &(l, n) in &self.reduced[i * k + j] {
                    let l = l as usize;
                    out.0[l] = f.add(&out.0[l], &f.scale_int(&ab, n as u64));
                }
            }
        }
        out
    }

    pub fn pow(&self, u: &CentralElement, mut e: u128) -> CentralElement {
        let mut base = u.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `u^q` for the `p`-regular exponent `q` of `G`.
    pub fn pow_regular(&self, u: &CentralElement) -> Result<CentralElement> {
        Ok(self.pow(u, self.exponent.q()?))
    }

    pub fn coefficient_of(&self, u: &CentralElement, g: &Permutation) -> Result<FieldElement> {
        Ok(u.0[self.class_of(g)?].clone())
    }

    /// Nonzero coefficients as `(class label, element)` pairs.
    pub fn labeled(&self, u: &CentralElement) -> Vec<LabeledCoefficient> {
        u.0.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| LabeledCoefficient(self.classes.get(i).label.clone(), c.to_string()))
            .collect()
    }

    /// Coefficients of `u ∈ Z(kH)` read on the classes of this context's
    /// group `K ≤ H`: the truncation of `u` to `K`.
    pub fn truncate_from(&self, outer: &AlgebraContext, u: &CentralElement) -> Result<CentralElement> {
        self.classes
            .classes()
            .iter()
            .map(|c| Ok(u.0[outer.class_of(&c.rep)?].clone()))
            .collect::<Result<Vec<_>>>()
            .map(CentralElement)
    }

    /// `u^x = x⁻¹ u x` for `x` normalizing the group.
    pub fn conjugate(&self, u: &CentralElement, x: &Permutation) -> Result<CentralElement> {
        let xi = x.inverse();
        self.classes
            .classes()
            .iter()
            .map(|c| Ok(u.0[self.class_of(&c.rep.conjugate_by(&xi))?].clone()))
            .collect::<Result<Vec<_>>>()
            .map(CentralElement)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(g: PermGroup, p: u32) -> AlgebraContext {
        AlgebraContext::new(g, FieldSpec::prime(p).unwrap()).unwrap()
    }

    #[test]
    fn s3_constants() {
        let c = StructureConstants::compute(&PermGroup::symmetric(3)).unwrap();
        let classes = PermGroup::symmetric(3).classes().unwrap();
        assert_eq!(classes.labels(), vec!["1^3", "2^1 1^1", "3^1"]);
        // ΣT·ΣT = 3 + 3·Σ3cyc
        assert_eq!((c.get(1, 1, 0), c.get(1, 1, 1), c.get(1, 1, 2)), (3, 0, 3));
        // Σ3·Σ3 = 2 + Σ3cyc
        assert_eq!((c.get(2, 2, 0), c.get(2, 2, 1), c.get(2, 2, 2)), (2, 0, 1));
        for i in 0..3 {
            for l in 0..3 {
                assert_eq!(c.get(i, 0, l), (i == l) as u32);
            }
        }
    }

    #[test]
    fn quadruple_round_trip() {
        let c = StructureConstants::compute(&PermGroup::alternating(5)).unwrap();
        let back = StructureConstants::from_quadruples(c.classes(), &c.quadruples()).unwrap();
        assert_eq!(c, back);
    }

    #[test]
    fn s3_mod_two_powers() {
        let a = ctx(PermGroup::symmetric(3), 2);
        let t = a.class_sum(1);
        let expect = a.add(&a.one(), &a.class_sum(2));
        assert_eq!(a.mul(&t, &t), expect);
        assert_eq!(a.pow(&t, 4), expect);
        assert_eq!(a.pow(&t, 0), a.one());
        assert_eq!(a.exponent().q().unwrap(), 4);
        let c3 = Permutation::parse("(1 2 3)", 3).unwrap();
        assert_eq!(a.coefficient_of(&a.pow(&t, 4), &c3).unwrap(), a.field().one());
    }

    #[test]
    fn coefficient_outside_group() {
        let a = ctx(PermGroup::alternating(4), 2);
        let t = Permutation::parse("(1 2)", 4).unwrap();
        assert!(matches!(a.coefficient_of(&a.one(), &t), Err(Error::NotInGroup(_))));
    }

    #[test]
    fn conjugation_by_odd_element_swaps_split_classes() {
        let a = ctx(PermGroup::alternating(5), 3);
        let plus = a.classes().position_of_label("5^1+").unwrap();
        let minus = a.classes().position_of_label("5^1-").unwrap();
        let t = Permutation::parse("(1 2)", 5).unwrap();
        assert_eq!(a.conjugate(&a.class_sum(plus), &t).unwrap(), a.class_sum(minus));
    }
}
