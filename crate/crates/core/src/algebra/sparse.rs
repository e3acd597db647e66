use std::collections::BTreeMap;

use super::context::{AlgebraContext, CentralElement};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::perm::Permutation;

/// An element of `kG` as a sparse map from group elements to nonzero
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AlgebraElement(BTreeMap<Permutation, FieldElement>);

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement(BTreeMap::new())
    }

    pub fn basis(g: Permutation, f: &FieldSpec) -> Self {
        AlgebraElement(BTreeMap::from([(g, f.one())]))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &FieldElement)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficient(&self, g: &Permutation, f: &FieldSpec) -> FieldElement {
        self.0.get(g).cloned().unwrap_or_else(|| f.zero())
    }

    fn accumulate(&mut self, g: Permutation, c: FieldElement, f: &FieldSpec) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(&g) {
            Some(v) => {
                *v = f.add(v, &c);
                if v.is_zero() {
                    self.0.remove(&g);
                }
            }
            None => {
                self.0.insert(g, c);
            }
        }
    }

    pub fn add(&self, other: &AlgebraElement, f: &FieldSpec) -> AlgebraElement {
        let mut out = self.clone();
        for (g, c) in &other.0 {
            out.accumulate(g.clone(), c.clone(), f);
        }
        out
    }

    pub fn scale(&self, c: &FieldElement, f: &FieldSpec) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (g, a) in &self.0 {
            out.accumulate(g.clone(), f.mul(a, c), f);
        }
        out
    }

    /// Convolution `Σ a_x b_y · xy`.
    pub fn mul(&self, other: &AlgebraElement, f: &FieldSpec) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (x, a) in &self.0 {
            for (y, b) in &other.0 {
                out.accumulate(x * y, f.mul(a, b), f);
            }
        }
        out
    }

    pub fn pow(&self, e: u64, f: &FieldSpec, identity: &Permutation) -> AlgebraElement {
        (0..e).fold(AlgebraElement::basis(identity.clone(), f), |acc, _| acc.mul(self, f))
    }

    /// `u^x = Σ c_g · x⁻¹gx`.
    pub fn conjugate(&self, x: &Permutation) -> AlgebraElement {
        AlgebraElement(self.0.iter().map(|(g, c)| (g.conjugate_by(x), c.clone())).collect())
    }

    /// Keeps only the terms whose group element satisfies `keep`.
    pub fn truncate(&self, keep: impl Fn(&Permutation) -> bool) -> AlgebraElement {
        AlgebraElement(
            self.0
                .iter()
                .filter(|(g, _)| keep(g))
                .map(|(g, c)| (g.clone(), c.clone()))
                .collect(),
        )
    }
}

impl AlgebraContext {
    /// Expands a central element into the full sparse group-algebra element.
    pub fn expand(&self, u: &CentralElement) -> AlgebraElement {
        let mut out = BTreeMap::new();
        for (i, c) in u.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &m in &self.classes().get(i).members {
                out.insert(self.elements().get(m as usize).clone(), c.clone());
            }
        }
        AlgebraElement(out)
    }

    /// Inverse of [`AlgebraContext::expand`]; fails if the element is not a
    /// class function supported on the group.
    pub fn collapse(&self, a: &AlgebraElement) -> Result<CentralElement> {
        let f = self.field();
        for g in a.0.keys() {
            self.class_of(g)?;
        }
        let u = CentralElement(
            self.classes()
                .classes()
                .iter()
                .map(|c| a.coefficient(&c.rep, f))
                .collect(),
        );
        if self.expand(&u) != *a {
            return Err(Error::Invalid("element is not central".into()));
        }
        Ok(u)
    }
}
