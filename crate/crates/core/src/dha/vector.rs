use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use super::scalar::QSqrt;
use crate::cpx::GradedObject;

/// A finite linear combination of graded objects. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct HallVector {
    q: u32,
    terms: BTreeMap<GradedObject, QSqrt>,
}

impl HallVector {
    pub fn zero(q: u32) -> Self {
        HallVector {
            q,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(g: GradedObject, q: u32) -> Self {
        let mut v = Self::zero(q);
        v.add_term(g, QSqrt::one(q));
        v
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn add_term(&mut self, g: GradedObject, c: QSqrt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &HallVector, c: &QSqrt) {
        for (g, x) in &other.terms {
            self.add_term(g.clone(), x * c);
        }
    }

    pub fn scaled(&self, c: &QSqrt) -> HallVector {
        let mut out = HallVector::zero(self.q);
        out.add_scaled(self, c);
        out
    }

    pub fn scaled_rational(&self, c: &BigRational) -> HallVector {
        self.scaled(&QSqrt::rational(c.clone(), self.q))
    }

    pub fn coeff(&self, g: &GradedObject) -> QSqrt {
        self.terms.get(g).cloned().unwrap_or_else(|| QSqrt::zero(self.q))
    }

    pub fn terms(&self) -> &BTreeMap<GradedObject, QSqrt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// First basis element (in key order) where the two vectors differ, with both coefficients.
    pub fn first_difference(&self, other: &HallVector) -> Option<(GradedObject, QSqrt, QSqrt)> {
        let keys: std::collections::BTreeSet<&GradedObject> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().find_map(|g| {
            let (x, y) = (self.coeff(g), other.coeff(g));
            (x != y).then(|| (g.clone(), x, y))
        })
    }

    /// Coefficients keyed by the textual form of each graded object.
    pub fn to_string_map(&self) -> BTreeMap<String, String> {
        self.terms.iter().map(|(g, c)| (g.to_string(), c.to_string())).collect()
    }
}

impl fmt::Display for HallVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (g, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}){g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for HallVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
