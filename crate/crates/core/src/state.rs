//! Finite linear combinations of reference-basis vectors.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{ParseError, StateError};
use crate::rep::{BasisLabel, RepSpec};
use crate::scalar::RadicalScalar;

/// Element of the reference subspace: a finite map from basis labels to
/// nonzero exact coefficients. The empty map is the zero vector.
#[derive(Clone, PartialEq, Eq)]
pub struct StateVector {
    rep: Arc<RepSpec>,
    terms: BTreeMap<BasisLabel, RadicalScalar>,
}

impl StateVector {
    pub fn zero(rep: &Arc<RepSpec>) -> Self {
        Self {
            rep: Arc::clone(rep),
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(rep: &Arc<RepSpec>, label: BasisLabel) -> Self {
        let mut v = Self::zero(rep);
        v.terms.insert(label, RadicalScalar::one());
        v
    }

    /// The cyclic vector of component 0.
    pub fn vacuum(rep: &Arc<RepSpec>) -> Self {
        Self::basis(rep, rep.vacuum())
    }

    pub fn rep(&self) -> &Arc<RepSpec> {
        &self.rep
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

    pub fn terms(&self) -> impl Iterator<Item = (&BasisLabel, &RadicalScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, label: &BasisLabel) -> RadicalScalar {
        self.terms.get(label).cloned().unwrap_or_default()
    }

    fn same_rep(&self, other: &StateVector) -> bool {
        Arc::ptr_eq(&self.rep, &other.rep) || self.rep == other.rep
    }

    fn check_rep(&self, other: &StateVector) -> Result<(), StateError> {
        if self.same_rep(other) {
            Ok(())
        } else {
            Err(StateError::RepMismatch {
                left: self.rep.to_string(),
                right: other.rep.to_string(),
            })
        }
    }

    /// `self += c · label`.
    pub fn add_label(&mut self, c: &RadicalScalar, label: BasisLabel) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&label) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&label);
                }
            }
            None => {
                self.terms.insert(label, c.clone());
            }
        }
    }

    /// `self += c · other`. Both vectors must live in the same representation.
    pub fn add_scaled(&mut self, c: &RadicalScalar, other: &StateVector) {
        debug_assert!(self.same_rep(other));
        if c.is_zero() {
            return;
        }
        for (label, coeff) in &other.terms {
            self.add_label(&(c * coeff), label.clone());
        }
    }

    /// `a + c · b`.
    pub fn combine(
        a: &StateVector,
        c: &RadicalScalar,
        b: &StateVector,
    ) -> Result<StateVector, StateError> {
        a.check_rep(b)?;
        let mut out = a.clone();
        out.add_scaled(c, b);
        Ok(out)
    }

    pub fn scaled(&self, c: &RadicalScalar) -> StateVector {
        let mut out = StateVector::zero(&self.rep);
        out.add_scaled(c, self);
        out
    }

    pub fn sub(&self, other: &StateVector) -> Result<StateVector, StateError> {
        StateVector::combine(self, &RadicalScalar::from_integer(-1), other)
    }

    /// Real inner product; the reference basis is orthonormal.
    pub fn inner(&self, other: &StateVector) -> Result<RadicalScalar, StateError> {
        self.check_rep(other)?;
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = RadicalScalar::zero();
        for (label, c) in &small.terms {
            if let Some(d) = large.terms.get(label) {
                acc.add_scaled(c, d);
            }
        }
        Ok(acc)
    }

    /// Longest prefix word in the support; 0 for the zero vector.
    pub fn depth(&self) -> usize {
        self.terms.keys().map(|l| l.word.len()).max().unwrap_or(0)
    }

    /// Linear extension of a map defined on basis labels.
    pub fn map_linear<F>(&self, mut f: F) -> StateVector
    where
        F: FnMut(&BasisLabel) -> StateVector,
    {
        let mut out = StateVector::zero(&self.rep);
        for (label, c) in &self.terms {
            out.add_scaled(c, &f(label));
        }
        out
    }

    /// If `self = λ · label` for some scalar λ, returns λ.
    pub fn multiple_of(&self, label: &BasisLabel) -> Option<RadicalScalar> {
        match self.terms.len() {
            0 => Some(RadicalScalar::zero()),
            1 => self.terms.get(label).cloned(),
            _ => None,
        }
    }

    pub fn render(&self, unicode: bool) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let show_component = self.rep.is_direct_sum();
        let mut out = String::new();
        for (i, (label, c)) in self.terms.iter().enumerate() {
            let ket = label.render(show_component, unicode);
            let negative = c.terms().next().is_some_and(|(_, q)| q.is_negative());
            let magnitude = if negative { -c } else { c.clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if !magnitude.is_one() {
                let s = magnitude.render(unicode);
                if magnitude.is_compound() {
                    out.push_str(&format!("({s})"));
                } else {
                    out.push_str(&s);
                }
                out.push('*');
            }
            out.push_str(&ket);
        }
        out
    }

    pub fn to_json(&self) -> StateJson {
        let show_component = self.rep.is_direct_sum();
        StateJson {
            terms: self
                .terms
                .iter()
                .map(|(label, c)| TermJson {
                    label: label_ket(label, show_component),
                    coeff: c.clone(),
                })
                .collect(),
        }
    }

    /// Rebuilds a vector from its JSON form, validating labels against `rep`.
    pub fn from_json(rep: &Arc<RepSpec>, json: &StateJson) -> Result<StateVector, ParseError> {
        let mut out = StateVector::zero(rep);
        for term in &json.terms {
            let label = crate::parse::parse_label(rep, &term.label)?;
            out.add_label(&term.coeff, label);
        }
        Ok(out)
    }
}

/// Always the explicit `|u;k>` form, even for cycle vectors.
fn label_ket(label: &BasisLabel, show_component: bool) -> String {
    if show_component {
        format!("|{}:{};{}>", label.component, label.word, label.node)
    } else {
        format!("|{};{}>", label.word, label.node)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub label: String,
    pub coeff: RadicalScalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateJson {
    pub terms: Vec<TermJson>,
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StateVector[{}]({})", self.rep, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::Word;
    use crate::scalar::sqrt_int;

    fn p1() -> Arc<RepSpec> {
        Arc::new(RepSpec::p1())
    }

    fn ket(rep: &Arc<RepSpec>, word: &str) -> StateVector {
        let label = rep.normalize_label(0, word.parse::<Word>().unwrap(), 0);
        StateVector::basis(rep, label)
    }

    #[test]
    fn combine_examples() {
        let rep = p1();
        let v = ket(&rep, "2");
        let zero = StateVector::zero(&rep);
        assert_eq!(
            StateVector::combine(&v, &RadicalScalar::one(), &zero).unwrap(),
            v
        );
        assert!(
            StateVector::combine(&v, &RadicalScalar::from_integer(-1), &v)
                .unwrap()
                .is_zero()
        );
        let r2 = sqrt_int(2).unwrap();
        let w = StateVector::combine(&v, &r2, &ket(&rep, "22")).unwrap();
        let back = StateVector::combine(&w, &(-&r2), &ket(&rep, "22")).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn combine_rejects_mismatched_reps() {
        let a = StateVector::vacuum(&p1());
        let b = StateVector::vacuum(&Arc::new(RepSpec::p12()));
        assert!(matches!(
            StateVector::combine(&a, &RadicalScalar::one(), &b),
            Err(StateError::RepMismatch { .. })
        ));
        assert!(a.inner(&b).is_err());
    }

    #[test]
    fn inner_examples() {
        let rep = p1();
        let omega = StateVector::vacuum(&rep);
        let two = ket(&rep, "2");
        assert_eq!(omega.inner(&omega).unwrap(), RadicalScalar::one());
        assert!(omega.inner(&two).unwrap().is_zero());
        let r2 = sqrt_int(2).unwrap();
        let u = StateVector::combine(&omega.scaled(&r2), &RadicalScalar::one(), &two).unwrap();
        let v = StateVector::combine(&omega.scaled(&r2), &RadicalScalar::from_integer(-1), &two)
            .unwrap();
        assert_eq!(u.inner(&v).unwrap(), RadicalScalar::one());
    }

    #[test]
    fn depth_examples() {
        let rep = p1();
        assert_eq!(StateVector::vacuum(&rep).depth(), 0);
        assert_eq!(ket(&rep, "212").depth(), 3);
        let v = StateVector::combine(&ket(&rep, "2"), &RadicalScalar::one(), &ket(&rep, "2122"))
            .unwrap();
        assert_eq!(v.depth(), 4);
        assert_eq!(StateVector::zero(&rep).depth(), 0);
    }

    #[test]
    fn rendering() {
        let rep = p1();
        let r2 = sqrt_int(2).unwrap();
        let v =
            StateVector::combine(&StateVector::vacuum(&rep), &(-&r2), &ket(&rep, "12")).unwrap();
        assert_eq!(v.render(false), "vac - sqrt(2)*|12;0>");
        let w = StateVector::combine(
            &ket(&rep, "2"),
            &RadicalScalar::from_integer(-3),
            &ket(&rep, "22"),
        )
        .unwrap();
        assert_eq!(w.render(false), "|2;0> - 3*|22;0>");
        assert_eq!(w.render(true), "|2;0> - 3*|22;0>");
    }
}
