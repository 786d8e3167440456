//! Canonical form of polynomials in `t₁, t₂, t₁*, t₂*` modulo the Cuntz
//! relations.
//!
//! Every polynomial reduces to a combination of monomials `t_u t_v*`. Refining
//! each monomial with `t_u t_v* = Σ_{|x|=k} t_{ux} t_{vx}*` brings all left
//! words to a common length `d`, and at a fixed `d` the monomials are linearly
//! independent, so two polynomials are equal in O₂ exactly when their forms at
//! a common depth coincide.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::ExprError;
use crate::expr::{Named, OperatorExpr};
use crate::rep::{Letter, Word};
use crate::scalar::RadicalScalar;
use crate::state::StateVector;

/// Largest `n` for which `a_n` is expanded into its `2^{n-1}` monomials.
pub const A_MATERIALIZATION_CAP: u32 = 16;

/// Unreduced polynomial `Σ c · t_u t_v*`, keyed by `(u, v)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<(Word, Word), RadicalScalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: RadicalScalar, left: Word, right: Word) -> Self {
        let mut p = Self::zero();
        p.add_monomial(&c, left, right);
        p
    }

    pub fn identity() -> Self {
        Self::monomial(RadicalScalar::one(), Word::empty(), Word::empty())
    }

    fn add_monomial(&mut self, c: &RadicalScalar, left: Word, right: Word) {
        if c.is_zero() {
            return;
        }
        let key = (left, right);
        match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, c: &RadicalScalar, other: &Poly) {
        for ((u, v), d) in &other.terms {
            self.add_monomial(&(c * d), u.clone(), v.clone());
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for ((u1, v1), c1) in &self.terms {
            for ((u2, v2), c2) in &other.terms {
                let c = c1 * c2;
                // t_{v1}* t_{u2} is t_x, t_y*, or 0 depending on prefixes
                if let Some(rest) = u2.letters().strip_prefix(v1.letters()) {
                    out.add_monomial(&c, u1.concat(&Word(rest.to_vec())), v2.clone());
                } else if let Some(rest) = v1.letters().strip_prefix(u2.letters()) {
                    out.add_monomial(&c, u1.clone(), v2.concat(&Word(rest.to_vec())));
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Poly {
        let mut out = Poly::zero();
        for ((u, v), c) in &self.terms {
            out.add_monomial(c, v.clone(), u.clone());
        }
        out
    }

    /// `ζ(p) = t₁ p t₁* − t₂ p t₂*`.
    pub fn zeta(&self) -> Poly {
        let mut out = Poly::zero();
        for ((u, v), c) in &self.terms {
            for (l, sign) in [(Letter::One, c.clone()), (Letter::Two, -c)] {
                let prefix = Word(vec![l]);
                out.add_monomial(&sign, prefix.concat(u), prefix.concat(v));
            }
        }
        out
    }

    pub fn intrinsic_depth(&self) -> usize {
        self.terms.keys().map(|(u, _)| u.len()).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Refines every monomial to left length exactly `depth`.
    pub fn normal_form(&self, depth: usize) -> Result<PolyNormalForm, ExprError> {
        let intrinsic = self.intrinsic_depth();
        if depth < intrinsic {
            return Err(ExprError::DepthTooSmall {
                requested: depth,
                intrinsic,
            });
        }
        let mut out = Poly::zero();
        for ((u, v), c) in &self.terms {
            for x in Word::all_of_length(depth - u.len()) {
                out.add_monomial(c, u.concat(&x), v.concat(&x));
            }
        }
        Ok(PolyNormalForm {
            depth,
            terms: out
                .terms
                .into_iter()
                .map(|((u, v), c)| Monomial {
                    coeff: c,
                    left: u,
                    right: v,
                })
                .collect(),
        })
    }
}

/// `s_n = t₂^{n-1} t₁` as a word.
fn s_word(n: u32) -> Word {
    let mut v = vec![Letter::Two; n as usize - 1];
    v.push(Letter::One);
    Word(v)
}

/// Closed form `a_n = Σ_{|w|=n-1} (−1)^{#2(w)} t_w t₁ t₂* t_w*`.
pub fn fermion_poly(n: u32) -> Result<Poly, ExprError> {
    if n > A_MATERIALIZATION_CAP {
        return Err(ExprError::MaterializationCap(n, A_MATERIALIZATION_CAP));
    }
    let mut p = Poly::zero();
    for w in Word::all_of_length(n as usize - 1) {
        let sign = if w.count(Letter::Two) % 2 == 0 { 1 } else { -1 };
        p.add_monomial(
            &RadicalScalar::from_integer(sign),
            w.concat(&Word(vec![Letter::One])),
            w.concat(&Word(vec![Letter::Two])),
        );
    }
    Ok(p)
}

fn named_poly(named: Named) -> Result<Poly, ExprError> {
    let one = RadicalScalar::one;
    match named {
        Named::S(n) => Ok(Poly::monomial(one(), s_word(n), Word::empty())),
        Named::A(n) => fermion_poly(n),
        Named::Psi(k) => fermion_poly(k.fermion_index()),
        Named::W(n) => Ok(Poly::monomial(one(), s_word(n + 1), s_word(n + 1))),
        Named::X(n) => {
            // s_{n+1} t₂* s_n*
            let t2_adj = Poly::monomial(one(), Word::empty(), Word(vec![Letter::Two]));
            let left = Poly::monomial(one(), s_word(n + 1), Word::empty());
            let right = Poly::monomial(one(), Word::empty(), s_word(n));
            Ok(left.mul(&t2_adj).mul(&right))
        }
        Named::B(_) | Named::Y | Named::F(_) => Err(ExprError::Unsupported(named.to_string())),
    }
}

/// Expands a polynomial expression into monomials `t_u t_v*`.
pub fn poly_of(e: &OperatorExpr) -> Result<Poly, ExprError> {
    match e {
        OperatorExpr::Identity => Ok(Poly::identity()),
        OperatorExpr::Gen(l) => Ok(Poly::monomial(
            RadicalScalar::one(),
            Word(vec![*l]),
            Word::empty(),
        )),
        OperatorExpr::Named(n) => named_poly(*n),
        OperatorExpr::Adjoint(inner) => Ok(poly_of(inner)?.adjoint()),
        OperatorExpr::Product(fs) => {
            let mut acc = Poly::identity();
            for f in fs {
                acc = acc.mul(&poly_of(f)?);
            }
            Ok(acc)
        }
        OperatorExpr::Sum(ts) => {
            let mut acc = Poly::zero();
            for (c, t) in ts {
                acc.add_scaled(c, &poly_of(t)?);
            }
            Ok(acc)
        }
        OperatorExpr::Zeta(x) => Ok(poly_of(x)?.zeta()),
        OperatorExpr::Rho(_) => Err(ExprError::Unsupported(e.to_string())),
    }
}

/// Normal form at `depth`, or at the intrinsic depth when `depth` is `None`.
pub fn poly_normal_form(
    e: &OperatorExpr,
    depth: Option<usize>,
) -> Result<PolyNormalForm, ExprError> {
    let p = poly_of(e)?;
    let depth = depth.unwrap_or_else(|| p.intrinsic_depth());
    p.normal_form(depth)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Monomial {
    pub coeff: RadicalScalar,
    #[serde(serialize_with = "word_string")]
    pub left: Word,
    #[serde(serialize_with = "word_string")]
    pub right: Word,
}

fn word_string<S: serde::Serializer>(w: &Word, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&w.to_string())
}

/// `Σ c · t_left t_right*` with every left word of length `depth`, sorted by
/// `(left, right)` and free of zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolyNormalForm {
    pub depth: usize,
    pub terms: Vec<Monomial>,
}

impl PolyNormalForm {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The same element refined to a larger depth.
    pub fn refine(&self, depth: usize) -> Result<PolyNormalForm, ExprError> {
        self.to_poly().normal_form(depth)
    }

    fn to_poly(&self) -> Poly {
        let mut p = Poly::zero();
        for m in &self.terms {
            p.add_monomial(&m.coeff, m.left.clone(), m.right.clone());
        }
        p
    }

    /// Undoes one refinement step if every monomial has a sibling differing
    /// only in the shared last letter, with the same coefficient.
    fn coarsen_once(&self) -> Option<PolyNormalForm> {
        if self.depth == 0 {
            return None;
        }
        let mut groups: BTreeMap<(Word, Word), [Option<RadicalScalar>; 2]> = BTreeMap::new();
        for m in &self.terms {
            let (Some(&lu), Some(&lv)) = (m.left.0.last(), m.right.0.last()) else {
                return None;
            };
            if lu != lv {
                return None;
            }
            let key = (
                Word(m.left.0[..m.left.len() - 1].to_vec()),
                Word(m.right.0[..m.right.len() - 1].to_vec()),
            );
            let slot = match lu {
                Letter::One => 0,
                Letter::Two => 1,
            };
            groups.entry(key).or_default()[slot] = Some(m.coeff.clone());
        }
        let mut terms = Vec::with_capacity(groups.len());
        for ((u, v), [c1, c2]) in groups {
            match (c1, c2) {
                (Some(a), Some(b)) if a == b => terms.push(Monomial {
                    coeff: a,
                    left: u,
                    right: v,
                }),
                _ => return None,
            }
        }
        Some(PolyNormalForm {
            depth: self.depth - 1,
            terms,
        })
    }

    /// The form at the smallest depth representing the same element.
    pub fn minimal(&self) -> PolyNormalForm {
        let mut cur = self.clone();
        while let Some(next) = cur.coarsen_once() {
            cur = next;
        }
        cur
    }

    /// `Some(c)` when the element is `c · I`.
    pub fn as_identity_multiple(&self) -> Option<RadicalScalar> {
        let m = self.minimal();
        match m.terms.as_slice() {
            [] => Some(RadicalScalar::zero()),
            [only] if only.left.is_empty() && only.right.is_empty() => Some(only.coeff.clone()),
            _ => None,
        }
    }

    /// Evaluates the polynomial on a vector.
    pub fn apply(&self, v: &StateVector) -> StateVector {
        let rep = v.rep().clone();
        let mut out = StateVector::zero(&rep);
        for m in &self.terms {
            let mut image = StateVector::zero(&rep);
            for (x, c) in v.terms() {
                let mut cur = Some(x.clone());
                for &l in m.right.letters() {
                    cur = cur.and_then(|y| rep.apply_gen_adjoint(l, &y));
                }
                if let Some(y) = cur {
                    image.add_label(c, crate::engine::prepend(&rep, m.left.letters(), &y));
                }
            }
            out.add_scaled(&m.coeff, &image);
        }
        out
    }

    pub fn render(&self, unicode: bool) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, m) in self.terms.iter().enumerate() {
            let negative = m
                .coeff
                .terms()
                .next()
                .is_some_and(|(_, q)| num_traits::Signed::is_negative(q));
            let magnitude = if negative { -&m.coeff } else { m.coeff.clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut body = String::new();
            for l in m.left.letters() {
                body.push_str(&format!("t{}", l.digit()));
            }
            for l in m.right.letters().iter().rev() {
                body.push_str(&format!("t{}*", l.digit()));
            }
            if body.is_empty() {
                body.push('I');
            }
            if !magnitude.is_one() {
                let s = magnitude.render(unicode);
                if magnitude.is_compound() {
                    out.push_str(&format!("({s})*"));
                } else {
                    out.push_str(&format!("{s}*"));
                }
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for PolyNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}
