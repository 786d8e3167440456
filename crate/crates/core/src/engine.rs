//! Exact evaluation of operator expressions on the reference subspace.
//!
//! Every series operator is rewritten through the embedded generators
//! `s_m = t₂^{m-1} t₁` of O_∞. A reference-basis vector lies in the range of
//! at most one `s_m`, so `s_m* v` vanishes for all but finitely many `m` and
//! each series collapses to a finite sum computed from the support of `v`.
//! There is no truncation parameter; results are exact.

use std::collections::BTreeMap;

use crate::expr::{Named, OperatorExpr};
use crate::rep::{BasisLabel, Letter, RepSpec, Word};
use crate::scalar::{sqrt_int, RadicalScalar};
use crate::state::StateVector;

fn sqrt_u32(m: u32) -> RadicalScalar {
    sqrt_int(m as i64).expect("positive")
}

/// `t_w x` for a word `w` (rightmost letter applied first).
pub fn prepend(rep: &RepSpec, word: &[Letter], x: &BasisLabel) -> BasisLabel {
    word.iter()
        .rev()
        .fold(x.clone(), |acc, &l| rep.apply_gen(l, &acc))
}

/// Reads `n` letters off `x`: returns `(w, y)` with `|w| = n` and `x = t_w y`.
pub fn read_word(rep: &RepSpec, x: &BasisLabel, n: usize) -> (Word, BasisLabel) {
    let mut letters = Vec::with_capacity(n);
    let mut cur = x.clone();
    for _ in 0..n {
        let (l, rest) = rep.read_letter(&cur);
        letters.push(l);
        cur = rest;
    }
    (Word(letters), cur)
}

/// `s_m x = t₂^{m-1} t₁ x`.
pub fn s_label(rep: &RepSpec, m: u32, x: &BasisLabel) -> BasisLabel {
    let mut cur = rep.apply_gen(Letter::One, x);
    for _ in 1..m {
        cur = rep.apply_gen(Letter::Two, &cur);
    }
    cur
}

/// `s_m* x = t₁* (t₂*)^{m-1} x`.
pub fn s_adj_label(rep: &RepSpec, m: u32, x: &BasisLabel) -> Option<BasisLabel> {
    let mut cur = x.clone();
    for _ in 1..m {
        cur = rep.apply_gen_adjoint(Letter::Two, &cur)?;
    }
    rep.apply_gen_adjoint(Letter::One, &cur)
}

/// The unique `(m, y)` with `x = s_m y`, if `x` lies in the range of some
/// `s_m`.
///
/// Reading letters off `x` yields `2^{m-1} 1` exactly when `x = s_m y`. After
/// `|u|` reads the label sits on the cycle, and within one more period a `1`
/// appears unless the cycle is `2` itself, whose cycle vectors lie in no
/// range of any `s_m`.
pub fn s_decompose(rep: &RepSpec, x: &BasisLabel) -> Option<(u32, BasisLabel)> {
    let bound = x.word.len() + rep.cycle_len(x.component);
    let mut cur = x.clone();
    for twos in 0..=bound {
        let (l, rest) = rep.read_letter(&cur);
        if l == Letter::One {
            return Some((twos as u32 + 1, rest));
        }
        cur = rest;
    }
    None
}

/// All `m ≥ 1` with `s_m* v ≠ 0`, with the images `s_m* v`.
pub fn s_star_support(v: &StateVector) -> BTreeMap<u32, StateVector> {
    let rep = v.rep();
    let mut out: BTreeMap<u32, StateVector> = BTreeMap::new();
    for (x, c) in v.terms() {
        if let Some((m, y)) = s_decompose(rep, x) {
            out.entry(m)
                .or_insert_with(|| StateVector::zero(rep))
                .add_label(c, y);
        }
    }
    out.retain(|_, w| !w.is_zero());
    out
}

fn map_labels<F>(v: &StateVector, mut f: F) -> StateVector
where
    F: FnMut(&BasisLabel) -> Option<(RadicalScalar, BasisLabel)>,
{
    let mut out = StateVector::zero(v.rep());
    for (x, c) in v.terms() {
        if let Some((k, y)) = f(x) {
            out.add_label(&(c * &k), y);
        }
    }
    out
}

/// `s_m v`.
pub fn s_apply(m: u32, v: &StateVector) -> StateVector {
    let rep = v.rep().clone();
    map_labels(v, |x| Some((RadicalScalar::one(), s_label(&rep, m, x))))
}

/// `s_m* v`.
pub fn s_adj_apply(m: u32, v: &StateVector) -> StateVector {
    let rep = v.rep().clone();
    map_labels(v, |x| {
        s_adj_label(&rep, m, x).map(|y| (RadicalScalar::one(), y))
    })
}

/// `Σ_m s_{f(m)} · g(m, s_m* v)` over the support of `v`.
fn over_support<F>(v: &StateVector, mut f: F) -> StateVector
where
    F: FnMut(u32, &StateVector) -> StateVector,
{
    let mut out = StateVector::zero(v.rep());
    for (m, image) in s_star_support(v) {
        out.add_scaled(&RadicalScalar::one(), &f(m, &image));
    }
    out
}

/// `W_n v = s_{n+1} s_{n+1}* v`.
pub fn eval_series_w(n: u32, v: &StateVector) -> StateVector {
    over_support(v, |m, y| {
        if m == n + 1 {
            s_apply(m, y)
        } else {
            StateVector::zero(v.rep())
        }
    })
}

/// `b₁ v = Σ_m √m s_m s_{m+1}* v`.
pub fn eval_series_b1(v: &StateVector) -> StateVector {
    over_support(v, |k, y| {
        if k >= 2 {
            s_apply(k - 1, y).scaled(&sqrt_u32(k - 1))
        } else {
            StateVector::zero(v.rep())
        }
    })
}

/// `b₁* v = Σ_m √m s_{m+1} s_m* v`.
pub fn eval_series_b1_adj(v: &StateVector) -> StateVector {
    over_support(v, |m, y| s_apply(m + 1, y).scaled(&sqrt_u32(m)))
}

/// `Y v = Σ_n s_{n+1} t₂* s_n* v`.
pub fn eval_series_y(v: &StateVector) -> StateVector {
    over_support(v, |n, y| {
        s_apply(n + 1, &apply(&OperatorExpr::t2().adjoint(), y))
    })
}

/// `Y* v = Σ_n s_n t₂ s_{n+1}* v`.
pub fn eval_series_y_adj(v: &StateVector) -> StateVector {
    over_support(v, |k, y| {
        if k >= 2 {
            s_apply(k - 1, &apply(&OperatorExpr::t2(), y))
        } else {
            StateVector::zero(v.rep())
        }
    })
}

/// `ρ(x) v = Σ_m s_m x s_m* v`.
pub fn eval_rho(x: &OperatorExpr, v: &StateVector) -> StateVector {
    over_support(v, |m, y| s_apply(m, &apply(x, y)))
}

/// `ζ(x) v = t₁ x t₁* v − t₂ x t₂* v`.
pub fn eval_zeta(x: &OperatorExpr, v: &StateVector) -> StateVector {
    let rep = v.rep().clone();
    let mut out = StateVector::zero(v.rep());
    for letter in Letter::BOTH {
        let pulled = map_labels(v, |z| {
            rep.apply_gen_adjoint(letter, z)
                .map(|y| (RadicalScalar::one(), y))
        });
        let pushed = map_labels(&apply(x, &pulled), |z| {
            Some((RadicalScalar::one(), rep.apply_gen(letter, z)))
        });
        let sign = match letter {
            Letter::One => RadicalScalar::one(),
            Letter::Two => RadicalScalar::from_integer(-1),
        };
        out.add_scaled(&sign, &pushed);
    }
    out
}

/// `F_1 v = Σ_{m≥1} √m W_m v`.
fn eval_f1(v: &StateVector) -> StateVector {
    map_labels(v, |x| match s_decompose(v.rep(), x) {
        Some((k, _)) if k >= 2 => Some((sqrt_u32(k - 1), x.clone())),
        _ => None,
    })
}

/// `a_n x` via the closed form `a_n = Σ_{|w|=n-1} (−1)^{#2(w)} t_w t₁ t₂* t_w*`.
///
/// On a basis vector only the word `w` read off `x` contributes.
fn fermion_label(
    rep: &RepSpec,
    n: u32,
    x: &BasisLabel,
    adjoint: bool,
) -> Option<(RadicalScalar, BasisLabel)> {
    let (w, y) = read_word(rep, x, n as usize - 1);
    // a_n = ... t₁ t₂* ...,  a_n* = ... t₂ t₁* ...
    let (pull, push) = if adjoint {
        (Letter::One, Letter::Two)
    } else {
        (Letter::Two, Letter::One)
    };
    let z = rep.apply_gen_adjoint(pull, &y)?;
    let z = rep.apply_gen(push, &z);
    let sign = if w.count(Letter::Two) % 2 == 0 { 1 } else { -1 };
    Some((
        RadicalScalar::from_integer(sign),
        prepend(rep, w.letters(), &z),
    ))
}

fn apply_named(named: Named, adjoint: bool, v: &StateVector) -> StateVector {
    let rep = v.rep().clone();
    match (named, adjoint) {
        (Named::S(m), false) => s_apply(m, v),
        (Named::S(m), true) => s_adj_apply(m, v),
        (Named::A(n), adj) => map_labels(v, |x| fermion_label(&rep, n, x, adj)),
        (Named::Psi(k), adj) => apply_named(Named::A(k.fermion_index()), adj, v),
        (Named::W(n), _) => eval_series_w(n, v),
        (Named::X(n), false) => over_support(v, |m, y| {
            if m == n {
                s_apply(n + 1, &apply(&OperatorExpr::t2().adjoint(), y))
            } else {
                StateVector::zero(&rep)
            }
        }),
        (Named::X(n), true) => over_support(v, |m, y| {
            if m == n + 1 {
                s_apply(n, &apply(&OperatorExpr::t2(), y))
            } else {
                StateVector::zero(&rep)
            }
        }),
        (Named::Y, false) => eval_series_y(v),
        (Named::Y, true) => eval_series_y_adj(v),
        (Named::B(1), false) => eval_series_b1(v),
        (Named::B(1), true) => eval_series_b1_adj(v),
        (Named::B(n), adj) => {
            let inner = OperatorExpr::b(n - 1);
            let inner = if adj { inner.adjoint() } else { inner };
            eval_rho(&inner, v)
        }
        (Named::F(1), _) => eval_f1(v),
        (Named::F(n), false) => {
            let inner = OperatorExpr::f(n - 1);
            eval_series_y(&eval_rho(&inner, v))
        }
        (Named::F(n), true) => {
            let inner = OperatorExpr::f(n - 1).adjoint();
            eval_rho(&inner, &eval_series_y_adj(v))
        }
    }
}

/// Exact image of `v` under `e`.
pub fn apply(e: &OperatorExpr, v: &StateVector) -> StateVector {
    if v.is_zero() {
        return v.clone();
    }
    let rep = v.rep().clone();
    match e {
        OperatorExpr::Identity => v.clone(),
        OperatorExpr::Gen(l) => {
            map_labels(v, |x| Some((RadicalScalar::one(), rep.apply_gen(*l, x))))
        }
        OperatorExpr::Named(n) => apply_named(*n, false, v),
        OperatorExpr::Adjoint(inner) => match inner.as_ref() {
            OperatorExpr::Gen(l) => map_labels(v, |x| {
                rep.apply_gen_adjoint(*l, x)
                    .map(|y| (RadicalScalar::one(), y))
            }),
            OperatorExpr::Named(n) => apply_named(*n, true, v),
            other => apply(&other.adjoint(), v),
        },
        OperatorExpr::Product(fs) => fs.iter().rev().fold(v.clone(), |acc, f| apply(f, &acc)),
        OperatorExpr::Sum(ts) => {
            let mut out = StateVector::zero(v.rep());
            for (c, t) in ts {
                out.add_scaled(c, &apply(t, v));
            }
            out
        }
        OperatorExpr::Rho(x) => eval_rho(x, v),
        OperatorExpr::Zeta(x) => eval_zeta(x, v),
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::rep::RepSpec;

    fn rep(s: &str) -> Arc<RepSpec> {
        Arc::new(s.parse().unwrap())
    }

    fn ket(rep: &Arc<RepSpec>, word: &str, node: usize) -> StateVector {
        StateVector::basis(rep, rep.normalize_label(0, word.parse().unwrap(), node))
    }

    #[test]
    fn support_examples() {
        let p1 = rep("1");
        let s = s_star_support(&ket(&p1, "22", 0));
        assert_eq!(s.len(), 1);
        assert_eq!(s[&3], StateVector::vacuum(&p1));
        let s = s_star_support(&StateVector::vacuum(&p1));
        assert_eq!(s.keys().copied().collect::<Vec<_>>(), vec![1]);
        assert_eq!(s[&1], StateVector::vacuum(&p1));

        let p12 = rep("12");
        let omega_star = ket(&p12, "", 1);
        let s = s_star_support(&omega_star);
        assert_eq!(s.keys().copied().collect::<Vec<_>>(), vec![2]);
        assert_eq!(s[&2], omega_star);
    }

    #[test]
    fn support_matches_brute_force() {
        for r in ["1", "12", "112", "122", "2", "1+2"] {
            let r = rep(r);
            for x in r.enumerate_basis(5) {
                let v = StateVector::basis(&r, x.clone());
                let fast = s_star_support(&v);
                let bound = x.word.len() + r.max_cycle_len() + 4;
                for m in 1..=bound as u32 {
                    let direct = s_adj_apply(m, &v);
                    match fast.get(&m) {
                        Some(img) => assert_eq!(img, &direct),
                        None => assert!(direct.is_zero(), "m={m} x={x:?}"),
                    }
                }
            }
        }
    }

    #[test]
    fn cycle_two_is_outside_every_s_range() {
        let p2 = rep("2");
        assert!(s_star_support(&StateVector::vacuum(&p2)).is_empty());
    }

    #[test]
    fn fermion_and_boson_examples_in_p1() {
        let p1 = rep("1");
        let omega = StateVector::vacuum(&p1);
        assert!(apply(&OperatorExpr::a(1), &omega).is_zero());
        let two = ket(&p1, "2", 0);
        assert_eq!(apply(&OperatorExpr::b(1).adjoint(), &omega), two);
        assert_eq!(apply(&OperatorExpr::a(1).adjoint(), &omega), two);
        assert_eq!(apply(&OperatorExpr::b(1), &two), omega);
    }

    #[test]
    fn w_on_vacuum() {
        let p1 = rep("1");
        let omega = StateVector::vacuum(&p1);
        assert_eq!(eval_series_w(0, &omega), omega);
        for m in 1..6 {
            assert!(eval_series_w(m, &omega).is_zero());
        }
    }

    #[test]
    fn rho_of_t2_star_is_t2_star_y() {
        let t2s = OperatorExpr::t2().adjoint();
        for r in ["1", "12"] {
            let r = rep(r);
            for x in r.enumerate_basis(5) {
                let v = StateVector::basis(&r, x);
                let lhs = eval_rho(&t2s, &v);
                let rhs = apply(&t2s, &eval_series_y(&v));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn closed_form_fermions_match_zeta_recursion() {
        for r in ["1", "12", "112"] {
            let r = rep(r);
            let mut recursive = OperatorExpr::t1() * OperatorExpr::t2().adjoint();
            for n in 1..=6 {
                for x in r.enumerate_basis(4) {
                    let v = StateVector::basis(&r, x);
                    assert_eq!(apply(&OperatorExpr::a(n), &v), apply(&recursive, &v));
                    assert_eq!(
                        apply(&OperatorExpr::a(n).adjoint(), &v),
                        apply(&recursive.adjoint(), &v)
                    );
                }
                recursive = OperatorExpr::zeta(recursive);
            }
        }
    }

    #[test]
    fn psi_indices() {
        let r = rep("12");
        let psi = OperatorExpr::psi(crate::expr::HalfInt::new(-1).unwrap());
        for x in r.enumerate_basis(3) {
            let v = StateVector::basis(&r, x);
            assert_eq!(apply(&psi, &v), apply(&OperatorExpr::a(1), &v));
        }
    }

    #[test]
    fn b2_star_on_fock_vacuum() {
        let p1 = rep("1");
        let omega = StateVector::vacuum(&p1);
        assert_eq!(
            apply(&OperatorExpr::b(2).adjoint(), &omega),
            apply(&OperatorExpr::a(2).adjoint(), &omega)
        );
    }
}
