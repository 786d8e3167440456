//! Literal evaluation of the boson series and of ρ straight from their
//! defining generator words, bypassing the `s_m` rewrites used by
//! [`crate::engine`].
//!
//! Every sum runs over `m = 1..=series_bound(v)`. Beyond that bound
//! `(t₂*)^m v` is either zero or sits on an all-`2` cycle, where `t₁*`
//! vanishes, so the truncated sums are exact. The suites use these as the
//! independent side of two-path comparisons.

use crate::rep::{BasisLabel, Letter, RepSpec};
use crate::scalar::{sqrt_int, RadicalScalar};
use crate::state::StateVector;

/// Upper bound on the `m` that can contribute to a series applied to `v`.
pub fn series_bound(v: &StateVector) -> u32 {
    (v.depth() + v.rep().max_cycle_len() + 1) as u32
}

fn gen_power(rep: &RepSpec, letter: Letter, k: u32, adjoint: bool, v: &StateVector) -> StateVector {
    let mut out = StateVector::zero(v.rep());
    for (x, c) in v.terms() {
        let mut cur: Option<BasisLabel> = Some(x.clone());
        for _ in 0..k {
            cur = cur.and_then(|y| {
                if adjoint {
                    rep.apply_gen_adjoint(letter, &y)
                } else {
                    Some(rep.apply_gen(letter, &y))
                }
            });
        }
        if let Some(y) = cur {
            out.add_label(c, y);
        }
    }
    out
}

fn t(letter: Letter, v: &StateVector) -> StateVector {
    gen_power(v.rep(), letter, 1, false, v)
}

fn t_adj(letter: Letter, v: &StateVector) -> StateVector {
    gen_power(v.rep(), letter, 1, true, v)
}

fn t2_pow(k: u32, v: &StateVector) -> StateVector {
    gen_power(v.rep(), Letter::Two, k, false, v)
}

fn t2_adj_pow(k: u32, v: &StateVector) -> StateVector {
    gen_power(v.rep(), Letter::Two, k, true, v)
}

fn sqrt(m: u32) -> RadicalScalar {
    sqrt_int(m as i64).expect("positive")
}

/// `b₁ v = Σ_m √m t₂^{m-1} t₁ t₁* (t₂*)^m v`.
pub fn raw_b1(v: &StateVector) -> StateVector {
    let mut out = StateVector::zero(v.rep());
    for m in 1..=series_bound(v) {
        let pulled = t_adj(Letter::One, &t2_adj_pow(m, v));
        if pulled.is_zero() {
            continue;
        }
        let term = t2_pow(m - 1, &t(Letter::One, &pulled));
        out.add_scaled(&sqrt(m), &term);
    }
    out
}

/// `b₁* v = Σ_m √m t₂^m t₁ t₁* (t₂*)^{m-1} v`.
pub fn raw_b1_adj(v: &StateVector) -> StateVector {
    let mut out = StateVector::zero(v.rep());
    for m in 1..=series_bound(v) {
        let pulled = t_adj(Letter::One, &t2_adj_pow(m - 1, v));
        if pulled.is_zero() {
            continue;
        }
        let term = t2_pow(m, &t(Letter::One, &pulled));
        out.add_scaled(&sqrt(m), &term);
    }
    out
}

/// `ρ(x) v = Σ_m t₂^{m-1} t₁ x t₁* (t₂*)^{m-1} v` with `x` given by its action.
pub fn raw_rho<F>(x: F, v: &StateVector) -> StateVector
where
    F: Fn(&StateVector) -> StateVector,
{
    let mut out = StateVector::zero(v.rep());
    for m in 1..=series_bound(v) {
        let pulled = t_adj(Letter::One, &t2_adj_pow(m - 1, v));
        if pulled.is_zero() {
            continue;
        }
        let term = t2_pow(m - 1, &t(Letter::One, &x(&pulled)));
        out.add_scaled(&RadicalScalar::one(), &term);
    }
    out
}

/// `b_n v` (or `b_n* v`) through `b_n = ρ(b_{n-1})` with literal sums.
pub fn raw_b(n: u32, adjoint: bool, v: &StateVector) -> StateVector {
    assert!(n >= 1, "boson index starts at 1");
    if n == 1 {
        return if adjoint { raw_b1_adj(v) } else { raw_b1(v) };
    }
    raw_rho(|w| raw_b(n - 1, adjoint, w), v)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::engine::apply;
    use crate::expr::OperatorExpr;

    #[test]
    fn raw_b1_on_single_label() {
        // only m = 1 survives on t₂Ω in P(1)
        let rep = Arc::new(RepSpec::p1());
        let two = StateVector::basis(&rep, rep.apply_gen(Letter::Two, &rep.vacuum()));
        assert_eq!(raw_b1(&two), StateVector::vacuum(&rep));
    }

    #[test]
    fn raw_bosons_agree_with_engine() {
        for r in ["1", "12", "112", "2"] {
            let rep: Arc<RepSpec> = Arc::new(r.parse().unwrap());
            for x in rep.enumerate_basis(4) {
                let v = StateVector::basis(&rep, x);
                for n in 1..=3 {
                    let b = OperatorExpr::b(n);
                    assert_eq!(raw_b(n, false, &v), apply(&b, &v), "b({n}) on {v:?}");
                    assert_eq!(raw_b(n, true, &v), apply(&b.adjoint(), &v));
                }
            }
        }
    }
}
