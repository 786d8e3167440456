//! Symbolic operator expressions over O₂ and the named fermion/boson series.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::ExprError;
use crate::rep::Letter;
use crate::scalar::RadicalScalar;

/// Half-integer `twice / 2` with `twice` odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    /// `p/2`; `p` must be odd.
    pub fn new(p: i64) -> Result<Self, ExprError> {
        if p % 2 == 0 {
            return Err(ExprError::BadPsiIndex(format!("{p}/2")));
        }
        Ok(Self { twice: p })
    }

    pub fn twice(self) -> i64 {
        self.twice
    }

    /// Fermion index: `ψ_k = a_{2k+1}` and `ψ_{-k} = a_{2k}` for
    /// `k ∈ {1/2, 3/2, ...}`.
    pub fn fermion_index(self) -> u32 {
        if self.twice > 0 {
            (self.twice + 1) as u32
        } else {
            (-self.twice) as u32
        }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.twice)
    }
}

/// Named operators. Indices are validated by the constructors on
/// [`OperatorExpr`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Named {
    /// `s_n = t₂^{n-1} t₁`, the embedded generators of O_∞.
    S(u32),
    /// Fermion `a_n` of the recursive fermion system.
    A(u32),
    Psi(HalfInt),
    /// Boson `b_n` of the recursive boson system.
    B(u32),
    /// Projection `W_n = s_{n+1} s_{n+1}*`.
    W(u32),
    /// Partial shift `X_n = s_{n+1} t₂* s_n*`.
    X(u32),
    /// `Y = Σ_n X_n`.
    Y,
    /// Cluster `F_1 = Σ √m W_m`, `F_n = Y ρ(F_{n-1})`.
    F(u32),
}

impl Named {
    /// Whether the operator is an infinite formal sum (finite only on D).
    pub fn is_series(self) -> bool {
        matches!(self, Named::B(_) | Named::Y | Named::F(_))
    }

    fn is_self_adjoint(self) -> bool {
        matches!(self, Named::W(_) | Named::F(1))
    }
}

impl fmt::Display for Named {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Named::S(n) => write!(f, "s({n})"),
            Named::A(n) => write!(f, "a({n})"),
            Named::Psi(k) => write!(f, "psi({k})"),
            Named::B(n) => write!(f, "b({n})"),
            Named::W(n) => write!(f, "W({n})"),
            Named::X(n) => write!(f, "X({n})"),
            Named::Y => write!(f, "Y"),
            Named::F(n) => write!(f, "F({n})"),
        }
    }
}

/// Kinds accepted by [`OperatorExpr::build_named`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedKind {
    S,
    A,
    B,
    W,
    X,
    Y,
    F,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OperatorExpr {
    Identity,
    Gen(Letter),
    Named(Named),
    /// Only ever wraps a `Gen` or `Named` leaf; build through
    /// [`OperatorExpr::adjoint`].
    Adjoint(Box<OperatorExpr>),
    /// Applied right to left.
    Product(Vec<OperatorExpr>),
    Sum(Vec<(RadicalScalar, OperatorExpr)>),
    /// `ρ(x) = Σ_m s_m x s_m*`.
    Rho(Box<OperatorExpr>),
    /// `ζ(x) = t₁ x t₁* − t₂ x t₂*`.
    Zeta(Box<OperatorExpr>),
}

fn positive(kind: &'static str, n: i64) -> Result<u32, ExprError> {
    if n < 1 || n > u32::MAX as i64 {
        return Err(ExprError::IndexOutOfRange {
            kind,
            index: n,
            reason: "index must be at least 1",
        });
    }
    Ok(n as u32)
}

impl OperatorExpr {
    pub fn t1() -> Self {
        OperatorExpr::Gen(Letter::One)
    }

    pub fn t2() -> Self {
        OperatorExpr::Gen(Letter::Two)
    }

    pub fn gen(letter: Letter) -> Self {
        OperatorExpr::Gen(letter)
    }

    pub fn build_named(kind: NamedKind, index: i64) -> Result<Self, ExprError> {
        let named = match kind {
            NamedKind::S => Named::S(positive("s", index)?),
            NamedKind::A => Named::A(positive("a", index)?),
            NamedKind::B => Named::B(positive("b", index)?),
            NamedKind::X => Named::X(positive("X", index)?),
            NamedKind::F => Named::F(positive("F", index)?),
            NamedKind::W => {
                if index < 0 || index > u32::MAX as i64 {
                    return Err(ExprError::IndexOutOfRange {
                        kind: "W",
                        index,
                        reason: "index must be non-negative",
                    });
                }
                Named::W(index as u32)
            }
            NamedKind::Y => Named::Y,
        };
        Ok(OperatorExpr::Named(named))
    }

    // Infallible shorthands for code that builds expressions from known-good
    // indices. They panic on an out-of-range index.
    pub fn s(n: u32) -> Self {
        Self::build_named(NamedKind::S, n as i64).expect("s index")
    }

    pub fn a(n: u32) -> Self {
        Self::build_named(NamedKind::A, n as i64).expect("a index")
    }

    pub fn b(n: u32) -> Self {
        Self::build_named(NamedKind::B, n as i64).expect("b index")
    }

    pub fn w(n: u32) -> Self {
        OperatorExpr::Named(Named::W(n))
    }

    pub fn x(n: u32) -> Self {
        Self::build_named(NamedKind::X, n as i64).expect("X index")
    }

    pub fn y() -> Self {
        OperatorExpr::Named(Named::Y)
    }

    pub fn f(n: u32) -> Self {
        Self::build_named(NamedKind::F, n as i64).expect("F index")
    }

    pub fn psi(k: HalfInt) -> Self {
        OperatorExpr::Named(Named::Psi(k))
    }

    pub fn rho(x: OperatorExpr) -> Self {
        OperatorExpr::Rho(Box::new(x))
    }

    pub fn zeta(x: OperatorExpr) -> Self {
        OperatorExpr::Zeta(Box::new(x))
    }

    pub fn scalar(c: RadicalScalar) -> Self {
        OperatorExpr::Sum(vec![(c, OperatorExpr::Identity)])
    }

    pub fn scaled(self, c: RadicalScalar) -> Self {
        OperatorExpr::Sum(vec![(c, self)])
    }

    /// Product of the factors, flattening nested products.
    pub fn product<I: IntoIterator<Item = OperatorExpr>>(factors: I) -> Self {
        let mut flat = Vec::new();
        for f in factors {
            match f {
                OperatorExpr::Product(inner) => flat.extend(inner),
                OperatorExpr::Identity => {}
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => OperatorExpr::Identity,
            1 => flat.pop().expect("one factor"),
            _ => OperatorExpr::Product(flat),
        }
    }

    /// `t_w` for a word `w`, leftmost letter applied last.
    pub fn word(letters: &[Letter]) -> Self {
        Self::product(letters.iter().map(|&l| OperatorExpr::Gen(l)))
    }

    /// `R[n, m] = a_n* a_n ⋯ a_m* a_m`, the identity when `n > m`.
    pub fn r_block(n: u32, m: u32) -> Self {
        Self::product((n..=m).flat_map(|k| [Self::a(k).adjoint(), Self::a(k)]))
    }

    /// Structural adjoint: reverses products, distributes over sums, pushes
    /// through ρ and ζ, and cancels double stars.
    pub fn adjoint(&self) -> OperatorExpr {
        match self {
            OperatorExpr::Identity => OperatorExpr::Identity,
            OperatorExpr::Gen(_) => OperatorExpr::Adjoint(Box::new(self.clone())),
            OperatorExpr::Named(n) if n.is_self_adjoint() => self.clone(),
            OperatorExpr::Named(_) => OperatorExpr::Adjoint(Box::new(self.clone())),
            OperatorExpr::Adjoint(inner) => (**inner).clone(),
            OperatorExpr::Product(fs) => {
                OperatorExpr::Product(fs.iter().rev().map(OperatorExpr::adjoint).collect())
            }
            OperatorExpr::Sum(ts) => {
                OperatorExpr::Sum(ts.iter().map(|(c, e)| (c.clone(), e.adjoint())).collect())
            }
            OperatorExpr::Rho(x) => OperatorExpr::rho(x.adjoint()),
            OperatorExpr::Zeta(x) => OperatorExpr::zeta(x.adjoint()),
        }
    }

    /// Whether the expression involves an infinite series (`b`, `Y`, `F`, `ρ`).
    pub fn has_series(&self) -> bool {
        match self {
            OperatorExpr::Identity | OperatorExpr::Gen(_) => false,
            OperatorExpr::Named(n) => n.is_series(),
            OperatorExpr::Adjoint(x) | OperatorExpr::Zeta(x) => x.has_series(),
            OperatorExpr::Rho(_) => true,
            OperatorExpr::Product(fs) => fs.iter().any(OperatorExpr::has_series),
            OperatorExpr::Sum(ts) => ts.iter().any(|(_, e)| e.has_series()),
        }
    }

    fn is_atomic(&self) -> bool {
        !matches!(self, OperatorExpr::Product(_) | OperatorExpr::Sum(_))
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorExpr::Identity => write!(f, "I"),
            OperatorExpr::Gen(l) => write!(f, "t{}", l.digit()),
            OperatorExpr::Named(n) => write!(f, "{n}"),
            OperatorExpr::Adjoint(x) => write!(f, "{x}*"),
            OperatorExpr::Product(fs) => {
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    if x.is_atomic() {
                        write!(f, "{x}")?;
                    } else {
                        write!(f, "({x})")?;
                    }
                }
                Ok(())
            }
            OperatorExpr::Sum(ts) => {
                if ts.is_empty() {
                    return write!(f, "0");
                }
                let minus_one = RadicalScalar::from_integer(-1);
                for (i, (c, x)) in ts.iter().enumerate() {
                    let negated = *c == minus_one && *x != OperatorExpr::Identity;
                    match (i, negated) {
                        (0, true) => write!(f, "-")?,
                        (0, false) => {}
                        (_, true) => write!(f, " - ")?,
                        (_, false) => write!(f, " + ")?,
                    }
                    let body = if matches!(x, OperatorExpr::Sum(_)) {
                        format!("({x})")
                    } else {
                        x.to_string()
                    };
                    if c.is_one() || negated {
                        write!(f, "{body}")?;
                    } else if *x == OperatorExpr::Identity {
                        write!(f, "({c})")?;
                    } else {
                        write!(f, "({c}) {body}")?;
                    }
                }
                Ok(())
            }
            OperatorExpr::Rho(x) => write!(f, "rho({x})"),
            OperatorExpr::Zeta(x) => write!(f, "zeta({x})"),
        }
    }
}

impl Mul for OperatorExpr {
    type Output = OperatorExpr;
    fn mul(self, rhs: OperatorExpr) -> OperatorExpr {
        OperatorExpr::product([self, rhs])
    }
}

impl Add for OperatorExpr {
    type Output = OperatorExpr;
    fn add(self, rhs: OperatorExpr) -> OperatorExpr {
        let mut terms = Vec::new();
        for side in [self, rhs] {
            match side {
                OperatorExpr::Sum(ts) => terms.extend(ts),
                other => terms.push((RadicalScalar::one(), other)),
            }
        }
        OperatorExpr::Sum(terms)
    }
}

impl Neg for OperatorExpr {
    type Output = OperatorExpr;
    fn neg(self) -> OperatorExpr {
        match self {
            OperatorExpr::Sum(ts) => {
                OperatorExpr::Sum(ts.into_iter().map(|(c, e)| (-c, e)).collect())
            }
            other => other.scaled(RadicalScalar::from_integer(-1)),
        }
    }
}

impl Sub for OperatorExpr {
    type Output = OperatorExpr;
    fn sub(self, rhs: OperatorExpr) -> OperatorExpr {
        self + (-rhs)
    }
}
