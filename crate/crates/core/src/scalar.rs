//! Exact arithmetic in the field generated by the rationals and the square
//! roots of the positive integers.
//!
//! A [`RadicalScalar`] is a finite sum `Σ c_d · √d` over square-free radicands
//! `d`, with `d = 1` holding the rational part. Because the square roots of
//! distinct square-free integers are linearly independent over the rationals,
//! the term map is a canonical form and structural equality is value equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ScalarError;

/// Arbitrary-precision rational with a positive, coprime denominator.
pub type Rational = BigRational;

/// Exact element of `Q(√2, √3, √5, ...)`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct RadicalScalar {
    terms: BTreeMap<u128, Rational>,
}

/// Splits `m` into `(s, d)` with `m = s² · d` and `d` square-free.
pub fn square_free_split(mut m: u128) -> (u128, u128) {
    debug_assert!(m > 0);
    let mut square = 1u128;
    let mut free = 1u128;
    let mut p = 2u128;
    while p * p <= m {
        let mut count = 0u32;
        while m.is_multiple_of(p) {
            m /= p;
            count += 1;
        }
        square *= p.pow(count / 2);
        if count % 2 == 1 {
            free *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (square, free * m)
}

pub fn is_square_free(d: u128) -> bool {
    d > 0 && square_free_split(d).0 == 1
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// `√a · √b = g · √(ab / g²)` for square-free `a`, `b` with `g = gcd(a, b)`.
fn radical_product(a: u128, b: u128) -> (u128, u128) {
    let g = gcd_u128(a, b);
    let d = (a / g)
        .checked_mul(b / g)
        .expect("radicand exceeds 128 bits");
    (g, d)
}

impl RadicalScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::radical(1, q)
    }

    /// `coeff · √d` for square-free `d`.
    ///
    /// Panics if `d` is not square-free; use [`sqrt_int`] for arbitrary
    /// radicands.
    pub fn radical(d: u128, coeff: Rational) -> Self {
        assert!(is_square_free(d), "radicand {d} is not square-free");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(d, coeff);
        }
        Self { terms }
    }

    /// Builds a scalar from raw `(radicand, coeff)` pairs, merging repeated
    /// radicands and extracting square factors.
    pub fn from_terms<I>(pairs: I) -> Result<Self, ScalarError>
    where
        I: IntoIterator<Item = (u128, Rational)>,
    {
        let mut out = Self::zero();
        for (d, c) in pairs {
            if d == 0 {
                return Err(ScalarError::Domain(0));
            }
            let (s, free) = square_free_split(d);
            out.add_term(free, c * Rational::from_integer(BigInt::from(s)));
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The value as a rational, if it has no irrational part.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    /// Iterates `(radicand, coefficient)` pairs in ascending radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (u128, &Rational)> {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    fn add_term(&mut self, d: u128, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&d) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&d);
                }
            }
            None => {
                self.terms.insert(d, c);
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, c: &RadicalScalar, other: &RadicalScalar) {
        for (d1, c1) in &c.terms {
            for (d2, c2) in &other.terms {
                let (g, d) = radical_product(*d1, *d2);
                let coeff = c1 * c2 * Rational::from_integer(BigInt::from(g));
                self.add_term(d, coeff);
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(d, c)| c.to_f64().unwrap_or(f64::NAN) * (*d as f64).sqrt())
            .sum()
    }

    /// Canonical text form, with `sqrt(d)` or `√d` for the radicals.
    pub fn render(&self, unicode: bool) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (d, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let magnitude = c.abs();
            if *d == 1 {
                out.push_str(&render_rational(&magnitude));
                continue;
            }
            if !magnitude.is_one() {
                out.push_str(&render_rational(&magnitude));
                if !unicode {
                    out.push('*');
                }
            }
            if unicode {
                out.push_str(&format!("√{d}"));
            } else {
                out.push_str(&format!("sqrt({d})"));
            }
        }
        out
    }

    /// Whether the text form has more than one term, so that it needs
    /// parentheses when used as a multiplicative prefix.
    pub fn is_compound(&self) -> bool {
        self.terms.len() > 1
    }
}

pub(crate) fn render_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `√m` in canonical form.
pub fn sqrt_int(m: i64) -> Result<RadicalScalar, ScalarError> {
    if m <= 0 {
        return Err(ScalarError::Domain(m));
    }
    let (s, d) = square_free_split(m as u128);
    Ok(RadicalScalar::radical(
        d,
        Rational::from_integer(BigInt::from(s)),
    ))
}

impl fmt::Display for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl fmt::Debug for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RadicalScalar({self})")
    }
}

impl From<i64> for RadicalScalar {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<Rational> for RadicalScalar {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl AddAssign<&RadicalScalar> for RadicalScalar {
    fn add_assign(&mut self, rhs: &RadicalScalar) {
        for (d, c) in &rhs.terms {
            self.add_term(*d, c.clone());
        }
    }
}

impl Add<&RadicalScalar> for &RadicalScalar {
    type Output = RadicalScalar;
    fn add(self, rhs: &RadicalScalar) -> RadicalScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for RadicalScalar {
    type Output = RadicalScalar;
    fn add(mut self, rhs: RadicalScalar) -> RadicalScalar {
        self += &rhs;
        self
    }
}

impl Neg for &RadicalScalar {
    type Output = RadicalScalar;
    fn neg(self) -> RadicalScalar {
        RadicalScalar {
            terms: self.terms.iter().map(|(d, c)| (*d, -c)).collect(),
        }
    }
}

impl Neg for RadicalScalar {
    type Output = RadicalScalar;
    fn neg(self) -> RadicalScalar {
        -&self
    }
}

impl Sub<&RadicalScalar> for &RadicalScalar {
    type Output = RadicalScalar;
    fn sub(self, rhs: &RadicalScalar) -> RadicalScalar {
        self + &(-rhs)
    }
}

impl Sub for RadicalScalar {
    type Output = RadicalScalar;
    fn sub(self, rhs: RadicalScalar) -> RadicalScalar {
        &self - &rhs
    }
}

impl Mul<&RadicalScalar> for &RadicalScalar {
    type Output = RadicalScalar;
    fn mul(self, rhs: &RadicalScalar) -> RadicalScalar {
        let mut out = RadicalScalar::zero();
        out.add_scaled(self, rhs);
        out
    }
}

impl Mul for RadicalScalar {
    type Output = RadicalScalar;
    fn mul(self, rhs: RadicalScalar) -> RadicalScalar {
        &self * &rhs
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    radicand: u128,
    coeff: String,
}

impl Serialize for RadicalScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(d, c)| TermJson {
                radicand: *d,
                coeff: render_rational(c),
            })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RadicalScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<TermJson>::deserialize(deserializer)?;
        let mut pairs = Vec::with_capacity(raw.len());
        for t in raw {
            let q = parse_rational(&t.coeff).map_err(D::Error::custom)?;
            pairs.push((t.radicand, q));
        }
        RadicalScalar::from_terms(pairs).map_err(D::Error::custom)
    }
}

/// Parses `p` or `p/q` with an optional leading sign.
pub fn parse_rational(text: &str) -> Result<Rational, ScalarError> {
    let bad = || ScalarError::BadRational(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}
