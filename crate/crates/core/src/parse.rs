//! Text grammars for scalars, basis labels, state vectors and operator
//! expressions.
//!
//! Expressions: atoms `t1`, `t2`, `s(n)`, `a(n)`, `psi(p/2)`, `b(n)`, `W(n)`,
//! `X(n)`, `Y`, `F(n)`, `I`, scalars `p/q` and `sqrt(m)`, `rho(e)`, `zeta(e)`
//! and parentheses. Postfix `*` is the adjoint and binds tightest; products are
//! written by juxtaposition or `.`; sums use `+` and `-`.
//!
//! States: terms `coeff*|u;k>` joined by `+`/`-`, where the ket may also be
//! `|c:u;k>` for component `c`, `vac` or `vac(k)`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::ParseError;
use crate::expr::{HalfInt, NamedKind, OperatorExpr};
use crate::rep::{BasisLabel, Letter, RepSpec, Word};
use crate::scalar::{sqrt_int, RadicalScalar, Rational};
use crate::state::StateVector;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Gen(Letter),
    Ket(String),
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Dot,
    Slash,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn lex(input: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'.' => Tok::Dot,
            b'/' => Tok::Slash,
            b'|' => {
                let close = input[i..]
                    .find('>')
                    .ok_or_else(|| ParseError::new(i, "unterminated ket, expected `>`"))?;
                let body = input[i + 1..i + close].to_string();
                i += close + 1;
                out.push(Token {
                    tok: Tok::Ket(body),
                    pos: start,
                });
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = input[start..i].parse().expect("digits");
                out.push(Token {
                    tok: Tok::Int(n),
                    pos: start,
                });
                continue;
            }
            b't' if matches!(bytes.get(i + 1), Some(b'1' | b'2')) => {
                let letter = if bytes[i + 1] == b'1' {
                    Letter::One
                } else {
                    Letter::Two
                };
                i += 2;
                out.push(Token {
                    tok: Tok::Gen(letter),
                    pos: start,
                });
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(input[start..i].to_string()),
                    pos: start,
                });
                continue;
            }
            _ => {
                let ch = input[i..].chars().next().expect("in bounds");
                return Err(ParseError::new(i, format!("unexpected character `{ch}`")));
            }
        };
        i += 1;
        out.push(Token { tok, pos: start });
    }
    out.push(Token {
        tok: Tok::End,
        pos: input.len(),
    });
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    at: usize,
    rep: Option<&'a Arc<RepSpec>>,
}

impl<'a> Parser<'a> {
    fn new(input: &str, rep: Option<&'a Arc<RepSpec>>) -> Result<Self, ParseError> {
        Ok(Self {
            tokens: lex(input)?,
            at: 0,
            rep,
        })
    }

    fn peek(&self) -> &Tok {
        &self.tokens[self.at].tok
    }

    fn pos(&self) -> usize {
        self.tokens[self.at].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(ParseError::new(self.pos(), format!("expected {what}")))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(ParseError::new(self.pos(), "unexpected trailing input"))
        }
    }

    fn int(&mut self) -> Result<(BigInt, usize), ParseError> {
        let pos = self.pos();
        match self.bump().tok {
            Tok::Int(n) => Ok((n, pos)),
            _ => Err(ParseError::new(pos, "expected an integer")),
        }
    }

    fn small_int(&mut self) -> Result<(i64, usize), ParseError> {
        let (n, pos) = self.int()?;
        let n = n
            .to_i64()
            .ok_or_else(|| ParseError::new(pos, "integer too large"))?;
        Ok((n, pos))
    }

    fn paren_index(&mut self) -> Result<(i64, usize), ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        let (n, pos) = self.small_int()?;
        self.expect(Tok::RParen, "`)`")?;
        Ok((n, pos))
    }

    /// `p` or `p/q` starting at an integer token.
    fn rational(&mut self) -> Result<Rational, ParseError> {
        let (num, _) = self.int()?;
        if *self.peek() == Tok::Slash {
            self.bump();
            let (den, pos) = self.int()?;
            if den.is_zero() {
                return Err(ParseError::new(pos, "zero denominator"));
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }

    fn sqrt_call(&mut self) -> Result<RadicalScalar, ParseError> {
        let (m, pos) = self.paren_index()?;
        sqrt_int(m).map_err(|e| ParseError::new(pos, e.to_string()))
    }

    // ---- scalars -------------------------------------------------------

    fn scalar_sum(&mut self) -> Result<RadicalScalar, ParseError> {
        let mut acc = RadicalScalar::zero();
        let mut sign = self.sign();
        loop {
            let term = self.scalar_term()?;
            acc += &(&RadicalScalar::from_integer(sign) * &term);
            match self.peek() {
                Tok::Plus => sign = 1,
                Tok::Minus => sign = -1,
                _ => return Ok(acc),
            }
            self.bump();
        }
    }

    fn sign(&mut self) -> i64 {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                -1
            }
            Tok::Plus => {
                self.bump();
                1
            }
            _ => 1,
        }
    }

    fn scalar_term(&mut self) -> Result<RadicalScalar, ParseError> {
        let mut acc = self.scalar_atom()?;
        while *self.peek() == Tok::Star && self.starts_scalar_at(self.at + 1) {
            self.bump();
            acc = &acc * &self.scalar_atom()?;
        }
        Ok(acc)
    }

    fn starts_scalar_at(&self, idx: usize) -> bool {
        match &self.tokens[idx].tok {
            Tok::Int(_) | Tok::LParen => true,
            Tok::Ident(s) => s == "sqrt",
            _ => false,
        }
    }

    fn scalar_atom(&mut self) -> Result<RadicalScalar, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(_) => Ok(RadicalScalar::from_rational(self.rational()?)),
            Tok::Ident(s) if s == "sqrt" => {
                self.bump();
                self.sqrt_call()
            }
            Tok::LParen => {
                self.bump();
                let v = self.scalar_sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(v)
            }
            _ => Err(ParseError::new(pos, "expected a scalar")),
        }
    }

    // ---- states --------------------------------------------------------

    fn rep(&self) -> &'a Arc<RepSpec> {
        self.rep.expect("state parsing needs a representation")
    }

    fn state(&mut self) -> Result<StateVector, ParseError> {
        let rep = self.rep();
        let mut out = StateVector::zero(rep);
        if let Tok::Int(n) = self.peek() {
            if n.is_zero() && self.tokens[self.at + 1].tok == Tok::End {
                self.bump();
                return Ok(out);
            }
        }
        let mut sign = self.sign();
        loop {
            let (coeff, label) = self.state_term()?;
            out.add_label(&(&RadicalScalar::from_integer(sign) * &coeff), label);
            match self.peek() {
                Tok::Plus => sign = 1,
                Tok::Minus => sign = -1,
                _ => return Ok(out),
            }
            self.bump();
        }
    }

    fn state_term(&mut self) -> Result<(RadicalScalar, BasisLabel), ParseError> {
        let mut coeff = RadicalScalar::one();
        if self.starts_scalar_at(self.at) {
            coeff = self.scalar_term()?;
            if *self.peek() == Tok::Star {
                self.bump();
            }
        }
        let label = self.ket()?;
        Ok((coeff, label))
    }

    fn ket(&mut self) -> Result<BasisLabel, ParseError> {
        let rep = self.rep();
        let pos = self.pos();
        match self.bump().tok {
            Tok::Ket(body) => label_body(rep, &body, pos + 1),
            Tok::Ident(s) if s == "vac" => {
                let mut node = 0;
                if *self.peek() == Tok::LParen {
                    let (k, kpos) = self.paren_index()?;
                    node = usize::try_from(k)
                        .map_err(|_| ParseError::new(kpos, "node must be non-negative"))?;
                    let len = rep.cycle_len(0);
                    if node >= len {
                        return Err(ParseError::new(
                            kpos,
                            format!("node {node} out of range for cycle of length {len}"),
                        ));
                    }
                }
                Ok(rep.cycle_vector(0, node))
            }
            _ => Err(ParseError::new(pos, "expected a ket `|u;k>` or `vac`")),
        }
    }

    // ---- operator expressions -----------------------------------------

    fn expr_sum(&mut self) -> Result<OperatorExpr, ParseError> {
        let mut terms: Vec<(RadicalScalar, OperatorExpr)> = Vec::new();
        let mut sign = self.sign();
        loop {
            let (c, e) = self.expr_term()?;
            terms.push((&RadicalScalar::from_integer(sign) * &c, e));
            match self.peek() {
                Tok::Plus => sign = 1,
                Tok::Minus => sign = -1,
                _ => break,
            }
            self.bump();
        }
        if terms.len() == 1 && terms[0].0.is_one() {
            return Ok(terms.pop().expect("one term").1);
        }
        Ok(OperatorExpr::Sum(terms))
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Int(_) | Tok::Ident(_) | Tok::Gen(_) | Tok::LParen
        )
    }

    /// A product, with pure scalar factors pulled out front.
    fn expr_term(&mut self) -> Result<(RadicalScalar, OperatorExpr), ParseError> {
        let mut coeff = RadicalScalar::one();
        let mut factors = Vec::new();
        loop {
            match self.expr_factor()? {
                Factor::Scalar(c) => coeff = &coeff * &c,
                Factor::Op(e) => factors.push(e),
            }
            if *self.peek() == Tok::Dot {
                self.bump();
                continue;
            }
            if !self.starts_factor() {
                break;
            }
        }
        Ok((coeff, OperatorExpr::product(factors)))
    }

    fn expr_factor(&mut self) -> Result<Factor, ParseError> {
        let mut f = self.expr_atom()?;
        while *self.peek() == Tok::Star {
            self.bump();
            f = match f {
                Factor::Scalar(c) => Factor::Scalar(c),
                Factor::Op(e) => Factor::Op(e.adjoint()),
            };
        }
        Ok(f)
    }

    fn named(&mut self, kind: NamedKind) -> Result<OperatorExpr, ParseError> {
        let (n, pos) = self.paren_index()?;
        OperatorExpr::build_named(kind, n).map_err(|e| ParseError::new(pos, e.to_string()))
    }

    fn expr_atom(&mut self) -> Result<Factor, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(_) => Ok(Factor::Scalar(RadicalScalar::from_rational(
                self.rational()?,
            ))),
            Tok::Gen(l) => {
                self.bump();
                Ok(Factor::Op(OperatorExpr::gen(l)))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr_sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(match scalar_value(&e) {
                    Some(c) => Factor::Scalar(c),
                    None => Factor::Op(e),
                })
            }
            Tok::Ident(name) => {
                self.bump();
                let op = match name.as_str() {
                    "sqrt" => return Ok(Factor::Scalar(self.sqrt_call()?)),
                    "I" => OperatorExpr::Identity,
                    "Y" => OperatorExpr::y(),
                    "s" => self.named(NamedKind::S)?,
                    "a" => self.named(NamedKind::A)?,
                    "b" => self.named(NamedKind::B)?,
                    "W" => self.named(NamedKind::W)?,
                    "X" => self.named(NamedKind::X)?,
                    "F" => self.named(NamedKind::F)?,
                    "psi" => self.psi()?,
                    "rho" | "zeta" => {
                        self.expect(Tok::LParen, "`(`")?;
                        let inner = self.expr_sum()?;
                        self.expect(Tok::RParen, "`)`")?;
                        if name == "rho" {
                            OperatorExpr::rho(inner)
                        } else {
                            OperatorExpr::zeta(inner)
                        }
                    }
                    _ => return Err(ParseError::new(pos, format!("unknown name `{name}`"))),
                };
                Ok(Factor::Op(op))
            }
            _ => Err(ParseError::new(pos, "expected an operator or scalar")),
        }
    }

    fn psi(&mut self) -> Result<OperatorExpr, ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        let pos = self.pos();
        let sign = self.sign();
        let (p, _) = self.small_int()?;
        self.expect(Tok::Slash, "`/` in half-integer index p/2")?;
        let (q, qpos) = self.small_int()?;
        if q != 2 {
            return Err(ParseError::new(qpos, "psi index must have denominator 2"));
        }
        self.expect(Tok::RParen, "`)`")?;
        let k = HalfInt::new(sign * p).map_err(|e| ParseError::new(pos, e.to_string()))?;
        Ok(OperatorExpr::psi(k))
    }
}

enum Factor {
    Scalar(RadicalScalar),
    Op(OperatorExpr),
}

/// `Some(c)` when the expression is the scalar `c · I`.
fn scalar_value(e: &OperatorExpr) -> Option<RadicalScalar> {
    match e {
        OperatorExpr::Identity => Some(RadicalScalar::one()),
        OperatorExpr::Sum(ts) => {
            let mut acc = RadicalScalar::zero();
            for (c, t) in ts {
                acc += &(c * &scalar_value(t)?);
            }
            Some(acc)
        }
        _ => None,
    }
}

/// Parses the inside of a ket: `u;k` or `c:u;k`. `offset` is the byte
/// position of the body within the enclosing input.
fn label_body(rep: &RepSpec, body: &str, offset: usize) -> Result<BasisLabel, ParseError> {
    let (component, rest, rest_off) = match body.split_once(':') {
        Some((c, rest)) => {
            let c: usize = c
                .trim()
                .parse()
                .map_err(|_| ParseError::new(offset, "bad component index"))?;
            (c, rest, offset + body.find(':').expect("colon") + 1)
        }
        None => (0, body, offset),
    };
    if component >= rep.components().len() {
        return Err(ParseError::new(
            offset,
            format!("component {component} does not exist"),
        ));
    }
    let (word, node) = rest
        .split_once(';')
        .ok_or_else(|| ParseError::new(rest_off, "expected `u;k` inside ket"))?;
    let word: Word = word
        .trim()
        .parse()
        .map_err(|c| ParseError::new(rest_off, format!("invalid letter `{c}` in ket word")))?;
    let node_off = rest_off + rest.find(';').expect("semicolon") + 1;
    let node: usize = node
        .trim()
        .parse()
        .map_err(|_| ParseError::new(node_off, "bad node index"))?;
    let len = rep.cycle_len(component);
    if node >= len {
        return Err(ParseError::new(
            node_off,
            format!("node {node} out of range for cycle of length {len}"),
        ));
    }
    Ok(rep.normalize_label(component, word, node))
}

/// Parses a single ket such as `|212;0>`, `|1:2;0>` or `vac(1)`.
pub fn parse_label(rep: &Arc<RepSpec>, text: &str) -> Result<BasisLabel, ParseError> {
    let mut p = Parser::new(text, Some(rep))?;
    let label = p.ket()?;
    p.finish()?;
    Ok(label)
}

pub fn parse_state(rep: &Arc<RepSpec>, text: &str) -> Result<StateVector, ParseError> {
    let mut p = Parser::new(text, Some(rep))?;
    let v = p.state()?;
    p.finish()?;
    Ok(v)
}

pub fn parse_expr(text: &str) -> Result<OperatorExpr, ParseError> {
    let mut p = Parser::new(text, None)?;
    let e = p.expr_sum()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_scalar(text: &str) -> Result<RadicalScalar, ParseError> {
    let mut p = Parser::new(text, None)?;
    let v = p.scalar_sum()?;
    p.finish()?;
    Ok(v)
}

impl std::str::FromStr for RadicalScalar {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_scalar(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::apply;

    fn p1() -> Arc<RepSpec> {
        Arc::new(RepSpec::p1())
    }

    #[test]
    fn scalars() {
        let x = parse_scalar("1/2 - 3/4*sqrt(6) + sqrt(8)").unwrap();
        assert_eq!(x.to_string(), "1/2 + 2*sqrt(2) - 3/4*sqrt(6)");
        assert_eq!(parse_scalar(&x.to_string()).unwrap(), x);
        assert!(parse_scalar("sqrt(0)").is_err());
        assert!(parse_scalar("1/0").is_err());
    }

    #[test]
    fn labels() {
        let rep = p1();
        let l = parse_label(&rep, "|212;0>").unwrap();
        assert_eq!(l.word.to_string(), "212");
        // non-normal words are normalized
        assert_eq!(parse_label(&rep, "|21;0>").unwrap().word.to_string(), "2");
        assert_eq!(parse_label(&rep, "vac").unwrap(), rep.vacuum());
        let p12 = Arc::new(RepSpec::p12());
        assert_eq!(parse_label(&p12, "|;1>").unwrap(), p12.cycle_vector(0, 1));
        assert_eq!(parse_label(&p12, "vac(1)").unwrap(), p12.cycle_vector(0, 1));
        let err = parse_label(&p12, "|1;5>").unwrap_err();
        assert_eq!(err.position, 3);
        let sum = Arc::new("1+12".parse::<RepSpec>().unwrap());
        let l = parse_label(&sum, "|1:2;1>").unwrap();
        assert_eq!((l.component, l.node), (1, 1));
    }

    #[test]
    fn states_round_trip() {
        let rep = p1();
        let v = parse_state(
            &rep,
            "vac - sqrt(2)*|12;0> + (1 + sqrt(3))*|2;0> + 1/2|22;0>",
        )
        .unwrap();
        let text = v.render(false);
        assert_eq!(parse_state(&rep, &text).unwrap(), v);
        let json = serde_json::to_string(&v.to_json()).unwrap();
        let back: crate::state::StateJson = serde_json::from_str(&json).unwrap();
        assert_eq!(StateVector::from_json(&rep, &back).unwrap(), v);
        assert!(parse_state(&rep, "0").unwrap().is_zero());
    }

    #[test]
    fn expression_precedence() {
        let e = parse_expr("t1 t2* + a(1)").unwrap();
        let expected = OperatorExpr::t1() * OperatorExpr::t2().adjoint() + OperatorExpr::a(1);
        assert_eq!(e, expected);
        let e = parse_expr("(t1 t2)*").unwrap();
        assert_eq!(
            e,
            OperatorExpr::t2().adjoint() * OperatorExpr::t1().adjoint()
        );
        let e = parse_expr("b(1)*").unwrap();
        assert_eq!(e, OperatorExpr::b(1).adjoint());
        let e = parse_expr("t1t1t2*t1* - t2t1t2*t2*").unwrap();
        let rep = p1();
        for x in rep.enumerate_basis(4) {
            let v = StateVector::basis(&rep, x);
            assert_eq!(apply(&e, &v), apply(&OperatorExpr::a(2), &v));
        }
    }

    #[test]
    fn named_atoms() {
        assert_eq!(parse_expr("psi(-1/2)").unwrap().to_string(), "psi(-1/2)");
        assert_eq!(
            parse_expr("rho(F(1))").unwrap(),
            OperatorExpr::rho(OperatorExpr::f(1))
        );
        assert_eq!(
            parse_expr("W(0).X(2)").unwrap(),
            OperatorExpr::w(0) * OperatorExpr::x(2)
        );
        assert_eq!(parse_expr("I").unwrap(), OperatorExpr::Identity);
    }

    #[test]
    fn scalar_factors() {
        let e = parse_expr("sqrt(2)*t1 - 1/2 t2").unwrap();
        assert_eq!(
            e,
            OperatorExpr::Sum(vec![
                (sqrt_int(2).unwrap(), OperatorExpr::t1()),
                (parse_scalar("-1/2").unwrap(), OperatorExpr::t2()),
            ])
        );
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_expr("a(0)").unwrap_err();
        assert_eq!(err.position, 2);
        let err = parse_expr("t1 + foo").unwrap_err();
        assert_eq!(err.position, 5);
        let err = parse_expr("psi(1/3)").unwrap_err();
        assert_eq!(err.position, 6);
        let err = parse_expr("t1 )").unwrap_err();
        assert_eq!(err.position, 3);
        assert!(err.annotate("t1 )").contains("   ^"));
    }

    #[test]
    fn display_reparses() {
        for text in [
            "b(1) b(1)*",
            "rho(t2*) F(2)",
            "zeta(a(1)) + (-1) a(2)",
            "psi(3/2)* X(1)",
        ] {
            let e = parse_expr(text).unwrap();
            assert_eq!(parse_expr(&e.to_string()).unwrap(), e, "{text}");
        }
    }
}
