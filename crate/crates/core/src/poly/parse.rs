//! Precedence-climbing parser for polynomial expressions.
//!
//! Grammar, loosest first: `+ -`, then `* /`, then unary `-`, then `^` with a
//! non-negative integer literal exponent. Division is only by nonzero
//! constants. Juxtaposition (`2x`) is rejected.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{PolyRing, Polynomial};
use crate::coeffs::Field;
use crate::error::{Error, ParseError, Result};

/// Identifiers bound to rational constants, e.g. the parameters of a family.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Bindings {
    values: BTreeMap<String, BigRational>,
}

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(&mut self, name: impl Into<String>, value: BigRational) -> &mut Self {
        self.values.insert(name.into(), value);
        self
    }

    pub fn get(&self, name: &str) -> Option<&BigRational> {
        self.values.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &BigRational)> {
        self.values.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'.' || bytes[i].is_ascii_alphabetic()) {
                    return Err(ParseError::new(i, "malformed number"));
                }
                out.push((start, Tok::Num(text[start..i].parse().expect("digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            other => {
                return Err(ParseError::new(
                    i,
                    format!("unexpected character `{other}`"),
                ))
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a, F: Field> {
    ring: &'a PolyRing<F>,
    bindings: &'a Bindings,
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl<F: Field> Parser<'_, F> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        ParseError::new(self.offset(), msg).into()
    }

    fn expr(&mut self) -> Result<Polynomial<F::Elem>> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.ring.add(&acc, &rhs);
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.ring.sub(&acc, &rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<F::Elem>> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = self.ring.mul(&acc, &rhs);
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.offset();
                    let rhs = self.unary()?;
                    let field = self.ring.field();
                    let divisor = match rhs.terms() {
                        [(m, c)] if m.is_one() => c.clone(),
                        [] => return Err(ParseError::new(at, "division by zero").into()),
                        _ => return Err(ParseError::new(at, "division by a non-constant").into()),
                    };
                    let inv = field
                        .inv(&divisor)
                        .map_err(|_| ParseError::new(at, "division by zero"))?;
                    acc = self.ring.scale(&acc, &inv);
                }
                Tok::Num(_) | Tok::Ident(_) | Tok::LParen => {
                    return Err(self.err("implicit multiplication; write `*`"))
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial<F::Elem>> {
        if *self.peek() == Tok::Minus {
            self.bump();
            let inner = self.unary()?;
            return Ok(self.ring.neg(&inner));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial<F::Elem>> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.bump() {
            Tok::Num(n) => {
                let k: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                if *self.peek() == Tok::Caret {
                    return Err(self.err("chained `^` is ambiguous; use parentheses"));
                }
                Ok(self.ring.pow(&base, k))
            }
            Tok::Minus => {
                Err(ParseError::new(self.toks[self.pos - 1].0, "negative exponent").into())
            }
            _ => Err(ParseError::new(
                self.toks[self.pos - 1].0,
                "exponent must be a non-negative integer literal",
            )
            .into()),
        }
    }

    fn atom(&mut self) -> Result<Polynomial<F::Elem>> {
        let at = self.offset();
        match self.bump() {
            Tok::Num(n) => Ok(self.ring.constant(self.ring.field().from_bigint(&n))),
            Tok::Ident(name) => {
                if let Some(i) = self.ring.var_index(&name) {
                    Ok(self.ring.var(i))
                } else if let Some(v) = self.bindings.get(&name) {
                    let c = self
                        .ring
                        .field()
                        .from_ratio(v.numer(), v.denom())
                        .map_err(|e| ParseError::new(at, format!("parameter `{name}`: {e}")))?;
                    Ok(self.ring.constant(c))
                } else {
                    Err(ParseError::new(at, format!("unknown identifier `{name}`")).into())
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.err("expected `)`"));
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => Err(ParseError::new(at, "unexpected end of input").into()),
            t => Err(ParseError::new(at, format!("unexpected token {t:?}")).into()),
        }
    }
}

pub(super) fn parse<F: Field>(
    ring: &PolyRing<F>,
    text: &str,
    bindings: &Bindings,
) -> Result<Polynomial<F::Elem>> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        ring,
        bindings,
        toks,
        pos: 0,
    };
    if *p.peek() == Tok::End {
        return Err(p.err("empty expression"));
    }
    let result = p.expr()?;
    match p.peek() {
        Tok::End => Ok(result),
        Tok::RParen => Err(p.err("unbalanced `)`")),
        _ => Err(p.err("unexpected trailing input")),
    }
}

/// Parses a decimal or `a/b` rational literal, as used for parameter values.
pub fn parse_rational(text: &str) -> Result<BigRational, ParseError> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| ParseError::new(0, format!("invalid rational `{text}`")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| ParseError::new(0, format!("invalid rational `{text}`")))?;
    if den.is_zero() {
        return Err(ParseError::new(0, "zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{PrimeField, Rationals};
    use crate::poly::Monomial;

    fn ring() -> PolyRing<Rationals> {
        PolyRing::grevlex(Rationals, &["x", "y", "z"]).unwrap()
    }

    fn pos(text: &str) -> usize {
        match ring().parse(text) {
            Err(Error::Parse(e)) => e.position,
            other => panic!("expected parse error for {text:?}, got {other:?}"),
        }
    }

    #[test]
    fn precedence() {
        let r = ring();
        assert_eq!(r.parse("-x^2").unwrap(), r.neg(&r.parse("x*x").unwrap()));
        assert_eq!(
            r.parse("2*x^2*y").unwrap(),
            r.parse("2 * (x^2) * y").unwrap()
        );
        assert_eq!(
            r.parse("x - y - z").unwrap(),
            r.parse("x - (y + z)").unwrap()
        );
        assert_eq!(r.parse("(x+1)/2").unwrap(), r.parse("1/2*x + 1/2").unwrap());
        assert_eq!(r.parse("--x").unwrap(), r.var(0));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(pos("x^2 + * y"), 6);
        assert_eq!(pos("x^y"), 2);
        assert_eq!(pos("x^-1"), 2);
        assert_eq!(pos("2x"), 1);
        assert_eq!(pos("x y"), 2);
        assert_eq!(pos("(x + y"), 6);
        assert_eq!(pos("x + y)"), 5);
        assert_eq!(pos("x / y"), 4);
        assert_eq!(pos("x / 0"), 4);
        assert_eq!(pos("w + 1"), 0);
        assert_eq!(pos("x # 1"), 2);
        assert_eq!(pos(""), 0);
        assert_eq!(pos("x^2^3"), 3);
        assert_eq!(pos("x^1.5"), 3);
    }

    #[test]
    fn bindings_instantiate_parameters() {
        let r = PolyRing::grevlex(PrimeField::new(32003).unwrap(), &["x", "y"]).unwrap();
        let mut b = Bindings::new();
        b.bind("t", parse_rational("1/2").unwrap());
        let p = r.parse_with("t*x + y", &b).unwrap();
        let half = r.field().from_ratio(&1.into(), &2.into()).unwrap();
        assert_eq!(p.terms()[0], (Monomial::var(0, 1), half));
        assert!(r.parse("t*x").is_err());
    }

    #[test]
    fn rational_literals() {
        assert_eq!(
            parse_rational("-3/6").unwrap(),
            BigRational::new((-1).into(), 2.into())
        );
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }
}
