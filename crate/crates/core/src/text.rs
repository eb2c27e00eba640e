//! Small expression reader shared by the polynomial, scalar and algebra
//! text formats.
//!
//! Grammar: sums and differences of products of factors, where a factor is
//! a rational literal, an identifier, or a parenthesized expression,
//! optionally raised to a non-negative integer power. Juxtaposition is not
//! multiplication; write `2*h`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::Rational;

/// A ring in which parsed expressions are evaluated.
pub trait ExprRing {
    type Elem: Clone;
    fn constant(&self, c: Rational) -> Self::Elem;
    fn variable(&self, name: &str) -> Result<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn pow(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        let mut acc = self.constant(Rational::from_integer(1.into()));
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
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
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' | '\u{2212}' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                out.push(Tok::Num(lit.parse().expect("digits")));
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'r, R: ExprRing> {
    ring: &'r R,
    toks: Vec<Tok>,
    pos: usize,
}

impl<R: ExprRing> Parser<'_, R> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<R::Elem> {
        let mut neg = false;
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            neg = true;
        } else if self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
        }
        let first = self.term()?;
        let mut acc = if neg { self.ring.neg(&first) } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.ring.add(&acc, &t);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.ring.add(&acc, &self.ring.neg(&t));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<R::Elem> {
        let mut acc = self.power()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let f = self.power()?;
            acc = self.ring.mul(&acc, &f);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<R::Elem> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Tok::Num(e)) => {
                    let e: u32 = e
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    return Ok(self.ring.pow(&base, e));
                }
                other => return Err(Error::Parse(format!("expected exponent, found {other:?}"))),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<R::Elem> {
        match self.next() {
            Some(Tok::Num(n)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.next() {
                        Some(Tok::Num(d)) if !d.is_zero() => {
                            Ok(self.ring.constant(Rational::new(n, d)))
                        }
                        Some(Tok::Num(_)) => Err(Error::DivisionByZero),
                        other => Err(Error::Parse(format!("expected denominator, found {other:?}"))),
                    }
                } else {
                    Ok(self.ring.constant(Rational::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) => self.ring.variable(&name),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    other => Err(Error::Parse(format!("expected ')', found {other:?}"))),
                }
            }
            Some(Tok::Minus) => {
                let e = self.power()?;
                Ok(self.ring.neg(&e))
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses `s` and evaluates it in `ring`.
pub fn parse_expr<R: ExprRing>(ring: &R, s: &str) -> Result<R::Elem> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { ring, toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!(
            "trailing input after position {} in {s:?}",
            p.pos
        )));
    }
    Ok(e)
}

struct RationalPolys<'a> {
    var: &'a str,
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

impl ExprRing for RationalPolys<'_> {
    type Elem = Vec<Rational>;

    fn constant(&self, c: Rational) -> Vec<Rational> {
        trim(vec![c])
    }

    fn variable(&self, name: &str) -> Result<Vec<Rational>> {
        if name == self.var {
            Ok(vec![Rational::zero(), Rational::from_integer(1.into())])
        } else {
            Err(Error::Parse(format!(
                "unknown variable {name:?} (expected {:?})",
                self.var
            )))
        }
    }

    fn add(&self, a: &Vec<Rational>, b: &Vec<Rational>) -> Vec<Rational> {
        let n = a.len().max(b.len());
        let z = Rational::zero();
        trim(
            (0..n)
                .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    fn neg(&self, a: &Vec<Rational>) -> Vec<Rational> {
        a.iter().map(|c| -c).collect()
    }

    fn mul(&self, a: &Vec<Rational>, b: &Vec<Rational>) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }
}

/// Ascending rational coefficients of a univariate expression in `var`.
pub fn parse_univariate(s: &str, var: &str) -> Result<Vec<Rational>> {
    parse_expr(&RationalPolys { var }, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::{int, rat};

    #[test]
    fn polynomial_forms() {
        assert_eq!(
            parse_univariate("h^2 - 3/2*h + 1", "h").unwrap(),
            vec![int(1), rat(-3, 2), int(1)]
        );
        assert_eq!(
            parse_univariate("-(h+1/2)^2", "h").unwrap(),
            vec![rat(-1, 4), int(-1), int(-1)]
        );
        assert_eq!(
            parse_univariate("1 - h*(h+1)", "h").unwrap(),
            vec![int(1), int(-1), int(-1)]
        );
        assert_eq!(parse_univariate("0", "h").unwrap(), Vec::<Rational>::new());
    }

    #[test]
    fn errors() {
        assert!(parse_univariate("h +", "h").is_err());
        assert!(parse_univariate("x", "h").is_err());
        assert!(parse_univariate("h)", "h").is_err());
        assert_eq!(parse_univariate("1/0", "h"), Err(Error::DivisionByZero));
        assert!(parse_univariate("", "h").is_err());
    }
}
