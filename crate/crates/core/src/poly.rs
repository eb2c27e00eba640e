//! Univariate polynomials in `h` over exact scalars, and the shift
//! automorphism `sigma(h) = h - h0`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{cyclotomic_coeffs, Rational, Scalar};
use crate::text::{parse_expr, ExprRing};

/// Dense polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `h`.
    pub fn var() -> Self {
        Self::monomial(Scalar::one(), 1)
    }

    pub fn monomial(c: Scalar, k: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_rationals(coeffs: Vec<Rational>) -> Self {
        Self::from_coeffs(coeffs.into_iter().map(Scalar::Rat).collect())
    }

    /// Shorthand for integer coefficient lists, ascending.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Scalar::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    /// Coefficient of `h^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    /// Largest cyclotomic order among the coefficients (1 if all rational).
    pub fn field_order(&self) -> u32 {
        self.coeffs.iter().map(Scalar::order).max().unwrap_or(1)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(|c| c.as_rational().is_some())
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Scalar::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// `p(alpha*h + beta)`.
    pub fn substitute_linear(&self, alpha: &Scalar, beta: &Scalar) -> Poly {
        if self.coeffs.len() <= 1 {
            return self.clone();
        }
        let n = self.coeffs.len();
        // Horner with an explicit coefficient buffer
        let mut acc: Vec<Scalar> = Vec::with_capacity(n);
        for c in self.coeffs.iter().rev() {
            // acc <- acc * (alpha h + beta) + c
            let mut next = vec![Scalar::zero(); acc.len() + 1];
            for (i, a) in acc.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                next[i + 1] += &(a * alpha);
                next[i] += &(a * beta);
            }
            next[0] += c;
            acc = next;
        }
        Poly::from_coeffs(acc)
    }

    /// `p(q(h))`.
    pub fn compose(&self, q: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Poly::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division; errors on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dl = d.lead().ok_or(Error::DivisionByZero)?;
        let dn = d.coeffs.len();
        if self.coeffs.len() < dn {
            return Ok((Poly::zero(), self.clone()));
        }
        let inv = dl.inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Scalar::zero(); rem.len() - dn + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dn - 1] * &inv;
            if c.is_zero() {
                continue;
            }
            for (i, x) in d.coeffs.iter().enumerate() {
                let t = &c * x;
                rem[k + i] -= &t;
            }
            quot[k] = c;
        }
        rem.truncate(dn - 1);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other
            .div_rem(self)
            .map(|(_, r)| r.is_zero())
            .unwrap_or(other.is_zero())
    }

    /// Text form with the given variable name, descending degree, e.g.
    /// `h^2 - 3/2*h + 1`.
    pub fn format_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = match c {
                Scalar::Rat(r) if *r < Rational::zero() => (true, Scalar::Rat(-r)),
                _ => (false, c.clone()),
            };
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let mag_text = match &mag {
                Scalar::Rat(r) => r.to_string(),
                Scalar::Cyc(_) => format!("[{mag}]"),
            };
            let body = if mono.is_empty() {
                mag_text
            } else if mag.is_one() {
                mono
            } else {
                format!("{mag_text}*{mono}")
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }

    /// Ascending coefficient list, e.g. `[1, -3/2, 1]`.
    pub fn format_list(&self) -> String {
        let items: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", items.join(", "))
    }

    /// Accepts either an expression in `var` or a bracketed ascending list.
    pub fn parse_with(s: &str, var: &str) -> Result<Poly> {
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            if inner.trim().is_empty() {
                return Ok(Poly::zero());
            }
            let coeffs = inner
                .split(',')
                .map(Scalar::parse)
                .collect::<Result<Vec<_>>>()?;
            return Ok(Poly::from_coeffs(coeffs));
        }
        parse_expr(&PolyRing { var }, t)
    }

    pub fn parse(s: &str) -> Result<Poly> {
        Self::parse_with(s, "h")
    }
}

struct PolyRing<'a> {
    var: &'a str,
}

impl ExprRing for PolyRing<'_> {
    type Elem = Poly;

    fn constant(&self, c: Rational) -> Poly {
        Poly::constant(Scalar::Rat(c))
    }

    fn variable(&self, name: &str) -> Result<Poly> {
        if name == self.var {
            Ok(Poly::var())
        } else {
            Err(Error::Parse(format!(
                "unknown variable {name:?} (expected {:?})",
                self.var
            )))
        }
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a + b
    }

    fn neg(&self, a: &Poly) -> Poly {
        -a
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a * b
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("h"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.format_with("h"))
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.format_list())
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Poly::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, Scalar::zero());
        for (c, s) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= s;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        Poly::from_coeffs(out)
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// The automorphism `sigma(h) = h - h0` of `k[h]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftSigma {
    h0: Scalar,
}

impl ShiftSigma {
    pub fn new(h0: Scalar) -> Result<Self> {
        if h0.is_zero() {
            return Err(Error::ZeroShift);
        }
        Ok(ShiftSigma { h0 })
    }

    pub fn h0(&self) -> &Scalar {
        &self.h0
    }

    /// `sigma^k(p)(h) = p(h - k*h0)`; negative `k` gives the inverse powers.
    pub fn pow(&self, p: &Poly, k: i64) -> Poly {
        if k == 0 {
            return p.clone();
        }
        let shift = -(&self.h0 * Scalar::from_i64(k));
        p.substitute_linear(&Scalar::one(), &shift)
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        self.pow(p, 1)
    }

    pub fn inverse(&self, p: &Poly) -> Poly {
        self.pow(p, -1)
    }
}

/// `p(h - k*h0)`.
pub fn sigma_pow(p: &Poly, k: i64, s: &ShiftSigma) -> Poly {
    s.pow(p, k)
}

/// Monic greatest common divisor.
pub fn gcd_monic(p: &Poly, q: &Poly) -> Result<Poly> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroGcd);
    }
    let (mut a, mut b) = (p.clone(), q.clone());
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b)?;
        a = std::mem::replace(&mut b, r);
    }
    Ok(a.monic())
}

/// Extended Euclid: returns `(g, u, v)` with `u*p + v*q = g`, `g` monic.
pub fn ext_gcd(p: &Poly, q: &Poly) -> Result<(Poly, Poly, Poly)> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroGcd);
    }
    let (mut r0, mut r1) = (p.clone(), q.clone());
    let (mut s0, mut s1) = (Poly::one(), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (quo, rem) = r0.div_rem(&r1)?;
        let s2 = &s0 - &(&quo * &s1);
        let t2 = &t0 - &(&quo * &t1);
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = r0.lead().expect("nonzero gcd").inv()?;
    Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
}

/// `(n, d) = (deg a, deg gcd(a, a'))`.
pub fn degree_invariants(a: &Poly) -> Result<(usize, usize)> {
    if a.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let n = a.degree().unwrap();
    let g = gcd_monic(a, &a.derivative())?;
    Ok((n, g.degree().unwrap()))
}

/// `p(r*H)` as a polynomial in `H`.
pub fn compose_scale(p: &Poly, r: u32) -> Poly {
    p.substitute_linear(&Scalar::from_i64(r as i64), &Scalar::zero())
}

/// The `m`-th cyclotomic polynomial as an element of `Q[h]`.
pub fn cyclotomic_polynomial(m: u32) -> Result<Poly> {
    Ok(Poly::from_rationals(
        cyclotomic_coeffs(m)?
            .into_iter()
            .map(Rational::from_integer)
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    fn shift(num: i64, den: i64) -> ShiftSigma {
        ShiftSigma::new(Scalar::from_ratio(num, den)).unwrap()
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_pow(&p("h^2"), 1, &shift(1, 1)), p("h^2 - 2*h + 1"));
        assert_eq!(sigma_pow(&p("h"), -1, &shift(1, 1)), p("h + 1"));
        assert_eq!(
            sigma_pow(&p("h^3"), 2, &shift(1, 2)),
            p("h^3 - 3*h^2 + 3*h - 1")
        );
        assert_eq!(sigma_pow(&p("h^3 + 2"), 0, &shift(7, 3)), p("h^3 + 2"));
        assert_eq!(ShiftSigma::new(Scalar::zero()), Err(Error::ZeroShift));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_monic(&p("h^2"), &p("2*h")).unwrap(), p("h"));
        let a = p("-1/4 - h - h^2");
        assert_eq!(gcd_monic(&a, &a.derivative()).unwrap(), p("h + 1/2"));
        let b = p("h^3 - h");
        assert_eq!(gcd_monic(&b, &p("3*h^2 - 1")).unwrap(), Poly::one());
        assert_eq!(gcd_monic(&Poly::zero(), &Poly::zero()), Err(Error::ZeroGcd));
    }

    #[test]
    fn degree_invariant_examples() {
        assert_eq!(degree_invariants(&p("h")).unwrap(), (1, 0));
        assert_eq!(degree_invariants(&p("-(h+1/2)^2")).unwrap(), (2, 1));
        assert_eq!(degree_invariants(&p("h^3")).unwrap(), (3, 2));
        assert_eq!(degree_invariants(&p("5")), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn compose_scale_examples() {
        assert_eq!(compose_scale(&p("h"), 2), p("2*h"));
        assert_eq!(compose_scale(&p("h^2 + 1"), 3), p("9*h^2 + 1"));
        assert_eq!(compose_scale(&p("h*(h+1)"), 2), p("4*h^2 + 2*h"));
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_polynomial(1).unwrap(), p("h - 1"));
        assert_eq!(cyclotomic_polynomial(2).unwrap(), p("h + 1"));
        assert_eq!(cyclotomic_polynomial(4).unwrap(), p("h^2 + 1"));
    }

    #[test]
    fn text_round_trip() {
        let q = p("h^2 - 3/2*h + 1");
        assert_eq!(q.to_string(), "h^2 - 3/2*h + 1");
        assert_eq!(q.format_list(), "[1, -3/2, 1]");
        assert_eq!(Poly::parse("[1, -3/2, 1]").unwrap(), q);
        assert_eq!(p("-h^3 + 2").to_string(), "-h^3 + 2");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(Poly::parse("[]").unwrap(), Poly::zero());
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = p("h^3 - h - 1");
        let (g, u, v) = ext_gcd(&a, &a.derivative()).unwrap();
        assert_eq!(g, Poly::one());
        assert_eq!(&(&u * &a) + &(&v * &a.derivative()), Poly::one());
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec((-6i64..6, 1i64..4), 0..5).prop_map(|v| {
            Poly::from_coeffs(v.into_iter().map(|(n, d)| Scalar::from_ratio(n, d)).collect())
        })
    }

    proptest! {
        #[test]
        fn sigma_is_ring_automorphism(a in small_poly(), b in small_poly(), k in -3i64..4) {
            let s = shift(3, 2);
            prop_assert_eq!(s.pow(&(&a * &b), k), &s.pow(&a, k) * &s.pow(&b, k));
            prop_assert_eq!(s.pow(&(&a + &b), k), &s.pow(&a, k) + &s.pow(&b, k));
            prop_assert_eq!(s.pow(&s.pow(&a, k), -k), a);
        }

        #[test]
        fn gcd_divides_and_is_greatest(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
            let x = &a * &c;
            let y = &b * &c;
            let g = gcd_monic(&x, &y).unwrap();
            prop_assert!(g.divides(&x));
            prop_assert!(g.divides(&y));
            // every common divisor divides g
            prop_assert!(c.divides(&g));
        }

        #[test]
        fn derivative_leibniz(a in small_poly(), b in small_poly()) {
            prop_assert_eq!((&a * &b).derivative(), &(&a.derivative() * &b) + &(&a * &b.derivative()));
            prop_assert_eq!((&a + &b).derivative(), &a.derivative() + &b.derivative());
        }
    }
}
