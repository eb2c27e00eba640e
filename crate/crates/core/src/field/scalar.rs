use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::cyclotomic::{Cyclotomic, CyclotomicField};
use super::rational::{parse_rational, Rational};
use crate::error::{Error, Result};

/// A scalar of the base field: a rational, or an element of `Q(zeta_m)`.
///
/// Cyclotomic values lying in `Q` are always demoted to `Rat`, so equal
/// values have identical representations. Operator impls panic when the
/// two sides live in different cyclotomic fields; the `try_*` methods
/// report that as an error instead.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Rational),
    Cyc(Cyclotomic),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(Rational::one())
    }

    pub fn from_i64(n: i64) -> Self {
        Scalar::Rat(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::Rat(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The primitive root `zeta_m` (for `m <= 2` this is rational).
    pub fn zeta(m: u32) -> Result<Self> {
        let field = CyclotomicField::new(m)?;
        Ok(Self::from_cyclotomic(Cyclotomic::zeta(&field)))
    }

    /// `zeta_m^k`.
    pub fn root_of_unity(m: u32, k: i64) -> Result<Self> {
        let z = Self::zeta(m)?;
        Ok(z.pow(k.rem_euclid(m as i64)))
    }

    pub fn from_cyclotomic(c: Cyclotomic) -> Self {
        match c.as_rational() {
            Some(r) => Scalar::Rat(r),
            None => Scalar::Cyc(c),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Cyc(_) => false,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Cyc(_) => None,
        }
    }

    /// Cyclotomic order of the field this value needs (1 for rationals).
    pub fn order(&self) -> u32 {
        match self {
            Scalar::Rat(_) => 1,
            Scalar::Cyc(c) => c.order(),
        }
    }

    pub fn field(&self) -> Option<&Arc<CyclotomicField>> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Cyc(c) => Some(c.field()),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        Ok(match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Rat(a), Scalar::Cyc(b)) | (Scalar::Cyc(b), Scalar::Rat(a)) => {
                Scalar::Cyc(b.add_rational(a))
            }
            (Scalar::Cyc(a), Scalar::Cyc(b)) => Self::from_cyclotomic(a.add(b)?),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        Ok(match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Rat(a), Scalar::Cyc(b)) | (Scalar::Cyc(b), Scalar::Rat(a)) => {
                if a.is_zero() {
                    Scalar::zero()
                } else {
                    Scalar::Cyc(b.scale(a))
                }
            }
            (Scalar::Cyc(a), Scalar::Cyc(b)) => Self::from_cyclotomic(a.mul(b)?),
        })
    }

    pub fn inv(&self) -> Result<Self> {
        match self {
            Scalar::Rat(r) if r.is_zero() => Err(Error::DivisionByZero),
            Scalar::Rat(r) => Ok(Scalar::Rat(r.recip())),
            Scalar::Cyc(c) => Ok(Self::from_cyclotomic(c.inv()?)),
        }
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    /// Non-negative power.
    pub fn pow(&self, mut e: i64) -> Self {
        assert!(e >= 0, "negative exponent; use powi");
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer power, inverting for negative exponents.
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e))
        } else {
            Ok(self.inv()?.pow(-e))
        }
    }

    /// Parses `"p/q"`, `"p"`, `"zetaM"`, or `"(<poly in z>) @ zetaM"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((body, order)) = s.rsplit_once('@') {
            let m = parse_zeta_order(order.trim())?;
            let field = CyclotomicField::new(m)?;
            let body = body.trim();
            let body = body
                .strip_prefix('(')
                .and_then(|b| b.strip_suffix(')'))
                .unwrap_or(body);
            let coeffs = crate::text::parse_univariate(body, "z")?;
            return Ok(Self::from_cyclotomic(Cyclotomic::from_coeffs(&field, coeffs)));
        }
        if s.starts_with("zeta") {
            return Self::zeta(parse_zeta_order(s)?);
        }
        Ok(Scalar::Rat(parse_rational(s)?))
    }
}

fn parse_zeta_order(s: &str) -> Result<u32> {
    s.strip_prefix("zeta")
        .and_then(|m| m.trim().parse().ok())
        .filter(|&m| m > 0)
        .ok_or_else(|| Error::Parse(format!("invalid root of unity {s:?}")))
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rat(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_i64(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Cyc(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Scalar::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Cyc(c) => Scalar::Cyc(c.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Cyc(c) => Scalar::Cyc(c.neg()),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalars from different cyclotomic fields")
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => *a += b,
            _ => *self = &*self + rhs,
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => *a -= b,
            _ => *self = &*self - rhs,
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => *a *= b,
            _ => *self = &*self * rhs,
        }
    }
}
