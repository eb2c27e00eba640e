use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Largest cyclotomic order accepted unless a caller asks for more.
pub const DEFAULT_MAX_ORDER: u32 = 64;

/// Integer coefficients (ascending) of the `m`-th cyclotomic polynomial,
/// obtained by dividing `t^m - 1` by `Phi_d` for every proper divisor `d`.
pub fn cyclotomic_coeffs(m: u32) -> Result<Vec<BigInt>> {
    if m == 0 {
        return Err(Error::ZeroOrder);
    }
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in (1..m).filter(|d| m % d == 0) {
        let div = cyclotomic_coeffs(d)?;
        num = exact_div_monic(&num, &div);
    }
    Ok(num)
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// Euler's totient.
pub fn totient(m: u32) -> usize {
    let mut n = m;
    let mut out = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out as usize
}

/// The field `Q(zeta_m)` realised as `Q[t]/(Phi_m)`.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    order: u32,
    modulus: Vec<BigRational>,
}

impl CyclotomicField {
    pub fn new(order: u32) -> Result<Arc<Self>> {
        Self::with_cap(order, DEFAULT_MAX_ORDER)
    }

    pub fn with_cap(order: u32, cap: u32) -> Result<Arc<Self>> {
        if order > cap {
            return Err(Error::OrderTooLarge { order, cap });
        }
        let modulus = cyclotomic_coeffs(order)?
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        Ok(Arc::new(CyclotomicField { order, modulus }))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `phi(m)`, the length of every coefficient vector.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigRational] {
        &self.modulus
    }

    /// Reduces an arbitrary coefficient vector modulo `Phi_m`.
    fn reduce(&self, mut c: Vec<Rational>) -> Vec<Rational> {
        let deg = self.degree();
        while c.len() > deg {
            let top = c.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = c.len() - deg;
            for (i, m) in self.modulus[..deg].iter().enumerate() {
                c[shift + i] -= &top * m;
            }
        }
        c.resize(deg, Rational::zero());
        c
    }
}

/// An element of `Q(zeta_m)`, stored as its canonical residue of degree
/// `< phi(m)`.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    coeffs: Vec<Rational>,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl Eq for Cyclotomic {}

impl std::hash::Hash for Cyclotomic {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.coeffs.hash(state);
    }
}

impl Cyclotomic {
    pub fn from_coeffs(field: &Arc<CyclotomicField>, coeffs: Vec<Rational>) -> Self {
        let coeffs = field.reduce(coeffs);
        Cyclotomic {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, r: Rational) -> Self {
        Self::from_coeffs(field, vec![r])
    }

    /// The generator `zeta_m` (the class of `t`).
    pub fn zeta(field: &Arc<CyclotomicField>) -> Self {
        Self::from_coeffs(field, vec![Rational::zero(), Rational::one()])
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `Some(r)` when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs.first().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field.order != other.field.order {
            return Err(Error::IncompatibleOrders(self.field.order, other.field.order));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Cyclotomic {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(Cyclotomic {
            field: self.field.clone(),
            coeffs: self.field.reduce(prod),
        })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += r;
        Cyclotomic {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// `Phi_m`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // invariant: s * self = r0 (mod Phi_m), t * self = r1 (mod Phi_m)
        let mut r0 = trim(self.coeffs.clone());
        let mut r1 = trim(self.field.modulus.clone());
        let mut s0 = vec![Rational::one()];
        let mut s1: Vec<Rational> = Vec::new();
        while !r1.is_empty() {
            let (q, r) = qpoly_divrem(&r0, &r1);
            let s2 = qpoly_sub(&s0, &qpoly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since Phi_m is irreducible
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let coeffs = s0.into_iter().map(|x| x * &c).collect();
        Ok(Cyclotomic::from_coeffs(&self.field, coeffs))
    }
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn qpoly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
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

fn qpoly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let z = Rational::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

fn qpoly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead = b.last().unwrap().recip();
    let mut quot = vec![Rational::zero(); rem.len() - b.len() + 1];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + b.len() - 1] * &lead;
        if c.is_zero() {
            continue;
        }
        for (i, d) in b.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    (trim(quot), trim(rem))
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            let (neg, mag) = if *c < Rational::zero() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            if parts.is_empty() {
                parts.push(if neg { format!("-{body}") } else { body });
            } else {
                parts.push(if neg {
                    format!("- {body}")
                } else {
                    format!("+ {body}")
                });
            }
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "({}) @ zeta{}", parts.join(" "), self.field.order)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::{int, rat};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_coeffs(1).unwrap(), ints(&[-1, 1]));
        assert_eq!(cyclotomic_coeffs(2).unwrap(), ints(&[1, 1]));
        assert_eq!(cyclotomic_coeffs(4).unwrap(), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_coeffs(6).unwrap(), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_coeffs(12).unwrap(), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_coeffs(0), Err(Error::ZeroOrder));
    }

    #[test]
    fn degree_is_totient() {
        for m in 1..=40 {
            assert_eq!(cyclotomic_coeffs(m).unwrap().len() - 1, totient(m), "m = {m}");
        }
    }

    #[test]
    fn order_cap() {
        assert_eq!(
            CyclotomicField::new(65).unwrap_err(),
            Error::OrderTooLarge { order: 65, cap: 64 }
        );
        assert!(CyclotomicField::with_cap(65, 100).is_ok());
    }

    #[test]
    fn zeta_four_squared() {
        let k = CyclotomicField::new(4).unwrap();
        let z = Cyclotomic::zeta(&k);
        assert_eq!(z.mul(&z).unwrap().as_rational(), Some(int(-1)));
    }

    #[test]
    fn zeta_three_relation() {
        let k = CyclotomicField::new(3).unwrap();
        let z = Cyclotomic::zeta(&k);
        let z2 = z.mul(&z).unwrap();
        let s = z.add(&z2).unwrap().add_rational(&int(1));
        assert!(s.is_zero());
    }

    #[test]
    fn inverse() {
        let k = CyclotomicField::new(5).unwrap();
        let e = Cyclotomic::from_coeffs(&k, vec![rat(1, 2), int(3), int(0), rat(-2, 7)]);
        let i = e.inv().unwrap();
        assert_eq!(e.mul(&i).unwrap().as_rational(), Some(int(1)));
    }

    #[test]
    fn display() {
        let k = CyclotomicField::new(4).unwrap();
        let e = Cyclotomic::from_coeffs(&k, vec![int(1), int(2)]);
        assert_eq!(e.to_string(), "(1 + 2*z) @ zeta4");
    }
}
