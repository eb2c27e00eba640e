//! Normal-form arithmetic in the generalized Weyl algebra
//! `A = A(k[h], a, sigma)`: generated over `k[h]` by `x`, `y` with
//! `yx = a`, `xy = sigma(a)`, `x r = sigma(r) x` and `r y = y sigma(r)`.
//!
//! Elements are stored as `sum_j p_j(h) M_j` with `M_j = x^j` for `j > 0`,
//! `M_j = y^{-j}` for `j < 0` and `M_0 = 1`; `j` is the weight.

mod automorphism;
mod element;

pub use automorphism::Automorphism;
pub use element::GwaElement;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::poly::{degree_invariants, Poly, ShiftSigma};
use crate::text::{parse_expr, ExprRing};
use crate::Rational;

/// The algebra `A(k[h], a, sigma)` with `sigma(h) = h - h0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gwa {
    a: Poly,
    sigma: ShiftSigma,
    n: usize,
    d: usize,
}

impl Gwa {
    pub fn new(a: Poly, h0: Scalar) -> Result<Self> {
        let sigma = ShiftSigma::new(h0)?;
        Self::with_sigma(a, sigma)
    }

    pub fn with_sigma(a: Poly, sigma: ShiftSigma) -> Result<Self> {
        if a.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        let (n, d) = degree_invariants(&a)?;
        Ok(Gwa { a, sigma, n, d })
    }

    pub fn a(&self) -> &Poly {
        &self.a
    }

    pub fn sigma(&self) -> &ShiftSigma {
        &self.sigma
    }

    pub fn h0(&self) -> &Scalar {
        self.sigma.h0()
    }

    /// `deg a`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// `deg gcd(a, a')`.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Largest cyclotomic order among `a` and `h0`.
    pub fn field_order(&self) -> u32 {
        self.a.field_order().max(self.h0().order())
    }

    pub fn x(&self) -> GwaElement {
        GwaElement::term(Poly::one(), 1)
    }

    pub fn y(&self) -> GwaElement {
        GwaElement::term(Poly::one(), -1)
    }

    pub fn h(&self) -> GwaElement {
        GwaElement::term(Poly::var(), 0)
    }

    /// `p(h) M_i * q(h) M_j` in normal form.
    pub fn mul_terms(&self, p: &Poly, i: i64, q: &Poly, j: i64) -> GwaElement {
        if p.is_zero() || q.is_zero() {
            return GwaElement::zero();
        }
        // M_i q = sigma^i(q) M_i
        let mut coef = p * &self.sigma.pow(q, i);
        let (mut i, mut j) = (i, j);
        // peel one xy or yx pair at a time
        while i > 0 && j < 0 {
            // x^i y^k = sigma^i(a) x^{i-1} y^{k-1}
            coef = &coef * &self.sigma.pow(&self.a, i);
            i -= 1;
            j += 1;
        }
        while i < 0 && j > 0 {
            // y^k x^l = sigma^{-(k-1)}(a) y^{k-1} x^{l-1}
            coef = &coef * &self.sigma.pow(&self.a, i + 1);
            i += 1;
            j -= 1;
        }
        GwaElement::term(coef, i + j)
    }

    pub fn mul(&self, u: &GwaElement, v: &GwaElement) -> GwaElement {
        let mut out = GwaElement::zero();
        for (&i, p) in u.terms() {
            for (&j, q) in v.terms() {
                out.add_assign(&self.mul_terms(p, i, q, j));
            }
        }
        out
    }

    pub fn pow(&self, u: &GwaElement, e: u32) -> GwaElement {
        let mut acc = GwaElement::one();
        for _ in 0..e {
            acc = self.mul(&acc, u);
        }
        acc
    }

    /// `uv - vu`.
    pub fn commutator(&self, u: &GwaElement, v: &GwaElement) -> GwaElement {
        self.mul(u, v).sub(&self.mul(v, u))
    }

    /// `u v - v g(u)`: the commutator with coefficients in `A g`.
    pub fn twisted_commutator(
        &self,
        u: &GwaElement,
        v: &GwaElement,
        g: &Automorphism,
    ) -> Result<GwaElement> {
        let gu = g.apply(self, u)?;
        Ok(self.mul(u, v).sub(&self.mul(v, &gu)))
    }

    /// `p(u)` for a polynomial `p` and element `u`.
    pub fn eval_poly(&self, p: &Poly, u: &GwaElement) -> GwaElement {
        let mut acc = GwaElement::zero();
        for c in p.coeffs().iter().rev() {
            acc = self.mul(&acc, u);
            acc.add_assign(&GwaElement::term(Poly::constant(c.clone()), 0));
        }
        acc
    }

    /// Parses the element text format, e.g. `(h^2-1)*x^2 + 3*y`.
    pub fn parse_element(&self, s: &str) -> Result<GwaElement> {
        parse_expr(self, s)
    }
}

impl ExprRing for Gwa {
    type Elem = GwaElement;

    fn constant(&self, c: Rational) -> GwaElement {
        GwaElement::term(Poly::constant(Scalar::Rat(c)), 0)
    }

    fn variable(&self, name: &str) -> Result<GwaElement> {
        match name {
            "x" => Ok(self.x()),
            "y" => Ok(self.y()),
            "h" => Ok(self.h()),
            _ => Err(Error::Parse(format!("unknown generator {name:?}"))),
        }
    }

    fn add(&self, a: &GwaElement, b: &GwaElement) -> GwaElement {
        a.add(b)
    }

    fn neg(&self, a: &GwaElement) -> GwaElement {
        a.neg()
    }

    fn mul(&self, a: &GwaElement, b: &GwaElement) -> GwaElement {
        Gwa::mul(self, a, b)
    }
}

#[cfg(test)]
mod tests;
