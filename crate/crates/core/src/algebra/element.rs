use std::collections::BTreeMap;
use std::fmt;

use crate::field::{Rational, Scalar};
use crate::poly::Poly;

/// Normal-form element `sum_j p_j(h) M_j`, keyed by weight `j`.
/// Zero polynomials are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GwaElement {
    terms: BTreeMap<i64, Poly>,
}

impl GwaElement {
    pub fn zero() -> Self {
        GwaElement::default()
    }

    pub fn one() -> Self {
        Self::term(Poly::one(), 0)
    }

    /// `p(h) M_j`.
    pub fn term(p: Poly, j: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(j, p);
        }
        GwaElement { terms }
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::term(p, 0)
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::term(Poly::constant(c), 0)
    }

    pub fn terms(&self) -> &BTreeMap<i64, Poly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Polynomial coefficient of `M_j`.
    pub fn coeff(&self, j: i64) -> Poly {
        self.terms.get(&j).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn weight_component(&self, j: i64) -> GwaElement {
        Self::term(self.coeff(j), j)
    }

    pub fn weights(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().copied()
    }

    /// The weight if the element is nonzero and homogeneous.
    pub fn homogeneous_weight(&self) -> Option<i64> {
        if self.terms.len() == 1 {
            self.terms.keys().next().copied()
        } else {
            None
        }
    }

    pub fn add_assign(&mut self, other: &GwaElement) {
        for (&j, p) in &other.terms {
            match self.terms.get_mut(&j) {
                Some(q) => {
                    *q = &*q + p;
                    if q.is_zero() {
                        self.terms.remove(&j);
                    }
                }
                None => {
                    self.terms.insert(j, p.clone());
                }
            }
        }
    }

    pub fn add(&self, other: &GwaElement) -> GwaElement {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn neg(&self) -> GwaElement {
        GwaElement {
            terms: self.terms.iter().map(|(&j, p)| (j, -p)).collect(),
        }
    }

    pub fn sub(&self, other: &GwaElement) -> GwaElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> GwaElement {
        if c.is_zero() {
            return GwaElement::zero();
        }
        GwaElement {
            terms: self.terms.iter().map(|(&j, p)| (j, p.scale(c))).collect(),
        }
    }

    /// Left multiplication by a polynomial in `h` (no reordering needed).
    pub fn left_mul_poly(&self, q: &Poly) -> GwaElement {
        let mut out = GwaElement::zero();
        for (&j, p) in &self.terms {
            out.add_assign(&GwaElement::term(q * p, j));
        }
        out
    }

    pub fn max_h_degree(&self) -> Option<usize> {
        self.terms.values().filter_map(Poly::degree).max()
    }
}

fn monomial_text(j: i64) -> String {
    match j {
        0 => String::new(),
        1 => "x".into(),
        -1 => "y".into(),
        j if j > 0 => format!("x^{j}"),
        j => format!("y^{}", -j),
    }
}

impl fmt::Display for GwaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&j, p) in self.terms.iter().rev() {
            let mono = monomial_text(j);
            // a lone negative rational monomial prints as a subtraction
            let single = p.coeffs().iter().filter(|c| !c.is_zero()).count() == 1;
            let negative = single
                && matches!(p.lead(), Some(Scalar::Rat(r)) if *r < Rational::from_integer(0.into()));
            let shown = if negative { -p } else { p.clone() };
            let ptext = shown.to_string();
            let body = if mono.is_empty() {
                ptext
            } else if shown == Poly::one() {
                mono
            } else if single {
                format!("{ptext}*{mono}")
            } else {
                format!("({ptext})*{mono}")
            };
            match (first, negative) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => f.write_str(&body)?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for GwaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GwaElement({self})")
    }
}
