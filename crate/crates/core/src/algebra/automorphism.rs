use std::fmt;

use super::{Gwa, GwaElement};
use crate::error::{Error, Result};
use crate::field::Scalar;

/// Automorphisms of `A` described by their action on `x`, `y`, `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Automorphism {
    /// `x -> w x`, `y -> w^{-1} y`, `h -> h`.
    Torus(Scalar),
    /// `exp(lambda ad(y^m))`; fixes `y`, sends `h` to `h + m lambda h0 y^m`.
    ExpY { m: u32, lambda: Scalar },
    /// `exp(lambda ad(x^m))`; fixes `x`, sends `h` to `h - m lambda h0 x^m`.
    ExpX { m: u32, lambda: Scalar },
    /// `x -> y`, `y -> (-1)^n x`, `h -> h0 + rho - h`; requires
    /// `a(rho - h) = (-1)^n a(h)`.
    Omega(Scalar),
    /// Applies the listed maps in order, first to last.
    Composite(Vec<Automorphism>),
}

impl Automorphism {
    pub fn identity() -> Self {
        Automorphism::Torus(Scalar::one())
    }

    /// Is the map diagonal on the weight grading (a torus element)?
    pub fn torus_weight(&self) -> Option<&Scalar> {
        match self {
            Automorphism::Torus(w) => Some(w),
            _ => None,
        }
    }

    pub fn apply(&self, alg: &Gwa, u: &GwaElement) -> Result<GwaElement> {
        match self {
            Automorphism::Torus(w) => {
                if w.is_zero() {
                    return Err(Error::Hypothesis("torus weight must be nonzero".into()));
                }
                let mut out = GwaElement::zero();
                for (&j, p) in u.terms() {
                    out.add_assign(&GwaElement::term(p.scale(&w.powi(j)?), j));
                }
                Ok(out)
            }
            Automorphism::Omega(rho) => {
                check_reflective(alg, rho)?;
                let c = alg.h0() + rho;
                let n = alg.n() as i64;
                let mut out = GwaElement::zero();
                for (&j, p) in u.terms() {
                    let p = p.substitute_linear(&Scalar::from_i64(-1), &c);
                    // x^j -> y^j, y^k -> (-1)^{nk} x^k
                    let p = if j < 0 && (n * j) % 2 != 0 { -p } else { p };
                    out.add_assign(&GwaElement::term(p, -j));
                }
                Ok(out)
            }
            Automorphism::ExpY { .. } | Automorphism::ExpX { .. } => {
                let (gx, gy, gh) = self.generator_images(alg)?;
                Ok(evaluate(alg, u, &gx, &gy, &gh))
            }
            Automorphism::Composite(list) => {
                let mut cur = u.clone();
                for g in list {
                    cur = g.apply(alg, &cur)?;
                }
                Ok(cur)
            }
        }
    }

    /// Images of `x`, `y`, `h`.
    pub fn generator_images(&self, alg: &Gwa) -> Result<(GwaElement, GwaElement, GwaElement)> {
        match self {
            Automorphism::ExpY { m, lambda } => {
                let gen = alg.pow(&alg.y(), *m);
                let cap = ad_cap(alg, *m);
                Ok((
                    exp_ad(alg, &gen, lambda, &alg.x(), cap)?,
                    alg.y(),
                    exp_ad(alg, &gen, lambda, &alg.h(), cap)?,
                ))
            }
            Automorphism::ExpX { m, lambda } => {
                let gen = alg.pow(&alg.x(), *m);
                let cap = ad_cap(alg, *m);
                Ok((
                    alg.x(),
                    exp_ad(alg, &gen, lambda, &alg.y(), cap)?,
                    exp_ad(alg, &gen, lambda, &alg.h(), cap)?,
                ))
            }
            _ => Ok((
                self.apply(alg, &alg.x())?,
                self.apply(alg, &alg.y())?,
                self.apply(alg, &alg.h())?,
            )),
        }
    }
}

fn ad_cap(alg: &Gwa, m: u32) -> usize {
    4 * (m as usize * alg.n() + 1)
}

/// `sum_i lambda^i / i! ad(gen)^i (u)`, stopping once the iterate vanishes.
fn exp_ad(
    alg: &Gwa,
    gen: &GwaElement,
    lambda: &Scalar,
    u: &GwaElement,
    cap: usize,
) -> Result<GwaElement> {
    let mut out = u.clone();
    let mut iterate = u.clone();
    let mut factor = Scalar::one();
    for i in 1..=cap {
        iterate = alg.commutator(gen, &iterate);
        if iterate.is_zero() {
            return Ok(out);
        }
        factor = &factor * lambda / Scalar::from_i64(i as i64);
        out.add_assign(&iterate.scale(&factor));
    }
    Err(Error::AdSeriesCap(cap))
}

/// Image of `u` under the algebra map with the given generator images.
fn evaluate(
    alg: &Gwa,
    u: &GwaElement,
    gx: &GwaElement,
    gy: &GwaElement,
    gh: &GwaElement,
) -> GwaElement {
    let mut out = GwaElement::zero();
    for (&j, p) in u.terms() {
        let base = if j >= 0 { gx } else { gy };
        let mono = alg.pow(base, j.unsigned_abs() as u32);
        let coef = alg.eval_poly(p, gh);
        out.add_assign(&alg.mul(&coef, &mono));
    }
    out
}

/// Errors unless `a(rho - h) = (-1)^n a(h)`.
pub(crate) fn check_reflective(alg: &Gwa, rho: &Scalar) -> Result<()> {
    let reflected = alg.a().substitute_linear(&Scalar::from_i64(-1), rho);
    let expected = if alg.n() % 2 == 0 {
        alg.a().clone()
    } else {
        -alg.a()
    };
    if reflected == expected {
        Ok(())
    } else {
        Err(Error::InvalidRho(rho.to_string()))
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Automorphism::Torus(w) => write!(f, "torus({w})"),
            Automorphism::ExpY { m, lambda } => write!(f, "exp({lambda} ad y^{m})"),
            Automorphism::ExpX { m, lambda } => write!(f, "exp({lambda} ad x^{m})"),
            Automorphism::Omega(rho) => write!(f, "omega(rho = {rho})"),
            Automorphism::Composite(list) => {
                let parts: Vec<String> = list.iter().map(|g| g.to_string()).collect();
                write!(f, "[{}]", parts.join(", "))
            }
        }
    }
}
