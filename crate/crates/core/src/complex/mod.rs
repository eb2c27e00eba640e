//! Resolution-based computation of Hochschild (co)homology.
//!
//! The free bimodule resolution of `A` is the total complex of a double
//! complex whose rows are the Chevalley-Eilenberg-type complexes
//! `A ⊗ Λ^* V ⊗ A` and whose columns are joined by the vertical maps in
//! [`bimodule`]. Applying `M ⊗_{A^e} -` or `Hom_{A^e}(-, M)` and keeping
//! weight zero leaves finitely many copies of `k[h]` in each degree, which
//! are truncated and handed to [`crate::linalg`].

pub mod bimodule;
mod weight_zero;

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use weight_zero::{components, Component, ShiftOperator, WeightZeroComplex};

use crate::algebra::{Gwa, GwaElement};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{
    homology_dim_by_ranks, stabilize, stabilize_values, Matrix, Schedule, StabilizedDim, Stabilized,
    TruncatedMap, TruncatedSpace,
};
use crate::poly::{ext_gcd, Poly, ShiftSigma};
use bimodule::{wedge, wedge_weight, wedges_of_degree, Wedge, EH};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Homology,
    Cohomology,
}

/// Which (co)homology to compute; `twist = Some(w)` uses coefficients in
/// `Ag` for the torus element `g: x -> w x, y -> w^{-1} y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexKind {
    pub variant: Variant,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<Scalar>,
}

impl ComplexKind {
    pub fn homology() -> Self {
        ComplexKind {
            variant: Variant::Homology,
            twist: None,
        }
    }

    pub fn cohomology() -> Self {
        ComplexKind {
            variant: Variant::Cohomology,
            twist: None,
        }
    }

    pub fn twisted(variant: Variant, w: Scalar) -> Self {
        ComplexKind {
            variant,
            twist: Some(w),
        }
    }

    fn validate(&self) -> Result<()> {
        match &self.twist {
            Some(w) if w.is_zero() => Err(Error::Hypothesis("torus weight must be nonzero".into())),
            _ => Ok(()),
        }
    }
}

/// Truncated total differentials `d_p` (homology, degree `p -> p-1`) or
/// `delta_p` (cohomology, `p -> p+1`), chained so that consecutive maps
/// compose exactly.
#[derive(Clone, Debug)]
pub struct WeightZeroChain {
    pub kind: ComplexKind,
    /// `(p, map leaving degree p)`, in the order the maps compose.
    pub maps: Vec<(usize, TruncatedMap)>,
    /// Summand labels per degree.
    pub labels: BTreeMap<usize, Vec<String>>,
}

/// Assembles the total differentials of degrees up to `p_max` with the top
/// domain truncated at `bound`, and checks that consecutive maps compose
/// to zero.
pub fn build_differentials(alg: &Gwa, kind: &ComplexKind, p_max: usize, bound: usize) -> Result<WeightZeroChain> {
    kind.validate()?;
    let cx = WeightZeroComplex::new(alg, kind)?;
    let degrees: Vec<usize> = match kind.variant {
        Variant::Homology => (1..=p_max + 1).rev().collect(),
        Variant::Cohomology => (0..=p_max).collect(),
    };
    let mut maps: Vec<(usize, TruncatedMap)> = Vec::new();
    let mut next_bound = bound;
    for p in degrees {
        let m = cx.matrix(p, next_bound)?;
        next_bound = m.codomain.bound;
        if let Some((q, prev)) = maps.last() {
            if !m.after(prev)?.matrix.is_zero() {
                return Err(Error::NotAComplex(format!(
                    "composite of the maps leaving degrees {q} and {p} is nonzero"
                )));
            }
        }
        maps.push((p, m));
    }
    let labels = (0..=p_max + 1)
        .map(|p| (p, cx.components(p).iter().map(|c| c.label(kind.variant)).collect()))
        .collect();
    Ok(WeightZeroChain {
        kind: kind.clone(),
        maps,
        labels,
    })
}

/// Extra room for preimages of boundaries beyond the cycle bound.
fn preimage_margin(alg: &Gwa) -> usize {
    alg.n() + 2
}

/// Dimensions in the listed degrees at one truncation bound.
fn dims_at(cx: &WeightZeroComplex, degrees: &[usize], bound: usize) -> Result<Vec<usize>> {
    let margin = preimage_margin(cx.algebra());
    degrees
        .par_iter()
        .map(|&p| {
            let dp = match cx.target_degree(p) {
                Some(_) => cx.matrix(p, bound)?,
                None => {
                    let space = TruncatedSpace::new(cx.field_order(), cx.components(p).len(), bound);
                    TruncatedMap::zero(space, TruncatedSpace::new(cx.field_order(), 0, bound))
                }
            };
            let source = match cx.kind().variant {
                Variant::Homology => Some(p + 1),
                Variant::Cohomology => p.checked_sub(1),
            };
            let dnext = match source {
                Some(s) if !cx.components(s).is_empty() => cx.matrix(s, bound + margin)?,
                _ => {
                    let space = TruncatedSpace::new(cx.field_order(), cx.components(p).len(), bound);
                    TruncatedMap::zero(TruncatedSpace::new(cx.field_order(), 0, bound), space)
                }
            };
            homology_dim_by_ranks(&dp, &dnext)
        })
        .collect()
}

fn stabilized_list(cx: &WeightZeroComplex, degrees: &[usize], schedule: &Schedule) -> Result<Vec<StabilizedDim>> {
    match stabilize_values(schedule, |d| dims_at(cx, degrees, d))? {
        Stabilized::Reached { value, at, seen } => Ok(value
            .iter()
            .enumerate()
            .map(|(k, &v)| StabilizedDim {
                value: v,
                stabilized_at: at,
                schedule: seen.iter().map(|(d, vals)| (*d, vals[k])).collect(),
            })
            .collect()),
        Stabilized::Exhausted { seen } => Err(Error::NoStabilization {
            max: schedule.max,
            schedule: seen.iter().map(|(d, vals)| (*d, vals.iter().sum())).collect(),
        }),
    }
}

/// Stabilized (co)homology dimensions in degrees `0..=p_max`.
pub fn oracle_dims(alg: &Gwa, kind: &ComplexKind, p_max: usize, schedule: &Schedule) -> Result<Vec<StabilizedDim>> {
    kind.validate()?;
    let cx = WeightZeroComplex::new(alg, kind)?;
    let degrees: Vec<usize> = (0..=p_max).collect();
    stabilized_list(&cx, &degrees, schedule)
}

/// `E^1` dimensions: (co)homology of the row complex at `Λ^0, ..., Λ^3`.
pub fn row_homology_dims(alg: &Gwa, kind: &ComplexKind, schedule: &Schedule) -> Result<Vec<StabilizedDim>> {
    kind.validate()?;
    let cx = WeightZeroComplex::new(alg, kind)?.rows_only();
    stabilized_list(&cx, &[0, 1, 2, 3], schedule)
}

/// Explicit solution of `(sigma^{-1}(alpha) - beta) a - sigma^{-1}(gamma) a' = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezoutWitness {
    pub alpha: Poly,
    pub beta: Poly,
    pub gamma: Poly,
}

impl BezoutWitness {
    pub fn verify(&self, a: &Poly, sigma: &ShiftSigma) -> bool {
        let lhs = &(&(&sigma.inverse(&self.alpha) - &self.beta) * a) - &(&sigma.inverse(&self.gamma) * &a.derivative());
        lhs == Poly::one()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezoutOutcome {
    /// `gcd(a, a') = 1`.
    pub simple_roots: bool,
    pub witness: Option<BezoutWitness>,
}

/// Decides whether `d_2` is onto via the extended Euclidean algorithm,
/// returning a checked witness when it is.
pub fn bezout_d2_test(a: &Poly, sigma: &ShiftSigma) -> Result<BezoutOutcome> {
    if a.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let (g, u, v) = ext_gcd(a, &a.derivative())?;
    if g != Poly::one() {
        return Ok(BezoutOutcome {
            simple_roots: false,
            witness: None,
        });
    }
    let witness = BezoutWitness {
        alpha: sigma.apply(&u),
        beta: Poly::zero(),
        gamma: -sigma.apply(&v),
    };
    if !witness.verify(a, sigma) {
        return Err(Error::NotAComplex("Bezout witness failed verification".into()));
    }
    Ok(BezoutOutcome {
        simple_roots: true,
        witness: Some(witness),
    })
}

/// A chain `sum m_S ⊗ e_S` of `A ⊗ Λ V`.
pub type Chain = BTreeMap<Wedge, GwaElement>;

fn chain_add(chain: &mut Chain, s: Wedge, m: &GwaElement) {
    let entry = chain.entry(s).or_default();
    entry.add_assign(m);
    if entry.is_zero() {
        chain.remove(&s);
    }
}

/// Row differential on `A ⊗ Λ V = A ⊗_{A^e} (A ⊗ Λ V ⊗ A)`.
pub fn ce_boundary(alg: &Gwa, chain: &Chain) -> Chain {
    let mut out = Chain::new();
    for (&t, m) in chain {
        let img = bimodule::horizontal_image(alg, t);
        for (s, l, r, c) in img.terms() {
            let v = alg.mul(&alg.mul(&bimodule::mono_element(r), m), &bimodule::mono_element(l));
            chain_add(&mut out, s, &v.scale(c));
        }
    }
    out
}

/// `m ⊗ e_T -> m ⊗ e_h ∧ e_T`.
pub fn prepend_eh(chain: &Chain) -> Chain {
    let mut out = Chain::new();
    for (&t, m) in chain {
        if let Some((s, sign)) = wedge(EH, t) {
            chain_add(&mut out, s, &m.scale(&Scalar::from_i64(sign)));
        }
    }
    out
}

/// Checks `(d s + s d)(c) = -h0 weight(c) c` on `samples` random
/// homogeneous chains of nonzero weight (and one of weight zero). With
/// `sigma(h) = h - h0` the bracket `[x, h] = -h0 x` puts the factor `-h0`
/// in front of the weight.
pub fn euler_homotopy_check(alg: &Gwa, samples: usize, seed: u64) -> bool {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..=samples).all(|k| {
        let weight: i64 = if k == 0 {
            0
        } else {
            let w = rng.gen_range(1..=3);
            if rng.gen_bool(0.5) { w } else { -w }
        };
        let chain = random_chain(&mut rng, weight);
        let ds = ce_boundary(alg, &prepend_eh(&chain));
        let sd = prepend_eh(&ce_boundary(alg, &chain));
        let mut lhs = ds;
        for (s, m) in &sd {
            chain_add(&mut lhs, *s, m);
        }
        let factor = -(alg.h0() * &Scalar::from_i64(weight));
        let mut rhs = Chain::new();
        for (s, m) in &chain {
            chain_add(&mut rhs, *s, &m.scale(&factor));
        }
        lhs == rhs
    })
}

/// Random homogeneous chain of the given total weight.
pub fn random_chain(rng: &mut StdRng, weight: i64) -> Chain {
    let mut chain = Chain::new();
    for i in 0..4 {
        for s in wedges_of_degree(i) {
            if rng.gen_bool(0.5) {
                continue;
            }
            let deg = rng.gen_range(0..4);
            let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-3..=3)).collect();
            let m = GwaElement::term(Poly::from_ints(&coeffs), weight - wedge_weight(s));
            chain_add(&mut chain, s, &m);
        }
    }
    chain
}

/// Dimension of the weight-zero elements commuting with `x`, `y` and `h`.
pub fn center_dim(alg: &Gwa, schedule: &Schedule) -> Result<StabilizedDim> {
    stabilize(schedule, |bound| {
        let cod = bound + alg.n() + 1;
        let columns: Vec<Vec<Scalar>> = (0..=bound)
            .map(|k| {
                let p = GwaElement::from_poly(Poly::monomial(Scalar::one(), k));
                let cx = alg.commutator(&p, &alg.x()).coeff(1);
                let cy = alg.commutator(&p, &alg.y()).coeff(-1);
                let ch = alg.commutator(&p, &alg.h()).coeff(0);
                [cx, cy, ch]
                    .iter()
                    .flat_map(|q| (0..=cod).map(move |i| q.coeff(i)))
                    .collect()
            })
            .collect();
        let m = Matrix::from_columns(3 * (cod + 1), &columns);
        Ok(bound + 1 - m.rank())
    })
}
