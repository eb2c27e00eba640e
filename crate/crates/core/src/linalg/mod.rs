//! Exact linear algebra on truncated polynomial spaces `k[h]_{<=D}`.
//!
//! A [`TruncatedSpace`] is `c` copies of `k[h]_{<=D}` with basis
//! `h^i` in copy `t`, stored at index `t * (D + 1) + i`.

mod matrix;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use matrix::{bareiss_rank, sparse_rank, Matrix};

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::poly::{Poly, ShiftSigma};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSpace {
    /// Cyclotomic order of the scalar field, 1 for `Q`.
    pub field_order: u32,
    pub copies: usize,
    pub bound: usize,
}

impl TruncatedSpace {
    pub fn new(field_order: u32, copies: usize, bound: usize) -> Self {
        TruncatedSpace {
            field_order,
            copies,
            bound,
        }
    }

    pub fn dim(&self) -> usize {
        self.copies * (self.bound + 1)
    }

    pub fn index(&self, copy: usize, degree: usize) -> usize {
        debug_assert!(copy < self.copies && degree <= self.bound);
        copy * (self.bound + 1) + degree
    }

    /// Coordinates of a tuple of polynomials, one per copy.
    pub fn coordinates(&self, polys: &[Poly]) -> Result<Vec<Scalar>> {
        if polys.len() != self.copies {
            return Err(Error::ShapeMismatch(format!(
                "{} polynomials for {} copies",
                polys.len(),
                self.copies
            )));
        }
        let mut v = vec![Scalar::zero(); self.dim()];
        for (t, p) in polys.iter().enumerate() {
            if let Some(deg) = p.degree() {
                if deg > self.bound {
                    return Err(Error::CodomainTooSmall {
                        bound: self.bound,
                        degree: deg,
                    });
                }
            }
            for (i, c) in p.coeffs().iter().enumerate() {
                v[self.index(t, i)] = c.clone();
            }
        }
        Ok(v)
    }

    /// Re-indexes a coordinate vector into a space with a larger bound.
    pub fn embed(&self, v: &[Scalar], into: &TruncatedSpace) -> Result<Vec<Scalar>> {
        if into.copies != self.copies || into.bound < self.bound {
            return Err(Error::ShapeMismatch(format!(
                "cannot embed {self:?} into {into:?}"
            )));
        }
        let mut out = vec![Scalar::zero(); into.dim()];
        for t in 0..self.copies {
            for i in 0..=self.bound {
                out[into.index(t, i)] = v[self.index(t, i)].clone();
            }
        }
        Ok(out)
    }
}

/// Matrix of a linear map between truncated spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedMap {
    pub domain: TruncatedSpace,
    pub codomain: TruncatedSpace,
    pub matrix: Matrix,
}

impl TruncatedMap {
    pub fn new(domain: TruncatedSpace, codomain: TruncatedSpace, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != codomain.dim() || matrix.cols() != domain.dim() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix for {} -> {} dimensional spaces",
                matrix.rows(),
                matrix.cols(),
                domain.dim(),
                codomain.dim()
            )));
        }
        Ok(TruncatedMap {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn zero(domain: TruncatedSpace, codomain: TruncatedSpace) -> Self {
        TruncatedMap {
            domain,
            codomain,
            matrix: Matrix::zeros(codomain.dim(), domain.dim()),
        }
    }

    pub fn identity(space: TruncatedSpace) -> Self {
        TruncatedMap {
            domain: space,
            codomain: space,
            matrix: Matrix::identity(space.dim()),
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// `self` after `first`; the intermediate spaces must match exactly.
    pub fn after(&self, first: &TruncatedMap) -> Result<TruncatedMap> {
        if first.codomain != self.domain {
            return Err(Error::ShapeMismatch(format!(
                "composing through {:?} and {:?}",
                first.codomain, self.domain
            )));
        }
        TruncatedMap::new(first.domain, self.codomain, self.matrix.mul(&first.matrix)?)
    }
}

/// Linear operators on `k[h]` built from multiplication and the shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyOperator {
    /// `p -> q p`.
    MulBy(Poly),
    /// `p -> sigma^k(p)`.
    Sigma(i64),
    /// `Id - sigma`.
    IdMinusSigma,
    /// `sigma - w Id`.
    SigmaMinus(Scalar),
    /// Applies the listed operators first to last.
    Then(Vec<PolyOperator>),
}

impl PolyOperator {
    pub fn apply(&self, p: &Poly, sigma: &ShiftSigma) -> Poly {
        match self {
            PolyOperator::MulBy(q) => q * p,
            PolyOperator::Sigma(k) => sigma.pow(p, *k),
            PolyOperator::IdMinusSigma => p - &sigma.apply(p),
            PolyOperator::SigmaMinus(w) => &sigma.apply(p) - &p.scale(w),
            PolyOperator::Then(list) => list.iter().fold(p.clone(), |acc, op| op.apply(&acc, sigma)),
        }
    }

    /// Upper bound on how much the operator raises degree.
    pub fn degree_raise(&self) -> usize {
        match self {
            PolyOperator::MulBy(q) => q.degree().unwrap_or(0),
            PolyOperator::Then(list) => list.iter().map(PolyOperator::degree_raise).sum(),
            _ => 0,
        }
    }

    pub fn field_order(&self, sigma: &ShiftSigma) -> u32 {
        match self {
            PolyOperator::MulBy(q) => q.field_order(),
            PolyOperator::SigmaMinus(w) => w.order(),
            PolyOperator::Then(list) => list.iter().map(|o| o.field_order(sigma)).max().unwrap_or(1),
            _ => 1,
        }
        .max(sigma.h0().order())
    }
}

/// Matrix of `op` from `k[h]_{<=d_dom}` into `k[h]_{<=d_cod}`.
pub fn operator_matrix(
    op: &PolyOperator,
    sigma: &ShiftSigma,
    d_dom: usize,
    d_cod: usize,
) -> Result<TruncatedMap> {
    let order = op.field_order(sigma);
    let domain = TruncatedSpace::new(order, 1, d_dom);
    let codomain = TruncatedSpace::new(order, 1, d_cod);
    let columns = (0..=d_dom)
        .map(|i| codomain.coordinates(&[op.apply(&Poly::monomial(Scalar::one(), i), sigma)]))
        .collect::<Result<Vec<_>>>()?;
    TruncatedMap::new(domain, codomain, Matrix::from_columns(codomain.dim(), &columns))
}

/// `dim k[h]_{<=bound} / (W ∩ k[h]_{<=bound})` for `W` spanned by `gens`.
pub fn quotient_dim(gens: &[Poly], bound: usize) -> usize {
    let top = gens
        .iter()
        .filter_map(Poly::degree)
        .max()
        .unwrap_or(0)
        .max(bound);
    let columns: Vec<Vec<Scalar>> = gens
        .iter()
        .map(|p| (0..=top).map(|k| p.coeff(k)).collect())
        .collect();
    let m = Matrix::from_columns(top + 1, &columns);
    let high: Vec<usize> = (bound + 1..=top).collect();
    let inside = m.rank() - m.select_rows(&high).rank();
    bound + 1 - inside
}

/// Codimension in `k[h]` of the sum of the images of `ops`.
pub fn codim_of_image(
    ops: &[PolyOperator],
    sigma: &ShiftSigma,
    schedule: &Schedule,
) -> Result<StabilizedDim> {
    stabilize(schedule, |bound| {
        let gens: Vec<Poly> = ops
            .iter()
            .flat_map(|op| {
                (0..=bound).map(move |i| op.apply(&Poly::monomial(Scalar::one(), i), sigma))
            })
            .collect();
        Ok(quotient_dim(&gens, bound))
    })
}

/// Homology at the middle of `dnext` followed by `dp`.
///
/// Counts `dim ker(dp) - dim(im(dnext) ∩ ker(dp))` as
/// `rank([K | N]) - rank(N)` with `K` a kernel basis of `dp` and `N` the
/// matrix of `dnext`.
pub fn homology_dim_at(dp: &TruncatedMap, dnext: &TruncatedMap) -> Result<usize> {
    let mid = dp.domain;
    let ambient = dnext.codomain;
    if ambient.copies != mid.copies || ambient.bound < mid.bound {
        return Err(Error::ShapeMismatch(format!(
            "boundary codomain {ambient:?} does not contain cycle space {mid:?}"
        )));
    }
    let kernel = dp.matrix.kernel();
    let columns = (0..kernel.cols())
        .map(|j| mid.embed(&kernel.column(j), &ambient))
        .collect::<Result<Vec<_>>>()?;
    let k = Matrix::from_columns(ambient.dim(), &columns);
    let joined = k.hstack(&dnext.matrix)?;
    Ok(joined.rank() - dnext.matrix.rank())
}

/// Bounds tried when stabilizing a truncated computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub start: usize,
    pub step: usize,
    /// Number of consecutive equal observations required.
    pub window: usize,
    pub max: usize,
}

impl Schedule {
    pub const DEFAULT_MAX: usize = 240;

    /// `D_0 = max(4n, 12)`, step 4, window 2, cap 240.
    pub fn for_degree(n: usize) -> Self {
        Schedule {
            start: (4 * n).max(12),
            step: 4,
            window: 2,
            max: Self::DEFAULT_MAX,
        }
    }

    pub fn with_start(mut self, start: usize) -> Self {
        self.start = start;
        self
    }

    pub fn with_max(mut self, max: usize) -> Self {
        self.max = max;
        self
    }

    pub fn with_window(mut self, window: usize) -> Self {
        self.window = window.max(1);
        self
    }

    fn bounds(&self) -> impl Iterator<Item = usize> + '_ {
        (0..)
            .map(|k| self.start + k * self.step.max(1))
            .take_while(|&d| d <= self.max)
    }
}

/// A dimension certified by repeated equal values at increasing bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizedDim {
    pub value: usize,
    pub stabilized_at: usize,
    /// `(D, value)` observations in schedule order.
    pub schedule: Vec<(usize, usize)>,
}

impl StabilizedDim {
    pub fn exact(value: usize) -> Self {
        StabilizedDim {
            value,
            stabilized_at: 0,
            schedule: Vec::new(),
        }
    }
}

/// Evaluates `f` along the schedule until `window` consecutive values agree.
/// Each batch of `window` bounds is evaluated in parallel.
pub fn stabilize<F>(schedule: &Schedule, f: F) -> Result<StabilizedDim>
where
    F: Fn(usize) -> Result<usize> + Sync,
{
    match stabilize_values(schedule, f)? {
        Stabilized::Reached { value, at, seen } => Ok(StabilizedDim {
            value,
            stabilized_at: at,
            schedule: seen,
        }),
        Stabilized::Exhausted { seen } => Err(Error::NoStabilization {
            max: schedule.max,
            schedule: seen,
        }),
    }
}

/// Outcome of [`stabilize_values`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stabilized<T> {
    Reached {
        value: T,
        at: usize,
        seen: Vec<(usize, T)>,
    },
    Exhausted {
        seen: Vec<(usize, T)>,
    },
}

/// [`stabilize`] for any comparable observation, e.g. a list of dimensions.
pub fn stabilize_values<T, F>(schedule: &Schedule, f: F) -> Result<Stabilized<T>>
where
    T: Clone + PartialEq + Send,
    F: Fn(usize) -> Result<T> + Sync,
{
    let bounds: Vec<usize> = schedule.bounds().collect();
    let window = schedule.window.max(1);
    let mut seen: Vec<(usize, T)> = Vec::new();
    let mut next = 0;
    while next < bounds.len() {
        let run = match seen.last() {
            Some(last) => seen.iter().rev().take_while(|o| o.1 == last.1).count(),
            None => 0,
        };
        let need = window - run.min(window - 1);
        let batch = &bounds[next..(next + need).min(bounds.len())];
        let values = batch
            .par_iter()
            .map(|&d| f(d).map(|v| (d, v)))
            .collect::<Result<Vec<_>>>()?;
        seen.extend(values);
        next += batch.len();
        if seen.len() >= window {
            let tail = &seen[seen.len() - window..];
            if tail.iter().all(|o| o.1 == tail[0].1) {
                let (at, value) = seen.last().unwrap().clone();
                return Ok(Stabilized::Reached { value, at, seen });
            }
        }
    }
    Ok(Stabilized::Exhausted { seen })
}

/// Homology dimension from ranks alone, valid when `dnext` followed by
/// `dp` is zero: `dim C - rank(dp) - dim(im(dnext) ∩ C)`, where `C` is the
/// domain of `dp` and the intersection is read off the rows of `dnext`
/// above the bound of `C`.
pub fn homology_dim_by_ranks(dp: &TruncatedMap, dnext: &TruncatedMap) -> Result<usize> {
    let mid = dp.domain;
    let ambient = dnext.codomain;
    if ambient.copies != mid.copies || ambient.bound < mid.bound {
        return Err(Error::ShapeMismatch(format!(
            "boundary codomain {ambient:?} does not contain cycle space {mid:?}"
        )));
    }
    let high: Vec<usize> = (0..ambient.copies)
        .flat_map(|t| (mid.bound + 1..=ambient.bound).map(move |i| ambient.index(t, i)))
        .collect();
    let (cycles, boundaries) = rayon::join(
        || mid.dim() - dp.rank(),
        || dnext.matrix.rank() - dnext.matrix.select_rows(&high).rank(),
    );
    Ok(cycles - boundaries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(h0: i64) -> ShiftSigma {
        ShiftSigma::new(Scalar::from_i64(h0)).unwrap()
    }

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn id_minus_sigma_matrix() {
        let m = operator_matrix(&PolyOperator::IdMinusSigma, &sig(1), 1, 1).unwrap();
        assert_eq!(m.matrix.column(0), vec![Scalar::zero(), Scalar::zero()]);
        assert_eq!(m.matrix.column(1), vec![Scalar::one(), Scalar::zero()]);
        assert_eq!(m.matrix.kernel().cols(), 1);
    }

    #[test]
    fn mul_then_id_minus_sigma() {
        let op = PolyOperator::Then(vec![PolyOperator::MulBy(p("h^2")), PolyOperator::IdMinusSigma]);
        assert_eq!(op.apply(&Poly::one(), &sig(1)), p("2*h - 1"));
        assert!(matches!(
            operator_matrix(&op, &sig(1), 2, 2),
            Err(Error::CodomainTooSmall { .. })
        ));
        assert_eq!(operator_matrix(&op, &sig(1), 2, 4).unwrap().rank(), 3);
    }

    #[test]
    fn sigma_minus_w_on_constants() {
        let w = Scalar::zeta(3).unwrap();
        let op = PolyOperator::SigmaMinus(w.clone());
        let m = operator_matrix(&op, &sig(1), 0, 0).unwrap();
        assert_eq!(m.matrix.get(0, 0), &(Scalar::one() - w));
    }

    #[test]
    fn codim_examples() {
        let sched = Schedule::for_degree(2);
        let mul = |s: &str| PolyOperator::MulBy(p(s));
        let then = |a: PolyOperator, b: PolyOperator| PolyOperator::Then(vec![a, b]);
        let c = codim_of_image(&[then(mul("h^2"), PolyOperator::IdMinusSigma)], &sig(1), &sched).unwrap();
        assert_eq!(c.value, 1);
        let c = codim_of_image(
            &[
                then(mul("h^3"), PolyOperator::IdMinusSigma),
                then(mul("3*h^2"), PolyOperator::IdMinusSigma),
            ],
            &sig(1),
            &sched,
        )
        .unwrap();
        assert_eq!(c.value, 1);
        let c = codim_of_image(
            &[then(mul("h^2"), PolyOperator::SigmaMinus(Scalar::from_i64(-1)))],
            &sig(1),
            &sched,
        )
        .unwrap();
        assert_eq!(c.value, 2);
    }

    #[test]
    fn codim_independent_of_start() {
        let op = PolyOperator::Then(vec![PolyOperator::MulBy(p("h^3 - h")), PolyOperator::IdMinusSigma]);
        let a = codim_of_image(&[op.clone()], &sig(2), &Schedule::for_degree(3)).unwrap();
        let b = codim_of_image(&[op], &sig(2), &Schedule::for_degree(3).with_start(21)).unwrap();
        assert_eq!(a.value, 2);
        assert_eq!(a.value, b.value);
    }

    #[test]
    fn homology_examples() {
        let s = TruncatedSpace::new(1, 1, 5);
        let z = TruncatedMap::zero(s, s);
        assert_eq!(homology_dim_at(&z, &z).unwrap(), 6);
        let id = TruncatedMap::identity(s);
        assert_eq!(homology_dim_at(&id, &z).unwrap(), 0);
        let op = PolyOperator::Then(vec![PolyOperator::MulBy(p("h^2 - 1")), PolyOperator::IdMinusSigma]);
        let d = operator_matrix(&op, &sig(1), 5, 7).unwrap();
        assert_eq!(d.matrix.kernel().cols(), 0);
        assert_eq!(homology_dim_at(&d, &z).unwrap(), 0);
    }

    #[test]
    fn no_stabilization_reports_schedule() {
        let sched = Schedule::for_degree(1).with_max(20);
        let err = stabilize(&sched, |d| Ok(d)).unwrap_err();
        match err {
            Error::NoStabilization { max, schedule } => {
                assert_eq!(max, 20);
                assert_eq!(schedule.len(), 3);
            }
            e => panic!("unexpected {e}"),
        }
        let ok = stabilize(&sched.with_window(3), |d| Ok(d.min(12))).unwrap();
        assert_eq!(ok.value, 12);
        assert_eq!(ok.stabilized_at, 20);
    }
}
