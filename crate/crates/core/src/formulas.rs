//! Closed-form dimension tables for `HH_*`, `HH^*`, twisted coefficients
//! and invariant subalgebras.

use serde::{Deserialize, Serialize};

use crate::algebra::Gwa;
use crate::complex::{oracle_dims, ComplexKind, Variant};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{Schedule, StabilizedDim};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Formula,
    Oracle,
}

/// Dimensions per degree `0..=p_max` together with `n = deg a` and
/// `d = deg gcd(a, a')`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimReport {
    pub n: usize,
    pub d: usize,
    pub dims: Vec<usize>,
    pub source: Source,
    pub kind: ComplexKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agreement: Option<bool>,
}

impl DimReport {
    fn formula(alg: &Gwa, kind: ComplexKind, dims: Vec<usize>) -> Self {
        DimReport {
            n: alg.n(),
            d: alg.d(),
            dims,
            source: Source::Formula,
            kind,
            agreement: None,
        }
    }

    /// Marks both reports with whether their dimension lists coincide.
    pub fn compare(&mut self, other: &mut DimReport) -> bool {
        let same = self.dims == other.dims;
        self.agreement = Some(same);
        other.agreement = Some(same);
        same
    }
}

/// `head` followed by `tail` repeated up to length `p_max + 1`.
fn table(head: &[usize], tail: usize, p_max: usize) -> Vec<usize> {
    (0..=p_max)
        .map(|p| head.get(p).copied().unwrap_or(tail))
        .collect()
}

/// `HH_*(A)`: `[n-1, 0, 1, 0, ...]` if `d = 0`, else `[n-1, d-1, d, d, ...]`.
pub fn hh_dims(alg: &Gwa, p_max: usize) -> DimReport {
    let (n, d) = (alg.n(), alg.d());
    let dims = if d == 0 {
        table(&[n - 1, 0, 1], 0, p_max)
    } else {
        table(&[n - 1, d - 1], d, p_max)
    };
    DimReport::formula(alg, ComplexKind::homology(), dims)
}

/// `HH^*(A)`: `[1, 0, n-1, d, d, ...]`.
pub fn coh_dims(alg: &Gwa, p_max: usize) -> DimReport {
    let (n, d) = (alg.n(), alg.d());
    DimReport::formula(alg, ComplexKind::cohomology(), table(&[1, 0, n - 1], d, p_max))
}

/// `H_*(A, Ag)` is `[n, d, d, ...]` and `H^*(A, Ag)` is `[0, 0, n, d, ...]`
/// for a torus element `g: x -> w x` with `w != 1`.
///
/// The simplicity and conjugacy hypotheses are not checked here.
pub fn twisted_dims(alg: &Gwa, variant: Variant, w: &Scalar, p_max: usize) -> Result<DimReport> {
    if w.is_zero() || w.is_one() {
        return Err(Error::Hypothesis("twist must be a torus element other than the identity".into()));
    }
    let (n, d) = (alg.n(), alg.d());
    let dims = match variant {
        Variant::Homology => table(&[n], d, p_max),
        Variant::Cohomology => table(&[0, 0, n], d, p_max),
    };
    Ok(DimReport::formula(alg, ComplexKind::twisted(variant, w.clone()), dims))
}

/// `HH^*(A^G)` for a finite group `G` as in the class-count formula:
/// degree two is `(n-1) + n a1 + floor((n+1)/2) a2`, everything above vanishes.
pub fn group_coh_dims(n: usize, a1: usize, a2: usize, p_max: usize) -> Result<DimReport> {
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let top = (n - 1) + n * a1 + (n + 1) / 2 * a2;
    Ok(DimReport {
        n,
        d: 0,
        dims: table(&[1, 0, top], 0, p_max),
        source: Source::Formula,
        kind: ComplexKind::cohomology(),
        agreement: None,
    })
}

/// Whether `HH_p = HH^{2-p}` for all `p` (with both vanishing above
/// degree two), which happens exactly when `a` has simple roots.
pub fn duality_flag(alg: &Gwa) -> bool {
    let hh = hh_dims(alg, 4).dims;
    let coh = coh_dims(alg, 4).dims;
    (0..=2).all(|p| hh[p] == coh[2 - p]) && hh[3..].iter().chain(&coh[3..]).all(|&v| v == 0)
}

/// Oracle dimensions packaged as a report, with the stabilization data.
pub fn oracle_report(
    alg: &Gwa,
    kind: &ComplexKind,
    p_max: usize,
    schedule: &Schedule,
) -> Result<(DimReport, Vec<StabilizedDim>)> {
    let stab = oracle_dims(alg, kind, p_max, schedule)?;
    let report = DimReport {
        n: alg.n(),
        d: alg.d(),
        dims: stab.iter().map(|s| s.value).collect(),
        source: Source::Oracle,
        kind: kind.clone(),
        agreement: None,
    };
    Ok((report, stab))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn gwa(a: &str) -> Gwa {
        Gwa::new(Poly::parse(a).unwrap(), Scalar::one()).unwrap()
    }

    #[test]
    fn homology_tables() {
        assert_eq!(hh_dims(&gwa("h"), 4).dims, [0, 0, 1, 0, 0]);
        assert_eq!(hh_dims(&gwa("-(h+1/2)^2"), 4).dims, [1, 0, 1, 1, 1]);
        assert_eq!(hh_dims(&gwa("h^3 - h"), 4).dims, [2, 0, 1, 0, 0]);
        assert_eq!(hh_dims(&gwa("h^3"), 5).dims, [2, 1, 2, 2, 2, 2]);
    }

    #[test]
    fn cohomology_tables() {
        assert_eq!(coh_dims(&gwa("h"), 4).dims, [1, 0, 0, 0, 0]);
        assert_eq!(coh_dims(&gwa("h^3"), 4).dims, [1, 0, 2, 2, 2]);
        assert_eq!(coh_dims(&gwa("h^2 - 1"), 4).dims, [1, 0, 1, 0, 0]);
    }

    #[test]
    fn twisted_tables() {
        let w = Scalar::from_i64(-1);
        assert_eq!(twisted_dims(&gwa("h^2 - 1"), Variant::Homology, &w, 3).unwrap().dims, [2, 0, 0, 0]);
        assert_eq!(twisted_dims(&gwa("h^2"), Variant::Cohomology, &w, 4).unwrap().dims, [0, 0, 2, 1, 1]);
        assert_eq!(twisted_dims(&gwa("h"), Variant::Homology, &w, 3).unwrap().dims, [1, 0, 0, 0]);
        assert!(twisted_dims(&gwa("h"), Variant::Homology, &Scalar::one(), 3).is_err());
    }

    #[test]
    fn group_tables() {
        assert_eq!(group_coh_dims(2, 1, 0, 3).unwrap().dims, [1, 0, 3, 0]);
        assert_eq!(group_coh_dims(1, 0, 0, 3).unwrap().dims, [1, 0, 0, 0]);
        assert_eq!(group_coh_dims(2, 0, 1, 3).unwrap().dims, [1, 0, 2, 0]);
    }

    #[test]
    fn duality() {
        assert!(duality_flag(&gwa("h^2 - 1")));
        assert!(!duality_flag(&gwa("h^2")));
        assert!(duality_flag(&gwa("h")));
    }

    #[test]
    fn report_round_trip() {
        let mut f = hh_dims(&gwa("h^2"), 4);
        let mut g = f.clone();
        g.source = Source::Oracle;
        assert!(f.compare(&mut g));
        let json = serde_json::to_string(&f).unwrap();
        let back: DimReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }
}
