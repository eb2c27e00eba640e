//! Invariant subalgebras for cyclic torus actions, the simplicity test,
//! the Cartan-type involution and brute-force `HH_0` computations.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{Automorphism, Gwa, GwaElement};
use crate::error::{Error, Result};
use crate::field::{Rational, Scalar};
use crate::formulas::{group_coh_dims, hh_dims, DimReport};
use crate::linalg::{quotient_dim, stabilize, Matrix, Schedule, StabilizedDim};
use crate::poly::{compose_scale, gcd_monic, sigma_pow, Poly};

/// Whether `a(rho - h) = (-1)^n a(h)` for some `rho`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reflectivity {
    pub reflective: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<Scalar>,
}

/// The only possible `rho` is fixed by the `h^{n-1}` coefficient; it is
/// then checked against the full identity.
pub fn reflectivity(a: &Poly) -> Reflectivity {
    let n = match a.degree() {
        Some(n) if n > 0 => n,
        _ => return Reflectivity { reflective: false, rho: None },
    };
    let rho = -(Scalar::from_i64(2) * a.coeff(n - 1)) / (Scalar::from_i64(n as i64) * a.coeff(n));
    let reflected = a.substitute_linear(&Scalar::from_i64(-1), &rho);
    let ok = if n % 2 == 0 { reflected == *a } else { reflected == -a };
    Reflectivity {
        reflective: ok,
        rho: ok.then_some(rho),
    }
}

/// Defining polynomial of the invariants under `x -> w x` with `w` of
/// order `r`: `ã(H) = prod_{j<r} sigma^{-j}(a)(rH)`.
pub fn invariant_polynomial(alg: &Gwa, r: u32) -> Result<Poly> {
    if r == 0 {
        return Err(Error::Hypothesis("group order must be positive".into()));
    }
    let mut prod = Poly::one();
    for j in 0..r as i64 {
        prod = &prod * &sigma_pow(alg.a(), -j, alg.sigma());
    }
    Ok(compose_scale(&prod, r))
}

/// `A^G = A(k[H], tau, ã)` with `X = x^r`, `Y = y^r`, `H = h / r` and
/// `tau(H) = H - h0`.
pub fn invariant_gwa(alg: &Gwa, r: u32) -> Result<Gwa> {
    Gwa::with_sigma(invariant_polynomial(alg, r)?, alg.sigma().clone())
}

/// Checks `y^r x^r = ã(h / r)` by multiplying in `A`.
pub fn verify_invariant_identity(alg: &Gwa, r: u32) -> Result<bool> {
    if r > 6 {
        return Err(Error::Unsupported(format!("r = {r} exceeds the cost guard 6")));
    }
    let tilde = invariant_polynomial(alg, r)?;
    let lhs = alg.mul(&alg.pow(&alg.y(), r), &alg.pow(&alg.x(), r));
    let inv_r = Scalar::from_ratio(1, r as i64);
    let rhs = tilde.substitute_linear(&inv_r, &Scalar::zero());
    Ok(lhs == GwaElement::from_poly(rhs))
}

fn rational_coeffs(p: &Poly) -> Option<Vec<Rational>> {
    p.coeffs().iter().map(|c| c.as_rational().cloned()).collect()
}

/// Simplicity of `A`: `a` squarefree and no two roots differing by a
/// nonzero integer multiple of `h0`.
///
/// Roots lie in the disc `|z| <= B = 1 + max |a_i / a_n|`, so only shifts
/// `j` with `|j h0| <= 2B` need testing.
pub fn simplicity_check(alg: &Gwa) -> Result<bool> {
    let a = alg.a();
    let coeffs = rational_coeffs(a)
        .ok_or_else(|| Error::Unsupported("simplicity test needs rational coefficients".into()))?;
    let h0 = alg
        .h0()
        .as_rational()
        .cloned()
        .ok_or_else(|| Error::Unsupported("simplicity test needs a rational shift".into()))?;
    if alg.d() > 0 {
        return Ok(false);
    }
    let lead = coeffs.last().expect("non-constant");
    let max = coeffs[..coeffs.len() - 1]
        .iter()
        .map(|c| (c / lead).abs())
        .fold(Rational::zero(), |m, v| if v > m { v } else { m });
    let bound = Rational::one() + max;
    let limit = (Rational::from_integer(2.into()) * bound / h0.abs()).ceil();
    let limit = limit
        .to_integer()
        .to_i64()
        .ok_or_else(|| Error::Unsupported("root bound too large".into()))?;
    for j in 1..=limit {
        let shifted = sigma_pow(a, -j, alg.sigma());
        if !gcd_monic(a, &shifted)?.is_constant() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn monomial(k: usize) -> Poly {
    Poly::monomial(Scalar::one(), k)
}

/// Weight-zero parts of `[h^i y, x]` and `[h^i x, y]` for `i <= bound`.
fn commutator_span(alg: &Gwa, bound: usize) -> Vec<Poly> {
    let (x, y) = (alg.x(), alg.y());
    (0..=bound)
        .flat_map(|i| {
            let hy = alg.mul(&GwaElement::from_poly(monomial(i)), &y);
            let hx = alg.mul(&GwaElement::from_poly(monomial(i)), &x);
            [alg.commutator(&hy, &x).coeff(0), alg.commutator(&hx, &y).coeff(0)]
        })
        .collect()
}

/// Weight-zero parts of `u v - v g(u)` for `(u, v) = (x, h^i y), (y, h^i x)`.
fn twisted_span(alg: &Gwa, g: &Automorphism, bound: usize) -> Result<Vec<Poly>> {
    let (x, y) = (alg.x(), alg.y());
    let mut out = Vec::with_capacity(2 * bound + 2);
    for i in 0..=bound {
        let hy = alg.mul(&GwaElement::from_poly(monomial(i)), &y);
        let hx = alg.mul(&GwaElement::from_poly(monomial(i)), &x);
        out.push(alg.twisted_commutator(&x, &hy, g)?.coeff(0));
        out.push(alg.twisted_commutator(&y, &hx, g)?.coeff(0));
    }
    Ok(out)
}

/// `dim A_0 / ([A_{-1}, x] + [A_1, y])`, which is `dim HH_0(A)`.
pub fn h0_bruteforce(alg: &Gwa, schedule: &Schedule) -> Result<StabilizedDim> {
    stabilize(schedule, |bound| Ok(quotient_dim(&commutator_span(alg, bound), bound)))
}

/// `dim H_0(A, Ag)` for `g: x -> w x`, from twisted commutators.
pub fn twisted_h0_bruteforce(alg: &Gwa, w: &Scalar, schedule: &Schedule) -> Result<StabilizedDim> {
    if w.is_zero() || w.is_one() {
        return Err(Error::Hypothesis("twist must be a nontrivial torus element".into()));
    }
    let g = Automorphism::Torus(w.clone());
    stabilize(schedule, |bound| Ok(quotient_dim(&twisted_span(alg, &g, bound)?, bound)))
}

/// Whether the classes of `1, h, ..., h^{n-2}` are linearly independent
/// modulo the commutator span truncated at `bound`.
pub fn h0_basis_independent(alg: &Gwa, bound: usize) -> bool {
    let n = alg.n();
    if n < 2 {
        return true;
    }
    let span = commutator_span(alg, bound);
    let mut with_basis = span.clone();
    with_basis.extend((0..n - 1).map(monomial));
    quotient_dim(&span, bound) - quotient_dim(&with_basis, bound) == n - 1
}

/// Reduces `f` modulo the span of `gens`, where `gens[i]` has degree
/// `n + i`, down to a polynomial of degree `< n`.
fn reduce_by_staircase(f: &Poly, gens: &[Poly], n: usize) -> Result<Poly> {
    let mut f = f.clone();
    while let Some(deg) = f.degree() {
        if deg < n || f.is_zero() {
            break;
        }
        let g = gens
            .get(deg - n)
            .ok_or_else(|| Error::ShapeMismatch(format!("no reducer for degree {deg}")))?;
        let c = f.coeff(deg).try_div(g.lead().expect("nonzero reducer"))?;
        f = &f - &g.scale(&c);
    }
    Ok(f)
}

/// Dimension of the fixed space of the Cartan-type involution on
/// `H_0(A, Ag) = k[h] / (sigma - w)(a k[h])`.
///
/// The quotient has representatives of degree `< n`. The involution acts
/// on weight zero by `h -> h0 + rho - h`; it is checked to preserve the
/// image and to square to the identity on the quotient.
pub fn omega_fixed_dim(alg: &Gwa, w: &Scalar, rho: &Scalar) -> Result<usize> {
    if w.is_zero() || w.is_one() {
        return Err(Error::Hypothesis("twist must be a nontrivial torus element".into()));
    }
    let omega = Automorphism::Omega(rho.clone());
    let n = alg.n();
    let act = |p: &Poly| -> Result<Poly> { Ok(omega.apply(alg, &GwaElement::from_poly(p.clone()))?.coeff(0)) };
    let gens: Vec<Poly> = (0..=n + 1)
        .map(|i| {
            let q = alg.a() * &monomial(i);
            &alg.sigma().apply(&q) - &q.scale(w)
        })
        .collect();
    for (i, g) in gens.iter().enumerate() {
        if !reduce_by_staircase(&act(g)?, &gens, n)?.is_zero() {
            return Err(Error::NotAnInvolution(format!(
                "image of (sigma - w)(a h^{i}) leaves the image"
            )));
        }
    }
    let columns = (0..n)
        .map(|k| {
            let img = reduce_by_staircase(&act(&monomial(k))?, &gens, n)?;
            Ok((0..n).map(|i| img.coeff(i)).collect())
        })
        .collect::<Result<Vec<Vec<Scalar>>>>()?;
    let m = Matrix::from_columns(n, &columns);
    if m.mul(&m)? != Matrix::identity(n) {
        return Err(Error::NotAnInvolution("induced map does not square to the identity".into()));
    }
    let mut shifted = m;
    for i in 0..n {
        let v = shifted.get(i, i) - &Scalar::one();
        shifted.set(i, i, v);
    }
    Ok(n - shifted.rank())
}

/// Checks that `exp(lambda ad y^m)` and `exp(lambda ad x^m)` send `h^i`
/// to an element whose weight-zero part is `h^i`, for `1 <= i <= i_max`.
pub fn exp_triviality_on_h0(alg: &Gwa, m: u32, lambda: &Scalar, i_max: u32) -> Result<bool> {
    let autos = [
        Automorphism::ExpY { m, lambda: lambda.clone() },
        Automorphism::ExpX { m, lambda: lambda.clone() },
    ];
    for g in &autos {
        for i in 1..=i_max {
            let hi = GwaElement::from_poly(monomial(i as usize));
            if g.apply(alg, &hi)?.coeff(0) != monomial(i as usize) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// One conjugacy class of a finite group acting through the torus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDescriptor {
    /// Order of a torus representative.
    pub order: u32,
    /// Whether the Cartan-type involution centralizes the representative.
    pub omega: bool,
}

/// Conjugacy classes of `G`, one per line as `order=<m> omega=<yes|no>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupClassData {
    pub classes: Vec<ClassDescriptor>,
}

impl GroupClassData {
    pub fn new(classes: Vec<ClassDescriptor>) -> Result<Self> {
        let identities = classes.iter().filter(|c| c.order == 1).count();
        if identities != 1 {
            return Err(Error::Parse(format!(
                "expected exactly one identity class (order=1), found {identities}"
            )));
        }
        if classes.iter().any(|c| c.order == 0) {
            return Err(Error::Parse("class order must be positive".into()));
        }
        Ok(GroupClassData { classes })
    }

    /// Non-identity classes not centralized by the involution.
    pub fn a1(&self) -> usize {
        self.classes.iter().filter(|c| c.order > 1 && !c.omega).count()
    }

    /// Non-identity classes centralized by the involution.
    pub fn a2(&self) -> usize {
        self.classes.iter().filter(|c| c.order > 1 && c.omega).count()
    }

    /// `Some(r)` when the data describe a cyclic group of order `r` with no
    /// class centralized by the involution.
    pub fn cyclic_order(&self) -> Option<u32> {
        let r = self.classes.iter().map(|c| c.order).max()?;
        let orders_divide = self.classes.iter().all(|c| r % c.order == 0);
        (self.classes.len() == r as usize && orders_divide && self.a2() == 0).then_some(r)
    }
}

impl FromStr for GroupClassData {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut classes = Vec::new();
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let mut order = None;
            let mut omega = None;
            for field in line.split_whitespace() {
                let (key, value) = field
                    .split_once('=')
                    .ok_or_else(|| Error::Parse(format!("expected key=value, got {field:?}")))?;
                match key {
                    "order" => {
                        order = Some(value.parse::<u32>().map_err(|e| Error::Parse(format!("order: {e}")))?)
                    }
                    "omega" => {
                        omega = Some(match value {
                            "yes" => true,
                            "no" => false,
                            _ => return Err(Error::Parse(format!("omega must be yes or no, got {value:?}"))),
                        })
                    }
                    _ => return Err(Error::Parse(format!("unknown key {key:?}"))),
                }
            }
            match (order, omega) {
                (Some(order), Some(omega)) => classes.push(ClassDescriptor { order, omega }),
                _ => return Err(Error::Parse(format!("line {line:?} needs order= and omega="))),
            }
        }
        GroupClassData::new(classes)
    }
}

impl fmt::Display for GroupClassData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.classes {
            writeln!(f, "order={} omega={}", c.order, if c.omega { "yes" } else { "no" })?;
        }
        Ok(())
    }
}

/// `HH^*(A^G)` from the class data. Requires the simplicity condition.
///
/// For a cyclic group inside the torus the degree-two value is compared
/// with `dim HH_0` of the invariant algebra from [`invariant_gwa`]; the
/// outcome is stored in `agreement`.
pub fn group_report(alg: &Gwa, classes: &GroupClassData, p_max: usize) -> Result<DimReport> {
    if !simplicity_check(alg)? {
        return Err(Error::Hypothesis(
            "the class-count formula needs a simple algebra (simple roots, none congruent mod h0)".into(),
        ));
    }
    let mut report = group_coh_dims(alg.n(), classes.a1(), classes.a2(), p_max.max(2))?;
    if let Some(r) = classes.cyclic_order() {
        let inv = invariant_gwa(alg, r)?;
        report.agreement = Some(hh_dims(&inv, 0).dims[0] == report.dims[2]);
    }
    report.dims.truncate(p_max + 1);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gwa(a: &str, h0: Scalar) -> Gwa {
        Gwa::new(Poly::parse(a).unwrap(), h0).unwrap()
    }

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn reflectivity_examples() {
        let r = reflectivity(&p("1 - h*(h+1)"));
        assert_eq!(r.rho, Some(Scalar::from_i64(-1)));
        let r = reflectivity(&p("h"));
        assert_eq!(r.rho, Some(Scalar::zero()));
        assert!(!reflectivity(&p("h^3 + h + 1")).reflective);
    }

    #[test]
    fn invariant_polynomials() {
        let alg = gwa("h", Scalar::one());
        assert_eq!(invariant_polynomial(&alg, 2).unwrap(), p("4*h^2 + 2*h"));
        let alg = gwa("h^2 - 1", Scalar::one());
        assert_eq!(invariant_polynomial(&alg, 1).unwrap(), p("h^2 - 1"));
        assert_eq!(invariant_polynomial(&alg, 2).unwrap(), p("(4*h^2 - 1)*((2*h + 1)^2 - 1)"));
        assert_eq!(invariant_gwa(&alg, 3).unwrap().n(), 6);
    }

    #[test]
    fn invariant_identity() {
        assert!(verify_invariant_identity(&gwa("h", Scalar::one()), 2).unwrap());
        assert!(verify_invariant_identity(&gwa("h^2 - 1", Scalar::one()), 1).unwrap());
        assert!(verify_invariant_identity(&gwa("h^2 - 1", Scalar::from_ratio(1, 2)), 3).unwrap());
        assert!(verify_invariant_identity(&gwa("h^3 - 2*h + 5", Scalar::from_i64(-2)), 4).unwrap());
    }

    #[test]
    fn simplicity_examples() {
        assert!(!simplicity_check(&gwa("h^2 - 1", Scalar::one())).unwrap());
        assert!(!simplicity_check(&gwa("h^2", Scalar::one())).unwrap());
        assert!(simplicity_check(&gwa("h^2 - 2", Scalar::one())).unwrap());
        // roots 0 and 3 differ by 3 h0 only when h0 divides 3
        assert!(!simplicity_check(&gwa("h*(h-3)", Scalar::from_ratio(3, 2))).unwrap());
        assert!(simplicity_check(&gwa("h*(h-3)", Scalar::from_i64(2))).unwrap());
        let cyc = Gwa::new(Poly::from_coeffs(vec![Scalar::zeta(3).unwrap(), Scalar::one()]), Scalar::one()).unwrap();
        assert!(simplicity_check(&cyc).is_err());
    }

    #[test]
    fn hh0_bruteforce() {
        let alg = gwa("h", Scalar::one());
        assert_eq!(h0_bruteforce(&alg, &Schedule::for_degree(1)).unwrap().value, 0);
        let alg = gwa("h^3", Scalar::one());
        assert_eq!(h0_bruteforce(&alg, &Schedule::for_degree(3)).unwrap().value, 2);
        assert!(h0_basis_independent(&alg, 12));
        let alg = gwa("h^2 - 1", Scalar::from_i64(3));
        assert_eq!(h0_bruteforce(&alg, &Schedule::for_degree(2)).unwrap().value, 1);
    }

    #[test]
    fn twisted_hh0_bruteforce() {
        let cases = [("h", Scalar::from_i64(-1), 1), ("h^2 - 2", Scalar::zeta(3).unwrap(), 2), ("h^3 - h", Scalar::from_i64(-1), 3)];
        for (a, w, n) in cases {
            let alg = gwa(a, Scalar::one());
            assert_eq!(twisted_h0_bruteforce(&alg, &w, &Schedule::for_degree(n)).unwrap().value, n);
        }
    }

    #[test]
    fn omega_fixed_dimensions() {
        let w = Scalar::from_i64(-1);
        for (a, n) in [("1 - h*(h+1)", 2), ("h", 1), ("h^4 - 5*h^2 + 6", 4)] {
            let alg = gwa(a, Scalar::one());
            let rho = reflectivity(alg.a()).rho.unwrap();
            assert_eq!(omega_fixed_dim(&alg, &w, &rho).unwrap(), (n + 1) / 2);
        }
    }

    #[test]
    fn omega_needs_centralizer() {
        let alg = gwa("1 - h*(h+1)", Scalar::one());
        let err = omega_fixed_dim(&alg, &Scalar::zeta(3).unwrap(), &Scalar::from_i64(-1));
        assert!(matches!(err, Err(Error::NotAnInvolution(_))));
    }

    #[test]
    fn exponential_automorphisms() {
        let alg = gwa("h^3", Scalar::one());
        assert!(exp_triviality_on_h0(&alg, 1, &Scalar::one(), 2).unwrap());
        assert!(exp_triviality_on_h0(&alg, 1, &Scalar::zero(), 2).unwrap());
        let alg = gwa("h^2 - 1", Scalar::one());
        assert!(exp_triviality_on_h0(&alg, 2, &Scalar::from_ratio(3, 2), 3).unwrap());
    }

    #[test]
    fn class_data_parsing() {
        let data: GroupClassData = "order=1 omega=no\norder=2 omega=no\n".parse().unwrap();
        assert_eq!((data.a1(), data.a2(), data.cyclic_order()), (1, 0, Some(2)));
        assert_eq!(data.to_string().parse::<GroupClassData>().unwrap(), data);
        assert!("order=2 omega=no".parse::<GroupClassData>().is_err());
        assert!("order=1 omega=maybe".parse::<GroupClassData>().is_err());
    }

    #[test]
    fn group_reports() {
        let alg = gwa("h^2 - 2", Scalar::one());
        let cyclic: GroupClassData = "order=1 omega=no\norder=2 omega=no".parse().unwrap();
        let r = group_report(&alg, &cyclic, 4).unwrap();
        assert_eq!(r.dims, [1, 0, 3, 0, 0]);
        assert_eq!(r.agreement, Some(true));
        let trivial: GroupClassData = "order=1 omega=no".parse().unwrap();
        assert_eq!(group_report(&alg, &trivial, 3).unwrap().dims, [1, 0, 1, 0]);
        let refl: GroupClassData = "order=1 omega=no\norder=2 omega=yes".parse().unwrap();
        assert_eq!(group_report(&alg, &refl, 3).unwrap().dims, [1, 0, 2, 0]);
        assert!(group_report(&gwa("h^2 - 1", Scalar::one()), &cyclic, 3).is_err());
    }
}
