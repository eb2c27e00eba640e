//! Seeded property suite over a family of random algebras.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::algebra::{Gwa, GwaElement};
use crate::complex::{bezout_d2_test, build_differentials, center_dim, euler_homotopy_check, ComplexKind, Variant};
use crate::error::Result;
use crate::field::Scalar;
use crate::invariants::{exp_triviality_on_h0, h0_basis_independent, h0_bruteforce};
use crate::linalg::Schedule;
use crate::poly::{gcd_monic, sigma_pow, Poly};

/// One `(a, h0)` pair of the suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spec {
    pub a: Poly,
    pub h0: Scalar,
}

impl Spec {
    pub fn new(a: &str, h0: Scalar) -> Result<Self> {
        Ok(Spec { a: Poly::parse(a)?, h0 })
    }

    pub fn algebra(&self) -> Result<Gwa> {
        Gwa::new(self.a.clone(), self.h0.clone())
    }
}

/// `count` polynomials of degree `1..=5` with small integer coefficients.
/// Every third one has an engineered repeated root; `h0` is drawn from
/// `{1, 2, 1/2}`.
pub fn random_specs(seed: u64, count: usize) -> Vec<Spec> {
    let mut rng = StdRng::seed_from_u64(seed);
    let shifts = [Scalar::one(), Scalar::from_i64(2), Scalar::from_ratio(1, 2)];
    (0..count)
        .map(|i| {
            let deg = 1 + i % 5;
            let a = if i % 3 == 2 && deg >= 2 {
                repeated_root(&mut rng, deg)
            } else {
                random_poly(&mut rng, deg)
            };
            Spec {
                a,
                h0: shifts.choose(&mut rng).expect("nonempty").clone(),
            }
        })
        .collect()
}

fn random_poly(rng: &mut StdRng, deg: usize) -> Poly {
    let mut coeffs: Vec<i64> = (0..deg).map(|_| rng.gen_range(-3..=3)).collect();
    let lead = *[-2, -1, 1, 2].choose(rng).expect("nonempty");
    coeffs.push(lead);
    Poly::from_ints(&coeffs)
}

/// `(h - r)^m` times a random cofactor, with `m >= 2`.
fn repeated_root(rng: &mut StdRng, deg: usize) -> Poly {
    let m = rng.gen_range(2..=deg);
    let r = rng.gen_range(-2..=2);
    let base = Poly::from_ints(&[-r, 1]).pow(m as u32);
    if m == deg {
        base
    } else {
        &base * &random_poly(rng, deg - m)
    }
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl CheckResult {
    fn new(name: impl Into<String>, outcome: Result<bool>) -> Self {
        let (passed, detail) = match outcome {
            Ok(ok) => (ok, String::new()),
            Err(e) => (false, e.to_string()),
        };
        CheckResult {
            name: name.into(),
            passed,
            detail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecChecks {
    pub spec: Spec,
    pub checks: Vec<CheckResult>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub specs: Vec<SpecChecks>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.specs.iter().all(|s| s.checks.iter().all(|c| c.passed))
    }

    pub fn failures(&self) -> impl Iterator<Item = (&Spec, &CheckResult)> {
        self.specs
            .iter()
            .flat_map(|s| s.checks.iter().filter(|c| !c.passed).map(move |c| (&s.spec, c)))
    }

    /// Passed and total counts for checks whose name starts with `prefix`.
    pub fn tally(&self, prefix: &str) -> (usize, usize) {
        let matching = self.specs.iter().flat_map(|s| &s.checks).filter(|c| c.name.starts_with(prefix));
        matching.fold((0, 0), |(p, t), c| (p + c.passed as usize, t + 1))
    }
}

/// Every complex kind the suite assembles.
pub fn all_kinds() -> Vec<ComplexKind> {
    let mut kinds = vec![ComplexKind::homology(), ComplexKind::cohomology()];
    let twists = [Scalar::from_i64(-1), Scalar::zeta(3).expect("valid"), Scalar::zeta(4).expect("valid")];
    for w in twists {
        for v in [Variant::Homology, Variant::Cohomology] {
            kinds.push(ComplexKind::twisted(v, w.clone()));
        }
    }
    kinds
}

/// `x^j y^j = prod_{k=1}^{j} sigma^k(a)` for `j <= j_max`.
pub fn power_identities(alg: &Gwa, j_max: u32) -> bool {
    (1..=j_max).all(|j| {
        let lhs = alg.mul(&alg.pow(&alg.x(), j), &alg.pow(&alg.y(), j));
        let mut rhs = Poly::one();
        for k in 1..=j as i64 {
            rhs = &rhs * &sigma_pow(alg.a(), k, alg.sigma());
        }
        lhs == GwaElement::from_poly(rhs)
    })
}

/// Runs every check on one algebra.
pub fn check_spec(spec: &Spec, seed: u64) -> Result<SpecChecks> {
    let alg = spec.algebra()?;
    let schedule = Schedule::for_degree(alg.n());
    let mut checks = Vec::new();
    for kind in all_kinds() {
        let name = match &kind.twist {
            None => format!("d^2=0 {:?}", kind.variant),
            Some(w) => format!("d^2=0 {:?} w={w}", kind.variant),
        };
        checks.push(CheckResult::new(name, build_differentials(&alg, &kind, 5, 6).map(|_| true)));
    }
    checks.push(CheckResult::new("euler homotopy", Ok(euler_homotopy_check(&alg, 50, seed))));
    checks.push(CheckResult::new("center", center_dim(&alg, &schedule).map(|c| c.value == 1)));
    checks.push(CheckResult::new("power identities", Ok(power_identities(&alg, 4))));
    checks.push(CheckResult::new(
        "hh0 basis",
        h0_bruteforce(&alg, &schedule).map(|s| s.value == alg.n() - 1 && h0_basis_independent(&alg, s.stabilized_at)),
    ));
    for m in [1, 2] {
        for lambda in [Scalar::one(), Scalar::from_ratio(3, 2)] {
            checks.push(CheckResult::new(
                format!("exp triviality m={m} lambda={lambda}"),
                exp_triviality_on_h0(&alg, m, &lambda, 3),
            ));
        }
    }
    let bezout = bezout_d2_test(alg.a(), alg.sigma()).and_then(|out| {
        let simple = gcd_monic(alg.a(), &alg.a().derivative())?.is_constant();
        let witness_ok = out.witness.as_ref().map_or(true, |w| w.verify(alg.a(), alg.sigma()));
        Ok(out.simple_roots == simple && witness_ok && out.witness.is_some() == simple)
    });
    checks.push(CheckResult::new("bezout", bezout));
    Ok(SpecChecks {
        spec: spec.clone(),
        checks,
    })
}

/// The suite: a few named algebras followed by `count` random ones.
pub fn run(seed: u64, count: usize) -> Result<SelftestReport> {
    let mut specs = vec![
        Spec::new("h", Scalar::one())?,
        Spec::new("1 - h*(h+1)", Scalar::one())?,
        Spec::new("-1/4 - h - h^2", Scalar::one())?,
    ];
    specs.extend(random_specs(seed, count));
    let specs = specs
        .iter()
        .enumerate()
        .map(|(i, s)| check_spec(s, seed.wrapping_add(i as u64)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SelftestReport { seed, specs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_is_deterministic() {
        assert_eq!(random_specs(5, 12), random_specs(5, 12));
        assert_ne!(random_specs(5, 12), random_specs(6, 12));
    }

    #[test]
    fn suite_covers_degrees_and_repeated_roots() {
        let specs = random_specs(1, 20);
        let mut degrees: Vec<usize> = specs.iter().map(|s| s.a.degree().unwrap()).collect();
        degrees.sort();
        degrees.dedup();
        assert_eq!(degrees, [1, 2, 3, 4, 5]);
        let repeated = specs.iter().filter(|s| s.algebra().unwrap().d() > 0).count();
        assert!(repeated >= 5);
    }

    #[test]
    fn powers() {
        let alg = Gwa::new(Poly::parse("h^2 - 3").unwrap(), Scalar::from_ratio(1, 2)).unwrap();
        assert!(power_identities(&alg, 4));
    }

    #[test]
    fn small_run_passes() {
        let report = run(3, 2).unwrap();
        let failures: Vec<_> = report.failures().collect();
        assert!(failures.is_empty(), "{failures:?}");
        assert_eq!(report.tally("bezout"), (5, 5));
    }
}
