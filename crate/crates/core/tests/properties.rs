use gwa_core::algebra::Gwa;
use gwa_core::complex::{oracle_dims, ComplexKind, Variant, WeightZeroComplex};
use gwa_core::formulas::{coh_dims, duality_flag, group_coh_dims, hh_dims};
use gwa_core::invariants::{
    h0_bruteforce, invariant_gwa, simplicity_check, twisted_h0_bruteforce, verify_invariant_identity,
};
use gwa_core::linalg::Schedule;
use gwa_core::poly::degree_invariants;
use gwa_core::selftest::random_specs;
use gwa_core::{Poly, Scalar};

fn gwa(a: &str, h0: Scalar) -> Gwa {
    Gwa::new(Poly::parse(a).unwrap(), h0).unwrap()
}

fn values(alg: &Gwa, kind: &ComplexKind, schedule: &Schedule) -> Vec<usize> {
    oracle_dims(alg, kind, 4, schedule).unwrap().into_iter().map(|d| d.value).collect()
}

#[test]
fn invariant_algebras_compose() {
    for (a, h0) in [("h^2 - 2", Scalar::one()), ("h^3 - h - 1", Scalar::from_ratio(1, 2)), ("h + 3", Scalar::from_i64(2))] {
        let alg = gwa(a, h0);
        for r in 1..=3 {
            for s in 1..=3 {
                let twice = invariant_gwa(&invariant_gwa(&alg, r).unwrap(), s).unwrap();
                let once = invariant_gwa(&alg, r * s).unwrap();
                assert_eq!(twice.a(), once.a(), "{a} r={r} s={s}");
            }
        }
    }
}

#[test]
fn invariant_identity_up_to_four() {
    for (a, h0) in [("h", Scalar::one()), ("h^2 - 1", Scalar::from_ratio(1, 2)), ("2*h^3 - h + 1", Scalar::from_i64(-1))] {
        let alg = gwa(a, h0);
        for r in 1..=4 {
            assert!(verify_invariant_identity(&alg, r).unwrap(), "{a} r={r}");
        }
    }
}

#[test]
fn cyclic_group_matches_invariant_algebra() {
    for a in ["h", "h^2 - 2", "h^3 - h - 1"] {
        let alg = gwa(a, Scalar::one());
        assert!(simplicity_check(&alg).unwrap());
        for r in 2..=3usize {
            let n = alg.n();
            let inv = invariant_gwa(&alg, r as u32).unwrap();
            let expected = r * n - 1;
            assert_eq!(group_coh_dims(n, r - 1, 0, 3).unwrap().dims[2], expected);
            assert_eq!(hh_dims(&inv, 0).dims[0], expected);
            assert_eq!(coh_dims(&inv, 2).dims[2], expected);
        }
    }
}

#[test]
fn low_cohomology_is_independent_of_a() {
    for spec in random_specs(11, 8) {
        let alg = spec.algebra().unwrap();
        let s = Schedule::for_degree(alg.n());
        let coh = values(&alg, &ComplexKind::cohomology(), &s);
        assert_eq!(&coh[..2], &[1, 0], "a = {}", spec.a);
        let tw = values(&alg, &ComplexKind::twisted(Variant::Cohomology, Scalar::from_i64(-1)), &s);
        assert_eq!(&tw[..2], &[0, 0], "a = {}", spec.a);
    }
}

#[test]
fn oracle_is_independent_of_schedule_start() {
    for (a, h0) in [("h^3", Scalar::one()), ("h^2 - h", Scalar::from_ratio(1, 2))] {
        let alg = gwa(a, h0);
        let base = Schedule::for_degree(alg.n());
        for kind in [ComplexKind::homology(), ComplexKind::cohomology()] {
            assert_eq!(values(&alg, &kind, &base), values(&alg, &kind, &base.with_start(base.start + 10)));
        }
        let strict = base.with_window(3);
        assert_eq!(values(&alg, &ComplexKind::homology(), &base), values(&alg, &ComplexKind::homology(), &strict));
    }
}

#[test]
fn rank_nullity_on_assembled_matrices() {
    let alg = gwa("h^2 - 3", Scalar::from_ratio(1, 2));
    for kind in [ComplexKind::homology(), ComplexKind::twisted(Variant::Cohomology, Scalar::zeta(4).unwrap())] {
        let cx = WeightZeroComplex::new(&alg, &kind).unwrap();
        for p in 0..=4 {
            let m = cx.matrix(p, 8).unwrap();
            assert_eq!(m.rank() + m.matrix.kernel().cols(), m.domain.dim());
        }
    }
}

#[test]
fn bruteforce_hh0_across_suite() {
    for spec in random_specs(17, 10) {
        let alg = spec.algebra().unwrap();
        let s = Schedule::for_degree(alg.n());
        assert_eq!(h0_bruteforce(&alg, &s).unwrap().value, alg.n() - 1, "a = {}", spec.a);
        let w = Scalar::zeta(3).unwrap();
        assert_eq!(twisted_h0_bruteforce(&alg, &w, &s).unwrap().value, alg.n(), "a = {}", spec.a);
    }
}

#[test]
fn duality_iff_simple_roots() {
    for spec in random_specs(23, 20) {
        let alg = spec.algebra().unwrap();
        let (_, d) = degree_invariants(alg.a()).unwrap();
        assert_eq!(duality_flag(&alg), d == 0, "a = {}", spec.a);
    }
}
