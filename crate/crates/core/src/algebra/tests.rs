use proptest::prelude::*;

use super::*;

fn p(s: &str) -> Poly {
    Poly::parse(s).unwrap()
}

fn gwa(a: &str, h0: Scalar) -> Gwa {
    Gwa::new(p(a), h0).unwrap()
}

fn el(alg: &Gwa, s: &str) -> GwaElement {
    alg.parse_element(s).unwrap()
}

#[test]
fn defining_relations() {
    let alg = gwa("h^2 - 3*h + 2", Scalar::from_ratio(1, 2));
    let (x, y, h) = (alg.x(), alg.y(), alg.h());
    assert_eq!(
        alg.mul(&x, &y),
        GwaElement::from_poly(alg.sigma().apply(alg.a()))
    );
    assert_eq!(alg.mul(&y, &x), GwaElement::from_poly(alg.a().clone()));
    assert_eq!(alg.mul(&x, &h), GwaElement::term(p("h - 1/2"), 1));
    assert_eq!(alg.mul(&h, &y), GwaElement::term(p("h"), -1));
    assert_eq!(alg.mul(&y, &h), GwaElement::term(p("h + 1/2"), -1));
}

#[test]
fn weyl_commutator_sign() {
    let alg = gwa("h", Scalar::one());
    assert_eq!(
        alg.commutator(&alg.x(), &alg.y()),
        GwaElement::scalar(Scalar::from_i64(-1))
    );
}

#[test]
fn commutator_examples() {
    let alg = gwa("h^3 - h", Scalar::from_i64(2));
    let h = alg.h();
    let h2 = alg.mul(&h, &h);
    assert!(alg.commutator(&h, &h2).is_zero());
    let hy = el(&alg, "h*y");
    let ha = alg.a() * &p("h");
    assert_eq!(
        alg.commutator(&hy, &alg.x()),
        GwaElement::from_poly(&ha - &alg.sigma().apply(&ha))
    );
    assert_eq!(
        alg.commutator(&alg.x(), &alg.y()),
        GwaElement::from_poly(&alg.sigma().apply(alg.a()) - alg.a())
    );
}

#[test]
fn twisted_commutator_examples() {
    let alg = gwa("h^2 - 1", Scalar::one());
    let w = Scalar::zeta(3).unwrap();
    let g = Automorphism::Torus(w.clone());
    let got = alg.twisted_commutator(&alg.x(), &alg.y(), &g).unwrap();
    let want = &alg.sigma().apply(alg.a()) - &alg.a().scale(&w);
    assert_eq!(got, GwaElement::from_poly(want));
    let u = el(&alg, "h*x + y^2");
    let v = el(&alg, "x - 3*h");
    assert_eq!(
        alg.twisted_commutator(&u, &v, &Automorphism::identity())
            .unwrap(),
        alg.commutator(&u, &v)
    );
    assert!(alg
        .twisted_commutator(&alg.h(), &alg.h(), &g)
        .unwrap()
        .is_zero());
}

#[test]
fn apply_examples() {
    let alg = gwa("h^2 - 1", Scalar::one());
    let w = Scalar::from_ratio(2, 3);
    let u = el(&alg, "h^2*x");
    assert_eq!(
        Automorphism::Torus(w.clone()).apply(&alg, &u).unwrap(),
        u.scale(&w)
    );
    let g = Automorphism::ExpY {
        m: 2,
        lambda: Scalar::from_ratio(3, 2),
    };
    assert_eq!(g.apply(&alg, &alg.h()).unwrap(), el(&alg, "h + 3*y^2"));
    let alg = gwa("1 - h*(h+1)", Scalar::one());
    let omega = Automorphism::Omega(Scalar::from_i64(-1));
    assert_eq!(omega.apply(&alg, &alg.h()).unwrap(), el(&alg, "-h"));
    assert_eq!(omega.apply(&alg, &alg.x()).unwrap(), alg.y());
    assert!(matches!(
        Automorphism::Omega(Scalar::from_i64(3)).apply(&alg, &alg.h()),
        Err(Error::InvalidRho(_))
    ));
}

#[test]
fn weight_components() {
    let alg = gwa("h^2", Scalar::one());
    let u = el(&alg, "h + 3*x + y^2");
    assert_eq!(u.weight_component(0), alg.h());
    let xy = alg.mul(&alg.x(), &alg.y());
    assert!(xy.weight_component(1).is_zero());
    let g = Automorphism::ExpY {
        m: 1,
        lambda: Scalar::one(),
    };
    for i in 1..=4 {
        let hi = GwaElement::from_poly(Poly::monomial(Scalar::one(), i));
        let img = g.apply(&alg, &hi).unwrap();
        assert_eq!(img.weight_component(0), hi);
    }
}

#[test]
fn gwa_power_identities() {
    for (a, h0) in [
        ("h", Scalar::one()),
        ("h^2 - 2", Scalar::from_ratio(1, 2)),
        ("h^3 - h - 1", Scalar::from_i64(2)),
    ] {
        let alg = gwa(a, h0);
        for j in 1..=4u32 {
            let xj = alg.pow(&alg.x(), j);
            let yj = alg.pow(&alg.y(), j);
            let prod_xy = (1..=j as i64).fold(Poly::one(), |acc, k| {
                &acc * &alg.sigma().pow(alg.a(), k)
            });
            let prod_yx = (0..j as i64).fold(Poly::one(), |acc, k| {
                &acc * &alg.sigma().pow(alg.a(), -k)
            });
            assert_eq!(alg.mul(&xj, &yj), GwaElement::from_poly(prod_xy));
            assert_eq!(alg.mul(&yj, &xj), GwaElement::from_poly(prod_yx));
        }
    }
}

#[test]
fn element_text() {
    let alg = gwa("h^2", Scalar::one());
    let u = el(&alg, "(h^2-1)*x^2 + 3*y");
    assert_eq!(u.to_string(), "(h^2 - 1)*x^2 + 3*y");
    assert_eq!(el(&alg, &u.to_string()), u);
    assert_eq!(el(&alg, "h - 2*y^3").to_string(), "h - 2*y^3");
    assert!(alg.parse_element("z").is_err());
}

#[test]
fn exp_inverse_pairs() {
    let alg = gwa("h^2 - 1", Scalar::one());
    for m in 1..=2 {
        for (fwd, back) in [
            (
                Automorphism::ExpY { m, lambda: Scalar::from_ratio(3, 2) },
                Automorphism::ExpY { m, lambda: Scalar::from_ratio(-3, 2) },
            ),
            (
                Automorphism::ExpX { m, lambda: Scalar::one() },
                Automorphism::ExpX { m, lambda: Scalar::from_i64(-1) },
            ),
        ] {
            let round = Automorphism::Composite(vec![fwd, back]);
            for gen in [alg.x(), alg.y(), alg.h()] {
                assert_eq!(round.apply(&alg, &gen).unwrap(), gen);
            }
        }
    }
}

fn algebras() -> Vec<Gwa> {
    vec![
        gwa("h", Scalar::one()),
        gwa("h^2 - 1", Scalar::from_ratio(1, 2)),
        gwa("h^3 - h", Scalar::from_i64(2)),
        gwa("1 - h - h^2", Scalar::one()),
    ]
}

fn element() -> impl Strategy<Value = GwaElement> {
    proptest::collection::vec((-2i64..=2, proptest::collection::vec(-3i64..=3, 0..3)), 0..4)
        .prop_map(|terms| {
            let mut out = GwaElement::zero();
            for (j, c) in terms {
                out.add_assign(&GwaElement::term(Poly::from_ints(&c), j));
            }
            out
        })
}

fn automorphisms(alg: &Gwa) -> Vec<Automorphism> {
    let mut out = vec![
        Automorphism::Torus(Scalar::from_i64(-1)),
        Automorphism::Torus(Scalar::zeta(3).unwrap()),
        Automorphism::ExpY { m: 1, lambda: Scalar::one() },
        Automorphism::ExpX { m: 2, lambda: Scalar::from_ratio(3, 2) },
    ];
    if let Some(r) = crate::invariants::reflectivity(alg.a()).rho {
        out.push(Automorphism::Omega(r));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn multiplication_is_associative(k in 0usize..4, u in element(), v in element(), w in element()) {
        let alg = &algebras()[k];
        prop_assert_eq!(
            alg.mul(&alg.mul(&u, &v), &w),
            alg.mul(&u, &alg.mul(&v, &w))
        );
    }

    #[test]
    fn weights_are_additive(k in 0usize..4, u in element(), v in element()) {
        let alg = &algebras()[k];
        let prod = alg.mul(&u, &v);
        for j in prod.weights() {
            prop_assert!(u.weights().any(|i| v.weights().any(|l| i + l == j)));
        }
    }

    #[test]
    fn automorphisms_are_multiplicative(k in 0usize..4, u in element(), v in element()) {
        let alg = &algebras()[k];
        for g in automorphisms(alg) {
            let lhs = g.apply(alg, &alg.mul(&u, &v)).unwrap();
            let rhs = alg.mul(&g.apply(alg, &u).unwrap(), &g.apply(alg, &v).unwrap());
            prop_assert_eq!(lhs, rhs, "automorphism {}", g);
        }
    }
}

#[test]
fn automorphisms_preserve_relations() {
    for alg in algebras() {
        for g in automorphisms(&alg) {
            let (gx, gy, gh) = g.generator_images(&alg).unwrap();
            let a_of = alg.eval_poly(alg.a(), &gh);
            let sa_of = alg.eval_poly(&alg.sigma().apply(alg.a()), &gh);
            assert_eq!(alg.mul(&gy, &gx), a_of, "yx = a under {g}");
            assert_eq!(alg.mul(&gx, &gy), sa_of, "xy = sigma(a) under {g}");
            let s_h = alg.eval_poly(&alg.sigma().apply(&Poly::var()), &gh);
            assert_eq!(alg.mul(&gx, &gh), alg.mul(&s_h, &gx), "xh = sigma(h)x under {g}");
            assert_eq!(alg.mul(&gh, &gy), alg.mul(&gy, &s_h), "hy = y sigma(h) under {g}");
        }
    }
}
