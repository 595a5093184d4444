use super::fixtures::{rank_one, sl2, su21};
use super::*;

fn w(v: &[(i64, i64)]) -> WeightVector {
    WeightVector(v.iter().map(|&(n, d)| q(n, d)).collect())
}

fn index_of(d: &RootDatum, coords: &[i64]) -> usize {
    let target = WeightVector::from_ints(coords);
    d.roots().iter().position(|r| r.coords == target).expect("root present")
}

#[test]
fn sl2_coroot_is_twice_the_root() {
    let d = sl2();
    let a = index_of(&d, &[1]);
    assert_eq!(d.coroot(a).unwrap(), WeightVector::from_ints(&[2]));
    let neg = index_of(&d, &[-1]);
    assert_eq!(d.coroot(neg).unwrap(), -&d.coroot(a).unwrap());
    assert_eq!(d.eval_on_coroot(&d.roots()[a].coords, &d.roots()[a].coords), q(2, 1));
}

#[test]
fn su21_long_root_coroot() {
    let d = su21();
    let i = index_of(&d, &[1, 1]);
    // <a1+a2, a1+a2> = 2 + 2 - 2 = 2, so the coroot is the root itself.
    assert_eq!(d.coroot(i).unwrap(), WeightVector::from_ints(&[1, 1]));
    assert!(matches!(d.coroot(99), Err(LatticeError::InvalidIndex(99))));
}

#[test]
fn coroot_pairs_to_two_on_every_fixture() {
    for d in fixtures::all() {
        for (i, r) in d.roots().iter().enumerate() {
            let check = d.coroot(i).unwrap();
            assert_eq!(d.inner(&r.coords, &check), q(2, 1), "{} root {i}", d.name());
        }
    }
}

#[test]
fn cone_membership_rank_one() {
    let d = sl2();
    let check = WeightVector::from_ints(&[2]);
    assert!(d.in_minimal_cone(&check, false).unwrap());
    assert!(!d.in_minimal_cone(&-&check, false).unwrap());
    assert!(!d.in_minimal_cone(&-&check, true).unwrap());
    let zero = WeightVector::zero(1);
    assert!(d.in_minimal_cone(&zero, true).unwrap());
    assert!(!d.in_minimal_cone(&zero, false).unwrap());
    assert!(matches!(
        d.in_minimal_cone(&WeightVector::zero(2), true),
        Err(LatticeError::Dimension { expected: 1, got: 2 })
    ));
}

#[test]
fn cone_membership_su21() {
    let d = su21();
    // coroots of a2 and a1+a2 are (0,1) and (1,1)
    let v = WeightVector::from_ints(&[1, 2]);
    assert!(d.in_minimal_cone(&v, false).unwrap());
    // a boundary ray: in the closure, not in the open cone
    let ray = WeightVector::from_ints(&[0, 3]);
    assert!(d.in_minimal_cone(&ray, true).unwrap());
    assert!(!d.in_minimal_cone(&ray, false).unwrap());
    // outside: (1,0) would need a negative coefficient on (0,1)
    assert!(!d.in_minimal_cone(&WeightVector::from_ints(&[1, 0]), true).unwrap());
    let eps = open_cone_certificate(&d.cone_generators(), &v).unwrap();
    assert_eq!(eps, q(1, 1));
}

#[test]
fn fundamental_weights_fixtures() {
    let d = sl2();
    assert_eq!(d.fundamental_weights().unwrap(), vec![WeightVector::from_ints(&[1])]);

    let d = su21();
    let om = d.fundamental_weights().unwrap();
    assert_eq!(om[0], w(&[(4, 3), (2, 3)]));
    assert_eq!(om[1], w(&[(2, 3), (4, 3)]));
    for (i, o) in om.iter().enumerate() {
        for (j, a) in d.simple_roots().enumerate() {
            let ratio = d.inner(o, &a.coords) / d.inner(&a.coords, &a.coords);
            assert_eq!(ratio, if i == j { q(1, 1) } else { q(0, 1) });
        }
    }
}

#[test]
fn rho_values() {
    assert_eq!(sl2().rho(), w(&[(1, 2)]));
    assert_eq!(fixtures::group_case().rho(), WeightVector::from_ints(&[1]));
    assert_eq!(rank_one(3).unwrap().rho(), w(&[(3, 2)]));
    // Delta^+ = {-a1, a2, a1+a2}
    assert_eq!(su21().rho(), WeightVector::from_ints(&[0, 1]));
}

#[test]
fn rho_c_values() {
    assert_eq!(sl2().rho_c().unwrap(), w(&[(1, 2)]));
    assert_eq!(su21().rho_c().unwrap(), WeightVector::from_ints(&[1, 1]));
    assert!(matches!(
        fixtures::group_case().rho_c(),
        Err(LatticeError::Unsupported(_))
    ));
}

#[test]
fn sl2_classification() {
    let d = sl2();
    let c1 = d.classify(&WeightVector::from_ints(&[1])).unwrap();
    assert!(c1.lambda_2 && !c1.lambda_c && !c1.lambda_1);
    let c2 = d.classify(&WeightVector::from_ints(&[2])).unwrap();
    assert!(c2.lambda_2 && c2.lambda_c && c2.lambda_1);
    let c0 = d.classify(&WeightVector::zero(1)).unwrap();
    assert!(!c0.lambda_gt0 && !c0.lambda_2 && !c0.lambda_1 && !c0.lambda_c);
    assert!(c0.lambda_ge0);
    let half = d.classify(&w(&[(3, 2)])).unwrap();
    assert!(!half.lambda_gt0 && half.lambda_ge0);
    assert_eq!(c1.lambda_sd, Some(true));
    assert_eq!(c0.lambda_sd, Some(false));
}

#[test]
fn rank_one_lambda_2_threshold() {
    for m in 1..=3u32 {
        let d = rank_one(m).unwrap();
        for k in 1..=10i64 {
            let c = d.classify(&WeightVector::from_ints(&[k])).unwrap();
            let expected = k > (m / 2) as i64;
            assert_eq!(c.lambda_2, expected, "m={m} k={k}");
            assert_eq!(c.lambda_sd.is_some(), m == 1);
        }
    }
}

#[test]
fn formal_dimension_values() {
    let d = sl2();
    // d(lambda) = lambda - 1/2 with c = 1
    assert_eq!(d.formal_dimension(&WeightVector::from_ints(&[2]), &q(1, 1)).unwrap(), q(3, 2));
    assert_eq!(d.formal_dimension(&d.rho_c().unwrap(), &q(1, 1)).unwrap(), q(0, 1));

    let d = su21();
    let om = d.fundamental_weights().unwrap();
    let lambda = &om[0].scale(&q(2, 1)) + &om[1].scale(&q(3, 1));
    // independent expansion: lambda - rho(c) = (11/3, 13/3) in root coordinates,
    // pairings with a1, a2, a1+a2 under gram [[2,-1],[-1,2]]
    let (x, y) = (q(11, 3), q(13, 3));
    let p1 = q(2, 1) * &x - &y;
    let p2 = -x.clone() + q(2, 1) * &y;
    let p3 = &p1 + &p2;
    assert_eq!((p1.clone(), p2.clone(), p3.clone()), (q(3, 1), q(5, 1), q(8, 1)));
    let c = q(1, 7);
    assert_eq!(d.formal_dimension(&lambda, &c).unwrap(), c * p1 * p2 * p3);
    assert!(fixtures::group_case().formal_dimension(&lambda_one(), &q(1, 1)).is_err());
}

fn lambda_one() -> WeightVector {
    WeightVector::from_ints(&[1])
}

#[test]
fn enumerate_counts() {
    let d = sl2();
    let ws = d.enumerate_weights(3).unwrap();
    assert_eq!(ws.len(), 7);
    assert_eq!(ws.first().unwrap(), &WeightVector::from_ints(&[-3]));
    assert_eq!(ws.last().unwrap(), &WeightVector::from_ints(&[3]));
    assert_eq!(su21().enumerate_weights(2).unwrap().len(), 25);
    assert_eq!(d.enumerate_weights(0).unwrap(), vec![WeightVector::zero(1)]);
}

#[test]
fn shipped_files_load() {
    for (text, name) in [
        (fixtures::SL2, "sl2"),
        (fixtures::GROUP, "group"),
        (fixtures::RANK1_M3, "rank1-m3"),
        (fixtures::SU21, "su21"),
    ] {
        let d = parse_datum(text, name).unwrap();
        assert_eq!(d.name(), name);
        let again = parse_datum(&render_datum(&d), name).unwrap();
        assert_eq!(again, d);
    }
    assert_eq!(
        parse_datum(fixtures::RANK1_M3, "x").unwrap().roots(),
        rank_one(3).unwrap().roots()
    );
}

#[test]
fn two_noncompact_simple_roots_rejected() {
    let text = include_str!("../../fixtures/two_noncompact_simple.rd");
    match parse_datum(text, "bad.rd") {
        Err(LatticeError::Invariant { invariant, .. }) => {
            assert_eq!(invariant, "exactly one noncompact simple root")
        }
        other => panic!("expected invariant violation, got {other:?}"),
    }
}

#[test]
fn parser_diagnostics() {
    let bad_key = "[meta]\nrank = 1\ncolour = red\n";
    match parse_datum(bad_key, "f.rd") {
        Err(LatticeError::Parse { line, path, .. }) => {
            assert_eq!(line, 3);
            assert_eq!(path, "f.rd");
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        parse_datum("[metadata]\n", "f"),
        Err(LatticeError::Parse { line: 1, .. })
    ));
    let bad_sign = "[meta]\nrank = 1\n[gram]\n1\n[roots]\n1 n 1 ?\n";
    assert!(matches!(parse_datum(bad_sign, "f"), Err(LatticeError::Parse { line: 6, .. })));
    let zero_den = "[meta]\nrank = 1\n[gram]\n1/0\n";
    assert!(matches!(parse_datum(zero_den, "f"), Err(LatticeError::Parse { line: 4, .. })));
}

#[test]
fn invariant_violations_are_named() {
    let not_closed = "[meta]\nrank = 1\n[gram]\n1\n[roots]\n1 n 1 +\n[simple]\n0\n";
    assert!(matches!(
        parse_datum(not_closed, "f"),
        Err(LatticeError::Invariant { invariant: "closed under negation", .. })
    ));
    let indefinite = "[meta]\nrank = 1\n[gram]\n-1\n[roots]\n1 n 1 +\n-1 n 1 -\n[simple]\n0\n";
    assert!(matches!(
        parse_datum(indefinite, "f"),
        Err(LatticeError::Invariant { invariant: "gram positive definite", .. })
    ));
    let asym = "[meta]\nrank = 2\n[gram]\n2 -1\n0 2\n";
    assert!(matches!(
        parse_datum(asym, "f"),
        Err(LatticeError::Invariant { invariant: "gram symmetric", .. })
    ));
    // su(2,1) with a1+a2 dropped from Delta_n^+ breaks W_k-invariance
    let broken = fixtures::SU21.replace("1  1  n 1 +", "1  1  n 1 -").replace("-1 -1 n 1 -", "-1 -1 n 1 +");
    assert!(parse_datum(&broken, "f").is_err());
}

#[test]
fn omega_positive_on_minimal_cone() {
    for d in fixtures::all() {
        let gens = d.cone_generators();
        for om in d.fundamental_weights().unwrap() {
            let vals: Vec<Q> = gens.iter().map(|g| d.inner(&om, g)).collect();
            assert!(vals.iter().all(|v| !v.is_negative()), "{}", d.name());
            assert!(vals.iter().any(|v| v.is_positive()), "{}", d.name());
        }
    }
}

#[test]
fn cone_is_hull_of_long_coroot_orbit() {
    for d in fixtures::all() {
        let gens = d.cone_generators();
        let orbit = d.long_coroot_orbit();
        for g in &gens {
            assert!(in_closed_cone(&orbit, g), "{}", d.name());
        }
        for o in &orbit {
            assert!(in_closed_cone(&gens, o), "{}", d.name());
        }
    }
    assert_eq!(su21().compact_weyl_group().len(), 2);
}
