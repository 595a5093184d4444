use horocauchy::hyperboloid::{d_plus_curve, sample_interior_horopoint, zeta0, HoroPoint, OrbitType};
use horocauchy::quadrature::QuadratureSpec;
use horocauchy::transform::{inversion_pipeline, PreparedFunction, TestFunction, TransformError};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn coarse() -> QuadratureSpec {
    QuadratureSpec {
        t_max: 10.0,
        n_t: 128,
        n_theta: 96,
        fiber_t_max: 14.0,
        fiber_n: 160,
    }
}

#[test]
fn matrix_coefficient_transform_is_a_power_of_the_pairing() {
    let w = 2.0 * zeta0();
    let f = TestFunction::matrix_coefficient(w, 2).unwrap();
    let prepared = PreparedFunction::new(&f, &coarse()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let constants: Vec<Complex64> = (0..4)
        .map(|_| {
            let zeta = sample_interior_horopoint(&mut rng, Some(OrbitType::Conjugate));
            prepared.cauchy(&zeta).unwrap() * w.bilinear(zeta.zeta()).powu(2)
        })
        .collect();
    for c in &constants[1..] {
        assert!((c - constants[0]).norm() <= 1e-6 * constants[0].norm(), "{c} vs {}", constants[0]);
    }
    let same_type = sample_interior_horopoint(&mut rng, Some(OrbitType::Zeta0));
    assert!(prepared.cauchy(&same_type).unwrap().norm() <= 1e-8 * constants[0].norm());
}

#[test]
fn transform_is_homogeneous_of_degree_minus_one() {
    let f = TestFunction::custom("bump", |x| Complex64::new((-x.0[2] * x.0[2]).exp() * (1.0 + 0.3 * x.0[0]), 0.0));
    let prepared = PreparedFunction::new(&f, &coarse()).unwrap();
    let zeta = HoroPoint::interior(1.5 * zeta0().conj()).unwrap();
    let doubled = HoroPoint::interior(3.0 * zeta0().conj()).unwrap();
    let (a, b) = (prepared.cauchy(&zeta).unwrap(), prepared.cauchy(&doubled).unwrap());
    assert!((a - b * 2.0).norm() <= 1e-10 * a.norm());
}

#[test]
fn inversion_recovers_a_multiple_of_the_function() {
    let f = TestFunction::matrix_coefficient(2.0 * zeta0(), 3).unwrap();
    let zs = [d_plus_curve(0.5), d_plus_curve(1.0)];
    let report = inversion_pipeline(&f, &zs, &coarse()).unwrap();
    assert_eq!(report.points.len(), 2);
    assert!(report.coefficient_of_variation.unwrap() < 1e-4);
    assert!(report.mean_ratio.unwrap().norm() > 1.0);
}

#[test]
fn inversion_of_lambda_one_is_rejected() {
    let f = TestFunction::matrix_coefficient(2.0 * zeta0(), 1).unwrap();
    let err = inversion_pipeline(&f, &[d_plus_curve(0.5)], &coarse()).unwrap_err();
    assert!(matches!(err, TransformError::Divergence(_)), "{err}");
}

#[test]
fn inversion_of_zero_is_zero() {
    let report = inversion_pipeline(&TestFunction::Zero, &[d_plus_curve(0.7)], &coarse()).unwrap();
    assert_eq!(report.points[0].reconstructed, Complex64::new(0.0, 0.0));
    assert!(report.mean_ratio.is_none());
}

#[test]
fn invalid_quadrature_is_reported() {
    let mut q = coarse();
    q.n_t = 31;
    let err = PreparedFunction::new(&TestFunction::Zero, &q).unwrap_err();
    assert!(matches!(err, TransformError::Quadrature(_)), "{err}");
}
