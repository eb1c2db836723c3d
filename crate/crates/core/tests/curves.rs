use std::f64::consts::PI;

use num_complex::Complex64;

use refined_count::geometry::{
    log_area_any_chart, mobius_normalize, quantum_index_k, Alpha, ComplexPuncture, ParametrizedCurve, RealPuncture,
};
use refined_count::lattice::{LatticeVector, TwoForm};
use refined_count::quadrature::{area_quadrature, AreaKind, QuadratureConfig};

fn v(c: &[i64]) -> LatticeVector {
    LatticeVector::new(c.to_vec())
}

fn pair(re: f64, im: f64, n: &[i64]) -> ComplexPuncture {
    ComplexPuncture {
        beta: Complex64::new(re, im),
        n: v(n),
    }
}

fn form3() -> TwoForm {
    TwoForm::from_ints(&[vec![0, 2, -1], vec![-2, 0, 1], vec![1, -1, 0]]).unwrap()
}

/// Three pairs and no real boundary: the closed form is used as written.
#[test]
fn no_real_punctures_against_quadrature() {
    let c = ParametrizedCurve::new(
        vec![0.2, -0.1, 0.4],
        vec![],
        vec![pair(-1.0, 0.6, &[1, 0, 0]), pair(0.3, 1.1, &[0, 1, -1]), pair(1.4, 0.5, &[-1, -1, 1])],
    )
    .unwrap();
    let f = form3();
    let closed = log_area_any_chart(&c, &f).unwrap();
    assert!(closed.no_real_punctures);
    let q = area_quadrature(&c, &f, AreaKind::Log, &QuadratureConfig::default()).unwrap();
    assert!((closed.value - q.value).abs() < 1e-3 * PI * PI, "{} vs {}", closed.value, q.value);
    let k = quantum_index_k(&c, &f, 1e-3).unwrap();
    assert!(k.residual < 1e-9);
}

#[test]
fn quadrature_is_chart_independent() {
    let c = ParametrizedCurve::new(
        vec![0.0, 0.0, 0.0],
        vec![
            RealPuncture { alpha: Alpha::Finite(-1.0), n: v(&[1, 0, 1]) },
            RealPuncture { alpha: Alpha::Finite(0.5), n: v(&[0, 1, 0]) },
            RealPuncture { alpha: Alpha::Finite(2.0), n: v(&[-1, -1, 1]) },
        ],
        vec![pair(0.2, 0.9, &[0, 0, -1])],
    )
    .unwrap();
    let f = form3();
    let cfg = QuadratureConfig::default();
    let a = area_quadrature(&c, &f, AreaKind::Log, &cfg).unwrap();
    let normalized = mobius_normalize(&c, 2).unwrap();
    assert_eq!(normalized.infinity_index(), Some(2));
    let b = area_quadrature(&normalized, &f, AreaKind::Log, &cfg).unwrap();
    assert!((a.value - b.value).abs() < 2.0 * cfg.tol * PI * PI);
    let closed = log_area_any_chart(&c, &f).unwrap();
    assert!((a.value - closed.value).abs() < 1e-3 * PI * PI);
}

#[test]
fn reversed_curve_negates_k_for_the_line() {
    let c = ParametrizedCurve::new(
        vec![0.0, 0.0],
        vec![
            RealPuncture { alpha: Alpha::Finite(0.0), n: v(&[-1, 0]) },
            RealPuncture { alpha: Alpha::Finite(1.0), n: v(&[0, -1]) },
            RealPuncture { alpha: Alpha::Inf, n: v(&[1, 1]) },
        ],
        vec![],
    )
    .unwrap();
    let f = TwoForm::standard_rank2();
    assert_eq!(quantum_index_k(&c, &f, 1e-9).unwrap().k, 0.5);
    assert_eq!(quantum_index_k(&c.reversed(), &f, 1e-9).unwrap().k, -0.5);
    let q = area_quadrature(&c.reversed(), &f, AreaKind::Arg, &QuadratureConfig::default()).unwrap();
    assert!((q.value + PI * PI / 2.0).abs() < 1e-3 * PI * PI);
}
