use num_complex::Complex64;
use proptest::prelude::*;

use spectra_qkit::identities::{run_suite, Suite, SuiteConfig, Verdict};
use spectra_qkit::spectral::action::mat_mul;
use spectra_qkit::spectral::{
    hyperbolic_action, verify_zero, z_gamma_logseries, z_gamma_product, zeros_predicted,
    HyperbolicPoint, ZeroBox, ZeroIndex,
};
use spectra_qkit::{ModularParameter, TruncationPolicy};

fn tau() -> impl Strategy<Value = ModularParameter> {
    (-0.5f64..0.5, 0.8f64..2.0).prop_map(|(re, im)| ModularParameter::new(re, im).unwrap())
}

#[test]
fn predicted_zeros_vanish() {
    let t = ModularParameter::new(0.3, 1.1).unwrap();
    let area = ZeroBox::new(-3.0, 1.0, -7.0, 7.0).unwrap();
    let zeros = zeros_predicted(&t, &area);
    assert!(!zeros.is_empty());
    for (index, _) in zeros {
        let check = verify_zero(index, &t, &TruncationPolicy::default()).unwrap();
        assert!(check.residual < 1e-10, "{index:?}");
    }
}

#[test]
fn rotation_dilation_squares_to_the_generator() {
    let t = ModularParameter::new(0.25, 1.0).unwrap();
    let h = t.rotation_dilation();
    let g = t.generator();
    let hh = mat_mul(&h, &h);
    for i in 0..2 {
        for j in 0..2 {
            assert!((hh[i][j] - g[i][j]).norm() <= 1e-14 * g[i][j].norm().max(1.0));
        }
    }
}

#[test]
fn rotation_dilation_rotates_and_dilates() {
    let t = ModularParameter::new(0.1, 1.5).unwrap();
    let p = HyperbolicPoint::new(0.7, -0.2, 1.3).unwrap();
    let image = hyperbolic_action(&t.rotation_dilation(), p).unwrap();
    let r = Complex64::new(p.x, p.y) * Complex64::new(t.alpha(), t.beta()).exp();
    let scale = t.alpha().exp();
    assert!((image.x - r.re).abs() < 1e-12 * scale);
    assert!((image.y - r.im).abs() < 1e-12 * scale);
    assert!((image.z - p.z * scale).abs() < 1e-12 * scale);
}

#[test]
fn non_unimodular_matrices_are_rejected() {
    let two = Complex64::new(2.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let p = HyperbolicPoint::new(0.0, 0.0, 1.0).unwrap();
    assert!(hyperbolic_action(&[[two, zero], [zero, two]], p).is_err());
}

#[test]
fn reports_are_deterministic() {
    let config = SuiteConfig::default();
    let a = serde_json::to_string(&run_suite(Suite::Table1, &config).unwrap()).unwrap();
    let b = serde_json::to_string(&run_suite(Suite::Table1, &config).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn hard_table_rows_pass() {
    let reports = run_suite(Suite::Table1, &SuiteConfig::default()).unwrap();
    assert!(reports
        .iter()
        .filter(|r| r.kind == spectra_qkit::identities::CheckKind::Hard)
        .all(|r| r.verdict == Verdict::Pass));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_matches_log_series(t in tau(), re in 0.5f64..5.0, im in -2.0f64..2.0) {
        let s = Complex64::new(re, im);
        let policy = TruncationPolicy::default();
        let p = z_gamma_product(s, &t, &policy).unwrap();
        let l = z_gamma_logseries(s, &t, &policy).unwrap();
        prop_assert!((p.value - l.value.exp()).norm() < 1e-9);
    }

    #[test]
    fn action_composes(
        t in tau(),
        x in -2.0f64..2.0,
        y in -2.0f64..2.0,
        z in 0.1f64..3.0,
    ) {
        let p = HyperbolicPoint::new(x, y, z).unwrap();
        let h = t.rotation_dilation();
        let once = hyperbolic_action(&h, hyperbolic_action(&h, p).unwrap()).unwrap();
        let direct = hyperbolic_action(&mat_mul(&h, &h), p).unwrap();
        prop_assert!((once.x - direct.x).abs() < 1e-10 * (1.0 + direct.x.abs()));
        prop_assert!((once.y - direct.y).abs() < 1e-10 * (1.0 + direct.y.abs()));
        prop_assert!((once.z - direct.z).abs() < 1e-10 * direct.z);
    }

    #[test]
    fn zeros_vanish_for_random_tau(t in tau(), n in -2i64..3, k1 in 0u32..2, k2 in 0u32..2) {
        let check = verify_zero(ZeroIndex::new(n, k1, k2), &t, &TruncationPolicy::default()).unwrap();
        prop_assert!(check.residual < 1e-10);
        prop_assert!(check.naive_relative < 1e-10);
    }
}
