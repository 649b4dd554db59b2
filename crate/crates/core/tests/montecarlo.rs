use isolyap_core::ensembles::{EnsembleSpec, FieldIndex, ModelSpec, ShiftedGaussianSpec};
use isolyap_core::exact::{lyap_sum_shifted_asymptotic, mu1};
use isolyap_core::montecarlo::{estimate_mu1_column, estimate_spectrum};

#[test]
fn column_estimator_and_spectrum_agree_on_top_exponent() {
    for spec in [
        ModelSpec::from(EnsembleSpec::beta2(FieldIndex::Complex, &[2.5, 3.5]).unwrap()),
        ModelSpec::from(EnsembleSpec::beta1(FieldIndex::Quaternion, &[0.5, 2.0]).unwrap()),
    ] {
        let col = estimate_mu1_column(&spec, 200_000, 1).unwrap();
        let spec_est = estimate_spectrum(&spec, 2000, 40, 2).unwrap();
        let top = spec_est.exponents[0];
        let se = (col.std_error.powi(2) + top.std_error.powi(2)).sqrt();
        assert!((col.value - top.value).abs() < 4.0 * se, "{col:?} vs {top:?}");
        let exact = mu1(&spec).unwrap().value;
        assert!(col.z_score(exact).abs() < 4.0);
    }
}

#[test]
fn large_shift_sum_scales_like_inverse_square() {
    let (n, c) = (3, 100.0);
    let spec = ShiftedGaussianSpec::new(FieldIndex::Real, n, c, 1.0).unwrap();
    let s = estimate_spectrum(&spec.into(), 5000, 100, 3).unwrap();
    let total = s.partial_sums[n - 1];
    let want = lyap_sum_shifted_asymptotic(n, n, FieldIndex::Real, 1.0, c).unwrap();
    assert!((total.value - want).abs() < 3.0 * total.std_error + 0.02 * want.abs(), "{total:?} vs {want}");
}

#[test]
fn seeds_reproduce_and_separate() {
    let spec = ModelSpec::from(ShiftedGaussianSpec::new(FieldIndex::Quaternion, 2, 3.0, 1.0).unwrap());
    let a = estimate_spectrum(&spec, 100, 5, 9).unwrap();
    let b = estimate_spectrum(&spec, 100, 5, 9).unwrap();
    let c = estimate_spectrum(&spec, 100, 5, 10).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert_ne!(a, c);
    assert_eq!(a.embedding_exponents.len(), 4);
    assert_eq!(a.exponents[0].samples, 5);
}
