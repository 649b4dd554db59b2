//! Fixed models shared by the benchmarks.

use isolyap_core::{EnsembleSpec, FieldIndex, ModelSpec, ShiftedGaussianSpec};

pub fn gaussian_rates(n: usize) -> Vec<f64> {
    (0..n).map(|l| 0.5 + 0.25 * l as f64).collect()
}

pub fn spectrum_models() -> Vec<(&'static str, ModelSpec)> {
    vec![
        ("gaussian-real-3", EnsembleSpec::gaussian(FieldIndex::Real, &[1.0; 3]).unwrap().into()),
        ("beta2-complex-3", EnsembleSpec::beta2(FieldIndex::Complex, &[3.0; 3]).unwrap().into()),
        ("beta1-quaternion-3", EnsembleSpec::beta1(FieldIndex::Quaternion, &[1.5; 3]).unwrap().into()),
        ("shifted-real-3", ShiftedGaussianSpec::new(FieldIndex::Real, 3, 5.0, 1.0).unwrap().into()),
    ]
}
