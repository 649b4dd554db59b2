//! Seeded Monte-Carlo estimators. Work is cut into fixed units (sample
//! batches or product trials), unit `i` draws from ChaCha stream `i` of the
//! master seed, and units are merged in index order, so results do not
//! depend on scheduling.

mod spectrum;
mod stats;

pub use spectrum::{estimate_spectrum, SpectrumEstimate};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ensembles::{
    ColumnSampler, EnsembleError, EnsembleSpec, FieldIndex, MatrixSample, MatrixSampler, ModelSpec, RowFamily,
};
use stats::{batched_moments, Moments};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum McError {
    #[error(transparent)]
    Ensemble(#[from] EnsembleError),
    #[error("{what} must be {requirement}, got {value}")]
    Parameter { what: &'static str, requirement: &'static str, value: f64 },
    #[error("alpha = {alpha} gives an estimator without finite variance (need {requirement})")]
    VarianceGate { alpha: f64, requirement: String },
}

fn param(what: &'static str, requirement: &'static str, value: f64) -> McError {
    McError::Parameter { what, requirement, value }
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: u64,
    pub master_seed: u64,
}

impl McEstimate {
    pub(crate) fn from_moments(m: &Moments, master_seed: u64) -> Self {
        McEstimate { value: m.mean, std_error: m.std_error(), samples: m.count, master_seed }
    }

    /// `(value - reference) / std_error`; zero when both the error and the
    /// difference vanish.
    pub fn z_score(&self, reference: f64) -> f64 {
        let d = self.value - reference;
        if d == 0.0 {
            0.0
        } else {
            d / self.std_error
        }
    }
}

/// `mu_1` from `(1/2) ln sum_l |x_{l,1}|^2` over independent first columns.
pub fn estimate_mu1_column(spec: &ModelSpec, samples: usize, master_seed: u64) -> Result<McEstimate, McError> {
    if samples < 100 {
        return Err(param("samples", "at least 100", samples as f64));
    }
    let sampler = ColumnSampler::new(spec);
    let m = batched_moments(samples, 1, master_seed, |rng, out| out[0] = 0.5 * sampler.sample(rng).ln());
    Ok(McEstimate::from_moments(&m[0], master_seed))
}

/// Largest `alpha` for which `|det X|^{2 alpha}` has finite variance, and
/// the matching smallest.
fn variance_window(spec: &EnsembleSpec) -> (f64, f64) {
    let beta = spec.field().beta();
    let lower = -0.25 * beta;
    let upper = match spec.family() {
        RowFamily::BetaII => spec.parameters().iter().map(|w| 0.25 * beta * w).fold(f64::INFINITY, f64::min),
        _ => f64::INFINITY,
    };
    (lower, upper)
}

/// `<|det X|^{2 alpha}>` for each `alpha`, all from the same draws.
pub fn estimate_det_moments(
    spec: &EnsembleSpec,
    alphas: &[f64],
    samples: usize,
    master_seed: u64,
) -> Result<Vec<McEstimate>, McError> {
    if samples < 2 {
        return Err(param("samples", "at least 2", samples as f64));
    }
    let (lo, hi) = variance_window(spec);
    for &a in alphas {
        if !(a > lo && a < hi) {
            let requirement =
                if a <= lo { format!("alpha > {lo}") } else { format!("2 alpha < min beta omega / 2 = {}", 2.0 * hi) };
            return Err(McError::VarianceGate { alpha: a, requirement });
        }
    }
    let sampler = MatrixSampler::new(spec);
    let m = batched_moments(samples, alphas.len(), master_seed, |rng, out| {
        let ld = sampler.sample(rng).log_abs_det();
        for (o, &a) in out.iter_mut().zip(alphas) {
            *o = if a == 0.0 { 1.0 } else { (2.0 * a * ld).exp() };
        }
    });
    Ok(m.iter().map(|m| McEstimate::from_moments(m, master_seed)).collect())
}

/// `<|det X|^{2 alpha}>`.
pub fn estimate_det_moment(
    spec: &EnsembleSpec,
    alpha: f64,
    samples: usize,
    master_seed: u64,
) -> Result<McEstimate, McError> {
    Ok(estimate_det_moments(spec, &[alpha], samples, master_seed)?[0])
}

fn log_det_gram<T>(y: &DMatrix<T>, cols: usize) -> f64
where
    T: nalgebra::ComplexField<RealField = f64>,
{
    let yk = y.columns(0, cols);
    let w = yk.adjoint() * yk;
    w.lu().u().diagonal().iter().map(|d| d.clone().modulus().ln()).sum()
}

/// `<(det W_k)^alpha>` for `W_k = Y_k^dag Y_k`, `Y = c I_N + X`.
pub fn estimate_wishart_det_moment(
    n: usize,
    k: usize,
    field: FieldIndex,
    sigma: f64,
    c: f64,
    alpha: f64,
    samples: usize,
    master_seed: u64,
) -> Result<McEstimate, McError> {
    if !(1..=n).contains(&k) {
        return Err(param("k", "between 1 and n", k as f64));
    }
    if !c.is_finite() {
        return Err(param("c", "finite", c));
    }
    let lo = -0.25 * field.beta() * (n - k + 1) as f64;
    if !(alpha > lo) {
        return Err(McError::VarianceGate { alpha, requirement: format!("alpha > {lo}") });
    }
    let spec = EnsembleSpec::gaussian(field, &vec![sigma; n])?;
    let sampler = MatrixSampler::new(&spec);
    let m = batched_moments(samples.max(2), 1, master_seed, |rng, out| {
        let ld = match sampler.sample(rng) {
            MatrixSample::Real(x) => log_det_gram(&shift(x, c), k),
            MatrixSample::Complex(x) => log_det_gram(&shift(x, c), k),
            // det W over the quaternions is the square root of the embedding's
            MatrixSample::Quaternion(x) => 0.5 * log_det_gram(&shift(x, c), 2 * k),
        };
        out[0] = (alpha * ld).exp();
    });
    Ok(McEstimate::from_moments(&m[0], master_seed))
}

fn shift<T>(mut x: DMatrix<T>, c: f64) -> DMatrix<T>
where
    T: nalgebra::ComplexField<RealField = f64>,
{
    for i in 0..x.nrows() {
        x[(i, i)] += T::from_real(c);
    }
    x
}
