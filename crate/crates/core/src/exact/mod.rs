//! Closed-form and quadrature evaluators for determinant moments, sums of
//! Lyapunov exponents and the largest exponent `mu_1`.

mod asymptotic;
mod fourier;
mod largest;
mod moments;
mod series;

pub use asymptotic::{lyap_sum_shifted_asymptotic, mu1_asymptotic, AsymptoticRegime};
pub use fourier::{mu1_betai_fourier, FourierSeriesResult};
pub use largest::{
    moment_two_block, mu1_betai, mu1_betaii, mu1_gaussian_general, mu1_gaussian_two_block, mu1_shifted,
    mu1_shifted_2x2, TwoBlockGaussianSpec,
};
pub use moments::{
    det_distribution, det_moment, lyapunov_partial_sum_gaussian, lyapunov_partial_sums_gaussian, lyapunov_sum,
    DistributionFactorization, Factor, FactorKind,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ensembles::{EnsembleError, ModelSpec, RowFamily};
use crate::quad::QuadError;
use crate::specfun::SpecFunError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExactError {
    #[error(transparent)]
    Ensemble(#[from] EnsembleError),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error("moment of order alpha = {alpha} diverges (requires alpha < {limit})")]
    DivergentMoment { alpha: f64, limit: f64 },
    #[error("{what} must be {requirement}, got {value}")]
    Parameter { what: &'static str, requirement: &'static str, value: f64 },
}

pub(crate) fn param_error(what: &'static str, requirement: &'static str, value: f64) -> ExactError {
    ExactError::Parameter { what, requirement, value }
}

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    Quadrature,
    Series,
    Asymptotic,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed-form",
            Method::Quadrature => "quadrature",
            Method::Series => "series",
            Method::Asymptotic => "asymptotic",
        })
    }
}

/// A computed value with its error estimate and any non-fatal warnings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub value: f64,
    pub est_abs_error: f64,
    pub method: Method,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl Evaluation {
    pub fn closed_form(value: f64) -> Self {
        Evaluation { value, est_abs_error: 0.0, method: Method::ClosedForm, warnings: Vec::new() }
    }

    pub(crate) fn with_warning(mut self, w: impl Into<String>) -> Self {
        self.warnings.push(w.into());
        self
    }
}

/// `mu_1` of any supported model by its best available route.
pub fn mu1(spec: &ModelSpec) -> Result<Evaluation, ExactError> {
    match spec {
        ModelSpec::Isotropic(s) => {
            let params = s.parameters();
            match s.family() {
                RowFamily::Gaussian => {
                    let rates: Vec<f64> = params.iter().map(|sigma| 0.5 / (sigma * sigma)).collect();
                    mu1_gaussian_general(&rates, s.field())
                }
                RowFamily::BetaI => mu1_betai(&params, s.field()),
                RowFamily::BetaII => mu1_betaii(&params, s.field()),
            }
        }
        ModelSpec::Shifted(s) => mu1_shifted(s.n(), s.field(), s.lambda()),
    }
}

/// Whether a [`LyapunovResult`] lists individual exponents or partial sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LyapunovKind {
    Exponents,
    PartialSums,
}

/// Exponents `mu_1 >= mu_2 >= ...` or partial sums `mu_1 + ... + mu_k`, in
/// nats per product step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LyapunovResult {
    pub kind: LyapunovKind,
    pub values: Vec<f64>,
    pub method: Method,
}

impl LyapunovResult {
    /// Individual exponents, differencing partial sums if needed.
    pub fn exponents(&self) -> Vec<f64> {
        match self.kind {
            LyapunovKind::Exponents => self.values.clone(),
            LyapunovKind::PartialSums => {
                let mut prev = 0.0;
                self.values
                    .iter()
                    .map(|&s| {
                        let mu = s - prev;
                        prev = s;
                        mu
                    })
                    .collect()
            }
        }
    }
}
