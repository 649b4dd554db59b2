use serde::{Deserialize, Serialize};

use super::{param_error, ExactError, LyapunovKind, LyapunovResult, Method};
use crate::ensembles::{EnsembleSpec, FieldIndex, RowDistribution};
use crate::specfun::{digamma, ln_gamma_ratio};

/// Law of one independent factor of `|det X|^2`, before scaling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FactorKind {
    ChiSq { dof: f64 },
    Beta { a: f64, b: f64 },
    BetaPrime { a: f64, b: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Factor {
    #[serde(flatten)]
    pub kind: FactorKind,
    pub scale: f64,
}

impl Factor {
    /// `<(scale * Y)^alpha>`.
    pub fn moment(&self, alpha: f64) -> Result<f64, ExactError> {
        Ok((alpha * self.scale.ln() + self.ln_kind_moment(alpha)?).exp())
    }

    fn ln_kind_moment(&self, alpha: f64) -> Result<f64, ExactError> {
        if alpha == 0.0 {
            return Ok(0.0);
        }
        match self.kind {
            FactorKind::ChiSq { dof } => Ok(alpha * std::f64::consts::LN_2 + ln_gamma_ratio(0.5 * dof, alpha)?),
            FactorKind::Beta { a, b } => Ok(ln_gamma_ratio(a, alpha)? - ln_gamma_ratio(a + b, alpha)?),
            FactorKind::BetaPrime { a, b } => {
                if alpha >= b {
                    return Err(ExactError::DivergentMoment { alpha, limit: b });
                }
                Ok(ln_gamma_ratio(a, alpha)? + ln_gamma_ratio(b, -alpha)?)
            }
        }
    }

    /// `<ln(scale * Y)>`.
    pub fn log_mean(&self) -> Result<f64, ExactError> {
        let kind = match self.kind {
            FactorKind::ChiSq { dof } => std::f64::consts::LN_2 + digamma(0.5 * dof)?,
            FactorKind::Beta { a, b } => digamma(a)? - digamma(a + b)?,
            FactorKind::BetaPrime { a, b } => digamma(a)? - digamma(b)?,
        };
        Ok(self.scale.ln() + kind)
    }
}

/// `|det X|^2` as a product of independent scaled factors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionFactorization {
    pub factors: Vec<Factor>,
}

impl DistributionFactorization {
    /// `<|det X|^(2 alpha)>` as the product of the factor moments.
    pub fn moment(&self, alpha: f64) -> Result<f64, ExactError> {
        let mut ln = 0.0;
        for f in &self.factors {
            ln += alpha * f.scale.ln() + f.ln_kind_moment(alpha)?;
        }
        Ok(ln.exp())
    }

    /// `<ln |det X|^2>`.
    pub fn log_mean(&self) -> Result<f64, ExactError> {
        self.factors.iter().map(Factor::log_mean).sum()
    }
}

/// Half-integer ladder `beta (N - l + 1) / 2` for `l = 1..N`.
fn ladder(field: FieldIndex, n: usize) -> impl Iterator<Item = (usize, f64)> {
    let beta = field.beta();
    (1..=n).map(move |l| (l, 0.5 * beta * (n - l + 1) as f64))
}

/// `<|det X|^(2 alpha)>` from the product formulas.
pub fn det_moment(spec: &EnsembleSpec, alpha: f64) -> Result<f64, ExactError> {
    if alpha == 0.0 {
        return Ok(1.0);
    }
    let beta = spec.field().beta();
    let n = spec.n();
    if !(alpha > -0.5 * beta) {
        return Err(param_error("alpha", "greater than -beta/2", alpha));
    }
    if let RowDistribution::BetaII { .. } = spec.rows()[0] {
        let limit = spec.parameters().iter().map(|w| 0.5 * beta * w).fold(f64::INFINITY, f64::min);
        if alpha >= limit {
            return Err(ExactError::DivergentMoment { alpha, limit });
        }
    }
    let mut ln = 0.0;
    for ((_, c), row) in ladder(spec.field(), n).zip(spec.rows()) {
        ln += ln_gamma_ratio(c, alpha)?;
        ln += match *row {
            RowDistribution::Gaussian { sigma } => alpha * (2.0 * sigma * sigma).ln(),
            RowDistribution::BetaI { nu } => -ln_gamma_ratio(0.5 * beta * (n as f64 + nu), alpha)?,
            RowDistribution::BetaII { omega } => ln_gamma_ratio(0.5 * beta * omega, -alpha)?,
        };
    }
    Ok(ln.exp())
}

/// Independent factors whose product has the law of `|det X|^2`.
pub fn det_distribution(spec: &EnsembleSpec) -> Result<DistributionFactorization, ExactError> {
    let beta = spec.field().beta();
    let n = spec.n();
    let mut factors = Vec::with_capacity(n);
    for ((l, a), row) in ladder(spec.field(), n).zip(spec.rows()) {
        let factor = match *row {
            RowDistribution::Gaussian { sigma } => {
                Factor { kind: FactorKind::ChiSq { dof: beta * l as f64 }, scale: sigma * sigma }
            }
            RowDistribution::BetaI { nu } => {
                let b = 0.5 * beta * (nu + l as f64 - 1.0);
                if !(b > 0.0) {
                    return Err(param_error("nu", "positive (degenerate first factor)", nu));
                }
                Factor { kind: FactorKind::Beta { a, b }, scale: 1.0 }
            }
            RowDistribution::BetaII { omega } => {
                Factor { kind: FactorKind::BetaPrime { a, b: 0.5 * beta * omega }, scale: 1.0 }
            }
        };
        factors.push(factor);
    }
    Ok(DistributionFactorization { factors })
}

/// `mu_1 + ... + mu_N = <ln |det X|>`.
pub fn lyapunov_sum(spec: &EnsembleSpec) -> Result<f64, ExactError> {
    Ok(0.5 * det_distribution(spec)?.log_mean()?)
}

/// `mu_1 + ... + mu_k` for equal-variance Gaussian rows:
/// `(k ln(2 sigma^2) + sum_{l<=k} Psi(beta (N - l + 1)/2)) / 2`.
pub fn lyapunov_partial_sum_gaussian(n: usize, k: usize, field: FieldIndex, sigma: f64) -> Result<f64, ExactError> {
    if n == 0 {
        return Err(param_error("n", "at least 1", 0.0));
    }
    if !(1..=n).contains(&k) {
        return Err(param_error("k", "between 1 and n", k as f64));
    }
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(param_error("sigma", "positive and finite", sigma));
    }
    let mut psi = 0.0;
    for (_, c) in ladder(field, n).take(k) {
        psi += digamma(c)?;
    }
    Ok(0.5 * (k as f64 * (2.0 * sigma * sigma).ln() + psi))
}

/// All partial sums `k = 1..N` of the equal-variance Gaussian spectrum.
pub fn lyapunov_partial_sums_gaussian(n: usize, field: FieldIndex, sigma: f64) -> Result<LyapunovResult, ExactError> {
    let values = (1..=n).map(|k| lyapunov_partial_sum_gaussian(n, k, field, sigma)).collect::<Result<_, _>>()?;
    Ok(LyapunovResult { kind: LyapunovKind::PartialSums, values, method: Method::ClosedForm })
}
