//! Named cross-route check suites with a serializable per-check report.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ensembles::{EnsembleSpec, FieldIndex, ModelSpec, RowFamily, ShiftedGaussianSpec};
use crate::exact::{
    det_distribution, det_moment, mu1, mu1_asymptotic, mu1_betai, mu1_betai_fourier, mu1_gaussian_general,
    mu1_gaussian_two_block, mu1_shifted, mu1_shifted_2x2, AsymptoticRegime, TwoBlockGaussianSpec,
};
use crate::mhg::noncentral_wishart_det_moment;
use crate::montecarlo::{estimate_det_moments, estimate_mu1_column, estimate_wishart_det_moment, McEstimate};
use crate::quad::{exp_sinh, Tolerance};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Deterministic routes that must agree to near machine precision.
    FormulaEquivalence,
    /// Determinant moments against sampled averages.
    ExactVsMc,
    /// Exact `mu_1` against the first-column estimator.
    Mu1Crosscheck,
}

impl Suite {
    pub const ALL: [Suite; 3] = [Suite::FormulaEquivalence, Suite::ExactVsMc, Suite::Mu1Crosscheck];

    pub fn name(self) -> &'static str {
        match self {
            Suite::FormulaEquivalence => "formula-equivalence",
            Suite::ExactVsMc => "exact-vs-mc",
            Suite::Mu1Crosscheck => "mu1-crosscheck",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| {
            format!("unknown suite {s:?}; expected one of formula-equivalence, exact-vs-mc, mu1-crosscheck")
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    /// `|estimate - reference|`.
    AbsDiff,
    /// `|estimate - reference| / std_error`.
    ZScore,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub reference: f64,
    pub estimate: f64,
    /// Standard error for sampled estimates, otherwise the reported error
    /// estimate of the compared route.
    pub error: f64,
    pub metric: Metric,
    pub score: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl Check {
    pub fn abs_diff(name: impl Into<String>, reference: f64, estimate: f64, error: f64, threshold: f64) -> Self {
        let score = (estimate - reference).abs();
        Check {
            name: name.into(),
            reference,
            estimate,
            error,
            metric: Metric::AbsDiff,
            score,
            threshold,
            passed: score <= threshold,
        }
    }

    pub fn z_score(name: impl Into<String>, reference: f64, est: &McEstimate, threshold: f64) -> Self {
        let score = est.z_score(reference).abs();
        Check {
            name: name.into(),
            reference,
            estimate: est.value,
            error: est.std_error,
            metric: Metric::ZScore,
            score,
            threshold,
            passed: score < threshold,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(suite: Suite, checks: Vec<Check>) -> Self {
        Report { suite, passed: checks.iter().all(|c| c.passed), checks }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidationOptions {
    pub samples: usize,
    pub seed: u64,
    /// z-score limit for sampled checks.
    pub z_limit: f64,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions { samples: 1_000_000, seed: 20_240_501, z_limit: 4.0 }
    }
}

/// Short description of a model for check names.
pub fn describe(spec: &ModelSpec) -> String {
    match spec {
        ModelSpec::Isotropic(s) => {
            let family = match s.family() {
                RowFamily::Gaussian => "gaussian",
                RowFamily::BetaI => "beta1",
                RowFamily::BetaII => "beta2",
            };
            let params: Vec<String> = s.parameters().iter().map(|p| format!("{p}")).collect();
            format!("{family} beta={} n={} [{}]", s.field().beta(), s.n(), params.join(","))
        }
        ModelSpec::Shifted(s) => {
            format!("shifted beta={} n={} c={} sigma={}", s.field().beta(), s.n(), s.c(), s.sigma())
        }
    }
}

/// Two-block Gaussian parameters `(beta, N, N0, b1, b2)` covering `N <= 6`.
pub fn two_block_grid() -> Vec<TwoBlockGaussianSpec> {
    let raw = [
        (FieldIndex::Real, 2, 1, 2.0, 0.5),
        (FieldIndex::Real, 3, 1, 1.5, 1.0),
        (FieldIndex::Real, 4, 2, 5.0, 0.3),
        (FieldIndex::Real, 6, 5, 1.2, 0.9),
        (FieldIndex::Complex, 2, 1, 3.0, 1.0),
        (FieldIndex::Complex, 3, 2, 0.8, 0.2),
        (FieldIndex::Complex, 5, 1, 10.0, 2.0),
        (FieldIndex::Complex, 6, 3, 2.0, 1.9),
        (FieldIndex::Quaternion, 2, 1, 1.0, 0.25),
        (FieldIndex::Quaternion, 3, 1, 4.0, 3.0),
        (FieldIndex::Quaternion, 4, 3, 0.7, 0.1),
        (FieldIndex::Quaternion, 6, 2, 2.5, 1.5),
    ];
    raw.iter()
        .map(|&(f, n, n0, b1, b2)| TwoBlockGaussianSpec::new(f, n, n0, b1, b2).expect("valid grid point"))
        .collect()
}

/// Twelve models: every field with Gaussian, beta type I, beta type II and
/// shifted rows.
pub fn mu1_grid() -> Vec<ModelSpec> {
    let mut out = Vec::new();
    for field in FieldIndex::ALL {
        out.push(EnsembleSpec::gaussian(field, &[1.0, 0.7, 1.3]).expect("valid").into());
        out.push(EnsembleSpec::beta1(field, &[1.0, 2.5]).expect("valid").into());
        out.push(EnsembleSpec::beta2(field, &[3.0, 4.0]).expect("valid").into());
        out.push(ShiftedGaussianSpec::new(field, 2, 1.5, 1.0).expect("valid").into());
    }
    out
}

/// Nine isotropic models, one per (field, family), with `N <= 4` and type II
/// parameters leaving room for the `alpha = 2` variance requirement.
pub fn det_moment_grid() -> Vec<EnsembleSpec> {
    let mut out = Vec::new();
    for (i, field) in FieldIndex::ALL.into_iter().enumerate() {
        let beta = field.beta();
        let dims = [2 + i % 3, 2 + (i + 1) % 3, 2 + (i + 2) % 3];
        out.push(EnsembleSpec::gaussian(field, &vec![0.9; dims[0]]).expect("valid"));
        out.push(EnsembleSpec::beta1(field, &vec![1.5; dims[1]]).expect("valid"));
        out.push(EnsembleSpec::beta2(field, &vec![20.0 / beta; dims[2]]).expect("valid"));
    }
    out
}

/// `(1/2) e^{t/2} int_1^inf e^{-t x/2} dx / (sqrt(x) (sqrt(x) + 1))`, the
/// independently known limit for one distinguished row among real rows.
pub fn single_spike_limit(t: f64) -> Result<f64, Error> {
    let tol = Tolerance { abs: 1e-15, rel: 1e-14, max_evals: 40_000 };
    let r = exp_sinh(
        |n| {
            let x = 1.0 + n.from_lower;
            (-0.5 * t * n.from_lower).exp() / (x.sqrt() * (x.sqrt() + 1.0))
        },
        0.0,
        2.0 / t,
        &tol,
    )?;
    Ok(0.5 * r.value)
}

fn coherence_checks(spec: &EnsembleSpec, checks: &mut Vec<Check>) -> Result<(), Error> {
    let dist = det_distribution(spec)?;
    let beta = spec.field().beta();
    let limit = match spec.family() {
        RowFamily::BetaII => spec.parameters().iter().map(|w| 0.5 * beta * w).fold(f64::INFINITY, f64::min),
        _ => f64::INFINITY,
    };
    for alpha in [-0.2 * beta, 0.5, 1.0, 1.7, 3.0] {
        if alpha >= limit {
            continue;
        }
        let direct = det_moment(spec, alpha)?;
        let via = dist.moment(alpha)?;
        let name = format!("det moment vs factorization, {} alpha={alpha}", describe(&spec.clone().into()));
        checks.push(Check::abs_diff(name, via, direct, 0.0, 1e-12 * via.abs().max(1.0)));
    }
    Ok(())
}

fn formula_equivalence(specs: Option<&[ModelSpec]>) -> Result<Vec<Check>, Error> {
    let mut checks = Vec::new();
    if let Some(specs) = specs {
        for spec in specs {
            if let ModelSpec::Isotropic(s) = spec {
                coherence_checks(s, &mut checks)?;
            }
        }
        return Ok(checks);
    }
    for s in two_block_grid() {
        let a = mu1_gaussian_two_block(&s)?;
        let b = mu1_gaussian_general(&s.rates(), s.field())?;
        let name = format!(
            "two-block vs general, beta={} n={} n0={} b1={} b2={}",
            s.field().beta(),
            s.n(),
            s.n0(),
            s.b1(),
            s.b2()
        );
        checks.push(Check::abs_diff(name, b.value, a.value, a.est_abs_error + b.est_abs_error, 1e-8));
    }
    for lambda in [0.5, 1.0, 2.0, 5.0] {
        let a = mu1_shifted(2, FieldIndex::Real, lambda)?;
        let b = mu1_shifted_2x2(0.5 * lambda)?;
        checks.push(Check::abs_diff(
            format!("shifted vs 2x2, lambda={lambda}"),
            b.value,
            a.value,
            a.est_abs_error,
            1e-8,
        ));
    }
    for t in [0.5, 1.0, 2.0] {
        let n = 1000;
        let regime = AsymptoticRegime::A3 { beta: FieldIndex::Real, n, b1: 0.5 * n as f64, b2: 0.5 * t };
        let a = mu1_asymptotic(&regime)?;
        let b = single_spike_limit(t)?;
        checks.push(Check::abs_diff(format!("single spike limit, t={t}"), b, a.value, a.est_abs_error, 1e-6));
    }
    let nus = [1.0, 1.0];
    let f = mu1_betai_fourier(&nus, FieldIndex::Real, 2000)?;
    let q = mu1_betai(&nus, FieldIndex::Real)?;
    checks.push(Check::abs_diff(
        "fourier vs quadrature, beta1 beta=1 n=2 [1,1]",
        q.value,
        f.evaluation.value,
        f.evaluation.est_abs_error,
        1e-4,
    ));
    for spec in det_moment_grid() {
        coherence_checks(&spec, &mut checks)?;
    }
    Ok(checks)
}

fn mu1_crosscheck(specs: Option<&[ModelSpec]>, opts: &ValidationOptions) -> Result<Vec<Check>, Error> {
    let grid;
    let specs = match specs {
        Some(s) => s,
        None => {
            grid = mu1_grid();
            &grid
        }
    };
    let mut checks = Vec::new();
    for (i, spec) in specs.iter().enumerate() {
        let exact = mu1(spec)?;
        let mc = estimate_mu1_column(spec, opts.samples, opts.seed.wrapping_add(i as u64))?;
        checks.push(Check::z_score(format!("mu1 {}", describe(spec)), exact.value, &mc, opts.z_limit));
    }
    Ok(checks)
}

fn exact_vs_mc(specs: Option<&[ModelSpec]>, opts: &ValidationOptions) -> Result<Vec<Check>, Error> {
    let grid: Vec<EnsembleSpec> = match specs {
        Some(s) => s
            .iter()
            .filter_map(|m| match m {
                ModelSpec::Isotropic(e) => Some(e.clone()),
                ModelSpec::Shifted(_) => None,
            })
            .collect(),
        None => det_moment_grid(),
    };
    let mut checks = Vec::new();
    for (i, spec) in grid.iter().enumerate() {
        let alphas = [1.0, 2.0];
        let mc = estimate_det_moments(spec, &alphas, opts.samples, opts.seed.wrapping_add(i as u64))?;
        for (alpha, est) in alphas.iter().zip(&mc) {
            let exact = det_moment(spec, *alpha)?;
            let name = format!("det moment {} alpha={alpha}", describe(&spec.clone().into()));
            checks.push(Check::z_score(name, exact, est, opts.z_limit));
        }
    }
    let shifted = specs.map_or_else(
        || vec![ShiftedGaussianSpec::new(FieldIndex::Real, 2, 2.0, 1.0).expect("valid")],
        |s| s.iter().filter_map(|m| if let ModelSpec::Shifted(x) = m { Some(*x) } else { None }).collect(),
    );
    for (i, s) in shifted.iter().enumerate() {
        for k in 1..=s.n() {
            let exact = noncentral_wishart_det_moment(s.n(), k, s.field(), s.sigma(), s.c(), 1.0)?;
            let seed = opts.seed.wrapping_add((1000 + 16 * i + k) as u64);
            let est = estimate_wishart_det_moment(s.n(), k, s.field(), s.sigma(), s.c(), 1.0, opts.samples, seed)?;
            let name = format!("noncentral wishart moment k={k} {} alpha=1", describe(&(*s).into()));
            checks.push(Check::z_score(name, exact.value, &est, opts.z_limit));
        }
    }
    Ok(checks)
}

/// Run one suite on its built-in grid, or on `specs` when given.
pub fn run_suite(suite: Suite, specs: Option<&[ModelSpec]>, opts: &ValidationOptions) -> Result<Report, Error> {
    let checks = match suite {
        Suite::FormulaEquivalence => formula_equivalence(specs)?,
        Suite::ExactVsMc => exact_vs_mc(specs, opts)?,
        Suite::Mu1Crosscheck => mu1_crosscheck(specs, opts)?,
    };
    Ok(Report::new(suite, checks))
}
