use isolyap_core::ensembles::{EnsembleSpec, ModelSpec, RowDistribution, RowFamily, ShiftedGaussianSpec};
use isolyap_core::exact::{
    det_moment, lyap_sum_shifted_asymptotic, lyapunov_partial_sum_gaussian, lyapunov_partial_sums_gaussian,
    lyapunov_sum, mu1, Evaluation,
};
use isolyap_core::mhg::noncentral_wishart_det_moment;
use isolyap_core::montecarlo::{
    estimate_det_moment, estimate_mu1_column, estimate_spectrum, estimate_wishart_det_moment, McEstimate,
};

use crate::args::{Params, Quantity, SweepParam};
use crate::error::CliError;

/// One value of a computed quantity, optionally labelled by a parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub label: Option<(String, f64)>,
    pub estimate: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Computed {
    pub method: String,
    pub points: Vec<Point>,
    pub warnings: Vec<String>,
}

impl Computed {
    fn from_evaluation(e: Evaluation) -> Self {
        Computed {
            method: e.method.to_string(),
            points: vec![Point { label: None, estimate: e.value, error: e.est_abs_error }],
            warnings: e.warnings,
        }
    }

    fn from_mc(e: McEstimate) -> Self {
        Computed {
            method: "monte-carlo".into(),
            points: vec![Point { label: None, estimate: e.value, error: e.std_error }],
            warnings: Vec::new(),
        }
    }
}

fn isotropic(spec: &ModelSpec, q: Quantity) -> Result<&EnsembleSpec, CliError> {
    match spec {
        ModelSpec::Isotropic(s) => Ok(s),
        ModelSpec::Shifted(_) => Err(CliError::Config(format!("{} needs an isotropic ensemble spec", q.name()))),
    }
}

fn shifted(spec: &ModelSpec, q: Quantity) -> Result<ShiftedGaussianSpec, CliError> {
    match spec {
        ModelSpec::Shifted(s) => Ok(*s),
        ModelSpec::Isotropic(_) => Err(CliError::Config(format!("{} needs a shifted Gaussian spec", q.name()))),
    }
}

fn alpha(p: &Params, q: Quantity) -> Result<f64, CliError> {
    p.alpha.ok_or_else(|| CliError::Config(format!("{} needs --alpha", q.name())))
}

fn columns(p: &Params, n: usize) -> Result<usize, CliError> {
    let k = p.k.unwrap_or(n);
    if (1..=n).contains(&k) {
        Ok(k)
    } else {
        Err(CliError::Config(format!("--k must be between 1 and {n}, got {k}")))
    }
}

/// The common sigma of iid Gaussian rows.
fn common_sigma(spec: &EnsembleSpec) -> Option<f64> {
    let ps = spec.parameters();
    (spec.family() == RowFamily::Gaussian && ps.iter().all(|&s| s == ps[0])).then(|| ps[0])
}

fn spectrum_points(values: &[f64], errors: Option<&[f64]>) -> Vec<Point> {
    values
        .iter()
        .enumerate()
        .map(|(i, &v)| Point {
            label: Some(("k".into(), (i + 1) as f64)),
            estimate: v,
            error: errors.map_or(0.0, |e| e[i]),
        })
        .collect()
}

pub fn exact(q: Quantity, spec: &ModelSpec, p: &Params) -> Result<Computed, CliError> {
    let n = spec.n();
    match q {
        Quantity::DetMoment => {
            let v = det_moment(isotropic(spec, q)?, alpha(p, q)?)?;
            Ok(Computed::from_evaluation(Evaluation::closed_form(v)))
        }
        Quantity::LyapSum => {
            let k = columns(p, n)?;
            match spec {
                ModelSpec::Isotropic(s) if k == n => {
                    Ok(Computed::from_evaluation(Evaluation::closed_form(lyapunov_sum(s)?)))
                }
                ModelSpec::Isotropic(s) => {
                    let sigma = common_sigma(s)
                        .ok_or_else(|| CliError::Config("partial sums with --k < n need iid Gaussian rows".into()))?;
                    let v = lyapunov_partial_sum_gaussian(n, k, s.field(), sigma)?;
                    Ok(Computed::from_evaluation(Evaluation::closed_form(v)))
                }
                ModelSpec::Shifted(s) => {
                    let v = lyap_sum_shifted_asymptotic(n, k, s.field(), s.sigma(), s.c())?;
                    Ok(Computed {
                        method: "asymptotic".into(),
                        points: vec![Point { label: None, estimate: v, error: f64::NAN }],
                        warnings: vec!["leading order in 1/c^2".into()],
                    })
                }
            }
        }
        Quantity::Mu1 => Ok(Computed::from_evaluation(mu1(spec)?)),
        Quantity::Spectrum => {
            let s = isotropic(spec, q)?;
            let sigma =
                common_sigma(s).ok_or_else(|| CliError::Config("the exact spectrum needs iid Gaussian rows".into()))?;
            let r = lyapunov_partial_sums_gaussian(n, s.field(), sigma)?;
            Ok(Computed {
                method: r.method.to_string(),
                points: spectrum_points(&r.exponents(), None),
                warnings: Vec::new(),
            })
        }
        Quantity::WishartMoment => {
            let s = shifted(spec, q)?;
            let k = columns(p, n)?;
            let e = noncentral_wishart_det_moment(n, k, s.field(), s.sigma(), s.c(), alpha(p, q)?)?;
            Ok(Computed::from_evaluation(e))
        }
    }
}

pub fn monte_carlo(q: Quantity, spec: &ModelSpec, p: &Params) -> Result<Computed, CliError> {
    let n = spec.n();
    match q {
        Quantity::DetMoment => {
            let e = estimate_det_moment(isotropic(spec, q)?, alpha(p, q)?, p.samples, p.seed)?;
            Ok(Computed::from_mc(e))
        }
        Quantity::LyapSum => {
            let k = columns(p, n)?;
            let s = estimate_spectrum(spec, p.m, p.trials, p.seed)?;
            Ok(Computed::from_mc(s.partial_sums[k - 1]))
        }
        Quantity::Mu1 => Ok(Computed::from_mc(estimate_mu1_column(spec, p.samples, p.seed)?)),
        Quantity::Spectrum => {
            let s = estimate_spectrum(spec, p.m, p.trials, p.seed)?;
            let values: Vec<f64> = s.exponents.iter().map(|e| e.value).collect();
            let errors: Vec<f64> = s.exponents.iter().map(|e| e.std_error).collect();
            Ok(Computed {
                method: "monte-carlo".into(),
                points: spectrum_points(&values, Some(&errors)),
                warnings: Vec::new(),
            })
        }
        Quantity::WishartMoment => {
            let s = shifted(spec, q)?;
            let k = columns(p, n)?;
            let e = estimate_wishart_det_moment(n, k, s.field(), s.sigma(), s.c(), alpha(p, q)?, p.samples, p.seed)?;
            Ok(Computed::from_mc(e))
        }
    }
}

fn with_rows(spec: &EnsembleSpec, family: RowFamily, row: RowDistribution, name: &str) -> Result<ModelSpec, CliError> {
    if spec.family() != family {
        return Err(CliError::Config(format!("sweeping {name} needs {family:?} rows")));
    }
    Ok(EnsembleSpec::iid(spec.field(), spec.n(), row)?.into())
}

/// `spec` and `params` with one parameter replaced.
pub fn apply(
    spec: &ModelSpec,
    params: &Params,
    which: SweepParam,
    value: f64,
) -> Result<(ModelSpec, Params), CliError> {
    let mut p = params.clone();
    let spec = match (which, spec) {
        (SweepParam::Alpha, s) => {
            p.alpha = Some(value);
            s.clone()
        }
        (SweepParam::K, s) => {
            if value.fract() != 0.0 || value < 1.0 {
                return Err(CliError::Config(format!("k must be a positive integer, got {value}")));
            }
            p.k = Some(value as usize);
            s.clone()
        }
        (SweepParam::C, ModelSpec::Shifted(s)) => ShiftedGaussianSpec::new(s.field(), s.n(), value, s.sigma())?.into(),
        (SweepParam::Lambda, ModelSpec::Shifted(s)) => {
            if !(value > 0.0) {
                return Err(CliError::Config(format!("lambda must be positive, got {value}")));
            }
            ShiftedGaussianSpec::new(s.field(), s.n(), s.sigma() * value.sqrt(), s.sigma())?.into()
        }
        (SweepParam::Sigma, ModelSpec::Shifted(s)) => ShiftedGaussianSpec::new(s.field(), s.n(), s.c(), value)?.into(),
        (SweepParam::Sigma, ModelSpec::Isotropic(s)) => {
            with_rows(s, RowFamily::Gaussian, RowDistribution::Gaussian { sigma: value }, "sigma")?
        }
        (SweepParam::Nu, ModelSpec::Isotropic(s)) => {
            with_rows(s, RowFamily::BetaI, RowDistribution::BetaI { nu: value }, "nu")?
        }
        (SweepParam::Omega, ModelSpec::Isotropic(s)) => {
            with_rows(s, RowFamily::BetaII, RowDistribution::BetaII { omega: value }, "omega")?
        }
        (w, _) => return Err(CliError::Config(format!("parameter {} does not apply to this spec", w.name()))),
    };
    Ok((spec, p))
}
