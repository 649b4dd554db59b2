//! Hypergeometric functions of a scalar matrix argument `t I_m`, summed over
//! partitions with generalized Pochhammer symbols and Jack polynomials in
//! the `C` normalization.

mod partition;

pub use partition::{enumerate_partitions, Partition};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ensembles::FieldIndex;
use crate::exact::{Evaluation, Method};
use crate::specfun::ln_gamma_ratio;

/// Default truncation for series that do not terminate.
pub const DEFAULT_MAX_WEIGHT: usize = 30;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MhgError {
    #[error("Jack parameter must be 2, 1 or 1/2, got {0}")]
    JackParameter(f64),
    #[error("expected {expected} numerator and {expected_den} denominator parameters")]
    Arity { expected: usize, expected_den: usize },
    #[error("denominator parameter {0} hits a zero of its Pochhammer symbol")]
    DenominatorZero(f64),
    #[error("matrix dimension must be at least 1")]
    Dimension,
    #[error("series terminated at weight {weight} but a term of weight {next} is {value}")]
    Termination { weight: usize, next: usize, value: f64 },
    #[error("{what} must be {requirement}, got {value}")]
    Parameter { what: &'static str, requirement: &'static str, value: f64 },
}

/// Parameters of `pFq^(alpha)(numer; denom; t I_m)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MhgParams {
    pub alpha_jack: f64,
    pub numer: Vec<f64>,
    pub denom: Vec<f64>,
    pub t: f64,
    pub m: usize,
    /// Highest partition weight summed; `None` uses the termination order
    /// or [`DEFAULT_MAX_WEIGHT`].
    pub max_weight: Option<usize>,
    /// Tail tolerance for non-terminating sums.
    pub tol: f64,
}

impl MhgParams {
    pub fn f11(field: FieldIndex, a: f64, b: f64, t: f64, m: usize) -> Self {
        MhgParams { alpha_jack: field.jack_alpha(), numer: vec![a], denom: vec![b], t, m, max_weight: None, tol: 1e-15 }
    }

    pub fn f20(field: FieldIndex, a1: f64, a2: f64, t: f64, m: usize, max_weight: usize) -> Self {
        MhgParams {
            alpha_jack: field.jack_alpha(),
            numer: vec![a1, a2],
            denom: Vec::new(),
            t,
            m,
            max_weight: Some(max_weight),
            tol: 0.0,
        }
    }

    pub fn with_max_weight(mut self, w: usize) -> Self {
        self.max_weight = Some(w);
        self
    }
}

/// A truncated series value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MhgResult {
    pub value: f64,
    pub est_abs_error: f64,
    /// Highest weight actually summed.
    pub weight: usize,
    /// True when the series is a polynomial and was summed completely.
    pub terminated: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// `[a]_kappa^(alpha) = prod_i (a - (i-1)/alpha)_{kappa_i}`.
pub fn gen_pochhammer(a: f64, kappa: &Partition, alpha_jack: f64) -> f64 {
    let mut prod = 1.0;
    for (i, &part) in kappa.parts().iter().enumerate() {
        let base = a - i as f64 / alpha_jack;
        for j in 0..part {
            prod *= base + j as f64;
        }
    }
    prod
}

/// `C_kappa^(alpha)(I_m)`, normalized so the sum over all partitions of
/// weight `k` is `m^k`.
pub fn jack_c_identity(kappa: &Partition, alpha_jack: f64, m: usize) -> f64 {
    if kappa.len() > m {
        return 0.0;
    }
    let k = kappa.weight();
    let conj = kappa.conjugate();
    let mut ratio = 1.0;
    for (i, &part) in kappa.parts().iter().enumerate() {
        for j in 0..part {
            let arm = (part - j - 1) as f64;
            let leg = (conj.parts()[j] - i - 1) as f64;
            let content = m as f64 - i as f64 + alpha_jack * j as f64;
            let upper = leg + alpha_jack * (1.0 + arm);
            let lower = leg + 1.0 + alpha_jack * arm;
            // alpha^k k! is spread over the k cells as alpha * (cell index)
            ratio *= content / (upper * lower);
        }
    }
    let mut scale = 1.0;
    for r in 1..=k {
        scale *= alpha_jack * r as f64;
    }
    ratio * scale
}

fn check_jack(alpha: f64) -> Result<(), MhgError> {
    if [2.0, 1.0, 0.5].contains(&alpha) {
        Ok(())
    } else {
        Err(MhgError::JackParameter(alpha))
    }
}

/// If some numerator is `-p` for an integer `p >= 0`, the series is a
/// polynomial of degree at most `m p`.
fn termination_weight(numer: &[f64], m: usize) -> Option<usize> {
    numer.iter().filter(|a| **a <= 0.0 && a.fract() == 0.0).map(|a| (-a) as usize * m).min()
}

/// Sum over all partitions of one weight.
fn weight_total(p: &MhgParams, parts: &[Partition], fact: f64) -> Result<(f64, f64), MhgError> {
    let mut total = 0.0;
    let mut abs = 0.0;
    for kappa in parts {
        let mut coef = jack_c_identity(kappa, p.alpha_jack, p.m) / fact;
        if coef == 0.0 {
            continue;
        }
        for &a in &p.numer {
            coef *= gen_pochhammer(a, kappa, p.alpha_jack);
        }
        for &b in &p.denom {
            let d = gen_pochhammer(b, kappa, p.alpha_jack);
            if d == 0.0 {
                return Err(MhgError::DenominatorZero(b));
            }
            coef /= d;
        }
        total += coef;
        abs += coef.abs();
    }
    Ok((total, abs))
}

fn check_common(p: &MhgParams) -> Result<(), MhgError> {
    check_jack(p.alpha_jack)?;
    if p.m == 0 {
        return Err(MhgError::Dimension);
    }
    if !p.t.is_finite() {
        return Err(MhgError::Parameter { what: "t", requirement: "finite", value: p.t });
    }
    Ok(())
}

/// Weight-by-weight summation; `stop` decides after each weight whether
/// the tail is small enough.
fn sum_series(p: &MhgParams, max_weight: usize, adaptive: bool) -> Result<MhgResult, MhgError> {
    let all = enumerate_partitions(max_weight + 1, p.m);
    let mut by_weight: Vec<Vec<Partition>> = vec![Vec::new(); max_weight + 2];
    for kappa in all {
        let w = kappa.weight();
        by_weight[w].push(kappa);
    }
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    let mut t_pow = 1.0;
    let mut fact = 1.0;
    let mut last = f64::INFINITY;
    let mut ratio = f64::INFINITY;
    for (w, parts) in by_weight.iter().enumerate().take(max_weight + 1) {
        if w > 0 {
            t_pow *= p.t;
            fact *= w as f64;
        }
        let (total, abs) = weight_total(p, parts, fact)?;
        let term = total * t_pow;
        sum += term;
        abs_sum += abs * t_pow.abs();
        let mag = term.abs();
        if w > 0 && last > 0.0 {
            ratio = mag / last;
        }
        last = mag;
        if adaptive && w >= 2 && ratio < 0.5 && mag <= p.tol * sum.abs() {
            let err = mag * ratio / (1.0 - ratio) + 4.0 * f64::EPSILON * abs_sum;
            return Ok(MhgResult {
                value: sum,
                est_abs_error: err,
                weight: w,
                terminated: false,
                warnings: Vec::new(),
            });
        }
    }
    let tail = if ratio < 1.0 { last * ratio / (1.0 - ratio) } else { last };
    let err = tail + 4.0 * f64::EPSILON * abs_sum;
    let mut warnings = Vec::new();
    if adaptive && err > p.tol.max(4.0 * f64::EPSILON) * sum.abs().max(1.0) {
        warnings.push(format!("truncation at weight {max_weight} dominates: tail estimate {err:.3e}"));
    }
    Ok(MhgResult { value: sum, est_abs_error: err, weight: max_weight, terminated: false, warnings })
}

/// `1F1^(alpha)(a; b; t I_m)`.
pub fn mhg_1f1_scalar(p: &MhgParams) -> Result<MhgResult, MhgError> {
    if p.numer.len() != 1 || p.denom.len() != 1 {
        return Err(MhgError::Arity { expected: 1, expected_den: 1 });
    }
    check_common(p)?;
    if p.t == 0.0 {
        return Ok(MhgResult { value: 1.0, est_abs_error: 0.0, weight: 0, terminated: true, warnings: Vec::new() });
    }
    if let Some(deg) = termination_weight(&p.numer, p.m) {
        let w = p.max_weight.map_or(deg, |mw| mw.max(deg));
        let r = sum_series(p, w, false)?;
        // every partition of weight deg + 1 must contribute exactly zero
        let next = enumerate_partitions(deg + 1, p.m).into_iter().filter(|k| k.weight() == deg + 1).collect::<Vec<_>>();
        let (value, _) = weight_total(p, &next, 1.0)?;
        if value != 0.0 {
            return Err(MhgError::Termination { weight: deg, next: deg + 1, value });
        }
        return Ok(MhgResult { est_abs_error: 4.0 * f64::EPSILON * r.value.abs().max(1.0), terminated: true, ..r });
    }
    sum_series(p, p.max_weight.unwrap_or(DEFAULT_MAX_WEIGHT), true)
}

/// `2F0^(alpha)(a1, a2; ; t I_m)` summed to `max_weight`; the error is the
/// size of the first omitted weight (the series is asymptotic only).
pub fn mhg_2f0_scalar(p: &MhgParams) -> Result<MhgResult, MhgError> {
    if p.numer.len() != 2 || !p.denom.is_empty() {
        return Err(MhgError::Arity { expected: 2, expected_den: 0 });
    }
    check_common(p)?;
    let w = p.max_weight.unwrap_or(DEFAULT_MAX_WEIGHT);
    let r = sum_series(p, w, false)?;
    let next: Vec<Partition> = enumerate_partitions(w + 1, p.m).into_iter().filter(|k| k.weight() == w + 1).collect();
    let mut fact = 1.0;
    for r in 1..=w + 1 {
        fact *= r as f64;
    }
    let (total, _) = weight_total(p, &next, fact)?;
    let omitted = (total * p.t.powi(w as i32 + 1)).abs();
    let terminated = termination_weight(&p.numer, p.m).is_some_and(|d| d <= w);
    Ok(MhgResult { value: r.value, est_abs_error: omitted, weight: w, terminated, warnings: Vec::new() })
}

/// `<(det W_k)^alpha>` for `W_k = Y_k^dag Y_k`, `Y = c I_N + X` restricted to
/// its first `k` columns, `X` field-Gaussian with component deviation `sigma`:
/// `prod_{l<=k} (2 sigma^2)^alpha (beta (N-l+1)/2)_alpha 1F1(-alpha; beta N/2; -ctilde I_k)`.
pub fn noncentral_wishart_det_moment(
    n: usize,
    k: usize,
    field: FieldIndex,
    sigma: f64,
    c: f64,
    alpha: f64,
) -> Result<Evaluation, MhgError> {
    if !(1..=n).contains(&k) {
        return Err(MhgError::Parameter { what: "k", requirement: "between 1 and n", value: k as f64 });
    }
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(MhgError::Parameter { what: "sigma", requirement: "positive and finite", value: sigma });
    }
    let beta = field.beta();
    if !(alpha > -0.5 * beta * (n - k + 1) as f64) {
        return Err(MhgError::Parameter {
            what: "alpha",
            requirement: "greater than -beta (N - k + 1)/2",
            value: alpha,
        });
    }
    let mut ln_pref = 0.0;
    for l in 1..=k {
        ln_pref += alpha * (2.0 * sigma * sigma).ln();
        ln_pref += ln_gamma_ratio(0.5 * beta * (n - l + 1) as f64, alpha).map_err(|_| MhgError::Parameter {
            what: "alpha",
            requirement: "inside the moment domain",
            value: alpha,
        })?;
    }
    let pref = ln_pref.exp();
    let ctilde = c * c / (2.0 * sigma * sigma);
    let b = 0.5 * beta * n as f64;
    if ctilde == 0.0 || alpha == 0.0 {
        return Ok(Evaluation::closed_form(pref));
    }
    let direct = MhgParams::f11(field, -alpha, b, -ctilde, k);
    let r = if termination_weight(&direct.numer, k).is_some() {
        mhg_1f1_scalar(&direct)?
    } else {
        // Kummer: e^{-k ctilde} 1F1(alpha + b; b; ctilde I_k), all terms positive
        let kummer = MhgParams::f11(field, alpha + b, b, ctilde, k);
        let r = mhg_1f1_scalar(&kummer)?;
        let damp = (-(k as f64) * ctilde).exp();
        MhgResult { value: damp * r.value, est_abs_error: damp * r.est_abs_error, ..r }
    };
    Ok(Evaluation {
        value: pref * r.value,
        est_abs_error: pref * r.est_abs_error,
        method: Method::Series,
        warnings: r.warnings,
    })
}
