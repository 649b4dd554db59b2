use serde::{Deserialize, Serialize};

use super::series::{add, exp_series, kummer_neg_coeffs, log_series};
use super::{param_error, Evaluation, ExactError, Method};
use crate::ensembles::FieldIndex;
use crate::quad::{
    exp_sinh, integrate_beta_log, integrate_frullani_complement, integrate_logdensity, FrullaniShape, QuadratureResult,
    Support, Tolerance,
};
use crate::specfun::{bessel_i_scaled, digamma, exp_e1, gauss_2f1, kummer_1f1, ln_gamma_ratio, log_gamma, tricomi_u};

/// Beyond this many rows the Frullani integrand of the beta type I formula
/// loses digits to cancellation; results carry a warning.
const BETAI_PRECISION_ROWS: usize = 6;

pub(crate) fn frullani_tolerance() -> Tolerance {
    Tolerance { abs: 1e-12, rel: 1e-12, max_evals: 20_000 }
}

fn half(r: QuadratureResult) -> Evaluation {
    Evaluation {
        value: 0.5 * r.value,
        est_abs_error: 0.5 * r.est_abs_error,
        method: Method::Quadrature,
        warnings: Vec::new(),
    }
}

/// Distinct values with multiplicities.
fn grouped(values: &[f64]) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::new();
    for &v in values {
        match out.iter_mut().find(|(u, _)| *u == v) {
            Some((_, c)) => *c += 1.0,
            None => out.push((v, 1.0)),
        }
    }
    out
}

fn check_positive_list(what: &'static str, values: &[f64]) -> Result<(), ExactError> {
    if values.is_empty() {
        return Err(param_error("row count", "at least 1", 0.0));
    }
    for &v in values {
        if !(v > 0.0 && v.is_finite()) {
            return Err(param_error(what, "positive and finite", v));
        }
    }
    Ok(())
}

/// `1 - prod_l (1 - h_l)` from the complements `h_l`, without cancellation.
fn complement_of_product(terms: impl Iterator<Item = (f64, f64)>) -> f64 {
    let ln: f64 = terms.map(|(h, count)| count * (-h).ln_1p()).sum();
    -ln.exp_m1()
}

/// `mu_1` for Gaussian rows with rates `b_l = 1/(2 sigma_l^2)`:
/// `2 mu_1 = int_0^inf (e^-t - prod_l (1 + t/b_l)^(-beta/2)) dt/t`.
pub fn mu1_gaussian_general(rates: &[f64], field: FieldIndex) -> Result<Evaluation, ExactError> {
    check_positive_list("rate", rates)?;
    let beta = field.beta();
    let groups = grouped(rates);
    let mut kappa = [0.0; 4];
    for (k, slot) in kappa.iter_mut().enumerate() {
        let power = (k + 1) as i32;
        let s: f64 = groups.iter().map(|(b, c)| c * b.powi(-power)).sum();
        let sign = if power % 2 == 1 { 1.0 } else { -1.0 };
        *slot = -0.5 * beta * sign * s / power as f64;
    }
    let shape = FrullaniShape::decaying(0.5 * beta * rates.len() as f64).with_taylor(exp_series(kappa));
    let h = |t: f64| {
        let ln: f64 = groups.iter().map(|(b, c)| -0.5 * beta * c * (t / b).ln_1p()).sum();
        -ln.exp_m1()
    };
    Ok(half(integrate_frullani_complement(h, shape, &frullani_tolerance())?))
}

/// Gaussian rows in two blocks: the first `n0` rows with rate `b1`, the
/// remaining `n - n0` with rate `b2 <= b1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTwoBlock", into = "RawTwoBlock")]
pub struct TwoBlockGaussianSpec {
    field: FieldIndex,
    n: usize,
    n0: usize,
    b1: f64,
    b2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTwoBlock {
    beta: FieldIndex,
    n: usize,
    n0: usize,
    b1: f64,
    b2: f64,
}

impl TryFrom<RawTwoBlock> for TwoBlockGaussianSpec {
    type Error = ExactError;

    fn try_from(r: RawTwoBlock) -> Result<Self, Self::Error> {
        TwoBlockGaussianSpec::new(r.beta, r.n, r.n0, r.b1, r.b2)
    }
}

impl From<TwoBlockGaussianSpec> for RawTwoBlock {
    fn from(s: TwoBlockGaussianSpec) -> Self {
        RawTwoBlock { beta: s.field, n: s.n, n0: s.n0, b1: s.b1, b2: s.b2 }
    }
}

impl TwoBlockGaussianSpec {
    pub fn new(field: FieldIndex, n: usize, n0: usize, b1: f64, b2: f64) -> Result<Self, ExactError> {
        if n == 0 {
            return Err(param_error("n", "at least 1", 0.0));
        }
        if n0 > n {
            return Err(param_error("n0", "at most n", n0 as f64));
        }
        for b in [b1, b2] {
            if !(b > 0.0 && b.is_finite()) {
                return Err(param_error("rate", "positive and finite", b));
            }
        }
        if b2 > b1 {
            return Err(param_error("b2", "at most b1", b2));
        }
        Ok(TwoBlockGaussianSpec { field, n, n0, b1, b2 })
    }

    pub fn field(&self) -> FieldIndex {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n0(&self) -> usize {
        self.n0
    }

    pub fn b1(&self) -> f64 {
        self.b1
    }

    pub fn b2(&self) -> f64 {
        self.b2
    }

    /// Per-row rates in row order.
    pub fn rates(&self) -> Vec<f64> {
        let mut r = vec![self.b1; self.n0];
        r.resize(self.n, self.b2);
        r
    }

    /// `1 - b2/b1`.
    pub fn u(&self) -> f64 {
        1.0 - self.b2 / self.b1
    }
}

/// `mu_1` for two-block Gaussian rows via the beta-weighted log integral.
pub fn mu1_gaussian_two_block(spec: &TwoBlockGaussianSpec) -> Result<Evaluation, ExactError> {
    let beta = spec.field.beta();
    let half_n = 0.5 * beta * spec.n as f64;
    if spec.n0 == 0 {
        return Ok(Evaluation::closed_form(0.5 * (digamma(half_n)? - spec.b2.ln())));
    }
    if spec.n0 == spec.n {
        return Ok(Evaluation::closed_form(0.5 * (digamma(half_n)? - spec.b1.ln())));
    }
    let p = 0.5 * beta * spec.n0 as f64;
    let q = 0.5 * beta * (spec.n - spec.n0) as f64;
    let ln_beta = log_gamma(p)? + log_gamma(q)? - log_gamma(p + q)?;
    let r = integrate_beta_log(p, q, spec.u(), &frullani_tolerance())?;
    let inv_b = (-ln_beta).exp();
    Ok(Evaluation {
        value: 0.5 * (digamma(half_n)? - spec.b2.ln() + inv_b * r.value),
        est_abs_error: 0.5 * inv_b * r.est_abs_error,
        method: Method::Quadrature,
        warnings: Vec::new(),
    })
}

/// `<S^s>` for the first-column squared norm `S` of a two-block Gaussian
/// matrix: `Gamma(beta N/2 + s)/Gamma(beta N/2) b2^-s 2F1(beta N0/2, -s; beta N/2; 1 - b2/b1)`.
pub fn moment_two_block(spec: &TwoBlockGaussianSpec, s: f64) -> Result<f64, ExactError> {
    let half_n = 0.5 * spec.field.beta() * spec.n as f64;
    if s == 0.0 {
        return Ok(1.0);
    }
    let ln_g = ln_gamma_ratio(half_n, s)?;
    if spec.n0 == spec.n {
        return Ok((ln_g - s * spec.b1.ln()).exp());
    }
    let f = if spec.n0 == 0 || spec.u() == 0.0 {
        1.0
    } else {
        gauss_2f1(0.5 * spec.field.beta() * spec.n0 as f64, -s, half_n, spec.u())?.value
    };
    Ok((ln_g - s * spec.b2.ln()).exp() * f)
}

/// `1 - 1F1(a; b; -t)` for `0 < a < b`, summed directly near zero.
fn kummer_neg_complement(a: f64, b: f64, t: f64) -> Result<f64, ExactError> {
    if t > 2.0 {
        return Ok(1.0 - kummer_1f1(a, b, -t)?.value);
    }
    let mut term = 1.0;
    let mut sum = 0.0;
    for k in 0..200 {
        let kf = k as f64;
        term *= -(a + kf) / (b + kf) * t / (kf + 1.0);
        sum -= term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    Ok(sum)
}

/// `mu_1` for beta type I rows:
/// `2 mu_1 = int_0^inf (e^-t - prod_l 1F1(beta/2; beta/2 + alpha_l; -t)) dt/t`
/// with `alpha_l = beta (N + nu_l - 1)/2`.
pub fn mu1_betai(nus: &[f64], field: FieldIndex) -> Result<Evaluation, ExactError> {
    check_positive_list("nu", nus)?;
    let beta = field.beta();
    let n = nus.len();
    let a = 0.5 * beta;
    let params: Vec<(f64, f64)> =
        grouped(nus).into_iter().map(|(nu, c)| (a + 0.5 * beta * (n as f64 + nu - 1.0), c)).collect();
    let mut log_coeffs = [0.0; 4];
    for &(b, c) in &params {
        let l = log_series(kummer_neg_coeffs(a, b));
        log_coeffs = add(log_coeffs, l.map(|x| c * x));
    }
    let shape = FrullaniShape::decaying(a * n as f64).with_taylor(exp_series(log_coeffs));
    let h = |t: f64| {
        let mut hs = Vec::with_capacity(params.len());
        for &(b, c) in &params {
            match kummer_neg_complement(a, b, t) {
                Ok(v) => hs.push((v, c)),
                Err(_) => return f64::NAN,
            }
        }
        complement_of_product(hs.into_iter())
    };
    let mut ev = half(integrate_frullani_complement(h, shape, &frullani_tolerance())?);
    if n > BETAI_PRECISION_ROWS {
        ev = ev
            .with_warning(format!("{n} rows: the integrand cancels strongly in double precision; check est_abs_error"));
    }
    Ok(ev)
}

/// `1 - <e^{-tX}>` for `X ~ BetaPrime(a, b)`.
fn betaprime_laplace_complement(a: f64, b: f64, t: f64) -> Result<f64, ExactError> {
    if t * a / b >= 1.0 {
        betaprime_complement_tricomi(a, b, t)
    } else {
        betaprime_complement_quadrature(a, b, t)
    }
}

/// `<e^{-tX}> = Gamma(a + b)/Gamma(b) U(a, 1 - b, t)`; loses digits once
/// the transform is close to 1.
fn betaprime_complement_tricomi(a: f64, b: f64, t: f64) -> Result<f64, ExactError> {
    let u = tricomi_u(a, 1.0 - b, t)?;
    Ok(1.0 - ln_gamma_ratio(b, a)?.exp() * u.value)
}

/// `int_0^inf (1 - e^{-tx}) p(x) dx` against the beta prime density.
fn betaprime_complement_quadrature(a: f64, b: f64, t: f64) -> Result<f64, ExactError> {
    let ln_beta = log_gamma(a)? - ln_gamma_ratio(b, a)?;
    let tol = Tolerance { abs: 0.0, rel: 1e-13, max_evals: 20_000 };
    let r = exp_sinh(
        |n| {
            let x = n.from_lower;
            let ln_p = (a - 1.0) * x.ln() - (a + b) * x.ln_1p() - ln_beta;
            -(-t * x).exp_m1() * ln_p.exp()
        },
        0.0,
        a / b,
        &tol,
    )?;
    Ok(r.value)
}

/// `mu_1` for beta type II rows; each first-column entry has
/// `|x|^2 ~ BetaPrime(beta/2, beta omega/2)`, whose Laplace transform is
/// `Gamma((beta omega + beta)/2)/Gamma(beta omega/2) U(beta/2, 1 - beta omega/2, t)`.
pub fn mu1_betaii(omegas: &[f64], field: FieldIndex) -> Result<Evaluation, ExactError> {
    check_positive_list("omega", omegas)?;
    let beta = field.beta();
    let a = 0.5 * beta;
    let params: Vec<(f64, f64)> = grouped(omegas).into_iter().map(|(w, c)| (0.5 * beta * w, c)).collect();
    // Not smooth at zero when moments run out, so no Taylor data is passed;
    // the complement is accurate on its own.
    let shape = FrullaniShape::decaying(a * omegas.len() as f64);
    let h = |t: f64| {
        let mut hs = Vec::with_capacity(params.len());
        for &(b, c) in &params {
            match betaprime_laplace_complement(a, b, t) {
                Ok(v) => hs.push((v, c)),
                Err(_) => return f64::NAN,
            }
        }
        complement_of_product(hs.into_iter())
    };
    Ok(half(integrate_frullani_complement(h, shape, &frullani_tolerance())?))
}

/// `mu_1` for `I + X/c` with Gaussian `X`: `lambda S` is noncentral
/// chi-squared with `beta N` degrees of freedom and noncentrality
/// `lambda = (c/sigma)^2`, and `mu_1 = <ln S>/2`.
pub fn mu1_shifted(n: usize, field: FieldIndex, lambda: f64) -> Result<Evaluation, ExactError> {
    if n == 0 {
        return Err(param_error("n", "at least 1", 0.0));
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(param_error("lambda", "positive and finite", lambda));
    }
    let k = field.beta() * n as f64;
    let order = 0.5 * k - 1.0;
    let sqrt_lambda = lambda.sqrt();
    let pdf = |t: f64| {
        if t == 0.0 {
            return if order == 0.0 { 0.5 * (-0.5 * lambda).exp() } else { 0.0 };
        }
        let st = t.sqrt();
        match bessel_i_scaled(order, sqrt_lambda * st) {
            Ok(i) => {
                let gap = st - sqrt_lambda;
                0.5 * (0.5 * order * (t / lambda).ln() - 0.5 * gap * gap).exp() * i.value
            }
            Err(_) => f64::NAN,
        }
    };
    let tol = Tolerance { abs: 1e-13, rel: 1e-12, max_evals: 20_000 };
    Ok(half(integrate_logdensity(pdf, Support::half_line(), lambda, &tol)?))
}

/// `E_1(ctilde)/2`, the largest exponent of `I_2 + G/c` for a real 2x2
/// Gaussian `G`, with `ctilde = c^2/(2 sigma^2)`.
pub fn mu1_shifted_2x2(ctilde: f64) -> Result<Evaluation, ExactError> {
    if !(ctilde > 0.0) {
        return Err(param_error("ctilde", "positive", ctilde));
    }
    let e = exp_e1(ctilde)?;
    Ok(Evaluation {
        value: 0.5 * e.value,
        est_abs_error: 0.5 * e.est_abs_error,
        method: Method::ClosedForm,
        warnings: Vec::new(),
    })
}
