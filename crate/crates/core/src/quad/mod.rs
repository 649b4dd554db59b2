//! One-dimensional quadrature for the integral shapes that appear in the
//! exponent formulas: Frullani-type integrals on the half line, beta-weighted
//! logarithms on `[0, 1]`, and logarithmic moments of densities.

mod double_exponential;

pub use double_exponential::{exp_sinh, tanh_sinh, Node};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Outcome of a quadrature call.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub est_abs_error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("quadrature did not converge: value {} with estimated error {:e} after {} evaluations", .partial.value, .partial.est_abs_error, .partial.evaluations)]
    NonConvergence { partial: QuadratureResult },
    #[error("integrand returned a non-finite value at transformed abscissa {at}")]
    NonFinite { at: f64 },
    #[error("density mass is {mass}, expected 1 within 1e-8")]
    Normalization { mass: f64 },
    #[error("invalid quadrature input: {0}")]
    Domain(String),
}

/// Stopping rule: stop once the error estimate is below `max(abs, rel*|I|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_evals: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs: 1e-13, rel: 1e-13, max_evals: 8_000 }
    }
}

impl Tolerance {
    pub fn with_budget(mut self, max_evals: usize) -> Self {
        self.max_evals = max_evals;
        self
    }
}

/// Describes `g` near zero and at infinity for [`integrate_frullani`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrullaniShape {
    /// `g(t) = O(t^-p)` as `t -> inf`; must be positive.
    pub decay_power: f64,
    /// Taylor coefficients `g_1..g_4` of `g(t) = 1 + g_1 t + ... + g_4 t^4`.
    /// Leave `None` when `g` is not smooth at zero.
    pub taylor: Option<[f64; 4]>,
}

impl FrullaniShape {
    pub fn decaying(decay_power: f64) -> Self {
        FrullaniShape { decay_power, taylor: None }
    }

    pub fn with_taylor(mut self, coeffs: [f64; 4]) -> Self {
        self.taylor = Some(coeffs);
        self
    }
}

fn add(a: QuadratureResult, b: QuadratureResult) -> QuadratureResult {
    QuadratureResult {
        value: a.value + b.value,
        est_abs_error: a.est_abs_error + b.est_abs_error,
        evaluations: a.evaluations + b.evaluations,
    }
}

/// `int_0^inf (e^-t - g(t)) dt / t`.
pub fn integrate_frullani<G>(g: G, shape: FrullaniShape, tol: &Tolerance) -> Result<QuadratureResult, QuadError>
where
    G: Fn(f64) -> f64,
{
    integrate_frullani_complement(|t| 1.0 - g(t), shape, tol)
}

/// Same integral as [`integrate_frullani`], but the caller supplies
/// `1 - g(t)` directly so no digits are lost when `g(t)` is close to 1.
pub fn integrate_frullani_complement<H>(
    one_minus_g: H,
    shape: FrullaniShape,
    tol: &Tolerance,
) -> Result<QuadratureResult, QuadError>
where
    H: Fn(f64) -> f64,
{
    if !(shape.decay_power > 0.0) {
        return Err(QuadError::Domain(format!("tail decay power must be positive, got {}", shape.decay_power)));
    }
    // Coefficients of (e^-t - g(t)) / t = d_1 + d_2 t + d_3 t^2 + d_4 t^3.
    let series = shape.taylor.map(|g| {
        let e = [-1.0, 0.5, -1.0 / 6.0, 1.0 / 24.0];
        [e[0] - g[0], e[1] - g[1], e[2] - g[2], e[3] - g[3]]
    });
    // Below this point the truncated series is accurate to ~1e-16 relative.
    let cutoff = series.map_or(0.0, |d| {
        let growth = d.iter().enumerate().map(|(k, c)| c.abs().powf(1.0 / (k as f64 + 1.0))).fold(1.0, f64::max);
        1e-4 / growth
    });
    exp_sinh(
        |n| {
            let t = n.from_lower;
            match series {
                Some(d) if t < cutoff => d[0] + t * (d[1] + t * (d[2] + t * d[3])),
                _ => ((-t).exp_m1() + one_minus_g(t)) / t,
            }
        },
        0.0,
        1.0,
        tol,
    )
}

/// `int_0^1 x^(p-1) (1-x)^(q-1) ln(1 - u x) dx` for `u < 1`.
pub fn integrate_beta_log(p: f64, q: f64, u: f64, tol: &Tolerance) -> Result<QuadratureResult, QuadError> {
    if !(p > 0.0 && q > 0.0) {
        return Err(QuadError::Domain(format!("beta exponents must be positive, got p={p}, q={q}")));
    }
    if !(u < 1.0) {
        return Err(QuadError::Domain(format!("u must be below 1, got {u}")));
    }
    if u == 0.0 {
        return Ok(QuadratureResult { value: 0.0, est_abs_error: 0.0, evaluations: 1 });
    }
    let one_minus_u = 1.0 - u;
    tanh_sinh(
        |n| {
            let log_term = if u > 0.5 { (one_minus_u + u * n.to_upper).ln() } else { (-u * n.from_lower).ln_1p() };
            let w = (p - 1.0) * n.from_lower.ln() + (q - 1.0) * n.to_upper.ln();
            w.exp() * log_term
        },
        0.0,
        1.0,
        tol,
    )
}

/// Support of a density; `upper` may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Support {
    pub lower: f64,
    pub upper: f64,
}

impl Support {
    pub fn half_line() -> Self {
        Support { lower: 0.0, upper: f64::INFINITY }
    }
}

/// Integrate `h(x, ln(x/scale))` over `support`, splitting at `scale` so the
/// logarithm is formed without cancellation on each side.
fn integrate_split<H>(h: &H, support: Support, scale: f64, tol: &Tolerance) -> Result<QuadratureResult, QuadError>
where
    H: Fn(f64, f64) -> f64,
{
    let Support { lower, upper } = support;
    let inside = scale > lower && scale < upper;
    let left = |a: f64, b: f64| {
        tanh_sinh(
            |n| {
                // Near zero 1 - x/scale rounds to 1; take the log directly there.
                let log_ratio = if n.x < 0.5 * scale { (n.x / scale).ln() } else { (-n.to_upper / scale).ln_1p() };
                h(n.x, log_ratio)
            },
            a,
            b,
            tol,
        )
    };
    let right_finite = |a: f64, b: f64| tanh_sinh(|n| h(n.x, ((n.x - scale) / scale).ln_1p()), a, b, tol);
    let right_inf = |a: f64, s: f64| exp_sinh(|n| h(n.x, ((a - scale + n.from_lower) / scale).ln_1p()), a, s, tol);
    if upper.is_infinite() {
        if inside {
            Ok(add(left(lower, scale)?, right_inf(scale, scale)?))
        } else {
            right_inf(lower, scale)
        }
    } else if inside {
        Ok(add(left(lower, scale)?, right_finite(scale, upper)?))
    } else {
        tanh_sinh(|n| h(n.x, (n.x / scale).ln()), lower, upper, tol)
    }
}

/// `int ln(t/scale) pdf(t) dt` over `support`, after checking the density
/// carries unit mass to within 1e-8.
pub fn integrate_logdensity<P>(
    pdf: P,
    support: Support,
    scale: f64,
    tol: &Tolerance,
) -> Result<QuadratureResult, QuadError>
where
    P: Fn(f64) -> f64,
{
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(QuadError::Domain(format!("log scale must be positive, got {scale}")));
    }
    if !(support.lower.is_finite() && support.upper > support.lower) {
        return Err(QuadError::Domain(format!(
            "support must be a non-empty interval with finite lower end, got [{}, {}]",
            support.lower, support.upper
        )));
    }
    let mass = integrate_split(&|x, _| pdf(x), support, scale, tol)?;
    if (mass.value - 1.0).abs() > 1e-8 {
        return Err(QuadError::Normalization { mass: mass.value });
    }
    integrate_split(&|x, log_ratio| if log_ratio == 0.0 { 0.0 } else { log_ratio * pdf(x) }, support, scale, tol)
}
