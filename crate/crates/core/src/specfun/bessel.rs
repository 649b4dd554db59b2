use super::gamma::log_gamma;
use super::{SpecFunError, SpecFunResult};

/// `sum_m (x/2)^(2m+nu) / (m! Gamma(m+nu+1))`, scaled by `e^-x`.
fn series(nu: f64, x: f64) -> Result<SpecFunResult, SpecFunError> {
    let q = 0.25 * x * x;
    let mut term = (nu * (0.5 * x).ln() - log_gamma(nu + 1.0)? - x).exp();
    let mut sum = term;
    for m in 0..100_000 {
        let mf = m as f64;
        term *= q / ((mf + 1.0) * (mf + nu + 1.0));
        sum += term;
        if term <= 1e-17 * sum && mf + 1.0 > 0.5 * x {
            return Ok(SpecFunResult { value: sum, est_abs_error: 4.0 * f64::EPSILON * sum * (1.0 + 0.1 * x.sqrt()) });
        }
    }
    Err(SpecFunError::NoConvergence { function: "bessel_i_scaled", partial: sum, terms: 100_000 })
}

/// Hankel expansion `(2 pi x)^(-1/2) sum_k (-1)^k a_k(nu) / x^k`.
fn asymptotic(nu: f64, x: f64) -> Option<SpecFunResult> {
    let mu = 4.0 * nu * nu;
    let mut term = 1.0f64;
    let mut sum = 1.0;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        let next = -term * (mu - odd * odd) / (8.0 * k as f64 * x);
        if next.abs() > term.abs() {
            return None;
        }
        sum += next;
        term = next;
        if term.abs() <= 1e-17 * sum.abs() {
            let pref = 1.0 / (2.0 * std::f64::consts::PI * x).sqrt();
            return Some(SpecFunResult {
                value: pref * sum,
                est_abs_error: pref * (term.abs() + 4.0 * f64::EPSILON * sum.abs()),
            });
        }
    }
    None
}

/// Exponentially scaled modified Bessel function `e^-x I_nu(x)`, for
/// `x >= 0` and `nu > -1`.
pub fn bessel_i_scaled(nu: f64, x: f64) -> Result<SpecFunResult, SpecFunError> {
    if !(nu > -1.0) {
        return Err(SpecFunError::Domain { function: "bessel_i_scaled", arg: nu, reason: "order must exceed -1" });
    }
    if !(x >= 0.0) {
        return Err(SpecFunError::Domain {
            function: "bessel_i_scaled",
            arg: x,
            reason: "argument must be non-negative",
        });
    }
    if x == 0.0 {
        return if nu == 0.0 {
            Ok(SpecFunResult::exact(1.0))
        } else if nu > 0.0 {
            Ok(SpecFunResult::exact(0.0))
        } else {
            Err(SpecFunError::Domain {
                function: "bessel_i_scaled",
                arg: x,
                reason: "negative order is unbounded at zero",
            })
        };
    }
    if x > 30.0 {
        if let Some(r) = asymptotic(nu, x) {
            return Ok(r);
        }
    }
    series(nu, x)
}
