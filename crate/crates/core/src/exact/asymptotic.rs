use serde::{Deserialize, Serialize};

use super::largest::TwoBlockGaussianSpec;
use super::{param_error, Evaluation, ExactError, Method};
use crate::ensembles::FieldIndex;
use crate::quad::{exp_sinh, Tolerance};
use crate::specfun::{digamma, log_gamma};

/// Below this dimension the large-N forms are flagged.
const LARGE_N: usize = 20;

/// Large-N forms of `mu_1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum AsymptoticRegime {
    /// `N -> inf` with `N0/N` and `b2/b1` fixed.
    A1(TwoBlockGaussianSpec),
    /// As `A1` with both rates proportional to `N`.
    A2(TwoBlockGaussianSpec),
    /// `A2` written through the trace of the row covariance.
    A2a(TwoBlockGaussianSpec),
    /// `N0 = N - 1` rows at rate `b1 ~ N`, one row at fixed rate `b2`.
    A3 { beta: FieldIndex, n: usize, b1: f64, b2: f64 },
    #[serde(rename = "betaI_largeN")]
    BetaILargeN { beta: FieldIndex, nus: Vec<f64> },
    #[serde(rename = "betaII_largeN")]
    BetaIILargeN { beta: FieldIndex, omegas: Vec<f64> },
}

fn small_n_warning(n: usize) -> Option<String> {
    (n < LARGE_N).then(|| format!("N = {n} is small for a large-N expansion"))
}

fn asymptotic(value: f64, est_abs_error: f64, n: usize) -> Evaluation {
    Evaluation { value, est_abs_error, method: Method::Asymptotic, warnings: small_n_warning(n).into_iter().collect() }
}

/// `<ln(1 + r X)>` for `X ~ Gamma(beta/2, rate beta/2)` (unit mean).
fn gamma_log1p_mean(beta: f64, r: f64) -> Result<(f64, f64), ExactError> {
    let h = 0.5 * beta;
    let ln_norm = h * h.ln() - log_gamma(h)?;
    let tol = Tolerance { abs: 1e-14, rel: 1e-13, max_evals: 20_000 };
    let q = exp_sinh(
        |n| {
            let x = n.from_lower;
            (ln_norm - h * x + (h - 1.0) * x.ln()).exp() * (r * x).ln_1p()
        },
        0.0,
        1.0 / h,
        &tol,
    )?;
    Ok((q.value, q.est_abs_error))
}

/// Leading-order `mu_1` in one of the large-N regimes. Regime mismatches
/// produce warnings, not errors.
pub fn mu1_asymptotic(regime: &AsymptoticRegime) -> Result<Evaluation, ExactError> {
    match regime {
        AsymptoticRegime::A1(s) => {
            let beta = s.field().beta();
            let n = s.n() as f64;
            let frac = s.n0() as f64 / n;
            let v = 0.5 * (digamma(0.5 * beta * n)? - s.b2().ln() + (-s.u() * frac).ln_1p());
            Ok(asymptotic(v, 0.0, s.n()))
        }
        AsymptoticRegime::A2(s) => {
            let beta = s.field().beta();
            let n = s.n() as f64;
            let n0 = s.n0() as f64;
            let v = 0.5 * (0.5 * beta * ((n - n0) / s.b2() + n0 / s.b1())).ln();
            Ok(asymptotic(v, 0.0, s.n()))
        }
        AsymptoticRegime::A2a(s) => {
            let trace = (s.n() - s.n0()) as f64 / (2.0 * s.b2()) + s.n0() as f64 / (2.0 * s.b1());
            Ok(asymptotic(0.5 * (s.field().beta() * trace).ln(), 0.0, s.n()))
        }
        AsymptoticRegime::A3 { beta, n, b1, b2 } => {
            if *n == 0 {
                return Err(param_error("n", "at least 1", 0.0));
            }
            for b in [*b1, *b2] {
                if !(b > 0.0 && b.is_finite()) {
                    return Err(param_error("rate", "positive and finite", b));
                }
            }
            let beta_v = beta.beta();
            let nf = *n as f64;
            let (mean, err) = gamma_log1p_mean(beta_v, b1 / (nf * b2))?;
            let v = 0.5 * ((beta_v * nf / (2.0 * b1)).ln() + mean);
            Ok(asymptotic(v, 0.5 * err, *n))
        }
        AsymptoticRegime::BetaILargeN { nus, .. } => {
            if nus.is_empty() {
                return Err(param_error("row count", "at least 1", 0.0));
            }
            let n = nus.len() as f64;
            let mut s = 0.0;
            for &nu in nus {
                if !(nu > 0.0) {
                    return Err(param_error("nu", "positive", nu));
                }
                // each first-column entry has <|x|^2> = 1/(N + nu)
                s += 1.0 / (n + nu);
            }
            Ok(asymptotic(0.5 * s.ln(), 0.0, nus.len()))
        }
        AsymptoticRegime::BetaIILargeN { beta, omegas } => {
            if omegas.is_empty() {
                return Err(param_error("row count", "at least 1", 0.0));
            }
            let floor = 2.0 / beta.beta();
            let mut s = 0.0;
            for &w in omegas {
                if !(w > floor) {
                    return Err(param_error("omega", "greater than 2/beta (finite mean)", w));
                }
                s += 1.0 / (w - floor);
            }
            Ok(asymptotic(0.5 * s.ln(), 0.0, omegas.len()))
        }
    }
}

/// Leading large-`c` value of `mu_1 + ... + mu_k` for `I + X/c`:
/// `sigma^2 k (beta (N - k + 1)/2 - 1) / c^2`.
pub fn lyap_sum_shifted_asymptotic(
    n: usize,
    k: usize,
    field: FieldIndex,
    sigma: f64,
    c: f64,
) -> Result<f64, ExactError> {
    if !(1..=n).contains(&k) {
        return Err(param_error("k", "between 1 and n", k as f64));
    }
    if !(c != 0.0 && c.is_finite()) {
        return Err(param_error("c", "finite and non-zero", c));
    }
    let kf = k as f64;
    Ok(sigma * sigma * kf * (0.5 * field.beta() * (n - k + 1) as f64 - 1.0) / (c * c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{mu1_betai, mu1_betaii, mu1_gaussian_two_block};

    /// Limit quoted for beta = 1, 2 b1/N = 1, 2 b2 = t:
    /// `(1/2) e^{t/2} int_1^inf e^{-t x/2} dx / (sqrt(x) (sqrt(x) + 1))`.
    fn quoted_limit(t: f64) -> f64 {
        let tol = Tolerance { abs: 1e-15, rel: 1e-14, max_evals: 40_000 };
        let r = exp_sinh(
            |n| {
                let x = 1.0 + n.from_lower;
                (-0.5 * t * n.from_lower).exp() / (x.sqrt() * (x.sqrt() + 1.0))
            },
            0.0,
            2.0 / t,
            &tol,
        )
        .unwrap();
        0.5 * r.value
    }

    #[test]
    fn a3_reproduces_quoted_limit() {
        let frozen =
            [(0.5, 0.405_056_595_677_228_35), (1.0, 0.266_726_589_922_067_42), (2.0, 0.165_482_093_167_801_41)];
        for (t, want) in frozen {
            let oracle = quoted_limit(t);
            assert!((oracle - want).abs() < 1e-12, "t={t}: oracle {oracle}");
            for n in [10usize, 1000] {
                let r = AsymptoticRegime::A3 { beta: FieldIndex::Real, n, b1: 0.5 * n as f64, b2: 0.5 * t };
                let got = mu1_asymptotic(&r).unwrap().value;
                assert!((got - want).abs() < 1e-10, "t={t} n={n}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn a3_is_the_large_n_limit_of_the_exact_value() {
        let beta = FieldIndex::Complex;
        let (b2, n) = (0.7, 400usize);
        let b1 = 1.3 * n as f64;
        let exact = mu1_gaussian_two_block(&TwoBlockGaussianSpec::new(beta, n, n - 1, b1, b2).unwrap()).unwrap().value;
        let asy = mu1_asymptotic(&AsymptoticRegime::A3 { beta, n, b1, b2 }).unwrap();
        assert!(asy.warnings.is_empty());
        assert!((exact - asy.value).abs() < 5e-3, "{exact} vs {}", asy.value);
    }

    #[test]
    fn a1_equal_rates_and_a2_identity() {
        let s = TwoBlockGaussianSpec::new(FieldIndex::Quaternion, 8, 3, 2.5, 2.5).unwrap();
        let a1 = mu1_asymptotic(&AsymptoticRegime::A1(s)).unwrap();
        assert_eq!(a1.value, 0.5 * (digamma(16.0).unwrap() - 2.5f64.ln()));
        assert_eq!(a1.warnings.len(), 1);
        for field in FieldIndex::ALL {
            let s = TwoBlockGaussianSpec::new(field, 40, 13, 9.0, 2.0).unwrap();
            let a2 = mu1_asymptotic(&AsymptoticRegime::A2(s)).unwrap().value;
            let a2a = mu1_asymptotic(&AsymptoticRegime::A2a(s)).unwrap().value;
            assert!((a2 - a2a).abs() < 1e-12);
        }
    }

    #[test]
    fn a1_tracks_exact_value() {
        let s = TwoBlockGaussianSpec::new(FieldIndex::Real, 200, 80, 3.0, 1.0).unwrap();
        let exact = mu1_gaussian_two_block(&s).unwrap().value;
        let a1 = mu1_asymptotic(&AsymptoticRegime::A1(s)).unwrap().value;
        assert!((exact - a1).abs() < 1e-2, "{exact} vs {a1}");
    }

    #[test]
    fn beta_large_n_forms_track_quadrature() {
        let n = 30;
        let nus = vec![1.5; n];
        let exact = mu1_betai(&nus, FieldIndex::Real).unwrap().value;
        let asy = mu1_asymptotic(&AsymptoticRegime::BetaILargeN { beta: FieldIndex::Real, nus }).unwrap().value;
        assert!((exact - asy).abs() < 0.05, "{exact} vs {asy}");

        let omegas = vec![6.0; n];
        let exact = mu1_betaii(&omegas, FieldIndex::Complex).unwrap().value;
        let asy = mu1_asymptotic(&AsymptoticRegime::BetaIILargeN { beta: FieldIndex::Complex, omegas }).unwrap().value;
        assert!((exact - asy).abs() < 0.05, "{exact} vs {asy}");

        let bad = AsymptoticRegime::BetaIILargeN { beta: FieldIndex::Real, omegas: vec![2.0] };
        assert!(mu1_asymptotic(&bad).is_err());
    }

    #[test]
    fn regime_json_round_trip() {
        let r = AsymptoticRegime::A3 { beta: FieldIndex::Real, n: 5, b1: 2.5, b2: 0.5 };
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"variant\":\"a3\""), "{s}");
        assert_eq!(serde_json::from_str::<AsymptoticRegime>(&s).unwrap(), r);
        let r = AsymptoticRegime::BetaILargeN { beta: FieldIndex::Complex, nus: vec![1.0] };
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("betaI_largeN"));
        assert_eq!(serde_json::from_str::<AsymptoticRegime>(&s).unwrap(), r);
    }

    #[test]
    fn shifted_sum_coefficients() {
        assert_eq!(lyap_sum_shifted_asymptotic(4, 4, FieldIndex::Complex, 1.3, 5.0).unwrap(), 0.0);
        assert_eq!(lyap_sum_shifted_asymptotic(5, 4, FieldIndex::Real, 1.0, 3.0).unwrap(), 0.0);
        assert!((lyap_sum_shifted_asymptotic(1, 1, FieldIndex::Real, 1.0, 10.0).unwrap() + 0.005).abs() < 1e-17);
        assert!(lyap_sum_shifted_asymptotic(1, 1, FieldIndex::Real, 1.0, 0.0).is_err());
    }
}
