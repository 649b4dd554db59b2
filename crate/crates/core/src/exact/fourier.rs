use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{param_error, Evaluation, ExactError, Method};
use crate::ensembles::FieldIndex;
use crate::specfun::{kummer_1f1_imag, sine_cosine_integrals, EULER_GAMMA};

/// Tails larger than this are flagged as slow decay.
const SLOW_TAIL: f64 = 1e-3;
/// Shortest series for which the tail fit is attempted.
const MIN_FIT_TERMS: usize = 20;

/// Fourier-series value of `mu_1` for beta type I rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierSeriesResult {
    /// Tail-corrected value; the error is the change against the
    /// corrected value at half the number of terms.
    pub evaluation: Evaluation,
    /// Symmetric partial sum over `|n| <= n_terms`, halved like the value.
    pub raw_partial_sum: f64,
    /// Fitted contribution of `|n| > n_terms`, halved like the value.
    pub tail_correction: f64,
    pub n_terms: usize,
}

struct Series {
    period: f64,
    a: f64,
    bs: Vec<f64>,
}

impl Series {
    fn new(nus: &[f64], field: FieldIndex) -> Self {
        let beta = field.beta();
        let n = nus.len() as f64;
        let a = 0.5 * beta;
        Series { period: beta * n, a, bs: nus.iter().map(|nu| a + 0.5 * beta * (n + nu - 1.0)).collect() }
    }

    /// `c_n = (1/L) prod_l 1F1(beta/2; beta/2 + alpha_l; -2 pi i n / L)`.
    fn coefficient(&self, n: i64) -> Result<Complex64, ExactError> {
        let y = -2.0 * std::f64::consts::PI * n as f64 / self.period;
        let mut c = Complex64::new(1.0 / self.period, 0.0);
        for &b in &self.bs {
            c *= kummer_1f1_imag(self.a, b, y)?.value;
        }
        Ok(c)
    }

    /// `int_0^L ln(x) e^{2 pi i n x/L} dx` for `n >= 1`.
    fn log_transform(&self, n: usize) -> Result<Complex64, ExactError> {
        let x = 2.0 * std::f64::consts::PI * n as f64;
        let (si, ci) = sine_cosine_integrals(x)?;
        let cin = EULER_GAMMA + x.ln() - ci;
        let k = x / self.period;
        Ok(-Complex64::new(si, cin) / k)
    }

    fn zero_term(&self) -> f64 {
        // c_0 = 1/L and int_0^L ln x dx = L ln L - L
        self.period.ln() - 1.0
    }
}

/// Least-squares fit of `n^p T_n = a ln n + b` over the last decade of terms,
/// integrated from `M + 1/2` to infinity.
fn fitted_tail(terms: &[f64], p: f64) -> f64 {
    let m = terms.len();
    let start = m / 10;
    let (mut sx, mut sy, mut sxx, mut sxy, mut cnt) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (i, t) in terms.iter().enumerate().skip(start) {
        let n = (i + 1) as f64;
        let x = n.ln();
        let y = n.powf(p) * t;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        cnt += 1.0;
    }
    let det = cnt * sxx - sx * sx;
    let a = (cnt * sxy - sx * sy) / det;
    let b = (sy - a * sx) / cnt;
    let x0 = m as f64 + 0.5;
    let q = p - 1.0;
    x0.powf(-q) * ((a * x0.ln() + b) / q + a / (q * q))
}

/// `mu_1 = (1/2) sum_n c_n int_0^L ln(x) e^{2 pi i n x/L} dx` with `L = beta N`,
/// truncated at `|n| <= n_terms` and tail-corrected.
pub fn mu1_betai_fourier(nus: &[f64], field: FieldIndex, n_terms: usize) -> Result<FourierSeriesResult, ExactError> {
    if nus.is_empty() {
        return Err(param_error("row count", "at least 1", 0.0));
    }
    for &nu in nus {
        if !(nu > 0.0 && nu.is_finite()) {
            return Err(param_error("nu", "positive and finite", nu));
        }
    }
    if n_terms == 0 {
        return Err(param_error("n_terms", "at least 1", 0.0));
    }
    let series = Series::new(nus, field);
    let mut terms = Vec::with_capacity(n_terms);
    for n in 1..=n_terms {
        let c = series.coefficient(n as i64)?;
        let i = series.log_transform(n)?;
        terms.push(2.0 * (c * i).re);
    }
    let partial = |m: usize| series.zero_term() + terms[..m].iter().sum::<f64>();
    // Terms decay like n^-p ln n with p = 1 + beta N / 2.
    let p = 1.0 + 0.5 * series.period;
    let raw = partial(n_terms);
    let mut warnings = Vec::new();
    let (tail, err) = if n_terms >= MIN_FIT_TERMS {
        let tail = fitted_tail(&terms, p);
        let h = n_terms / 2;
        let coarse = partial(h) + fitted_tail(&terms[..h], p);
        (tail, ((raw + tail) - coarse).abs())
    } else {
        warnings.push(format!("only {n_terms} terms: no tail correction applied"));
        (0.0, (raw - partial(n_terms.div_ceil(2))).abs())
    };
    if tail.abs() > SLOW_TAIL {
        warnings.push(format!("slowly decaying series: tail estimate {tail:.3e} exceeds {SLOW_TAIL:e}"));
    }
    Ok(FourierSeriesResult {
        evaluation: Evaluation {
            value: 0.5 * (raw + tail),
            est_abs_error: 0.5 * err,
            method: Method::Series,
            warnings,
        },
        raw_partial_sum: 0.5 * raw,
        tail_correction: 0.5 * tail,
        n_terms,
    })
}
