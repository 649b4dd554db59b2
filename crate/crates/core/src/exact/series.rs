//! Truncated power series about `t = 0`, used to feed Taylor coefficients
//! of Laplace transforms to the Frullani integrator.

/// Coefficients `L_1..L_4` of `ln(1 + f_1 t + ... + f_4 t^4)`.
pub(crate) fn log_series(f: [f64; 4]) -> [f64; 4] {
    let [f1, f2, f3, f4] = f;
    [
        f1,
        f2 - 0.5 * f1 * f1,
        f3 - f1 * f2 + f1.powi(3) / 3.0,
        f4 - f1 * f3 - 0.5 * f2 * f2 + f1 * f1 * f2 - 0.25 * f1.powi(4),
    ]
}

/// Coefficients `g_1..g_4` of `exp(k_1 t + ... + k_4 t^4)`.
pub(crate) fn exp_series(k: [f64; 4]) -> [f64; 4] {
    let [k1, k2, k3, k4] = k;
    [
        k1,
        k2 + 0.5 * k1 * k1,
        k3 + k1 * k2 + k1.powi(3) / 6.0,
        k4 + k1 * k3 + 0.5 * k2 * k2 + 0.5 * k1 * k1 * k2 + k1.powi(4) / 24.0,
    ]
}

pub(crate) fn add(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

/// Taylor coefficients of `1F1(a; b; -t)`.
pub(crate) fn kummer_neg_coeffs(a: f64, b: f64) -> [f64; 4] {
    let mut out = [0.0; 4];
    let mut c = 1.0;
    for (k, slot) in out.iter_mut().enumerate() {
        let kf = k as f64;
        c *= -(a + kf) / ((b + kf) * (kf + 1.0));
        *slot = c;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_then_exp_round_trips() {
        let f = [0.3, -1.2, 0.7, 2.5];
        let back = exp_series(log_series(f));
        for (a, b) in f.iter().zip(back) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn exp_series_of_linear_is_exponential() {
        let g = exp_series([-2.0, 0.0, 0.0, 0.0]);
        assert_eq!(g, [-2.0, 2.0, -4.0 / 3.0, 2.0 / 3.0]);
    }

    #[test]
    fn kummer_coeffs_for_equal_parameters_match_exp() {
        let c = kummer_neg_coeffs(1.5, 1.5);
        let want = [-1.0, 0.5, -1.0 / 6.0, 1.0 / 24.0];
        for (a, b) in c.iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
    }
}
