use num_complex::Complex64;

use super::{SpecFunError, SpecFunResult, EULER_GAMMA};

const MAX_TERMS: usize = 1000;
const FPMIN: f64 = 1e-300;

/// Exponential integral `E1(x) = int_x^inf e^-u / u du` for `x > 0`.
pub fn exp_e1(x: f64) -> Result<SpecFunResult, SpecFunError> {
    if !(x > 0.0) {
        return Err(SpecFunError::Domain { function: "exp_e1", arg: x, reason: "argument must be positive" });
    }
    if x > 745.0 {
        return Ok(SpecFunResult::exact(0.0));
    }
    if x <= 1.0 {
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..MAX_TERMS {
            term *= -x / k as f64;
            let contrib = -term / k as f64;
            sum += contrib;
            if contrib.abs() < 1e-17 * sum.abs().max(1e-300) {
                let value = -EULER_GAMMA - x.ln() + sum;
                return Ok(SpecFunResult { value, est_abs_error: 4.0 * f64::EPSILON * (value.abs() + x.ln().abs()) });
            }
        }
        return Err(SpecFunError::NoConvergence { function: "exp_e1", partial: sum, terms: MAX_TERMS });
    }
    // Modified Lentz evaluation of the continued fraction.
    let mut b = x + 1.0;
    let mut c = 1.0 / FPMIN;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_TERMS {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            let value = h * (-x).exp();
            return Ok(SpecFunResult { value, est_abs_error: 8.0 * f64::EPSILON * value });
        }
    }
    Err(SpecFunError::NoConvergence { function: "exp_e1", partial: h * (-x).exp(), terms: MAX_TERMS })
}

/// Sine and cosine integrals `(Si(x), Ci(x))` for `x > 0`.
pub fn sine_cosine_integrals(x: f64) -> Result<(f64, f64), SpecFunError> {
    if !(x > 0.0) {
        return Err(SpecFunError::Domain {
            function: "sine_cosine_integrals",
            arg: x,
            reason: "argument must be positive",
        });
    }
    if x <= 2.0 {
        let mut si = 0.0;
        let mut ci = 0.0;
        let mut fact = 1.0;
        let mut sign = 1.0;
        let mut odd = true;
        for k in 1..MAX_TERMS {
            fact *= x / k as f64;
            let term = fact / k as f64;
            if odd {
                si += sign * term;
            } else {
                ci += -sign * term;
                sign = -sign;
            }
            odd = !odd;
            if term < 1e-17 * si.abs().max(ci.abs()).max(1e-300) {
                return Ok((si, EULER_GAMMA + x.ln() + ci));
            }
        }
        return Err(SpecFunError::NoConvergence { function: "sine_cosine_integrals", partial: si, terms: MAX_TERMS });
    }
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / FPMIN, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 2..MAX_TERMS {
        let a = -(((i - 1) * (i - 1)) as f64);
        b += 2.0;
        d = (d * a + b).inv();
        c = b + c.inv() * a;
        let del = c * d;
        h *= del;
        if (del.re - 1.0).abs() + del.im.abs() < 1e-16 {
            h *= Complex64::new(x.cos(), -x.sin());
            return Ok((std::f64::consts::FRAC_PI_2 + h.im, -h.re));
        }
    }
    Err(SpecFunError::NoConvergence { function: "sine_cosine_integrals", partial: h.re, terms: MAX_TERMS })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{exp_sinh, tanh_sinh, Tolerance};

    #[test]
    fn e1_reference_points() {
        let v = exp_e1(1.0).unwrap().value;
        assert!((v / 0.219_383_934_395_520_273_68 - 1.0).abs() < 1e-13);
        let v = exp_e1(20.0).unwrap().value;
        assert!((v / 9.835_525_290_649_881_690_4e-11 - 1.0).abs() < 1e-13);
        let v = exp_e1(1e-6).unwrap().value;
        assert!((v - 13.238_295_893_062_491_289).abs() < 1e-12);
        assert!((v - (-EULER_GAMMA - 1e-6f64.ln())).abs() < 1e-5);
        let v = exp_e1(50.0).unwrap().value;
        assert!((v / 3.783_264_029_550_459_018_7e-24 - 1.0).abs() < 1e-12);
        let lead = (-50.0f64).exp() / 50.0 * (1.0 - 1.0 / 50.0);
        assert!((v / lead - 1.0).abs() < 0.01);
        assert!(exp_e1(0.0).is_err());
    }

    #[test]
    fn e1_matches_quadrature_across_switchover() {
        let tol = Tolerance { abs: 0.0, rel: 1e-14, max_evals: 20_000 };
        for &x in &[0.1, 0.9, 1.0, 1.1, 3.0, 20.0] {
            let q = exp_sinh(|n| (-n.x).exp() / n.x, x, 1.0, &tol).unwrap();
            let v = exp_e1(x).unwrap().value;
            assert!((v / q.value - 1.0).abs() < 1e-12, "x={x}: {v} vs {}", q.value);
        }
    }

    #[test]
    fn si_ci_match_quadrature() {
        let tol = Tolerance { abs: 1e-15, rel: 1e-15, max_evals: 20_000 };
        for &x in &[0.5, 2.0, 2.5, std::f64::consts::TAU, 40.0] {
            let (si, ci) = sine_cosine_integrals(x).unwrap();
            let si_q = tanh_sinh(|n| if n.x == 0.0 { 1.0 } else { n.x.sin() / n.x }, 0.0, x, &tol).unwrap().value;
            // Ci(x) = gamma + ln x + int_0^x (cos t - 1)/t dt
            let cin = tanh_sinh(|n| (1.0 - n.x.cos()) / n.x, 0.0, x, &tol).unwrap().value;
            assert!((si - si_q).abs() < 1e-12, "Si({x}) {si} vs {si_q}");
            assert!((ci - (EULER_GAMMA + x.ln() - cin)).abs() < 1e-12, "Ci({x})");
        }
    }
}
