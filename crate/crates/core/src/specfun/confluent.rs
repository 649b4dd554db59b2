use num_complex::Complex64;

use super::gamma::{ln_gamma_ratio, log_gamma, recip_gamma};
use super::{SpecFunError, SpecFunResult};
use crate::quad::{exp_sinh, tanh_sinh, Tolerance};

const MAX_TERMS: usize = 20_000;

fn check_b(function: &'static str, b: f64) -> Result<(), SpecFunError> {
    if b <= 0.0 && b.fract() == 0.0 {
        Err(SpecFunError::Domain { function, arg: b, reason: "b must not be a non-positive integer" })
    } else {
        Ok(())
    }
}

/// Power series of 1F1 on the real line; returns the sum and its error.
fn real_series(a: f64, b: f64, x: f64) -> Result<SpecFunResult, SpecFunError> {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut abs_sum = 1.0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) / (b + kf) * x / (kf + 1.0);
        sum += term;
        abs_sum += term.abs();
        if term == 0.0 {
            break;
        }
        // Only stop once the terms are shrinking for good.
        let shrinking = ((a + kf + 1.0) * x / ((b + kf + 1.0) * (kf + 2.0))).abs() < 0.5;
        if shrinking && term.abs() <= 1e-17 * sum.abs() {
            return Ok(SpecFunResult { value: sum, est_abs_error: 4.0 * f64::EPSILON * abs_sum + term.abs() });
        }
    }
    if term == 0.0 {
        return Ok(SpecFunResult { value: sum, est_abs_error: 4.0 * f64::EPSILON * abs_sum });
    }
    Err(SpecFunError::NoConvergence { function: "kummer_1f1", partial: sum, terms: MAX_TERMS })
}

/// `Gamma(b) / Gamma(c)` for possibly non-positive `c`.
fn gamma_quotient(b: f64, c: f64) -> f64 {
    if b > 0.0 && c > 0.0 {
        ln_gamma_ratio(c, b - c).expect("positive arguments").exp()
    } else {
        log_gamma(b).expect("b > 0 in the asymptotic branch").exp() * recip_gamma(c)
    }
}

/// Leading algebraic expansion of `1F1(a; b; -y)` for large positive `y`,
/// dropping the `e^-y` companion. `None` if the series does not settle.
fn real_asymptotic_negative(a: f64, b: f64, y: f64) -> Option<SpecFunResult> {
    if !(b > 0.0) {
        return None;
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for s in 0..200 {
        let sf = s as f64;
        let next = term * (a + sf) * (a - b + 1.0 + sf) / ((sf + 1.0) * y);
        if next.abs() > term.abs() && next != 0.0 {
            return None;
        }
        sum += next;
        term = next;
        if term.abs() <= 1e-16 * sum.abs() {
            let pref = gamma_quotient(b, b - a) * y.powf(-a);
            let value = pref * sum;
            // e^-y y^(a-b) Gamma(b)/Gamma(a) is the neglected part.
            let dropped = (-y + (a - b) * y.ln()).exp() * gamma_quotient(b, a).abs();
            return Some(SpecFunResult {
                value,
                est_abs_error: (pref * term).abs() + dropped + 4.0 * f64::EPSILON * value.abs(),
            });
        }
    }
    None
}

/// Kummer's confluent function `1F1(a; b; x)` for real `x`.
pub fn kummer_1f1(a: f64, b: f64, x: f64) -> Result<SpecFunResult, SpecFunError> {
    check_b("kummer_1f1", b)?;
    if x == 0.0 || a == 0.0 {
        return Ok(SpecFunResult::exact(1.0));
    }
    if a == b {
        return Ok(SpecFunResult { value: x.exp(), est_abs_error: f64::EPSILON * x.exp() });
    }
    if x > 0.0 {
        return real_series(a, b, x);
    }
    let y = -x;
    if y >= 40.0 {
        if let Some(r) = real_asymptotic_negative(a, b, y) {
            if r.est_abs_error <= 1e-13 * r.value.abs() {
                return Ok(r);
            }
        }
    }
    // Kummer transform keeps the series terms of one sign when b > a.
    let s = real_series(b - a, b, y)?;
    let e = (-y).exp();
    Ok(SpecFunResult { value: e * s.value, est_abs_error: e * s.est_abs_error })
}

fn imag_series(a: f64, b: f64, y: f64) -> Result<SpecFunResult<Complex64>, SpecFunError> {
    let iy = Complex64::new(0.0, y);
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut abs_sum = 1.0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= iy * ((a + kf) / ((b + kf) * (kf + 1.0)));
        sum += term;
        abs_sum += term.norm();
        let shrinking = ((a + kf + 1.0) * y / ((b + kf + 1.0) * (kf + 2.0))).abs() < 0.5;
        if term.norm() == 0.0 || (shrinking && term.norm() <= 1e-17 * sum.norm()) {
            return Ok(SpecFunResult { value: sum, est_abs_error: 8.0 * f64::EPSILON * abs_sum + term.norm() });
        }
    }
    Err(SpecFunError::NoConvergence { function: "kummer_1f1_imag", partial: sum.re, terms: MAX_TERMS })
}

/// Both algebraic series of the large-argument expansion at `z = iy`, `y > 0`.
fn imag_asymptotic(a: f64, b: f64, y: f64) -> Option<SpecFunResult<Complex64>> {
    // Sum_s (p)_s (q)_s / s! * w^s, stopping at the smallest term.
    let series = |p: f64, q: f64, w: Complex64| -> Option<(Complex64, f64)> {
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for s in 0..400 {
            let sf = s as f64;
            let next = term * w * ((p + sf) * (q + sf) / (sf + 1.0));
            if next.norm() == 0.0 {
                return Some((sum, 0.0));
            }
            if next.norm() > term.norm() {
                return None;
            }
            sum += next;
            term = next;
            if term.norm() <= 1e-16 * sum.norm() {
                return Some((sum, term.norm()));
            }
        }
        None
    };
    let (s1, e1) = series(a, a - b + 1.0, Complex64::new(0.0, 1.0 / y))?;
    let (s2, e2) = series(1.0 - a, b - a, Complex64::new(0.0, -1.0 / y))?;
    let half_pi = std::f64::consts::FRAC_PI_2;
    let lg_b = log_gamma(b).ok()?;
    // Gamma(b)/Gamma(b-a) e^{i pi a/2} y^{-a}
    let p1 = recip_gamma(b - a) * (lg_b - a * y.ln()).exp();
    let t1 = Complex64::from_polar(1.0, half_pi * a) * p1;
    // Gamma(b)/Gamma(a) e^{iy} y^{a-b} e^{i pi (a-b)/2}
    let p2 = recip_gamma(a) * (lg_b + (a - b) * y.ln()).exp();
    let t2 = Complex64::from_polar(1.0, y + half_pi * (a - b)) * p2;
    let value = t1 * s1 + t2 * s2;
    let err = p1.abs() * e1 + p2.abs() * e2 + 8.0 * f64::EPSILON * (p1.abs() * s1.norm() + p2.abs() * s2.norm());
    Some(SpecFunResult { value, est_abs_error: err })
}

/// Euler integral for `b > a > 0`:
/// `Gamma(b)/(Gamma(a)Gamma(b-a)) int_0^1 e^{iyu} u^{a-1} (1-u)^{b-a-1} du`.
fn imag_euler_integral(a: f64, b: f64, y: f64) -> Result<SpecFunResult<Complex64>, SpecFunError> {
    let log_norm = log_gamma(b)? - log_gamma(a)? - log_gamma(b - a)?;
    let weight = |u: f64, one_minus_u: f64| ((a - 1.0) * u.ln() + (b - a - 1.0) * one_minus_u.ln() + log_norm).exp();
    // The normalized weight integrates to 1, so an absolute target is relative
    // to the natural size of the result.
    let tol = Tolerance { abs: 1e-14, rel: 1e-13, max_evals: 20_000 };
    let re = tanh_sinh(|n| weight(n.from_lower, n.to_upper) * (y * n.x).cos(), 0.0, 1.0, &tol)?;
    let im = tanh_sinh(|n| weight(n.from_lower, n.to_upper) * (y * n.x).sin(), 0.0, 1.0, &tol)?;
    Ok(SpecFunResult {
        value: Complex64::new(re.value, im.value),
        est_abs_error: re.est_abs_error.hypot(im.est_abs_error),
    })
}

/// `1F1(a; b; iy)` for real `y`.
pub fn kummer_1f1_imag(a: f64, b: f64, y: f64) -> Result<SpecFunResult<Complex64>, SpecFunError> {
    check_b("kummer_1f1_imag", b)?;
    if y == 0.0 || a == 0.0 {
        return Ok(SpecFunResult::exact(Complex64::new(1.0, 0.0)));
    }
    if y < 0.0 {
        return kummer_1f1_imag(a, b, -y)
            .map(|r| SpecFunResult { value: r.value.conj(), est_abs_error: r.est_abs_error });
    }
    if y <= 8.0 {
        return imag_series(a, b, y);
    }
    if y >= 20.0 {
        if let Some(r) = imag_asymptotic(a, b, y) {
            if r.est_abs_error <= 1e-13 * r.value.norm() {
                return Ok(r);
            }
        }
    }
    if b > a && a > 0.0 {
        return imag_euler_integral(a, b, y);
    }
    let r = imag_series(a, b, y)?;
    if r.est_abs_error <= 1e-10 * r.value.norm() {
        Ok(r)
    } else {
        Err(SpecFunError::NoConvergence { function: "kummer_1f1_imag", partial: r.value.re, terms: MAX_TERMS })
    }
}

/// Tricomi's confluent function `U(a, b, x)` for `a > 0`, `x > 0`, from
/// its Laplace-type integral.
pub fn tricomi_u(a: f64, b: f64, x: f64) -> Result<SpecFunResult, SpecFunError> {
    if !(a > 0.0) {
        return Err(SpecFunError::Domain { function: "tricomi_u", arg: a, reason: "a must be positive" });
    }
    if !(x > 0.0) {
        return Err(SpecFunError::Domain { function: "tricomi_u", arg: x, reason: "x must be positive" });
    }
    let lg_a = log_gamma(a)?;
    let scale = 1.0 / (x + (a - b + 1.0).max(0.0));
    let tol = Tolerance { abs: 0.0, rel: 1e-13, max_evals: 20_000 };
    let r = exp_sinh(
        |n| {
            let t = n.from_lower;
            (-x * t + (a - 1.0) * t.ln() + (b - a - 1.0) * t.ln_1p() - lg_a).exp()
        },
        0.0,
        scale,
        &tol,
    )?;
    Ok(SpecFunResult { value: r.value, est_abs_error: r.est_abs_error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::exp_e1;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn crel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn kummer_trivial_cases() {
        assert_eq!(kummer_1f1(0.3, 1.7, 0.0).unwrap().value, 1.0);
        for &x in &[-30.0, -2.5, 0.7, 9.0] {
            assert!(rel(kummer_1f1(1.0, 1.0, x).unwrap().value, f64::exp(x)) < 1e-14);
            assert!(rel(kummer_1f1(0.5, 0.5, x).unwrap().value, f64::exp(x)) < 1e-14);
        }
        assert!(kummer_1f1(1.0, -2.0, 1.0).is_err());
    }

    #[test]
    fn kummer_reference_values() {
        let cases = [
            (0.5, 1.5, -30.0, 0.161_802_159_379_640_069_69),
            (2.3, 4.1, -47.0, 0.001_002_045_789_705_916_600_7),
            (1.7, 0.6, 12.0, 4_366_851.358_884_968_121_7),
        ];
        for (a, b, x, want) in cases {
            let got = kummer_1f1(a, b, x).unwrap().value;
            assert!(rel(got, want) < 1e-12, "1F1({a},{b},{x}) = {got}, want {want}");
        }
    }

    #[test]
    fn kummer_transform_grid() {
        for &a in &[0.4, 1.0, 2.5, 5.0] {
            for &b in &[0.3, 1.5, 3.0, 5.0] {
                for &x in &[-20.0, -7.5, -1.0, 0.5, 6.0, 20.0] {
                    let lhs = kummer_1f1(a, b, x).unwrap().value;
                    let rhs = x.exp() * kummer_1f1(b - a, b, -x).unwrap().value;
                    assert!((lhs - rhs).abs() <= 1e-9 * lhs.abs().max(1e-300), "a={a} b={b} x={x}: {lhs} vs {rhs}");
                }
            }
        }
    }

    #[test]
    fn kummer_matches_euler_integral() {
        for &(a, b) in &[(0.5, 1.5), (1.3, 2.0), (2.0, 4.5)] {
            for &x in &[-12.0, -1.0, 3.0] {
                let log_norm = log_gamma(b).unwrap() - log_gamma(a).unwrap() - log_gamma(b - a).unwrap();
                let q = tanh_sinh(
                    |n| (x * n.x + (a - 1.0) * n.from_lower.ln() + (b - a - 1.0) * n.to_upper.ln() + log_norm).exp(),
                    0.0,
                    1.0,
                    &Tolerance::default(),
                )
                .unwrap();
                let got = kummer_1f1(a, b, x).unwrap().value;
                assert!(rel(got, q.value) < 1e-8, "a={a} b={b} x={x}");
            }
        }
    }

    #[test]
    fn imaginary_reference_values() {
        let cases = [
            (0.5, 2.5, -20.0, Complex64::new(0.214_596_785_865_127_570_39, -0.203_267_601_675_208_237_08)),
            (0.5, 2.5, 5.0, Complex64::new(0.459_162_085_752_974_790_71, 0.406_674_079_868_756_258_04)),
            (2.0, 3.5, -300.0, Complex64::new(-0.000_486_124_830_852_315_991_1, -0.000_460_061_726_726_357_845_04)),
            (0.5, 1.0, 15.0, Complex64::new(0.092_322_731_961_437_002_493, 0.249_826_592_905_986_829_5)),
        ];
        for (a, b, y, want) in cases {
            let got = kummer_1f1_imag(a, b, y).unwrap().value;
            assert!(crel(got, want) < 1e-10, "1F1({a},{b},{y}i) = {got}, want {want}");
        }
    }

    #[test]
    fn imaginary_branches_agree_at_switchovers() {
        for &(a, b) in &[(0.5, 1.0), (1.0, 3.0), (2.0, 7.5)] {
            for &y in &[8.0, 20.0, 40.0] {
                let integral = imag_euler_integral(a, b, y).unwrap().value;
                let got = kummer_1f1_imag(a, b, y).unwrap().value;
                assert!(crel(got, integral) < 1e-10, "a={a} b={b} y={y}");
            }
        }
    }

    #[test]
    fn tricomi_closed_forms() {
        for &(a, x) in &[(0.5, 0.3), (1.0, 2.0), (2.5, 7.0)] {
            let got = tricomi_u(a, a + 1.0, x).unwrap().value;
            assert!(rel(got, x.powf(-a)) < 1e-11, "a={a} x={x}");
        }
        let e1 = exp_e1(1.0).unwrap().value;
        assert!(rel(tricomi_u(1.0, 1.0, 1.0).unwrap().value, std::f64::consts::E * e1) < 1e-11);
        assert!(rel(tricomi_u(1.0, 1.0, 1.0).unwrap().value, 0.596_347_362_323_194_074_34) < 1e-11);
        assert!(rel(tricomi_u(0.5, 0.5, 2.0).unwrap().value, 0.595_906_078_825_865_013_79) < 1e-10);
        assert!(rel(tricomi_u(0.5, 2.3, 0.7).unwrap().value, 1.802_366_120_675_565_133_4) < 1e-10);
        assert!(rel(tricomi_u(2.0, -3.5, 4.0).unwrap().value, 0.010_721_024_440_623_197_955) < 1e-10);
        assert!(tricomi_u(0.0, 1.0, 1.0).is_err());
        assert!(tricomi_u(1.0, 1.0, 0.0).is_err());
    }
}
