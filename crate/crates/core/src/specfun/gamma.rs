use std::f64::consts::PI;

use super::SpecFunError;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;
/// Below this the Stirling series is not yet accurate; arguments are shifted up.
const STIRLING_MIN: f64 = 15.0;

// B_{2k} / (2k (2k-1)) for k = 1..8.
const STIRLING_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// Tail of the Stirling series, `ln Gamma(z) - [(z-1/2) ln z - z + ln sqrt(2 pi)]`.
fn stirling_tail(z: f64) -> f64 {
    let r = 1.0 / z;
    let r2 = r * r;
    let mut acc = 0.0;
    for c in STIRLING_COEFFS.iter().rev() {
        acc = acc * r2 + c;
    }
    acc * r
}

fn check_positive(function: &'static str, x: f64) -> Result<(), SpecFunError> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(SpecFunError::Domain { function, arg: x, reason: "argument must be positive and finite" })
    }
}

/// `ln Gamma(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64, SpecFunError> {
    check_positive("log_gamma", x)?;
    let mut z = x;
    let mut prod = 1.0;
    while z < STIRLING_MIN {
        prod *= z;
        z += 1.0;
    }
    let stirling = (z - 0.5) * z.ln() - z + HALF_LN_2PI + stirling_tail(z);
    Ok(stirling - prod.ln())
}

/// `ln Gamma(c + n) - ln Gamma(c)` for `c > 0` and `c + n > 0`, computed
/// without forming the two large logarithms separately.
pub fn ln_gamma_ratio(c: f64, n: f64) -> Result<f64, SpecFunError> {
    check_positive("ln_gamma_ratio", c)?;
    check_positive("ln_gamma_ratio", c + n)?;
    if n == 0.0 {
        return Ok(0.0);
    }
    if n.fract() == 0.0 && n.abs() <= 64.0 {
        let m = n.abs() as usize;
        let lo = if n > 0.0 { c } else { c + n };
        let mut prod = 1.0;
        for j in 0..m {
            prod *= lo + j as f64;
        }
        return Ok(if n > 0.0 { prod.ln() } else { -prod.ln() });
    }
    // Shift both arguments up by the same integer, keeping the product of
    // ratios (c+n+j)/(c+j) to undo the shift.
    let mut lo = c;
    let mut hi = c + n;
    let mut ratio = 1.0;
    while lo.min(hi) < STIRLING_MIN {
        ratio *= hi / lo;
        lo += 1.0;
        hi += 1.0;
    }
    let diff = (lo - 0.5) * (n / lo).ln_1p() + n * hi.ln() - n + stirling_tail(hi) - stirling_tail(lo);
    Ok(diff - ratio.ln())
}

/// `(c)_n = Gamma(c + n) / Gamma(c)` for real `n`.
pub fn pochhammer(c: f64, n: f64) -> Result<f64, SpecFunError> {
    if !(c > 0.0) {
        return Err(SpecFunError::Domain { function: "pochhammer", arg: c, reason: "base must be positive" });
    }
    if !(c + n > 0.0) {
        return Err(SpecFunError::Domain { function: "pochhammer", arg: c + n, reason: "c + n must be positive" });
    }
    if n.fract() == 0.0 && (0.0..=64.0).contains(&n) {
        let mut prod = 1.0;
        for j in 0..n as usize {
            prod *= c + j as f64;
        }
        return Ok(prod);
    }
    Ok(ln_gamma_ratio(c, n)?.exp())
}

/// `Psi(x) = d/dx ln Gamma(x)` for `x > 0`.
pub fn digamma(x: f64) -> Result<f64, SpecFunError> {
    check_positive("digamma", x)?;
    let mut z = x;
    let mut shift = 0.0;
    while z < 12.0 {
        shift += 1.0 / z;
        z += 1.0;
    }
    let r2 = 1.0 / (z * z);
    // B_{2k} / (2k) for k = 1..7
    let series = r2
        * (1.0 / 12.0
            - r2 * (1.0 / 120.0
                - r2 * (1.0 / 252.0 - r2 * (1.0 / 240.0 - r2 * (1.0 / 132.0 - r2 * (691.0 / 32_760.0 - r2 / 12.0))))));
    Ok(z.ln() - 0.5 / z - series - shift)
}

/// `1 / Gamma(x)` on the whole real line; zero at the poles.
pub fn recip_gamma(x: f64) -> f64 {
    if x > 0.0 {
        return (-log_gamma(x).expect("positive argument")).exp();
    }
    if x.fract() == 0.0 {
        return 0.0;
    }
    // Reflection: 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi
    let lg = log_gamma(1.0 - x).expect("positive argument");
    (PI * x).sin() * lg.exp() / PI
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_gamma_reference_points() {
        assert!(log_gamma(1.0).unwrap().abs() < 1e-14);
        assert!(log_gamma(2.0).unwrap().abs() < 1e-14);
        assert!((log_gamma(0.5).unwrap() - 0.572_364_942_924_700_087_07).abs() < 1e-14);
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-1.5).is_err());
    }

    #[test]
    fn log_gamma_matches_factorials() {
        let mut lf = 0.0f64;
        for n in 1..=170u32 {
            // ln Gamma(n+1) = ln n!
            lf += (n as f64).ln();
            let got = log_gamma(n as f64 + 1.0).unwrap();
            assert!((got - lf).abs() <= 1e-13 * lf.abs().max(1.0), "n={n}: {got} vs {lf}");
        }
    }

    #[test]
    fn log_gamma_recurrence_over_range() {
        for &x in &[1e-8, 0.01, 0.3, 1.7, 9.5, 14.9, 15.1, 42.0, 517.3, 999.0] {
            let lhs = log_gamma(x + 1.0).unwrap() - log_gamma(x).unwrap();
            assert!((lhs - x.ln()).abs() < 1e-12 * x.ln().abs().max(1.0) + 2e-13, "x={x}");
        }
    }

    #[test]
    fn digamma_reference_points() {
        assert!((digamma(1.0).unwrap() + 0.577_215_664_901_532_860_61).abs() < 1e-14);
        assert!((digamma(0.5).unwrap() + 1.963_510_026_021_423_479_4).abs() < 1e-14);
        assert!((digamma(2.0).unwrap() - 0.422_784_335_098_467_139_39).abs() < 1e-14);
        assert!(digamma(0.0).is_err());
    }

    #[test]
    fn digamma_recurrence() {
        for &x in &[0.3, 1.7, 9.5] {
            let d = digamma(x + 1.0).unwrap() - digamma(x).unwrap();
            assert!((d - 1.0 / x).abs() < 1e-11, "x={x}");
        }
    }

    #[test]
    fn digamma_is_derivative_of_log_gamma() {
        for &x in &[0.25, 1.0, 3.3, 27.0, 400.0] {
            let h = 1e-4 * x;
            let fd = (log_gamma(x + h).unwrap() - log_gamma(x - h).unwrap()) / (2.0 * h);
            assert!((fd - digamma(x).unwrap()).abs() < 1e-7, "x={x}");
        }
    }

    #[test]
    fn pochhammer_reference_points() {
        assert_eq!(pochhammer(3.0, 2.0).unwrap(), 12.0);
        assert_eq!(pochhammer(0.5, 1.0).unwrap(), 0.5);
        assert!((pochhammer(1.5, 0.5).unwrap() - std::f64::consts::FRAC_2_SQRT_PI).abs() < 1e-14);
        assert!(pochhammer(-1.0, 2.0).is_err());
        assert!(pochhammer(1.0, -1.5).is_err());
    }

    #[test]
    fn gamma_ratio_large_arguments() {
        // Gamma(x + 1/2) / Gamma(x) ~ sqrt(x) (1 - 1/(8x) + 1/(128 x^2))
        let x: f64 = 1e6;
        let r = ln_gamma_ratio(x, 0.5).unwrap().exp();
        let approx = x.sqrt() * (1.0 - 1.0 / (8.0 * x) + 1.0 / (128.0 * x * x));
        assert!((r / approx - 1.0).abs() < 1e-14);
        assert_eq!(ln_gamma_ratio(7.0, -3.0).unwrap(), -(4.0f64 * 5.0 * 6.0).ln());
    }

    #[test]
    fn recip_gamma_poles_and_reflection() {
        assert_eq!(recip_gamma(0.0), 0.0);
        assert_eq!(recip_gamma(-3.0), 0.0);
        // Gamma(-1/2) = -2 sqrt(pi)
        assert!((recip_gamma(-0.5) + 0.5 / PI.sqrt()).abs() < 1e-15);
        assert!((recip_gamma(4.0) - 1.0 / 6.0).abs() < 1e-15);
    }
}
