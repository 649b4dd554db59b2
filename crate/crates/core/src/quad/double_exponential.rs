//! Tanh-sinh and exp-sinh rules with level-wise step halving.
//!
//! Both rules hand the integrand a [`Node`] carrying the distance to each
//! finite endpoint, computed without cancellation. Integrands with factors
//! such as `(1 - x)^(q-1)` should use those distances instead of `x`.

use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

use super::{QuadError, QuadratureResult, Tolerance};

/// Abscissa handed to the integrand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub x: f64,
    /// `x - a`, exact to rounding even when `x` is within ulps of `a`.
    pub from_lower: f64,
    /// `b - x`; infinite for semi-infinite ranges.
    pub to_upper: f64,
}

const MAX_LEVEL: usize = 10;
const TANH_SINH_T_MAX: f64 = 6.0;
const EXP_SINH_T_MAX: f64 = 6.5;

/// One tabulated point of the reference rule: parameter `t >= 0` and the
/// quantities derived from it.
#[derive(Debug, Clone, Copy)]
struct RefNode {
    /// tanh-sinh: `1 - tanh(u)`; exp-sinh: `exp(u)` for `+t`.
    gap: f64,
    /// tanh-sinh: `(pi/2) cosh t / cosh^2 u`; exp-sinh: `(pi/2) cosh t`.
    weight: f64,
    /// exp-sinh mirror node (`-t`): `exp(-u)`.
    gap_neg: f64,
}

struct Table {
    /// `levels[0]` holds integer `t`; `levels[k]` holds odd multiples of `2^-k`.
    levels: Vec<Vec<(f64, RefNode)>>,
}

fn build_table(t_max: f64, node: impl Fn(f64) -> RefNode) -> Table {
    let mut levels = Vec::with_capacity(MAX_LEVEL + 1);
    let mut first = Vec::new();
    let mut t = 0.0;
    while t <= t_max {
        first.push((t, node(t)));
        t += 1.0;
    }
    levels.push(first);
    for k in 1..=MAX_LEVEL {
        let h = 0.5_f64.powi(k as i32);
        let mut pts = Vec::new();
        let mut j = 1usize;
        loop {
            let t = j as f64 * h;
            if t > t_max {
                break;
            }
            pts.push((t, node(t)));
            j += 2;
        }
        levels.push(pts);
    }
    Table { levels }
}

fn tanh_sinh_table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(|| {
        build_table(TANH_SINH_T_MAX, |t| {
            let u = FRAC_PI_2 * t.sinh();
            let e = (2.0 * u).exp();
            let cu = u.cosh();
            RefNode { gap: 2.0 / (e + 1.0), weight: FRAC_PI_2 * t.cosh() / (cu * cu), gap_neg: 0.0 }
        })
    })
}

fn exp_sinh_table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(|| {
        build_table(EXP_SINH_T_MAX, |t| {
            let u = FRAC_PI_2 * t.sinh();
            RefNode { gap: u.exp(), weight: FRAC_PI_2 * t.cosh(), gap_neg: (-u).exp() }
        })
    })
}

/// Running state shared by both rules.
struct Accumulator {
    sum: f64,
    l1: f64,
    evaluations: usize,
}

impl Accumulator {
    fn add(&mut self, t: f64, w: f64, fx: f64) -> Result<(), QuadError> {
        self.evaluations += 1;
        if !fx.is_finite() {
            // Non-finite values far out on the transformed axis sit where the
            // weight has already underflowed; anything closer is a real fault.
            if t.abs() > 3.0 {
                return Ok(());
            }
            return Err(QuadError::NonFinite { at: t });
        }
        self.sum += w * fx;
        self.l1 += (w * fx).abs();
        Ok(())
    }
}

fn drive<F>(tol: &Tolerance, table: &Table, mut level_pass: F) -> Result<QuadratureResult, QuadError>
where
    F: FnMut(&[(f64, RefNode)], &mut Accumulator) -> Result<(), QuadError>,
{
    let mut acc = Accumulator { sum: 0.0, l1: 0.0, evaluations: 0 };
    level_pass(&table.levels[0], &mut acc)?;
    let mut h = 1.0;
    let mut estimate = acc.sum * h;
    let mut err = f64::INFINITY;
    for level in 1..=MAX_LEVEL {
        let next_cost = 2 * table.levels[level].len();
        if acc.evaluations + next_cost > tol.max_evals {
            break;
        }
        level_pass(&table.levels[level], &mut acc)?;
        h *= 0.5;
        let refined = acc.sum * h;
        let floor = 64.0 * f64::EPSILON * acc.l1 * h;
        err = (refined - estimate).abs().max(floor);
        estimate = refined;
        if level >= 3 && err <= tol.abs.max(tol.rel * estimate.abs()).max(floor) {
            return Ok(QuadratureResult { value: estimate, est_abs_error: err, evaluations: acc.evaluations });
        }
    }
    Err(QuadError::NonConvergence {
        partial: QuadratureResult { value: estimate, est_abs_error: err, evaluations: acc.evaluations.max(1) },
    })
}

/// Tanh-sinh rule on the finite interval `[a, b]`.
///
/// Copes with integrable algebraic or logarithmic singularities at either
/// endpoint.
pub fn tanh_sinh<F>(mut f: F, a: f64, b: f64, tol: &Tolerance) -> Result<QuadratureResult, QuadError>
where
    F: FnMut(Node) -> f64,
{
    if !(a.is_finite() && b.is_finite()) || b < a {
        return Err(QuadError::Domain(format!("tanh-sinh needs a finite interval, got [{a}, {b}]")));
    }
    if a == b {
        return Ok(QuadratureResult { value: 0.0, est_abs_error: 0.0, evaluations: 1 });
    }
    let width = b - a;
    let half = 0.5 * width;
    drive(tol, tanh_sinh_table(), |pts, acc| {
        for &(t, rn) in pts {
            let w = half * rn.weight;
            if t == 0.0 {
                let node = Node { x: a + half, from_lower: half, to_upper: half };
                acc.add(t, w, f(node))?;
                continue;
            }
            let d = half * rn.gap;
            if d <= 0.0 || w == 0.0 {
                continue;
            }
            let upper = Node { x: b - d, from_lower: width - d, to_upper: d };
            acc.add(t, w, f(upper))?;
            let lower = Node { x: a + d, from_lower: d, to_upper: width - d };
            acc.add(-t, w, f(lower))?;
        }
        Ok(())
    })
}

/// Exp-sinh rule on `[a, inf)`, with nodes `a + scale * exp((pi/2) sinh t)`.
///
/// `scale` should be the length over which the integrand changes; the rule
/// spans many decades either side of it.
pub fn exp_sinh<F>(mut f: F, a: f64, scale: f64, tol: &Tolerance) -> Result<QuadratureResult, QuadError>
where
    F: FnMut(Node) -> f64,
{
    if !a.is_finite() || !(scale > 0.0 && scale.is_finite()) {
        return Err(QuadError::Domain(format!("exp-sinh needs finite a and positive scale, got a={a}, scale={scale}")));
    }
    drive(tol, exp_sinh_table(), |pts, acc| {
        for &(t, rn) in pts {
            let d = scale * rn.gap;
            let w = scale * rn.weight * rn.gap;
            if d.is_finite() && w.is_finite() {
                let node = Node { x: a + d, from_lower: d, to_upper: f64::INFINITY };
                acc.add(t, w, f(node))?;
            }
            if t == 0.0 {
                continue;
            }
            let dn = scale * rn.gap_neg;
            let wn = scale * rn.weight * rn.gap_neg;
            if dn > 0.0 {
                let node = Node { x: a + dn, from_lower: dn, to_upper: f64::INFINITY };
                acc.add(-t, wn, f(node))?;
            }
        }
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tight() -> Tolerance {
        Tolerance { abs: 1e-14, rel: 1e-14, max_evals: 20_000 }
    }

    #[test]
    fn polynomial_on_interval() {
        let r = tanh_sinh(|n| n.x * n.x, 0.0, 3.0, &tight()).unwrap();
        assert!((r.value - 9.0).abs() < 1e-13, "{r:?}");
    }

    #[test]
    fn inverse_sqrt_endpoint_singularity() {
        // int_0^1 x^{-1/2} (1-x)^{-1/2} dx = pi
        let r = tanh_sinh(|n| n.from_lower.powf(-0.5) * n.to_upper.powf(-0.5), 0.0, 1.0, &tight()).unwrap();
        assert!((r.value - std::f64::consts::PI).abs() < 1e-13, "{r:?}");
    }

    #[test]
    fn log_singularity() {
        // int_0^1 ln x dx = -1
        let r = tanh_sinh(|n| n.from_lower.ln(), 0.0, 1.0, &tight()).unwrap();
        assert!((r.value + 1.0).abs() < 1e-13, "{r:?}");
    }

    #[test]
    fn exponential_tail() {
        let r = exp_sinh(|n| (-n.x).exp(), 0.0, 1.0, &tight()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-13, "{r:?}");
        let r = exp_sinh(|n| (-n.x).exp(), 2.0, 1.0, &tight()).unwrap();
        assert!((r.value - (-2.0f64).exp()).abs() < 1e-14, "{r:?}");
    }

    #[test]
    fn algebraic_tail_with_singular_start() {
        // int_0^inf x^{-1/2} / (1 + x) dx = pi
        let r = exp_sinh(|n| n.from_lower.powf(-0.5) / (1.0 + n.x), 0.0, 1.0, &tight()).unwrap();
        assert!((r.value - std::f64::consts::PI).abs() < 1e-12, "{r:?}");
    }

    #[test]
    fn budget_exhaustion_reports_partial() {
        let tol = Tolerance { abs: 1e-30, rel: 0.0, max_evals: 40 };
        match tanh_sinh(|n| (50.0 * n.x).sin(), 0.0, 10.0, &tol) {
            Err(QuadError::NonConvergence { partial }) => assert!(partial.evaluations > 0),
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }
}
