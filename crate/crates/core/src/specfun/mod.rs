//! Scalar special functions used by the exact exponent formulas.

mod bessel;
mod confluent;
mod expint;
mod gamma;
mod gauss;

pub use bessel::bessel_i_scaled;
pub use confluent::{kummer_1f1, kummer_1f1_imag, tricomi_u};
pub use expint::{exp_e1, sine_cosine_integrals};
pub use gamma::{digamma, ln_gamma_ratio, log_gamma, pochhammer, recip_gamma};
pub use gauss::gauss_2f1;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quad::QuadError;

/// Euler's constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// A function value with an estimate of its absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpecFunResult<T = f64> {
    pub value: T,
    pub est_abs_error: f64,
}

impl<T> SpecFunResult<T> {
    pub fn exact(value: T) -> Self {
        SpecFunResult { value, est_abs_error: 0.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("{function}: argument {arg} out of domain ({reason})")]
    Domain { function: &'static str, arg: f64, reason: &'static str },
    #[error("{function}: no convergence after {terms} terms (partial value {partial})")]
    NoConvergence { function: &'static str, partial: f64, terms: usize },
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}
