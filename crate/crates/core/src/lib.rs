//! Determinant moments and Lyapunov exponents for products of isotropic
//! random matrices over the reals, complexes and quaternions.
//!
//! [`exact`] holds the closed forms and one-dimensional integrals,
//! [`mhg`] the matrix-argument series behind noncentral Wishart moments,
//! [`montecarlo`] the seeded sampling estimators used to check them, and
//! [`validate`] the named cross-check suites.

pub mod ensembles;
pub mod exact;
pub mod mhg;
pub mod montecarlo;
pub mod quad;
pub mod specfun;
pub mod validate;

pub use ensembles::{
    EnsembleError, EnsembleSpec, FieldIndex, MatrixSample, ModelSpec, RowDistribution, RowFamily, ShiftedGaussianSpec,
};
pub use exact::{Evaluation, ExactError, LyapunovKind, LyapunovResult, Method};
pub use mhg::{MhgError, MhgParams, MhgResult, Partition};
pub use montecarlo::{McError, McEstimate, SpectrumEstimate};
pub use quad::QuadError;
pub use specfun::SpecFunError;
pub use validate::{Check, Report, Suite, ValidationOptions};

/// Any failure from this crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Ensemble(#[from] EnsembleError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Mhg(#[from] MhgError),
    #[error(transparent)]
    MonteCarlo(#[from] McError),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
}
