//! Isotropic row distributions over the real, complex and quaternion fields,
//! and the shifted Gaussian ensemble `I + X/c`.

mod matrix;
mod sampling;

pub use matrix::MatrixSample;
pub use sampling::{sample_first_column_norm_sq, sample_matrix, sample_row, sample_shifted};
pub(crate) use sampling::{ColumnSampler, MatrixSampler};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EnsembleError {
    #[error("field index must be 1, 2 or 4, got {0}")]
    Field(u8),
    #[error("{what} must be {requirement}, got {value}")]
    Parameter { what: &'static str, requirement: &'static str, value: f64 },
    #[error("expected {expected} row distributions, got {got}")]
    RowCount { expected: usize, got: usize },
    #[error("all rows must share one distribution family")]
    MixedRows,
    #[error("dimension must be at least 1")]
    EmptyDimension,
}

/// Number of real components per entry: 1 (real), 2 (complex), 4 (quaternion).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum FieldIndex {
    Real,
    Complex,
    Quaternion,
}

impl FieldIndex {
    pub const ALL: [FieldIndex; 3] = [FieldIndex::Real, FieldIndex::Complex, FieldIndex::Quaternion];

    pub fn beta(self) -> f64 {
        self.components() as f64
    }

    pub fn components(self) -> usize {
        match self {
            FieldIndex::Real => 1,
            FieldIndex::Complex => 2,
            FieldIndex::Quaternion => 4,
        }
    }

    /// Size of the complex matrix that represents an `n x n` matrix.
    pub fn embedding_dim(self, n: usize) -> usize {
        match self {
            FieldIndex::Quaternion => 2 * n,
            _ => n,
        }
    }

    /// Jack parameter `2/beta` of the matching matrix-argument series.
    pub fn jack_alpha(self) -> f64 {
        2.0 / self.beta()
    }
}

impl TryFrom<u8> for FieldIndex {
    type Error = EnsembleError;

    fn try_from(beta: u8) -> Result<Self, Self::Error> {
        match beta {
            1 => Ok(FieldIndex::Real),
            2 => Ok(FieldIndex::Complex),
            4 => Ok(FieldIndex::Quaternion),
            other => Err(EnsembleError::Field(other)),
        }
    }
}

impl From<FieldIndex> for u8 {
    fn from(f: FieldIndex) -> u8 {
        f.components() as u8
    }
}

/// Law of a single row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
pub enum RowDistribution {
    /// Independent `N(0, sigma)` real components.
    #[serde(rename = "gaussian")]
    Gaussian { sigma: f64 },
    /// Density proportional to `(1 - |x|^2)^(beta*nu/2 - 1)` on the unit ball.
    #[serde(rename = "beta1")]
    BetaI { nu: f64 },
    /// Density proportional to `(1 + |x|^2)^(-beta*(n + omega)/2)`.
    #[serde(rename = "beta2")]
    BetaII { omega: f64 },
}

/// Distribution family shared by every row of an [`EnsembleSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowFamily {
    Gaussian,
    BetaI,
    BetaII,
}

impl RowDistribution {
    pub fn family(&self) -> RowFamily {
        match self {
            RowDistribution::Gaussian { .. } => RowFamily::Gaussian,
            RowDistribution::BetaI { .. } => RowFamily::BetaI,
            RowDistribution::BetaII { .. } => RowFamily::BetaII,
        }
    }

    /// The family's single parameter (sigma, nu or omega).
    pub fn parameter(&self) -> f64 {
        match *self {
            RowDistribution::Gaussian { sigma } => sigma,
            RowDistribution::BetaI { nu } => nu,
            RowDistribution::BetaII { omega } => omega,
        }
    }

    pub fn validate(&self) -> Result<(), EnsembleError> {
        let (what, v) = match *self {
            RowDistribution::Gaussian { sigma } => ("sigma", sigma),
            RowDistribution::BetaI { nu } => ("nu", nu),
            RowDistribution::BetaII { omega } => ("omega", omega),
        };
        if v > 0.0 && v.is_finite() {
            Ok(())
        } else {
            Err(EnsembleError::Parameter { what, requirement: "positive and finite", value: v })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEnsembleSpec {
    beta: FieldIndex,
    n: usize,
    rows: Vec<RowDistribution>,
}

/// Field, dimension and per-row laws of a random matrix with independent
/// isotropic rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawEnsembleSpec", into = "RawEnsembleSpec")]
pub struct EnsembleSpec {
    field: FieldIndex,
    rows: Vec<RowDistribution>,
}

impl TryFrom<RawEnsembleSpec> for EnsembleSpec {
    type Error = EnsembleError;

    fn try_from(raw: RawEnsembleSpec) -> Result<Self, Self::Error> {
        if raw.rows.len() != raw.n {
            return Err(EnsembleError::RowCount { expected: raw.n, got: raw.rows.len() });
        }
        EnsembleSpec::new(raw.beta, raw.rows)
    }
}

impl From<EnsembleSpec> for RawEnsembleSpec {
    fn from(spec: EnsembleSpec) -> Self {
        RawEnsembleSpec { beta: spec.field, n: spec.rows.len(), rows: spec.rows }
    }
}

impl EnsembleSpec {
    pub fn new(field: FieldIndex, rows: Vec<RowDistribution>) -> Result<Self, EnsembleError> {
        let first = rows.first().ok_or(EnsembleError::EmptyDimension)?;
        for r in &rows {
            r.validate()?;
            if r.family() != first.family() {
                return Err(EnsembleError::MixedRows);
            }
        }
        Ok(EnsembleSpec { field, rows })
    }

    /// `n` identically distributed rows.
    pub fn iid(field: FieldIndex, n: usize, row: RowDistribution) -> Result<Self, EnsembleError> {
        EnsembleSpec::new(field, vec![row; n])
    }

    pub fn gaussian(field: FieldIndex, sigmas: &[f64]) -> Result<Self, EnsembleError> {
        EnsembleSpec::new(field, sigmas.iter().map(|&sigma| RowDistribution::Gaussian { sigma }).collect())
    }

    pub fn beta1(field: FieldIndex, nus: &[f64]) -> Result<Self, EnsembleError> {
        EnsembleSpec::new(field, nus.iter().map(|&nu| RowDistribution::BetaI { nu }).collect())
    }

    pub fn beta2(field: FieldIndex, omegas: &[f64]) -> Result<Self, EnsembleError> {
        EnsembleSpec::new(field, omegas.iter().map(|&omega| RowDistribution::BetaII { omega }).collect())
    }

    pub fn field(&self) -> FieldIndex {
        self.field
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[RowDistribution] {
        &self.rows
    }

    pub fn family(&self) -> RowFamily {
        self.rows[0].family()
    }

    /// Per-row parameters (sigma, nu or omega) in row order.
    pub fn parameters(&self) -> Vec<f64> {
        self.rows.iter().map(RowDistribution::parameter).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawShiftedSpec {
    beta: FieldIndex,
    n: usize,
    c: f64,
    sigma: f64,
}

/// `I_N + X/c` with `X` having independent field-Gaussian entries of
/// component standard deviation `sigma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawShiftedSpec", into = "RawShiftedSpec")]
pub struct ShiftedGaussianSpec {
    field: FieldIndex,
    n: usize,
    c: f64,
    sigma: f64,
}

impl TryFrom<RawShiftedSpec> for ShiftedGaussianSpec {
    type Error = EnsembleError;

    fn try_from(raw: RawShiftedSpec) -> Result<Self, Self::Error> {
        ShiftedGaussianSpec::new(raw.beta, raw.n, raw.c, raw.sigma)
    }
}

impl From<ShiftedGaussianSpec> for RawShiftedSpec {
    fn from(s: ShiftedGaussianSpec) -> Self {
        RawShiftedSpec { beta: s.field, n: s.n, c: s.c, sigma: s.sigma }
    }
}

impl ShiftedGaussianSpec {
    pub fn new(field: FieldIndex, n: usize, c: f64, sigma: f64) -> Result<Self, EnsembleError> {
        if n == 0 {
            return Err(EnsembleError::EmptyDimension);
        }
        if !(c != 0.0 && c.is_finite()) {
            return Err(EnsembleError::Parameter { what: "c", requirement: "finite and non-zero", value: c });
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(EnsembleError::Parameter { what: "sigma", requirement: "positive and finite", value: sigma });
        }
        Ok(ShiftedGaussianSpec { field, n, c, sigma })
    }

    pub fn field(&self) -> FieldIndex {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Noncentrality `(c/sigma)^2`.
    pub fn lambda(&self) -> f64 {
        let r = self.c / self.sigma;
        r * r
    }

    /// `c^2 / (2 sigma^2)`, exactly half of [`Self::lambda`].
    pub fn ctilde(&self) -> f64 {
        0.5 * self.lambda()
    }
}

/// Either kind of matrix model; parses from either JSON layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModelSpec {
    Isotropic(EnsembleSpec),
    Shifted(ShiftedGaussianSpec),
}

impl ModelSpec {
    pub fn field(&self) -> FieldIndex {
        match self {
            ModelSpec::Isotropic(s) => s.field(),
            ModelSpec::Shifted(s) => s.field(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            ModelSpec::Isotropic(s) => s.n(),
            ModelSpec::Shifted(s) => s.n(),
        }
    }
}

impl From<EnsembleSpec> for ModelSpec {
    fn from(s: EnsembleSpec) -> Self {
        ModelSpec::Isotropic(s)
    }
}

impl From<ShiftedGaussianSpec> for ModelSpec {
    fn from(s: ShiftedGaussianSpec) -> Self {
        ModelSpec::Shifted(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_json_round_trip() {
        let text = r#"{"beta":2,"n":2,"rows":[{"type":"beta1","nu":1.0},{"type":"beta1","nu":2.5}]}"#;
        let spec: EnsembleSpec = serde_json::from_str(text).unwrap();
        assert_eq!(spec.field(), FieldIndex::Complex);
        assert_eq!(spec.parameters(), vec![1.0, 2.5]);
        let back: EnsembleSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn spec_validation() {
        let bad_beta = r#"{"beta":3,"n":1,"rows":[{"type":"gaussian","sigma":1.0}]}"#;
        assert!(serde_json::from_str::<EnsembleSpec>(bad_beta).is_err());
        let wrong_count = r#"{"beta":1,"n":2,"rows":[{"type":"gaussian","sigma":1.0}]}"#;
        assert!(serde_json::from_str::<EnsembleSpec>(wrong_count).is_err());
        let mixed = r#"{"beta":1,"n":2,"rows":[{"type":"gaussian","sigma":1.0},{"type":"beta2","omega":3.0}]}"#;
        assert!(serde_json::from_str::<EnsembleSpec>(mixed).is_err());
        assert!(EnsembleSpec::beta1(FieldIndex::Real, &[0.0]).is_err());
        assert!(EnsembleSpec::gaussian(FieldIndex::Real, &[]).is_err());
    }

    #[test]
    fn model_spec_parses_both_layouts() {
        let iso: ModelSpec =
            serde_json::from_str(r#"{"beta":1,"n":1,"rows":[{"type":"gaussian","sigma":1.0}]}"#).unwrap();
        assert!(matches!(iso, ModelSpec::Isotropic(_)));
        let sh: ModelSpec = serde_json::from_str(r#"{"beta":4,"n":3,"c":2.0,"sigma":0.5}"#).unwrap();
        match sh {
            ModelSpec::Shifted(s) => {
                assert_eq!(s.lambda(), 16.0);
                assert_eq!(s.ctilde(), s.lambda() / 2.0);
            }
            other => panic!("{other:?}"),
        }
        assert!(serde_json::from_str::<ModelSpec>(r#"{"beta":1,"n":3,"c":0.0,"sigma":1.0}"#).is_err());
    }

    #[test]
    fn lambda_is_exact() {
        let s = ShiftedGaussianSpec::new(FieldIndex::Real, 2, 3.0, 0.7).unwrap();
        assert_eq!(s.lambda(), (3.0f64 / 0.7) * (3.0 / 0.7));
        assert_eq!(s.ctilde() * 2.0, s.lambda());
    }
}
