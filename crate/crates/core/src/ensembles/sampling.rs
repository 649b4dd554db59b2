use rand::Rng;
use rand_distr::{Beta, ChiSquared, Distribution, Gamma, StandardNormal};

use super::{EnsembleSpec, FieldIndex, MatrixSample, ModelSpec, RowDistribution, ShiftedGaussianSpec};

fn normals<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
}

/// Draws rows of one law; distribution objects are built once.
#[derive(Debug, Clone)]
pub(crate) enum RowSampler {
    Gaussian { sigma: f64, len: usize },
    BetaI { radius_sq: Beta<f64>, len: usize },
    BetaII { scale: Gamma<f64>, len: usize },
}

impl RowSampler {
    pub(crate) fn new(dist: &RowDistribution, n: usize, field: FieldIndex) -> RowSampler {
        let beta = field.beta();
        let len = field.components() * n;
        match *dist {
            RowDistribution::Gaussian { sigma } => RowSampler::Gaussian { sigma, len },
            RowDistribution::BetaI { nu } => RowSampler::BetaI {
                radius_sq: Beta::new(0.5 * beta * n as f64, 0.5 * beta * nu).expect("validated parameters"),
                len,
            },
            // chi^2 with beta*omega degrees of freedom, as Gamma(beta*omega/2, scale 2)
            RowDistribution::BetaII { omega } => {
                RowSampler::BetaII { scale: Gamma::new(0.5 * beta * omega, 2.0).expect("validated parameters"), len }
            }
        }
    }

    pub(crate) fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        match self {
            RowSampler::Gaussian { sigma, len } => normals(rng, *len).into_iter().map(|x| sigma * x).collect(),
            RowSampler::BetaI { radius_sq, len } => {
                let mut v = normals(rng, *len);
                let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                let r = radius_sq.sample(rng).sqrt();
                for x in &mut v {
                    *x *= r / norm;
                }
                v
            }
            RowSampler::BetaII { scale, len } => {
                let v = normals(rng, *len);
                let w = scale.sample(rng);
                let inv = 1.0 / w.sqrt();
                v.into_iter().map(|x| x * inv).collect()
            }
        }
    }
}

/// Draws whole matrices of an [`EnsembleSpec`].
#[derive(Debug, Clone)]
pub(crate) struct MatrixSampler {
    field: FieldIndex,
    rows: Vec<RowSampler>,
}

impl MatrixSampler {
    pub(crate) fn new(spec: &EnsembleSpec) -> MatrixSampler {
        let rows = spec.rows().iter().map(|r| RowSampler::new(r, spec.n(), spec.field())).collect();
        MatrixSampler { field: spec.field(), rows }
    }

    pub(crate) fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> MatrixSample {
        let rows: Vec<Vec<f64>> = self.rows.iter().map(|r| r.sample(rng)).collect();
        MatrixSample::from_rows(self.field, &rows)
    }
}

/// Squared modulus of one entry of a row, drawn from its marginal law.
#[derive(Debug, Clone)]
pub(crate) enum EntrySampler {
    /// `sigma^2 chi^2_beta`
    Gaussian { var: f64, chi: ChiSquared<f64> },
    /// `Beta(beta/2, beta(N + nu - 1)/2)`
    BetaI(Beta<f64>),
    /// `chi^2_beta / chi^2_{beta omega}`
    BetaII { num: ChiSquared<f64>, den: ChiSquared<f64> },
}

impl EntrySampler {
    fn new(dist: &RowDistribution, n: usize, field: FieldIndex) -> EntrySampler {
        let beta = field.beta();
        let chi_beta = ChiSquared::new(beta).expect("beta > 0");
        match *dist {
            RowDistribution::Gaussian { sigma } => EntrySampler::Gaussian { var: sigma * sigma, chi: chi_beta },
            RowDistribution::BetaI { nu } => EntrySampler::BetaI(
                Beta::new(0.5 * beta, 0.5 * beta * (n as f64 + nu - 1.0)).expect("validated parameters"),
            ),
            RowDistribution::BetaII { omega } => EntrySampler::BetaII {
                num: chi_beta,
                den: ChiSquared::new(beta * omega).expect("validated parameters"),
            },
        }
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            EntrySampler::Gaussian { var, chi } => var * chi.sample(rng),
            EntrySampler::BetaI(b) => b.sample(rng),
            EntrySampler::BetaII { num, den } => num.sample(rng) / den.sample(rng),
        }
    }
}

/// Draws the squared norm of the first column of a model matrix.
#[derive(Debug, Clone)]
pub(crate) enum ColumnSampler {
    Isotropic(Vec<EntrySampler>),
    Shifted { n: usize, components: usize, inv_c: f64, sigma: f64 },
}

impl ColumnSampler {
    pub(crate) fn new(spec: &ModelSpec) -> ColumnSampler {
        match spec {
            ModelSpec::Isotropic(s) => {
                ColumnSampler::Isotropic(s.rows().iter().map(|r| EntrySampler::new(r, s.n(), s.field())).collect())
            }
            ModelSpec::Shifted(s) => ColumnSampler::Shifted {
                n: s.n(),
                components: s.field().components(),
                inv_c: 1.0 / s.c(),
                sigma: s.sigma(),
            },
        }
    }

    pub(crate) fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            ColumnSampler::Isotropic(entries) => entries.iter().map(|e| e.sample(rng)).sum(),
            ColumnSampler::Shifted { n, components, inv_c, sigma } => {
                let mut total = 0.0;
                for l in 0..*n {
                    for s in 0..*components {
                        let x: f64 = sigma * rng.sample::<f64, _>(StandardNormal) * inv_c;
                        let v = if l == 0 && s == 0 { 1.0 + x } else { x };
                        total += v * v;
                    }
                }
                total
            }
        }
    }
}

/// One row of `beta * n` real components (entry `j` occupies components
/// `beta*j .. beta*(j+1)`).
pub fn sample_row<R: Rng + ?Sized>(dist: &RowDistribution, n: usize, field: FieldIndex, rng: &mut R) -> Vec<f64> {
    RowSampler::new(dist, n, field).sample(rng)
}

/// A matrix with independent rows, row `l` drawn from `spec.rows()[l]`.
pub fn sample_matrix<R: Rng + ?Sized>(spec: &EnsembleSpec, rng: &mut R) -> MatrixSample {
    MatrixSampler::new(spec).sample(rng)
}

/// `I_N + X/c` with field-Gaussian `X`.
pub fn sample_shifted<R: Rng + ?Sized>(spec: &ShiftedGaussianSpec, rng: &mut R) -> MatrixSample {
    let n = spec.n();
    let comps = spec.field().components();
    let scale = spec.sigma() / spec.c();
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row: Vec<f64> = normals(rng, comps * n).into_iter().map(|x| x * scale).collect();
            row[comps * i] += 1.0;
            row
        })
        .collect();
    MatrixSample::from_rows(spec.field(), &rows)
}

/// `sum_l |x_{l,1}|^2`, drawing each entry from its single-entry marginal.
pub fn sample_first_column_norm_sq<R: Rng + ?Sized>(spec: &ModelSpec, rng: &mut R) -> f64 {
    ColumnSampler::new(spec).sample(rng)
}
