use nalgebra::DMatrix;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::stats::{unit_rng, Moments};
use super::{param, McError, McEstimate};
use crate::ensembles::{sample_shifted, FieldIndex, MatrixSample, MatrixSampler, ModelSpec, ShiftedGaussianSpec};

/// Lyapunov spectrum of `X_m ... X_1` in nats per step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEstimate {
    /// `mu_1 >= ... >= mu_N`; each trial's exponents are sorted before
    /// averaging.
    pub exponents: Vec<McEstimate>,
    /// `mu_1 + ... + mu_k` for `k = 1..N`, with errors from the per-trial sums.
    pub partial_sums: Vec<McEstimate>,
    /// Quaternion products only: the `2N` exponents of the complex
    /// embedding, which come in equal pairs.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub embedding_exponents: Vec<McEstimate>,
    pub steps: usize,
    pub trials: usize,
}

enum FactorSampler {
    Isotropic(MatrixSampler),
    Shifted(ShiftedGaussianSpec),
}

impl FactorSampler {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> MatrixSample {
        match self {
            FactorSampler::Isotropic(s) => s.sample(rng),
            FactorSampler::Shifted(s) => sample_shifted(s, rng),
        }
    }
}

/// Push the identity frame through `steps` factors, re-orthonormalizing
/// after each; returns the mean log stretch of each frame vector.
fn propagate<T, F>(dim: usize, steps: usize, mut next: F) -> Vec<f64>
where
    T: nalgebra::ComplexField<RealField = f64>,
    F: FnMut() -> DMatrix<T>,
{
    let mut frame = DMatrix::<T>::identity(dim, dim);
    let mut logs = vec![0.0; dim];
    for _ in 0..steps {
        let (q, r) = (next() * &frame).qr().unpack();
        for (l, d) in logs.iter_mut().zip(r.diagonal().iter()) {
            *l += d.clone().modulus().ln();
        }
        frame = q;
    }
    logs.iter().map(|l| l / steps as f64).collect()
}

fn trial<R: Rng + ?Sized>(sampler: &FactorSampler, field: FieldIndex, n: usize, steps: usize, rng: &mut R) -> Vec<f64> {
    let mut out = match field {
        FieldIndex::Real => propagate(n, steps, || match sampler.sample(rng) {
            MatrixSample::Real(m) => m,
            _ => unreachable!("real spec yields real matrices"),
        }),
        FieldIndex::Complex | FieldIndex::Quaternion => {
            propagate(field.embedding_dim(n), steps, || match sampler.sample(rng) {
                MatrixSample::Complex(m) | MatrixSample::Quaternion(m) => m,
                MatrixSample::Real(_) => unreachable!("complex spec yields complex matrices"),
            })
        }
    };
    out.sort_by(|a, b| b.total_cmp(a));
    out
}

fn summarize(rows: &[Vec<f64>], master_seed: u64) -> Vec<McEstimate> {
    let width = rows.first().map_or(0, Vec::len);
    (0..width)
        .map(|i| {
            let mut m = Moments::default();
            rows.iter().for_each(|r| m.push(r[i]));
            McEstimate::from_moments(&m, master_seed)
        })
        .collect()
}

/// Estimate all `N` exponents from `trials` independent products of
/// `steps` factors. Trial `t` draws from stream `t`.
pub fn estimate_spectrum(
    spec: &ModelSpec,
    steps: usize,
    trials: usize,
    master_seed: u64,
) -> Result<SpectrumEstimate, McError> {
    if steps == 0 {
        return Err(param("steps", "at least 1", 0.0));
    }
    if trials < 2 {
        return Err(param("trials", "at least 2", trials as f64));
    }
    let field = spec.field();
    let n = spec.n();
    let sampler = match spec {
        ModelSpec::Isotropic(s) => FactorSampler::Isotropic(MatrixSampler::new(s)),
        ModelSpec::Shifted(s) => FactorSampler::Shifted(*s),
    };
    let raw: Vec<Vec<f64>> = (0..trials)
        .into_par_iter()
        .map(|t| trial(&sampler, field, n, steps, &mut unit_rng(master_seed, t as u64)))
        .collect();
    let (exps, embedding): (Vec<Vec<f64>>, Vec<McEstimate>) = if field == FieldIndex::Quaternion {
        let collapsed = raw.iter().map(|r| r.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect()).collect();
        (collapsed, summarize(&raw, master_seed))
    } else {
        (raw, Vec::new())
    };
    let sums: Vec<Vec<f64>> = exps
        .iter()
        .map(|r| {
            r.iter()
                .scan(0.0, |acc, x| {
                    *acc += x;
                    Some(*acc)
                })
                .collect()
        })
        .collect();
    Ok(SpectrumEstimate {
        exponents: summarize(&exps, master_seed),
        partial_sums: summarize(&sums, master_seed),
        embedding_exponents: embedding,
        steps,
        trials,
    })
}
