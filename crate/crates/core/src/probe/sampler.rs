//! Seeded positive definite samples. Sample `k` is drawn from its own
//! ChaCha stream, so results do not depend on how work is split.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::ProbeError;

pub const DEFAULT_RIDGE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Distribution {
    /// `GᵀG` for a square standard Gaussian `G`.
    GramOfGaussian,
    /// `GᵀG + ridge · I`.
    GramPlusRidge { ridge: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SamplerConfig {
    pub seed: u64,
    pub count: usize,
    pub n: usize,
    pub distribution: Distribution,
}

impl SamplerConfig {
    /// Gram-plus-ridge sampling with the default ridge.
    pub fn new(seed: u64, count: usize, n: usize) -> Result<Self, ProbeError> {
        if count == 0 {
            return Err(ProbeError::Sampler("count must be at least 1".into()));
        }
        if n == 0 {
            return Err(ProbeError::Sampler("dimension must be at least 1".into()));
        }
        Ok(SamplerConfig {
            seed,
            count,
            n,
            distribution: Distribution::GramPlusRidge {
                ridge: DEFAULT_RIDGE,
            },
        })
    }

    pub fn with_distribution(mut self, distribution: Distribution) -> Result<Self, ProbeError> {
        if let Distribution::GramPlusRidge { ridge } = distribution {
            if !(ridge >= 0.0 && ridge.is_finite()) {
                return Err(ProbeError::Sampler(format!(
                    "ridge must be finite and >= 0, got {ridge}"
                )));
            }
        }
        self.distribution = distribution;
        Ok(self)
    }
}

fn is_pd(a: &DMatrix<f64>) -> bool {
    a.clone().cholesky().is_some()
}

/// The `k`-th sample of `cfg`; redrawn from the same stream until it passes
/// a Cholesky check.
pub fn sample_pd(cfg: &SamplerConfig, k: usize) -> DMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(k as u64);
    let n = cfg.n;
    loop {
        let g = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
        let mut a = g.transpose() * &g;
        if let Distribution::GramPlusRidge { ridge } = cfg.distribution {
            for i in 0..n {
                a[(i, i)] += ridge;
            }
        }
        if is_pd(&a) {
            return a;
        }
    }
}

/// Applies `f` to every sample in parallel and returns the results in
/// sample order.
pub fn sample_all<T, F>(cfg: &SamplerConfig, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize, &DMatrix<f64>) -> T + Sync,
{
    (0..cfg.count)
        .into_par_iter()
        .map(|k| f(k, &sample_pd(cfg, k)))
        .collect()
}
