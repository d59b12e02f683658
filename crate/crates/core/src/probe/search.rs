//! Empirical maxima of a ratio over sampled positive definite matrices.

use nalgebra::DMatrix;

use super::sampler::{sample_all, sample_pd, SamplerConfig};
use super::slope::{eval_family_slope, Behavior, EpsilonGrid};
use crate::nullity::{catalog_n3, catalog_n4, RationalMatrix};
use crate::ratio::{evaluate_log_ratio, FormalLog};

/// A search whose best ratio exceeds this is reported as divergent.
pub const DIVERGENCE_THRESHOLD: f64 = 1e6;

const INITIAL_STEP: f64 = 0.1;
const MIN_STEP: f64 = 1e-9;
const MAX_SWEEPS: usize = 20_000;

/// Ascent stays where the smallest eigenvalue is at least this; closer to the
/// boundary the minors are too inaccurate to trust.
pub const MIN_EIGENVALUE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    /// Largest value of the ratio found.
    pub max_ratio: f64,
    pub log_max: f64,
    /// Best value over the samples alone, before local ascent.
    pub sample_max: f64,
    /// Sample the ascent started from.
    pub best_sample: usize,
    /// Unit-diagonal matrix attaining `max_ratio`.
    pub witness: DMatrix<f64>,
    pub ascent_sweeps: usize,
    /// Catalog family `MᵀM + e·I` along which the ratio was seen to grow.
    pub divergent_family: Option<String>,
    pub divergent: bool,
}

/// `D A D` with unit diagonal; the ratio is unchanged for homogeneous `v`.
fn to_correlation(a: &DMatrix<f64>) -> DMatrix<f64> {
    let d: Vec<f64> = (0..a.nrows()).map(|i| a[(i, i)].sqrt().recip()).collect();
    DMatrix::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)] * d[i] * d[j])
}

fn value(v: &FormalLog, a: &DMatrix<f64>) -> Option<f64> {
    evaluate_log_ratio(v, a).ok().filter(|x| x.is_finite())
}

/// Coordinate ascent on the off-diagonal entries of a correlation matrix,
/// halving the step whenever a full sweep makes no progress.
fn ascend(v: &FormalLog, start: DMatrix<f64>, start_value: f64) -> (DMatrix<f64>, f64, usize) {
    let n = start.nrows();
    let mut a = start;
    let mut best = start_value;
    let mut step = INITIAL_STEP;
    let mut sweeps = 0;
    while step >= MIN_STEP && sweeps < MAX_SWEEPS {
        sweeps += 1;
        let mut improved = false;
        for i in 0..n {
            for j in i + 1..n {
                for delta in [step, -step] {
                    let x = a[(i, j)] + delta;
                    if x.abs() >= 1.0 {
                        continue;
                    }
                    let mut trial = a.clone();
                    trial[(i, j)] = x;
                    trial[(j, i)] = x;
                    if trial.clone().symmetric_eigen().eigenvalues.min() < MIN_EIGENVALUE {
                        continue;
                    }
                    if let Some(val) = value(v, &trial) {
                        if val > best {
                            best = val;
                            a = trial;
                            improved = true;
                            break;
                        }
                    }
                }
            }
        }
        if !improved {
            step /= 2.0;
        }
    }
    (a, best, sweeps)
}

fn guide_families(n: usize) -> Vec<(String, RationalMatrix)> {
    let entries = match n {
        3 => catalog_n3(),
        4 => catalog_n4().unwrap_or_default(),
        _ => Vec::new(),
    };
    entries.into_iter().map(|e| (e.label, e.matrix)).collect()
}

/// Evaluates the ratio on `cfg.count` samples and climbs from the best one.
/// For `n ∈ {3, 4}` it also walks the families `MᵀM + e·I` of the catalog
/// matrices, where unbounded ratios show their growth. Deterministic given
/// `cfg.seed`.
pub fn bound_search(v: &FormalLog, cfg: &SamplerConfig) -> BoundReport {
    let values = sample_all(cfg, |_, a| value(v, a).unwrap_or(f64::NEG_INFINITY));
    let (best_sample, sample_log) =
        values
            .iter()
            .copied()
            .enumerate()
            .fold(
                (0, f64::NEG_INFINITY),
                |acc, (k, x)| if x > acc.1 { (k, x) } else { acc },
            );
    let start = to_correlation(&sample_pd(cfg, best_sample));
    let (mut witness, mut log_max, ascent_sweeps) = ascend(v, start, sample_log);

    let mut divergent_family = None;
    if v.ground_size() == cfg.n && v.is_homogeneous() {
        let grid = EpsilonGrid::default();
        for (label, m) in guide_families(cfg.n) {
            let Ok(report) = eval_family_slope(v, &m, &grid) else {
                continue;
            };
            if report.observed == Behavior::Divergent && divergent_family.is_none() {
                divergent_family = Some(label);
            }
            for (e, x) in report.epsilons.iter().zip(&report.log_ratio_values) {
                if *x > log_max {
                    log_max = *x;
                    let mf = m.to_f64();
                    witness = to_correlation(
                        &(mf.transpose() * &mf + DMatrix::identity(cfg.n, cfg.n) * *e),
                    );
                }
            }
        }
    }
    let max_ratio = log_max.exp();
    BoundReport {
        max_ratio,
        log_max,
        sample_max: sample_log.exp(),
        best_sample,
        witness,
        ascent_sweeps,
        divergent: divergent_family.is_some() || max_ratio > DIVERGENCE_THRESHOLD,
        divergent_family,
    }
}
