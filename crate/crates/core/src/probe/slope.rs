//! Least-squares slopes of `log(α/β)(A_e)` against `ln e`.

use std::fmt;

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use super::ProbeError;
use crate::asymptotics::{asn, asn_inner_product, PolyMatrix};
use crate::nullity::{nullity_type, RationalMatrix};
use crate::ratio::{evaluate_log_ratio_gram, FormalLog};

/// Strictly decreasing values in `(0, 1)` spanning at least four decades.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsilonGrid {
    values: Vec<f64>,
}

impl EpsilonGrid {
    pub const MIN_DECADES: f64 = 4.0;

    pub fn from_values(values: Vec<f64>) -> Result<Self, ProbeError> {
        if values.len() < 2 {
            return Err(ProbeError::Grid("need at least two points".into()));
        }
        if values.iter().any(|&e| !(e > 0.0 && e < 1.0)) {
            return Err(ProbeError::Grid("values must lie in (0, 1)".into()));
        }
        if values.windows(2).any(|w| w[1] >= w[0]) {
            return Err(ProbeError::Grid(
                "values must be strictly decreasing".into(),
            ));
        }
        let decades = (values[0] / values[values.len() - 1]).log10();
        if decades < Self::MIN_DECADES - 1e-9 {
            return Err(ProbeError::Grid(format!(
                "spans {decades:.2} decades, need 4"
            )));
        }
        Ok(EpsilonGrid { values })
    }

    /// `points` values from `max` down to `min`, evenly spaced in `ln e`.
    pub fn geometric(max: f64, min: f64, points: usize) -> Result<Self, ProbeError> {
        if points < 2 {
            return Err(ProbeError::Grid("need at least two points".into()));
        }
        let (hi, lo) = (max.ln(), min.ln());
        let step = (lo - hi) / (points - 1) as f64;
        let mut values: Vec<f64> = (0..points).map(|k| (hi + step * k as f64).exp()).collect();
        values[0] = max;
        values[points - 1] = min;
        EpsilonGrid::from_values(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

impl Default for EpsilonGrid {
    /// `1e-1 … 1e-7`, two points per decade.
    fn default() -> Self {
        EpsilonGrid::geometric(1e-1, 1e-7, 13).expect("valid default grid")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SlopeVerdict {
    Matches,
    DivergesFromPrediction,
}

/// Whether the ratio stays bounded as `e → 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Behavior {
    Bounded,
    Divergent,
}

impl fmt::Display for Behavior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Behavior::Bounded => "bounded",
            Behavior::Divergent => "divergent",
        })
    }
}

impl fmt::Display for SlopeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SlopeVerdict::Matches => "matches",
            SlopeVerdict::DivergesFromPrediction => "diverges-from-prediction",
        })
    }
}

fn ser_rational<S: serde::Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeReport {
    pub epsilons: Vec<f64>,
    pub log_ratio_values: Vec<f64>,
    pub fitted_slope: f64,
    pub intercept: f64,
    #[serde(serialize_with = "ser_rational")]
    pub predicted_slope: BigRational,
    /// Largest absolute deviation from the fitted line.
    pub residual: f64,
    pub verdict: SlopeVerdict,
    /// Read off the slope over the smaller half of the grid.
    pub observed: Behavior,
}

impl ProbeReport {
    fn build(epsilons: Vec<f64>, values: Vec<f64>, predicted: BigRational) -> Self {
        let xs: Vec<f64> = epsilons.iter().map(|e| e.ln()).collect();
        let (slope, intercept) = least_squares(&xs, &values);
        let residual = xs
            .iter()
            .zip(&values)
            .map(|(x, y)| (y - (intercept + slope * x)).abs())
            .fold(0.0, f64::max);
        let half = xs.len() / 2;
        let (tail, _) = least_squares(&xs[half..], &values[half..]);
        let p = predicted.to_f64().unwrap_or(f64::NAN);
        let verdict = if (slope - p).abs() <= 0.05 * p.abs().max(1.0) {
            SlopeVerdict::Matches
        } else {
            SlopeVerdict::DivergesFromPrediction
        };
        ProbeReport {
            epsilons,
            log_ratio_values: values,
            fitted_slope: slope,
            intercept,
            predicted_slope: predicted,
            residual,
            verdict,
            observed: if tail < -0.5 {
                Behavior::Divergent
            } else {
                Behavior::Bounded
            },
        }
    }

    /// A negative predicted slope means the ratio grows without bound.
    pub fn predicted_behavior(&self) -> Behavior {
        if self.predicted_slope.is_negative() {
            Behavior::Divergent
        } else {
            Behavior::Bounded
        }
    }

    /// Largest ratio seen on the grid.
    pub fn max_ratio(&self) -> f64 {
        self.log_ratio_values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
            .exp()
    }

    /// `key = value` lines.
    pub fn key_value_block(&self) -> String {
        let list = |xs: &[f64]| {
            xs.iter()
                .map(|x| format!("{x:e}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        format!(
            "epsilons = {}\nlog_ratio_values = {}\nfitted_slope = {:.6}\nintercept = {:.6}\n\
             predicted_slope = {}\nresidual = {:e}\nverdict = {}\nobserved = {}\npredicted = {}\n",
            list(&self.epsilons),
            list(&self.log_ratio_values),
            self.fitted_slope,
            self.intercept,
            self.predicted_slope,
            self.residual,
            self.verdict,
            self.observed,
            self.predicted_behavior(),
        )
    }
}

/// Slope and intercept of the least-squares line through `(xs, ys)`.
pub fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

fn sweep(
    v: &FormalLog,
    grid: &EpsilonGrid,
    factor: impl Fn(f64) -> DMatrix<f64>,
) -> Result<Vec<f64>, ProbeError> {
    grid.values()
        .iter()
        .map(|&e| {
            evaluate_log_ratio_gram(v, &factor(e))
                .map_err(|source| ProbeError::FamilyEvaluation { epsilon: e, source })
        })
        .collect()
}

/// Probes `A_e = MᵀM + e·I`, predicting slope `vᵀ nul(M)`.
pub fn eval_family_slope(
    v: &FormalLog,
    m: &RationalMatrix,
    grid: &EpsilonGrid,
) -> Result<ProbeReport, ProbeError> {
    if !v.is_homogeneous() {
        return Err(ProbeError::NotHomogeneous);
    }
    let n = v.ground_size();
    if m.cols() != n {
        return Err(ProbeError::Dimension {
            expected: n,
            found: m.cols(),
        });
    }
    let predicted = v.dot_counts(nullity_type(m).entries());
    let mf = m.to_f64();
    let r = mf.nrows();
    // A_e = FᵀF with F = [M; √e·I]
    let values = sweep(v, grid, |e| {
        let mut f = DMatrix::zeros(r + n, n);
        f.rows_mut(0, r).copy_from(&mf);
        for i in 0..n {
            f[(r + i, i)] = e.sqrt();
        }
        f
    })?;
    Ok(ProbeReport::build(
        grid.values().to_vec(),
        values,
        predicted,
    ))
}

/// Probes `A_e = P(e)ᵀP(e)`, predicting slope `2 · vᵀ asn(P)`.
pub fn eval_poly_family_slope(
    v: &FormalLog,
    p: &PolyMatrix,
    grid: &EpsilonGrid,
) -> Result<ProbeReport, ProbeError> {
    if !v.is_homogeneous() {
        return Err(ProbeError::NotHomogeneous);
    }
    let a = asn(p)?;
    let predicted = asn_inner_product(v, &a)? * BigRational::from_integer(2.into());
    let values = sweep(v, grid, |e| p.eval_f64(e))?;
    Ok(ProbeReport::build(
        grid.values().to_vec(),
        values,
        predicted,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::known;

    #[test]
    fn grid_validation() {
        assert_eq!(EpsilonGrid::default().values().len(), 13);
        assert!(EpsilonGrid::geometric(1e-1, 1e-4, 5).is_err());
        assert!(EpsilonGrid::from_values(vec![1e-1, 1e-3, 1e-2, 1e-6]).is_err());
        assert!(EpsilonGrid::from_values(vec![2.0, 1e-5]).is_err());
        assert!(EpsilonGrid::from_values(vec![1e-1, 1e-5]).is_ok());
    }

    #[test]
    fn counterexample_on_m6() {
        let r =
            eval_family_slope(&known::e4_not_d4(), &known::m6(), &EpsilonGrid::default()).unwrap();
        assert_eq!(r.predicted_slope, BigRational::from_integer((-1).into()));
        assert_eq!(r.verdict, SlopeVerdict::Matches, "{}", r.fitted_slope);
        assert_eq!(r.observed, Behavior::Divergent);
        assert!(r.max_ratio() > 1e3);
    }

    #[test]
    fn hadamard_on_rank_one_row() {
        let v = known::log_of("{1,2}{} / {1}{2}", 2);
        let m = RationalMatrix::from_int_rows(2, &[[1, 1]]);
        let r = eval_family_slope(&v, &m, &EpsilonGrid::default()).unwrap();
        assert_eq!(r.predicted_slope, BigRational::from_integer(1.into()));
        assert!((r.fitted_slope - 1.0).abs() < 0.05);
        assert_eq!(r.observed, Behavior::Bounded);
    }

    #[test]
    fn identity_gives_flat_slope() {
        let r = eval_family_slope(
            &known::r1(),
            &RationalMatrix::identity(4),
            &EpsilonGrid::default(),
        )
        .unwrap();
        assert!(r.fitted_slope.abs() < 1e-6);
    }

    #[test]
    fn q_along_polynomial_family() {
        let grid = EpsilonGrid::default();
        let r = eval_poly_family_slope(&known::q5(), &known::asn_family(), &grid).unwrap();
        assert_eq!(r.predicted_slope, BigRational::from_integer((-2).into()));
        assert!((r.fitted_slope + 2.0).abs() < 0.1, "{}", r.fitted_slope);
        let flat = eval_poly_family_slope(&known::q5(), &PolyMatrix::identity(5), &grid).unwrap();
        assert!(flat.predicted_slope == BigRational::from_integer(0.into()));
    }

    #[test]
    fn rejects_inhomogeneous() {
        let v = known::log_of("{1,2} / {1}", 2);
        let m = RationalMatrix::identity(2);
        assert_eq!(
            eval_family_slope(&v, &m, &EpsilonGrid::default()),
            Err(ProbeError::NotHomogeneous)
        );
    }
}
