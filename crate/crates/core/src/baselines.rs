//! Comparison models: a seasonal-index model, Holt-Winters with fixed default
//! parameters, and an exhaustive grid search over `(α, β, γ)`.

use thiserror::Error;

use crate::exec::Execution;
use crate::foa::JUDGMENT_FLOOR;
use crate::holt_winters::{self, HwError, SmoothingParams};
use crate::metrics::mean;
use crate::pipeline::{self, PipelineError};
use crate::series::SeasonalSeries;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BaselineError {
    #[error("training length {len} is not a multiple of the period {period}")]
    NotMultipleOfPeriod { len: usize, period: usize },
    #[error("training length {len} is shorter than two periods ({period} each)")]
    TooShort { len: usize, period: usize },
    #[error("grid step {0} is outside (0, 0.5]")]
    InvalidStep(f64),
    #[error(transparent)]
    Model(#[from] HwError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
}

/// Ratio-to-cycle-mean seasonal indices with a linear trend on cycle means.
///
/// Index `k` is the average over cycles of `y / cycle_mean`, rescaled so the
/// indices average to one. Cycle means are fit by least squares against the
/// cycle number, and a future point is `line(cycle) * index(position)`.
/// Reproduces exactly any series whose cycle means grow linearly under a
/// fixed seasonal pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct SiModel {
    pub seasonal_indices: Vec<f64>,
    pub cycle_means: Vec<f64>,
    pub trend_slope: f64,
    pub trend_intercept: f64,
}

impl SiModel {
    pub fn fit(train: &SeasonalSeries) -> Result<Self, BaselineError> {
        let (len, period) = (train.len(), train.period());
        if len % period != 0 {
            return Err(BaselineError::NotMultipleOfPeriod { len, period });
        }
        if len < 2 * period {
            return Err(BaselineError::TooShort { len, period });
        }
        let cycles: Vec<&[f64]> = train.values().chunks_exact(period).collect();
        let cycle_means: Vec<f64> = cycles.iter().map(|c| mean(c)).collect();

        let mut seasonal_indices: Vec<f64> = (0..period)
            .map(|k| {
                let ratios: Vec<f64> = cycles
                    .iter()
                    .zip(&cycle_means)
                    .map(|(c, m)| c[k] / m)
                    .collect();
                mean(&ratios)
            })
            .collect();
        let scale = mean(&seasonal_indices);
        seasonal_indices.iter_mut().for_each(|s| *s /= scale);

        let xs: Vec<f64> = (0..cycle_means.len()).map(|j| j as f64).collect();
        let (x_bar, y_bar) = (mean(&xs), mean(&cycle_means));
        let sxy: f64 = xs
            .iter()
            .zip(&cycle_means)
            .map(|(x, y)| (x - x_bar) * (y - y_bar))
            .sum();
        let sxx: f64 = xs.iter().map(|x| (x - x_bar) * (x - x_bar)).sum();
        let trend_slope = sxy / sxx;
        let trend_intercept = y_bar - trend_slope * x_bar;

        Ok(Self {
            seasonal_indices,
            cycle_means,
            trend_slope,
            trend_intercept,
        })
    }

    /// Forecasts `horizon` points following the training data.
    pub fn forecast(&self, horizon: usize) -> Vec<f64> {
        let period = self.seasonal_indices.len();
        let first_cycle = self.cycle_means.len();
        (0..horizon)
            .map(|h| {
                let cycle = (first_cycle + h / period) as f64;
                (self.trend_intercept + self.trend_slope * cycle) * self.seasonal_indices[h % period]
            })
            .collect()
    }
}

pub fn si_fit_forecast(train: &SeasonalSeries, horizon: usize) -> Result<Vec<f64>, BaselineError> {
    Ok(SiModel::fit(train)?.forecast(horizon))
}

/// Holt-Winters with `SmoothingParams::DEFAULT`.
pub fn default_mhw_forecast(
    train: &SeasonalSeries,
    horizon: usize,
) -> Result<Vec<f64>, BaselineError> {
    mhw_forecast(train, horizon, SmoothingParams::DEFAULT)
}

pub fn mhw_forecast(
    train: &SeasonalSeries,
    horizon: usize,
    params: SmoothingParams,
) -> Result<Vec<f64>, BaselineError> {
    Ok(holt_winters::fit(train, params)?.forecast(horizon))
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridResult {
    pub params: SmoothingParams,
    pub fitness: f64,
    pub evaluations: usize,
}

/// Lattice values `step, 2·step, …` up to and including 1 (the last value is
/// clamped to 1 when `step` does not divide it).
pub fn grid_axis(step: f64) -> Vec<f64> {
    let n = (1.0 / step - 1e-9).ceil() as usize;
    (1..=n).map(|k| (k as f64 * step).min(1.0)).collect()
}

/// All lattice points in lexicographic `(α, β, γ)` order, preceded by the
/// floor point `(1e-4, 1e-4, 1e-4)`.
pub fn grid_points(step: f64) -> Result<Vec<[f64; 3]>, BaselineError> {
    if !(step > 0.0 && step <= 0.5) {
        return Err(BaselineError::InvalidStep(step));
    }
    let axis = grid_axis(step);
    let mut points = Vec::with_capacity(axis.len().pow(3) + 1);
    points.push([JUDGMENT_FLOOR; 3]);
    for &a in &axis {
        for &b in &axis {
            for &g in &axis {
                points.push([a, b, g]);
            }
        }
    }
    Ok(points)
}

/// Exhaustive search of the validation fitness over [`grid_points`]. Ties go
/// to the earliest point in lattice order.
pub fn grid_search_oracle(train: &SeasonalSeries, step: f64) -> Result<GridResult, BaselineError> {
    grid_search_oracle_with(train, step, Execution::default())
}

pub fn grid_search_oracle_with(
    train: &SeasonalSeries,
    step: f64,
    execution: Execution,
) -> Result<GridResult, BaselineError> {
    let (train_opt, validation) = pipeline::optimization_split(train)?;
    let points = grid_points(step)?;
    let fitness = execution.map(&points, |p| {
        let params = SmoothingParams::from_slice(p).expect("lattice lies in [0, 1]");
        match pipeline::validation_fitness(&train_opt, &validation, params) {
            Ok(f) if !f.is_nan() => f,
            _ => f64::INFINITY,
        }
    });
    let (best, &best_fitness) = fitness
        .iter()
        .enumerate()
        .fold((0, &fitness[0]), |acc, (i, f)| if *f < *acc.1 { (i, f) } else { acc });
    Ok(GridResult {
        params: SmoothingParams::from_slice(&points[best])?,
        fitness: best_fitness,
        evaluations: points.len(),
    })
}
