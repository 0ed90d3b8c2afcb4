//! Holt-Winters with fruit-fly tuned smoothing parameters.
//!
//! The last period of the training data is held out. Candidate `(α, β, γ)`
//! triples are scored by fitting on the remaining points and comparing a
//! one-period forecast against the held-out period. The winning triple is then
//! refit on the whole training set to forecast the horizon.

use thiserror::Error;

use crate::foa::{self, FoaConfig, FoaError, OptimizationTrace};
use crate::holt_winters::{self, HwError, SmoothingParams};
use crate::metrics::{self, EvaluationReport, MetricError};
use crate::series::SeasonalSeries;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PipelineError {
    #[error("training length {len} needs at least three whole periods of {period}")]
    TooShort { len: usize, period: usize },
    #[error("training length {len} is not a multiple of the period {period}")]
    NotMultipleOfPeriod { len: usize, period: usize },
    #[error("test series has {test} points but the horizon is {horizon}")]
    HorizonMismatch { horizon: usize, test: usize },
    #[error("horizon must be at least 1")]
    ZeroHorizon,
    #[error(transparent)]
    Model(#[from] HwError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Optimizer(#[from] FoaError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub foa: FoaConfig,
    pub horizon: usize,
    /// Seed the first generation with `seed_params`, so the tuned parameters
    /// never score worse than them on validation.
    pub include_default_seed: bool,
    pub seed_params: SmoothingParams,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            foa: FoaConfig::default(),
            horizon: 6,
            include_default_seed: true,
            seed_params: SmoothingParams::DEFAULT,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineResult {
    pub optimal_params: SmoothingParams,
    /// Validation fitness of `optimal_params`.
    pub validation_fitness: f64,
    pub forecast: Vec<f64>,
    /// Present when test data was supplied.
    pub report: Option<EvaluationReport>,
    pub trace: OptimizationTrace,
}

/// Fit on `train_opt`, forecast `validation.len()` steps and return the
/// sum-of-squares RMSE against `validation`.
pub fn validation_fitness(
    train_opt: &SeasonalSeries,
    validation: &SeasonalSeries,
    params: SmoothingParams,
) -> Result<f64, PipelineError> {
    let model = holt_winters::fit(train_opt, params)?;
    let forecast = model.forecast(validation.len());
    Ok(metrics::fitness_rmse(validation.values(), &forecast)?)
}

/// Splits `train` into the optimization slice and the final-period
/// validation slice.
pub fn optimization_split(
    train: &SeasonalSeries,
) -> Result<(SeasonalSeries, SeasonalSeries), PipelineError> {
    let (len, period) = (train.len(), train.period());
    if len % period != 0 {
        return Err(PipelineError::NotMultipleOfPeriod { len, period });
    }
    if len < 3 * period {
        return Err(PipelineError::TooShort { len, period });
    }
    let train_opt = train.slice(0, len - period).expect("non-empty");
    let validation = train.tail(period).expect("non-empty");
    Ok((train_opt, validation))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TunedParams {
    pub params: SmoothingParams,
    pub validation_fitness: f64,
    pub trace: OptimizationTrace,
}

pub fn foa_mhw_fit(
    train: &SeasonalSeries,
    config: &PipelineConfig,
) -> Result<TunedParams, PipelineError> {
    let (train_opt, validation) = optimization_split(train)?;
    let objective = |p: &[f64]| -> Result<f64, PipelineError> {
        validation_fitness(&train_opt, &validation, SmoothingParams::from_slice(p)?)
    };
    // the optimizer's domain starts at JUDGMENT_FLOOR, not zero
    let default_seed = config
        .seed_params
        .to_array()
        .map(|v| v.clamp(foa::JUDGMENT_FLOOR, 1.0));
    let seed = config.include_default_seed.then_some(&default_seed[..]);
    let outcome = foa::run_foa_seeded(objective, 3, &config.foa, seed)?;
    Ok(TunedParams {
        params: SmoothingParams::from_slice(&outcome.best)?,
        validation_fitness: outcome.best_fitness,
        trace: outcome.trace,
    })
}

pub fn foa_mhw_forecast(
    train: &SeasonalSeries,
    test: Option<&SeasonalSeries>,
    config: &PipelineConfig,
) -> Result<PipelineResult, PipelineError> {
    if config.horizon == 0 {
        return Err(PipelineError::ZeroHorizon);
    }
    if let Some(test) = test {
        if test.len() != config.horizon {
            return Err(PipelineError::HorizonMismatch {
                horizon: config.horizon,
                test: test.len(),
            });
        }
    }
    let tuned = foa_mhw_fit(train, config)?;
    let forecast = holt_winters::fit(train, tuned.params)?.forecast(config.horizon);
    let report = test
        .map(|t| EvaluationReport::evaluate(t.values(), &forecast))
        .transpose()?;
    Ok(PipelineResult {
        optimal_params: tuned.params,
        validation_fitness: tuned.validation_fitness,
        forecast,
        report,
        trace: tuned.trace,
    })
}
