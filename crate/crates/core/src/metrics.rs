//! Forecast error metrics.
//!
//! [`fitness_rmse`] is the optimizer's fitness: the square root of the *sum*
//! of squared errors, with no division by the number of points. For a fixed
//! horizon it ranks candidates exactly as the usual root-mean-square error
//! does; [`rmse`] gives the conventional value for reporting.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error("{actual} actual values but {predicted} predictions")]
    LengthMismatch { actual: usize, predicted: usize },
    #[error("no values to compare")]
    EmptyInput,
    #[error("actual value at index {index} is not strictly positive ({value})")]
    NonPositiveActual { index: usize, value: f64 },
}

fn check_lengths(actual: &[f64], predicted: &[f64]) -> Result<(), MetricError> {
    if actual.len() != predicted.len() {
        return Err(MetricError::LengthMismatch {
            actual: actual.len(),
            predicted: predicted.len(),
        });
    }
    if actual.is_empty() {
        return Err(MetricError::EmptyInput);
    }
    Ok(())
}

fn sum_squared_errors(actual: &[f64], predicted: &[f64]) -> f64 {
    actual
        .iter()
        .zip(predicted)
        .map(|(y, f)| (y - f) * (y - f))
        .sum()
}

/// `sqrt(Σ (y - ŷ)²)`.
pub fn fitness_rmse(actual: &[f64], predicted: &[f64]) -> Result<f64, MetricError> {
    check_lengths(actual, predicted)?;
    Ok(sum_squared_errors(actual, predicted).sqrt())
}

/// `sqrt(Σ (y - ŷ)² / N)`.
pub fn rmse(actual: &[f64], predicted: &[f64]) -> Result<f64, MetricError> {
    check_lengths(actual, predicted)?;
    Ok((sum_squared_errors(actual, predicted) / actual.len() as f64).sqrt())
}

/// Element-wise `|ŷ - y| / y`, as fractions.
pub fn relative_errors(actual: &[f64], predicted: &[f64]) -> Result<Vec<f64>, MetricError> {
    check_lengths(actual, predicted)?;
    actual
        .iter()
        .zip(predicted)
        .enumerate()
        .map(|(index, (&y, &f))| {
            if y > 0.0 {
                Ok((f - y).abs() / y)
            } else {
                Err(MetricError::NonPositiveActual { index, value: y })
            }
        })
        .collect()
}

/// Mean absolute percentage error, as a fraction (0.05 is 5%).
pub fn mape(actual: &[f64], predicted: &[f64]) -> Result<f64, MetricError> {
    let errors = relative_errors(actual, predicted)?;
    Ok(mean(&errors))
}

pub(crate) fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Per-point relative errors plus their aggregates.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationReport {
    pub relative_errors: Vec<f64>,
    pub mape: f64,
    pub rmse_fitness: f64,
    pub rmse: f64,
}

impl EvaluationReport {
    pub fn evaluate(actual: &[f64], predicted: &[f64]) -> Result<Self, MetricError> {
        let relative_errors = relative_errors(actual, predicted)?;
        Ok(Self {
            mape: mean(&relative_errors),
            relative_errors,
            rmse_fitness: fitness_rmse(actual, predicted)?,
            rmse: rmse(actual, predicted)?,
        })
    }
}
