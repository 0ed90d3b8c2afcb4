//! Seasonal time series and the contiguous train/validation/test split.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("series is empty")]
    Empty,
    #[error("value at index {index} is not strictly positive ({value})")]
    NonPositiveValue { index: usize, value: f64 },
    #[error("period must be at least 2, got {0}")]
    PeriodTooSmall(usize),
    #[error("{labels} labels given for {values} values")]
    LabelLengthMismatch { values: usize, labels: usize },
    #[error("split counts sum to {requested} but the series has {actual} points")]
    SplitLengthMismatch { requested: usize, actual: usize },
}

/// Strictly positive observations with a seasonal period and one opaque
/// label per point.
///
/// Positivity is checked at construction because the multiplicative model,
/// the seasonal-index baseline and MAPE all divide by observations.
#[derive(Debug, Clone, PartialEq)]
pub struct SeasonalSeries {
    values: Vec<f64>,
    labels: Vec<String>,
    period: usize,
}

impl SeasonalSeries {
    pub fn new(values: Vec<f64>, period: usize, labels: Vec<String>) -> Result<Self, SeriesError> {
        if values.is_empty() {
            return Err(SeriesError::Empty);
        }
        if period < 2 {
            return Err(SeriesError::PeriodTooSmall(period));
        }
        if labels.len() != values.len() {
            return Err(SeriesError::LabelLengthMismatch {
                values: values.len(),
                labels: labels.len(),
            });
        }
        // `!(v > 0.0)` also rejects NaN.
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !(**v > 0.0)) {
            return Err(SeriesError::NonPositiveValue { index, value });
        }
        Ok(Self {
            values,
            labels,
            period,
        })
    }

    /// Builds a series labelled `1..=n`.
    pub fn unlabeled(values: Vec<f64>, period: usize) -> Result<Self, SeriesError> {
        let labels = (1..=values.len()).map(|i| i.to_string()).collect();
        Self::new(values, period, labels)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Contiguous sub-range `[start, end)`. Returns `None` for an empty range,
    /// since a series is never empty.
    pub fn slice(&self, start: usize, end: usize) -> Option<SeasonalSeries> {
        if start >= end || end > self.len() {
            return None;
        }
        Some(SeasonalSeries {
            values: self.values[start..end].to_vec(),
            labels: self.labels[start..end].to_vec(),
            period: self.period,
        })
    }

    /// The most recent `n` points, or `None` if `n` is zero or too large.
    pub fn tail(&self, n: usize) -> Option<SeasonalSeries> {
        self.slice(self.len().checked_sub(n)?, self.len())
    }

    pub fn split(&self, spec: SplitSpec) -> Result<Split, SeriesError> {
        let requested = spec.n_train + spec.n_validation + spec.n_test;
        if requested != self.len() || spec.n_train == 0 {
            return Err(SeriesError::SplitLengthMismatch {
                requested,
                actual: self.len(),
            });
        }
        let v_end = spec.n_train + spec.n_validation;
        Ok(Split {
            train: self.slice(0, spec.n_train).expect("n_train > 0"),
            validation: self.slice(spec.n_train, v_end),
            test: self.slice(v_end, self.len()),
        })
    }
}

/// Point counts for a three-way split. Validation and test may be empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitSpec {
    pub n_train: usize,
    pub n_validation: usize,
    pub n_test: usize,
}

impl SplitSpec {
    pub fn new(n_train: usize, n_validation: usize, n_test: usize) -> Self {
        Self {
            n_train,
            n_validation,
            n_test,
        }
    }
}

/// Result of [`SeasonalSeries::split`]. Empty parts are `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct Split {
    pub train: SeasonalSeries,
    pub validation: Option<SeasonalSeries>,
    pub test: Option<SeasonalSeries>,
}
