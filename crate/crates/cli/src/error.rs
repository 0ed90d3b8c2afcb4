use std::path::PathBuf;

use foamhw::baselines::BaselineError;
use foamhw::holt_winters::HwError;
use foamhw::pipeline::PipelineError;
use thiserror::Error;

use crate::csv_io::CsvError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) | CliError::Write { .. } => 3,
            CliError::Numeric(_) => 4,
        }
    }
}

impl From<CsvError> for CliError {
    fn from(e: CsvError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<HwError> for CliError {
    fn from(e: HwError) -> Self {
        match e {
            HwError::DivisionBlowup { .. } | HwError::NonPositiveObservation(_) => {
                CliError::Numeric(e.to_string())
            }
            HwError::ParamOutOfRange { .. } => CliError::Usage(e.to_string()),
            HwError::NotMultipleOfPeriod { .. } | HwError::TooShort { .. } => {
                CliError::Data(e.to_string())
            }
        }
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        match e {
            PipelineError::Model(inner) => inner.into(),
            PipelineError::Metric(_) => CliError::Numeric(e.to_string()),
            PipelineError::Optimizer(_) | PipelineError::ZeroHorizon => {
                CliError::Usage(e.to_string())
            }
            PipelineError::TooShort { .. }
            | PipelineError::NotMultipleOfPeriod { .. }
            | PipelineError::HorizonMismatch { .. } => CliError::Data(e.to_string()),
        }
    }
}

impl From<BaselineError> for CliError {
    fn from(e: BaselineError) -> Self {
        match e {
            BaselineError::Model(inner) => inner.into(),
            BaselineError::Pipeline(inner) => inner.into(),
            BaselineError::InvalidStep(_) => CliError::Usage(e.to_string()),
            BaselineError::NotMultipleOfPeriod { .. } | BaselineError::TooShort { .. } => {
                CliError::Data(e.to_string())
            }
        }
    }
}
