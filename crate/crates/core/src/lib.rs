//! Multiplicative Holt-Winters forecasting with smoothing parameters chosen
//! by fruit-fly optimization, plus the baselines and metrics used to
//! evaluate it.
//!
//! Candidate evaluation inside the optimizer and the grid search runs on
//! rayon when the `parallel` feature is enabled (the default). Results are
//! identical either way.

pub mod baselines;
pub mod exec;
pub mod foa;
pub mod holt_winters;
pub mod metrics;
pub mod pipeline;
pub mod rng;
pub mod series;
pub mod synth;

pub use exec::Execution;
pub use foa::{FoaConfig, FoaOutcome, OptimizationTrace};
pub use holt_winters::{FittedModel, HwState, SmoothingParams};
pub use metrics::EvaluationReport;
pub use pipeline::{PipelineConfig, PipelineResult};
pub use series::{SeasonalSeries, SplitSpec};
