//! Run configuration: defaults, `key = value` config files, and flag overrides.
//!
//! Recognized keys are `period`, `horizon`, `sizepop`, `maxgen`,
//! `flight_range`, `seed`, `default_params` (three comma-separated values),
//! `models` (comma-separated) and `output_path`. Lines starting with `#` and
//! blank lines are ignored.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use foamhw::pipeline::PipelineConfig;
use foamhw::{FoaConfig, SmoothingParams};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Model {
    FoaMhw,
    MhwDefault,
    Si,
}

impl Model {
    pub const ALL: [Model; 3] = [Model::FoaMhw, Model::MhwDefault, Model::Si];

    pub fn name(self) -> &'static str {
        match self {
            Model::FoaMhw => "foa-mhw",
            Model::MhwDefault => "mhw-default",
            Model::Si => "si",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Model::ALL
            .into_iter()
            .find(|m| m.name() == s.trim())
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown model `{s}` (expected foa-mhw, mhw-default or si)"
                ))
            })
    }
}

/// Parses a comma-separated model list, dropping duplicates but keeping order.
pub fn parse_models(s: &str) -> Result<Vec<Model>, CliError> {
    let mut models = Vec::new();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        let m: Model = part.parse()?;
        if !models.contains(&m) {
            models.push(m);
        }
    }
    if models.is_empty() {
        return Err(CliError::Usage("at least one model is required".into()));
    }
    Ok(models)
}

pub fn parse_params(s: &str) -> Result<SmoothingParams, CliError> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("default_params `{s}` is not three numbers")))?;
    if parts.len() != 3 {
        return Err(CliError::Usage(format!(
            "default_params needs three values, got {}",
            parts.len()
        )));
    }
    SmoothingParams::new(parts[0], parts[1], parts[2]).map_err(|e| CliError::Usage(e.to_string()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub period: usize,
    pub horizon: usize,
    pub sizepop: usize,
    pub maxgen: usize,
    pub flight_range: f64,
    pub seed: u64,
    pub default_params: SmoothingParams,
    pub models: Vec<Model>,
    pub output_path: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let foa = FoaConfig::default();
        Self {
            period: 6,
            horizon: 6,
            sizepop: foa.sizepop,
            maxgen: foa.maxgen,
            flight_range: foa.flight_range,
            seed: foa.seed,
            default_params: SmoothingParams::DEFAULT,
            models: Model::ALL.to_vec(),
            output_path: None,
        }
    }
}

/// Values given on the command line; `None` keeps the file or default value.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub period: Option<usize>,
    pub horizon: Option<usize>,
    pub sizepop: Option<usize>,
    pub maxgen: Option<usize>,
    pub flight_range: Option<f64>,
    pub seed: Option<u64>,
    pub default_params: Option<String>,
    pub models: Option<String>,
    pub output_path: Option<PathBuf>,
}

fn parse_value<T: FromStr>(key: &str, raw: &str) -> Result<T, CliError> {
    raw.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid value `{raw}` for {key}")))
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::default().with_text(&text)
    }

    /// Applies `key = value` lines on top of `self`.
    pub fn with_text(mut self, text: &str) -> Result<Self, CliError> {
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("config line {}: expected `key = value`", n + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "period" => self.period = parse_value(key, value)?,
                "horizon" => self.horizon = parse_value(key, value)?,
                "sizepop" => self.sizepop = parse_value(key, value)?,
                "maxgen" => self.maxgen = parse_value(key, value)?,
                "flight_range" => self.flight_range = parse_value(key, value)?,
                "seed" => self.seed = parse_value(key, value)?,
                "default_params" => self.default_params = parse_params(value)?,
                "models" => self.models = parse_models(value)?,
                "output_path" => self.output_path = Some(PathBuf::from(value)),
                other => {
                    return Err(CliError::Usage(format!(
                        "config line {}: unknown key `{other}`",
                        n + 1
                    )))
                }
            }
        }
        Ok(self)
    }

    pub fn apply(mut self, o: &Overrides) -> Result<Self, CliError> {
        self.period = o.period.unwrap_or(self.period);
        self.horizon = o.horizon.unwrap_or(self.horizon);
        self.sizepop = o.sizepop.unwrap_or(self.sizepop);
        self.maxgen = o.maxgen.unwrap_or(self.maxgen);
        self.flight_range = o.flight_range.unwrap_or(self.flight_range);
        self.seed = o.seed.unwrap_or(self.seed);
        if let Some(p) = &o.default_params {
            self.default_params = parse_params(p)?;
        }
        if let Some(m) = &o.models {
            self.models = parse_models(m)?;
        }
        if o.output_path.is_some() {
            self.output_path.clone_from(&o.output_path);
        }
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.period < 2 {
            return Err(CliError::Usage("period must be at least 2".into()));
        }
        if self.horizon < 1 {
            return Err(CliError::Usage("horizon must be at least 1".into()));
        }
        if self.models.is_empty() {
            return Err(CliError::Usage("at least one model is required".into()));
        }
        self.pipeline()
            .foa
            .validate()
            .map_err(|e| CliError::Usage(e.to_string()))
    }

    pub fn pipeline(&self) -> PipelineConfig {
        PipelineConfig {
            foa: FoaConfig {
                sizepop: self.sizepop,
                maxgen: self.maxgen,
                flight_range: self.flight_range,
                seed: self.seed,
                ..FoaConfig::default()
            },
            horizon: self.horizon,
            include_default_seed: true,
            seed_params: self.default_params,
        }
    }
}
