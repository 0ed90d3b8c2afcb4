//! The `forecast`, `sweep` and `synth` commands.

use std::io::Write;
use std::path::Path;

use foamhw::baselines;
use foamhw::foa::OptimizationTrace;
use foamhw::pipeline;
use foamhw::synth::{synth_generate, SynthParams};
use foamhw::{EvaluationReport, SeasonalSeries, SmoothingParams};

use crate::config::{Model, RunConfig};
use crate::csv_io::{load_csv, write_csv};
use crate::error::CliError;
use crate::output::{join, pct, SectionWriter};

const PARAM_NAMES: [&str; 3] = ["alpha", "beta", "gamma"];

/// One model's forecast over the test slice.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelRun {
    pub model: Model,
    pub forecast: Vec<f64>,
    pub report: EvaluationReport,
    pub params: Option<SmoothingParams>,
    pub validation_fitness: Option<f64>,
    pub trace: Option<OptimizationTrace>,
}

pub fn run_model(
    model: Model,
    train: &SeasonalSeries,
    test: &SeasonalSeries,
    config: &RunConfig,
) -> Result<ModelRun, CliError> {
    let horizon = test.len();
    let (forecast, params, validation_fitness, trace) = match model {
        Model::FoaMhw => {
            let result = pipeline::foa_mhw_forecast(train, Some(test), &config.pipeline())?;
            (
                result.forecast,
                Some(result.optimal_params),
                Some(result.validation_fitness),
                Some(result.trace),
            )
        }
        Model::MhwDefault => {
            let f = baselines::mhw_forecast(train, horizon, config.default_params)?;
            (f, Some(config.default_params), None, None)
        }
        Model::Si => (baselines::si_fit_forecast(train, horizon)?, None, None, None),
    };
    if forecast.iter().any(|v| !v.is_finite()) {
        return Err(CliError::Numeric(format!("{model} produced a non-finite forecast")));
    }
    let report = EvaluationReport::evaluate(test.values(), &forecast)
        .map_err(|e| CliError::Numeric(e.to_string()))?;
    Ok(ModelRun {
        model,
        forecast,
        report,
        params,
        validation_fitness,
        trace,
    })
}

/// Train on everything except the last `horizon` points; test on those.
pub fn holdout(
    series: &SeasonalSeries,
    horizon: usize,
) -> Result<(SeasonalSeries, SeasonalSeries), CliError> {
    let n = series.len();
    if horizon >= n {
        return Err(CliError::Data(format!(
            "series has {n} points, too few for a horizon of {horizon}"
        )));
    }
    Ok((
        series.slice(0, n - horizon).expect("non-empty"),
        series.tail(horizon).expect("non-empty"),
    ))
}

fn config_meta(config: &RunConfig) -> Vec<[String; 2]> {
    let p = config.default_params;
    vec![
        ["period".into(), config.period.to_string()],
        ["horizon".into(), config.horizon.to_string()],
        ["sizepop".into(), config.sizepop.to_string()],
        ["maxgen".into(), config.maxgen.to_string()],
        ["flight_range".into(), config.flight_range.to_string()],
        ["seed".into(), config.seed.to_string()],
        ["default_alpha".into(), p.alpha.to_string()],
        ["default_beta".into(), p.beta.to_string()],
        ["default_gamma".into(), p.gamma.to_string()],
        [
            "models".into(),
            config
                .models
                .iter()
                .map(|m| m.name())
                .collect::<Vec<_>>()
                .join(";"),
        ],
    ]
}

pub fn forecast_report(series: &SeasonalSeries, config: &RunConfig) -> Result<String, CliError> {
    config.validate()?;
    let (train, test) = holdout(series, config.horizon)?;
    let runs: Vec<ModelRun> = config
        .models
        .iter()
        .map(|&m| run_model(m, &train, &test, config))
        .collect::<Result<_, _>>()?;

    let mut meta = vec![["command".to_string(), "forecast".to_string()]];
    meta.extend(config_meta(config));
    meta.push(["data_points".into(), series.len().to_string()]);
    meta.push(["train_length".into(), train.len().to_string()]);
    meta.push(["test_length".into(), test.len().to_string()]);
    for run in &runs {
        let name = run.model.name();
        meta.push([format!("{name}.mape"), run.report.mape.to_string()]);
        meta.push([format!("{name}.mape_pct"), pct(run.report.mape)]);
        meta.push([format!("{name}.rmse_sum"), run.report.rmse_fitness.to_string()]);
        meta.push([format!("{name}.rmse_mean"), run.report.rmse.to_string()]);
        if let Some(p) = run.params {
            for (key, v) in PARAM_NAMES.iter().zip(p.to_array()) {
                meta.push([format!("{name}.{key}"), v.to_string()]);
            }
        }
        if let Some(f) = run.validation_fitness {
            meta.push([format!("{name}.validation_rmse_sum"), f.to_string()]);
        }
    }

    let mut results = Vec::new();
    for run in &runs {
        for (i, ((label, actual), (forecast, rel))) in test
            .labels()
            .iter()
            .zip(test.values())
            .zip(run.forecast.iter().zip(&run.report.relative_errors))
            .enumerate()
        {
            results.push(vec![
                run.model.name().to_string(),
                (i + 1).to_string(),
                label.clone(),
                actual.to_string(),
                forecast.to_string(),
                rel.to_string(),
                pct(*rel),
            ]);
        }
    }

    let mut trace_header = vec![
        "model".to_string(),
        "generation".into(),
        "best_fitness".into(),
        "generation_fitness".into(),
    ];
    for name in PARAM_NAMES {
        trace_header.push(name.to_string());
    }
    for name in PARAM_NAMES {
        for col in ["x", "y", "swarm_x", "swarm_y"] {
            trace_header.push(format!("{name}_{col}"));
        }
    }
    let mut trace_rows = Vec::new();
    for run in &runs {
        let Some(trace) = &run.trace else { continue };
        for (g, best) in trace.best_per_generation.iter().enumerate() {
            let mut row = vec![
                run.model.name().to_string(),
                (g + 1).to_string(),
                best.fitness.to_string(),
                best.generation_fitness.to_string(),
            ];
            row.extend(best.judgment_values.iter().map(f64::to_string));
            for (pos, swarm) in best.positions.iter().zip(&best.swarm_locations) {
                row.extend([pos.x, pos.y, swarm.x, swarm.y].map(|v| v.to_string()));
            }
            trace_rows.push(row);
        }
    }

    let mut w = SectionWriter::new();
    w.section("meta", ["key", "value"], meta);
    w.section(
        "results",
        [
            "model",
            "point",
            "label",
            "actual",
            "forecast",
            "relative_error",
            "relative_error_pct",
        ],
        results,
    );
    w.section("trace", trace_header, trace_rows);
    Ok(w.finish())
}

/// One row per (training length, model). Training sets are the most recent
/// `cycles · period` points before the fixed test slice.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub train_length: usize,
    pub model: Model,
    pub mape: f64,
    pub forecast: Vec<f64>,
}

pub fn sweep(
    series: &SeasonalSeries,
    config: &RunConfig,
    min_cycles: usize,
    max_cycles: usize,
) -> Result<Vec<SweepRow>, CliError> {
    config.validate()?;
    if min_cycles < 3 {
        return Err(CliError::Usage(format!(
            "min-cycles must be at least 3, got {min_cycles}"
        )));
    }
    if max_cycles < min_cycles {
        return Err(CliError::Usage(format!(
            "max-cycles ({max_cycles}) is below min-cycles ({min_cycles})"
        )));
    }
    let period = series.period();
    if max_cycles * period + config.horizon > series.len() {
        return Err(CliError::Data(format!(
            "{max_cycles} cycles of {period} plus a horizon of {} need {} points, series has {}",
            config.horizon,
            max_cycles * period + config.horizon,
            series.len()
        )));
    }
    let (history, test) = holdout(series, config.horizon)?;
    let mut rows = Vec::new();
    for cycles in min_cycles..=max_cycles {
        let train = history.tail(cycles * period).expect("length checked above");
        for &model in &config.models {
            let run = run_model(model, &train, &test, config)?;
            rows.push(SweepRow {
                train_length: train.len(),
                model,
                mape: run.report.mape,
                forecast: run.forecast,
            });
        }
    }
    Ok(rows)
}

pub fn sweep_report(
    series: &SeasonalSeries,
    config: &RunConfig,
    min_cycles: usize,
    max_cycles: usize,
) -> Result<String, CliError> {
    let rows = sweep(series, config, min_cycles, max_cycles)?;
    let (_, test) = holdout(series, config.horizon)?;
    let mut meta = vec![["command".to_string(), "sweep".to_string()]];
    meta.extend(config_meta(config));
    meta.push(["data_points".into(), series.len().to_string()]);
    meta.push(["min_cycles".into(), min_cycles.to_string()]);
    meta.push(["max_cycles".into(), max_cycles.to_string()]);
    meta.push(["test_labels".into(), test.labels().join(";")]);
    meta.push(["test_values".into(), join(test.values())]);

    let period = series.period();
    let body = rows.iter().map(|r| {
        vec![
            r.train_length.to_string(),
            (r.train_length / period).to_string(),
            r.model.name().to_string(),
            r.mape.to_string(),
            pct(r.mape),
            join(&r.forecast),
        ]
    });
    let mut w = SectionWriter::new();
    w.section("meta", ["key", "value"], meta);
    w.section(
        "sweep",
        ["train_length", "cycles", "model", "mape", "mape_pct", "forecast"],
        body,
    );
    Ok(w.finish())
}

fn emit(text: &str, config: &RunConfig) -> Result<(), CliError> {
    match &config.output_path {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Write {
                path: "<stdout>".into(),
                source,
            }),
    }
}

pub fn cmd_forecast(config: &RunConfig, data_path: &Path) -> Result<(), CliError> {
    config.validate()?;
    let series = load_csv(data_path, config.period)?;
    emit(&forecast_report(&series, config)?, config)
}

pub fn cmd_sweep(
    config: &RunConfig,
    data_path: &Path,
    min_cycles: usize,
    max_cycles: usize,
) -> Result<(), CliError> {
    config.validate()?;
    let series = load_csv(data_path, config.period)?;
    emit(&sweep_report(&series, config, min_cycles, max_cycles)?, config)
}

pub fn cmd_synth(params: &SynthParams, out: Option<&Path>) -> Result<(), CliError> {
    let series = synth_generate(params).map_err(|e| CliError::Usage(e.to_string()))?;
    let result = match out {
        Some(path) => std::fs::File::create(path)
            .map_err(csv::Error::from)
            .and_then(|f| write_csv(&series, f)),
        None => write_csv(&series, std::io::stdout().lock()),
    };
    result.map_err(|e| CliError::Write {
        path: out.map_or_else(|| "<stdout>".into(), Path::to_path_buf),
        source: std::io::Error::other(e.to_string()),
    })
}
