use std::path::{Path, PathBuf};
use std::process::Command;

use foamhw::metrics;
use foamhw_cli::commands::{cmd_forecast, cmd_sweep};
use foamhw_cli::config::{Model, RunConfig};
use foamhw_cli::output::{meta_value, parse_sections, split_joined};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn write_constant(dir: &Path, n: usize, value: f64) -> PathBuf {
    let path = dir.join("constant.csv");
    let mut text = String::from("label,value\n");
    for i in 0..n {
        text.push_str(&format!("p{},{value}\n", i + 1));
    }
    std::fs::write(&path, text).unwrap();
    path
}

fn forecast_text(config: &RunConfig, data_path: &Path, out: &Path) -> String {
    let config = RunConfig {
        output_path: Some(out.to_owned()),
        ..config.clone()
    };
    cmd_forecast(&config, data_path).unwrap();
    std::fs::read_to_string(out).unwrap()
}

#[test]
fn constant_series_gives_zero_mape_for_every_model() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_constant(dir.path(), 30, 412.5);
    let text = forecast_text(&RunConfig::default(), &path, &dir.path().join("out.txt"));
    let sections = parse_sections(&text);
    for model in Model::ALL {
        let key = format!("{model}.mape");
        assert_eq!(meta_value(&sections["meta"], &key), Some("0"), "{key}");
    }
    for row in &sections["results"][1..] {
        assert_eq!(row[4], "412.5");
    }
}

#[test]
fn default_mhw_mape_recomputes_from_emitted_columns() {
    let dir = tempfile::tempdir().unwrap();
    let text = forecast_text(
        &RunConfig::default(),
        &data("synth_seed7.csv"),
        &dir.path().join("out.txt"),
    );
    let sections = parse_sections(&text);
    let rows: Vec<&Vec<String>> = sections["results"]
        .iter()
        .filter(|r| r[0] == "mhw-default")
        .collect();
    assert_eq!(rows.len(), 6);
    let actual: Vec<f64> = rows.iter().map(|r| r[3].parse().unwrap()).collect();
    let forecast: Vec<f64> = rows.iter().map(|r| r[4].parse().unwrap()).collect();
    let mape = metrics::mape(&actual, &forecast).unwrap();
    let emitted: f64 = meta_value(&sections["meta"], "mhw-default.mape")
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(mape, emitted);
}

#[test]
fn trace_has_one_row_per_generation() {
    let dir = tempfile::tempdir().unwrap();
    let config = RunConfig {
        maxgen: 7,
        ..RunConfig::default()
    };
    let text = forecast_text(&config, &data("synth_seed7.csv"), &dir.path().join("o"));
    let trace = &parse_sections(&text)["trace"];
    assert_eq!(trace.len(), 1 + 7);
    let best: Vec<f64> = trace[1..].iter().map(|r| r[2].parse().unwrap()).collect();
    assert!(best.windows(2).all(|w| w[1] <= w[0]));

    let config = RunConfig {
        models: vec![Model::Si],
        ..RunConfig::default()
    };
    let text = forecast_text(&config, &data("synth_seed7.csv"), &dir.path().join("o"));
    assert_eq!(parse_sections(&text)["trace"].len(), 1);
}

#[test]
fn sweep_rows_and_test_values() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.txt");
    let config = RunConfig {
        output_path: Some(out.clone()),
        models: vec![Model::MhwDefault, Model::Si],
        ..RunConfig::default()
    };
    cmd_sweep(&config, &data("synth_seed7.csv"), 3, 8).unwrap();
    let sections = parse_sections(&std::fs::read_to_string(out).unwrap());
    let test = split_joined(meta_value(&sections["meta"], "test_values").unwrap());
    assert_eq!(test.len(), 6);
    for row in &sections["sweep"][1..] {
        let forecast = split_joined(&row[5]);
        let mape: f64 = row[3].parse().unwrap();
        assert_eq!(metrics::mape(&test, &forecast).unwrap(), mape);
    }
}

#[test]
fn output_matches_committed_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    let text = forecast_text(
        &RunConfig::default(),
        &data("synth_seed7.csv"),
        &dir.path().join("f"),
    );
    assert_eq!(text, std::fs::read_to_string(data("forecast_seed7.golden")).unwrap());

    let out = dir.path().join("s");
    let config = RunConfig {
        output_path: Some(out.clone()),
        ..RunConfig::default()
    };
    cmd_sweep(&config, &data("synth_seed7.csv"), 3, 8).unwrap();
    assert_eq!(
        std::fs::read_to_string(out).unwrap(),
        std::fs::read_to_string(data("sweep_seed7.golden")).unwrap()
    );
}

fn foamhw(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_foamhw"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn binary_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = data("synth_seed7.csv");
    let good = good.to_str().unwrap();

    let (code, stdout, _) = foamhw(&["forecast", "--data", good, "--maxgen", "3"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("# section: meta\n"));

    assert_eq!(foamhw(&["forecast"]).0, 2);
    assert_eq!(foamhw(&["forecast", "--data", good, "--models", "arima"]).0, 2);
    assert_eq!(foamhw(&["forecast", "--data", good, "--default-params", "1,2,3"]).0, 2);
    assert_eq!(foamhw(&["sweep", "--data", good, "--min-cycles", "2"]).0, 2);

    let (code, _, stderr) = foamhw(&["forecast", "--data", "/no/such/file.csv"]);
    assert_eq!(code, 3);
    assert!(stderr.contains("not found"));

    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "label,value\na,1\nb,0\n").unwrap();
    let (code, _, stderr) = foamhw(&["forecast", "--data", bad.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(stderr.contains("line 3"), "{stderr}");

    // 12 training points cannot hold two cycles plus a validation cycle
    let short = write_constant(dir.path(), 18, 5.0);
    assert_eq!(foamhw(&["forecast", "--data", short.to_str().unwrap()]).0, 3);
    assert_eq!(foamhw(&["sweep", "--data", good, "--max-cycles", "9"]).0, 3);
}

#[test]
fn config_file_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let out = dir.path().join("out.txt");
    std::fs::write(&cfg, "# quick run\nmaxgen = 4\nmodels = si,mhw-default\n").unwrap();
    let (code, _, _) = foamhw(&[
        "forecast",
        "--data",
        data("synth_seed7.csv").to_str().unwrap(),
        "--config",
        cfg.to_str().unwrap(),
        "--models",
        "si",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let sections = parse_sections(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(meta_value(&sections["meta"], "maxgen"), Some("4"));
    assert_eq!(meta_value(&sections["meta"], "models"), Some("si"));

    std::fs::write(&cfg, "colour = red\n").unwrap();
    let (code, _, _) = foamhw(&[
        "forecast",
        "--data",
        data("synth_seed7.csv").to_str().unwrap(),
        "--config",
        cfg.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
}

#[test]
fn synth_command_matches_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.csv");
    assert_eq!(foamhw(&["synth", "--out", out.to_str().unwrap()]).0, 0);
    assert_eq!(
        std::fs::read_to_string(out).unwrap(),
        std::fs::read_to_string(data("synth_seed7.csv")).unwrap()
    );
    assert_eq!(foamhw(&["synth", "--cycles", "2"]).0, 2);
}
