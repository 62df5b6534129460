//! CLI contract tests: ingestion errors with line numbers, format fidelity,
//! exit codes, and the flag surface of each subcommand.

use std::fs;
use std::path::Path;

use tempfile::TempDir;
use volburg_cli::{dispatch, Outcome};

fn run(args: &[&str]) -> Outcome {
    let argv: Vec<String> = std::iter::once("volburg".to_string())
        .chain(args.iter().map(|s| s.to_string()))
        .collect();
    dispatch(argv)
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path.display().to_string()
}

fn make_prices(dir: &Path, name: &str, n: usize, seed: u64) -> String {
    let path = dir.join(name).display().to_string();
    let out = run(&[
        "synth", "garch", "--n", &n.to_string(), "--seed", &seed.to_string(), "--as-prices",
        "-o", &path,
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    path
}

#[test]
fn minimal_two_row_file_loads() {
    let dir = TempDir::new().unwrap();
    let file = write(dir.path(), "two.csv", "date,close\n2020-01-01,100\n2020-01-02,101\n");
    // The two-row file parses: the failure comes from the windowing stage
    // (one return cannot fill a window of two), not from ingestion.
    let out = run(&["vol", &file, "--window", "2", "--format", "csv"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("insufficient data"), "{}", out.stderr);
    assert!(!out.stderr.contains("schema"), "{}", out.stderr);

    let file = write(
        dir.path(),
        "three.csv",
        "date,close\n2020-01-01,100\n2020-01-02,101\n2020-01-03,102\n",
    );
    let out = run(&["vol", &file, "--window", "2", "--format", "csv"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.starts_with("index,vol\n"));
    assert_eq!(out.stdout.trim_end().lines().count(), 2);
}

#[test]
fn blank_price_cell_is_schema_error_with_line() {
    let dir = TempDir::new().unwrap();
    let file = write(dir.path(), "blank.csv", "date,close\n2020-01-01,100\n2020-01-02,\n");
    let out = run(&["vol", &file]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("schema error"), "{}", out.stderr);
    assert!(out.stderr.contains("line 3"), "{}", out.stderr);
}

#[test]
fn non_positive_price_is_invalid_input_with_line() {
    let dir = TempDir::new().unwrap();
    let file = write(dir.path(), "neg.csv", "date,close\n1,100\n2,-5\n3,101\n");
    let out = run(&["vol", &file]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("invalid input"), "{}", out.stderr);
    assert!(out.stderr.contains("line 3"), "{}", out.stderr);
}

#[test]
fn single_row_file_is_insufficient() {
    let dir = TempDir::new().unwrap();
    let file = write(dir.path(), "one.csv", "date,close\n2020-01-01,100\n");
    let out = run(&["vol", &file]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("insufficient data"), "{}", out.stderr);
}

#[test]
fn column_by_name_and_index_agree() {
    let dir = TempDir::new().unwrap();
    let file = write(
        dir.path(),
        "cols.csv",
        "date,close,volume\n1,100,7\n2,101,8\n3,102,9\n4,103,10\n",
    );
    let by_name = run(&["vol", &file, "--window", "2", "--column", "close", "--format", "csv"]);
    let by_index = run(&["vol", &file, "--window", "2", "--column", "1", "--format", "csv"]);
    assert_eq!(by_name.code, 0);
    assert_eq!(by_name.stdout, by_index.stdout);
}

#[test]
fn missing_file_exits_3_unknown_subcommand_exits_1() {
    let out = run(&["vol", "/nonexistent/prices.csv"]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("io error"));

    let out = run(&["frobnicate"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("unrecognized subcommand"));

    let out = run(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("volburg"));
}

#[test]
fn constant_prices_are_a_numerical_failure() {
    let dir = TempDir::new().unwrap();
    let rows: String = (0..900).map(|i| format!("{i},50\n")).collect();
    let file = write(dir.path(), "flat.csv", &format!("date,close\n{rows}"));
    let out = run(&["compare", &file]);
    assert_eq!(out.code, 2, "{}", out.stderr);
    assert!(out.stderr.contains("degenerate"), "{}", out.stderr);
}

#[test]
fn forecast_emits_protocol_vector() {
    let dir = TempDir::new().unwrap();
    let file = make_prices(dir.path(), "a.csv", 1500, 1);
    let out = run(&[
        "forecast", &file, "--order", "128", "--horizon", "64", "--window", "13",
        "--format", "csv",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let lines: Vec<&str> = out.stdout.trim_end().lines().collect();
    assert_eq!(lines[0], "step,value");
    assert_eq!(lines.len(), 65);
    assert!(lines[1].starts_with("1,"));
    assert!(lines[64].starts_with("64,"));
}

#[test]
fn forecast_save_and_load_model_round_trip() {
    let dir = TempDir::new().unwrap();
    let file = make_prices(dir.path(), "a.csv", 1200, 4);
    let model = dir.path().join("model.json").display().to_string();
    let saved = run(&[
        "forecast", &file, "--order", "32", "--horizon", "8", "--save-model", &model,
        "--format", "csv",
    ]);
    assert_eq!(saved.code, 0, "{}", saved.stderr);
    let loaded = run(&[
        "forecast", &file, "--order", "32", "--horizon", "8", "--load-model", &model,
        "--format", "csv",
    ]);
    assert_eq!(loaded.code, 0, "{}", loaded.stderr);
    assert_eq!(saved.stdout, loaded.stdout);
}

#[test]
fn compare_csv_header_is_stable() {
    let dir = TempDir::new().unwrap();
    let a = make_prices(dir.path(), "a.csv", 1500, 1);
    let b = make_prices(dir.path(), "b.csv", 1500, 2);
    let out = run(&["compare", &a, &b, "--format", "csv"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let lines: Vec<&str> = out.stdout.trim_end().lines().collect();
    assert_eq!(lines[0], "asset,lpc,garch,order,cycle,hurst");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("a,"));
    assert!(lines[2].starts_with("b,"));
}

#[test]
fn json_outputs_parse_and_round_trip_at_full_precision() {
    let dir = TempDir::new().unwrap();
    let file = make_prices(dir.path(), "a.csv", 1500, 3);

    let csv_out = run(&["compare", &file, "--format", "csv"]);
    let json_out = run(&["compare", &file, "--format", "json"]);
    assert_eq!(json_out.code, 0, "{}", json_out.stderr);
    let parsed: serde_json::Value = serde_json::from_str(&json_out.stdout).unwrap();
    let row = &parsed.as_array().unwrap()[0];

    // Full precision: the JSON numbers equal the CSV numbers bit for bit.
    let csv_fields: Vec<&str> = csv_out.stdout.trim_end().lines().nth(1).unwrap().split(',').collect();
    let lpc_csv: f64 = csv_fields[1].parse().unwrap();
    let garch_csv: f64 = csv_fields[2].parse().unwrap();
    assert_eq!(row["lpc_vol"].as_f64().unwrap().to_bits(), lpc_csv.to_bits());
    assert_eq!(row["garch_vol"].as_f64().unwrap().to_bits(), garch_csv.to_bits());

    for args in [
        vec!["vol", file.as_str(), "--format", "json"],
        vec!["spectrum", file.as_str(), "--bins", "64", "--format", "json"],
        vec!["garch", file.as_str(), "--format", "json"],
        vec!["diagnostics", file.as_str(), "--format", "json"],
    ] {
        let out = run(&args);
        assert_eq!(out.code, 0, "{:?}: {}", args, out.stderr);
        serde_json::from_str::<serde_json::Value>(&out.stdout)
            .unwrap_or_else(|e| panic!("{args:?} emitted unparseable JSON: {e}"));
    }
}

#[test]
fn synth_then_hurst_round_trip_recovers_h() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("f.csv").display().to_string();
    let out = run(&["synth", "fgn", "--h", "0.7", "--n", "4096", "--seed", "1", "-o", &file]);
    assert_eq!(out.code, 0, "{}", out.stderr);

    let out = run(&["hurst", &file, "--cumulate", "--format", "json"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let parsed: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let h = parsed["estimate"]["h"].as_f64().unwrap();
    assert!((h - 0.7).abs() < 0.08, "estimated H {h}");
    // The (dt, mean range) pairs ride along for plotting.
    assert!(parsed["estimate"]["window_sizes"].as_array().unwrap().len() >= 4);
    assert_eq!(
        parsed["estimate"]["window_sizes"].as_array().unwrap().len(),
        parsed["estimate"]["mean_ranges"].as_array().unwrap().len()
    );
}

#[test]
fn seed_env_var_overrides_flag() {
    let dir = TempDir::new().unwrap();
    let with_flag = dir.path().join("flag.csv").display().to_string();
    let with_env = dir.path().join("env.csv").display().to_string();

    let out = run(&["synth", "ar", "--coeffs", "0.5", "--n", "64", "--seed", "7", "-o", &with_flag]);
    assert_eq!(out.code, 0);

    std::env::set_var(volburg_cli::SEED_ENV_VAR, "7");
    let out = run(&["synth", "ar", "--coeffs", "0.5", "--n", "64", "--seed", "999", "-o", &with_env]);
    std::env::remove_var(volburg_cli::SEED_ENV_VAR);
    assert_eq!(out.code, 0);

    assert_eq!(fs::read(&with_flag).unwrap(), fs::read(&with_env).unwrap());
}

#[test]
fn custom_delimiter_is_honoured() {
    let dir = TempDir::new().unwrap();
    let file = write(dir.path(), "semi.csv", "date;close\n1;100\n2;101\n3;103\n");
    let out = run(&["vol", &file, "--window", "2", "--delim", ";", "--format", "csv"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.starts_with("index,vol\n"));
}
