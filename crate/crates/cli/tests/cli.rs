use std::process::{Command, Output};

fn polyia(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyia"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("UTF-8 output")
}

#[test]
fn count_csv_has_header_and_known_row() {
    let o = polyia(&[
        "count",
        "--class",
        "column-convex",
        "--max-per",
        "10",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("class,perimeter,count"));
    assert!(out.lines().any(|l| l == "column-convex,10,988"), "{out}");
}

#[test]
fn count_accepts_aliases() {
    let a = polyia(&["count", "--class", "ccp", "--max-per", "8", "--format", "csv"]);
    let b = polyia(&["count", "--class", "column_convex", "--max-per", "8", "--format", "csv"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn unknown_class_is_usage_error() {
    let o = polyia(&["count", "--class", "hexagon", "--max-per", "8"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn unknown_series_is_usage_error() {
    let o = polyia(&["series", "--gf", "nope", "--order", "10"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn over_limit_is_rejected() {
    let o = polyia(&["count", "--class", "all", "--max-per", "40"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cell_budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_polyia"))
        .args([
            "count",
            "--class",
            "all",
            "--max-per",
            "12",
            "--format",
            "json",
            "--no-meta",
        ])
        .env("POLYIA_MAX_CELLS", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"partial\": true"));
}

#[test]
fn series_json_reports_convex_coefficient() {
    let o = polyia(&["series", "--gf", "convex_F", "--order", "12", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["gf"], "convex_F");
    let c11 = v["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["n"] == 11)
        .unwrap();
    assert_eq!(c11["value"], "2006/1");
}

#[test]
fn series_csv_header() {
    let o = polyia(&["series", "--gf", "ccp_C", "--order", "12", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("n,coefficient\n"));
}

#[test]
fn residual_suite_passes() {
    let o = polyia(&["verify", "--suite", "residuals", "--order", "30"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn output_is_deterministic_without_meta() {
    let args = [
        "count",
        "--class",
        "convex",
        "--max-per",
        "11",
        "--format",
        "json",
        "--no-meta",
    ];
    let a = polyia(&args);
    let b = polyia(&[
        "--threads",
        "1",
        "count",
        "--class",
        "convex",
        "--max-per",
        "11",
        "--format",
        "json",
        "--no-meta",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_file_option() {
    let dir = std::env::temp_dir().join(format!("polyia-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.csv");
    let o = polyia(&[
        "count",
        "--class",
        "baryiamond",
        "--max-per",
        "9",
        "--format",
        "csv",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("class,perimeter,count\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn asym_reports_estimate() {
    let o = polyia(&[
        "asym", "--class", "convex", "--n", "10", "--terms", "60", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["estimate"]["estimate"].as_str().unwrap().starts_with("1.76542130"));
    assert_eq!(v["report"]["n_max"], 60);
}
