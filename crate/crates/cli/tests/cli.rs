use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polyspiral"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn centers_rows() {
    let o = run(&["centers", "--family", "all", "--n-max", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "n,re,im\n3,-0.288675134594813,0\n");

    let o = run(&["centers", "--n-max", "4"]);
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(2).unwrap().split(',').collect();
    assert_eq!(row[0], "4");
    for v in &row[1..] {
        assert!((v.parse::<f64>().unwrap() + 0.683_012_701_892_219_3).abs() < 1e-14);
    }

    let o = run(&["centers", "--family", "odd", "--n-max", "2"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 2);
    let row: Vec<f64> = text.lines().nth(1).unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(row[0], 2.0);
    assert!((row[1] + 0.488_433_047_415_199_8).abs() < 1e-14);
    assert!((row[2] + 0.845_990_854_218_824_6).abs() < 1e-14);
}

#[test]
fn centers_json() {
    let o = run(&["centers", "--n-max", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["family"], "all");
    assert_eq!(v["centers"].as_array().unwrap().len(), 3);
    assert_eq!(v["centers"][0]["n"], 3);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["centers", "--n-max", "2"]).status.code(), Some(2));
    assert_eq!(run(&["centers", "--n-max", "2000000"]).status.code(), Some(2));
    assert_eq!(run(&["fit", "--n-max", "100", "--window", "50:200"]).status.code(), Some(2));
    assert_eq!(run(&["fit", "--window", "9:x"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "lemma9"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["render", "--n-max", "500"]).status.code(), Some(2));
    assert_eq!(
        run(&["fit", "--family", "odd", "--route", "approximant"]).status.code(),
        Some(2)
    );
}

#[test]
fn io_errors_exit_3() {
    let o = run(&["centers", "--n-max", "3", "--out", "/nonexistent/dir/out.csv"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("/nonexistent/dir/out.csv"));
    let o = run(&["--config", "/nonexistent/polyspiral.toml", "centers"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_exit_status_follows_the_checks() {
    let o = run(&["verify", "lemma4", "--n-max", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("suite,check,value,threshold,comparison,margin,status\n"));
    assert!(text.contains("lemma4,lemma4.scaled_residual,"));
    assert!(text.trim_end().ends_with(",pass"));

    let o = run(&["verify", "lemma4", "--n-max", "1000", "--tolerance", "lemma4.scaled_residual=0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).trim_end().ends_with(",fail"));
}

#[test]
fn config_file_sits_between_flags_and_defaults() {
    let path = scratch("run.toml");
    std::fs::write(&path, "family = \"odd\"\nn_max = 4\nformat = \"json\"\n").unwrap();
    let cfg = path.to_str().unwrap();

    let o = run(&["--config", cfg, "centers"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["family"], "odd");
    assert_eq!(v["centers"].as_array().unwrap().len(), 3);

    let o = run(&["--config", cfg, "centers", "--n-max", "3", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 3);

    std::fs::write(&path, "famliy = \"odd\"\n").unwrap();
    assert_eq!(run(&["--config", cfg, "centers"]).status.code(), Some(2));
}

#[test]
fn fit_then_render_with_overlay() {
    let motion = scratch("motion.json");
    let o = run(&["fit", "--n-max", "1000", "--format", "json", "--out", motion.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&motion).unwrap()).unwrap();
    assert_eq!(v["route"], "approximant");
    assert_eq!(v["window"], serde_json::json!([500, 1000]));
    let phi = v["rotation"].as_f64().unwrap();
    assert!((phi - 1.995_48).abs() < 1e-3);

    let o = run(&["render", "--n-max", "30", "--motion", motion.to_str().unwrap()]);
    assert!(o.status.success());
    let svg = stdout(&o);
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let count = |tag: &str| doc.descendants().filter(|n| n.has_tag_name(tag)).count();
    assert_eq!(count("polygon"), 28);
    assert_eq!(count("circle"), 28);
    let path = doc.descendants().find(|n| n.attribute("id") == Some("spiral")).unwrap();
    assert!(path.attribute("d").unwrap().starts_with('M'));

    // a motion fitted for the other family is refused
    let o = run(&["render", "--family", "odd", "--n-max", "10", "--motion", motion.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn render_without_motion_draws_polygons_only() {
    let o = run(&["render", "--n-max", "3"]);
    let svg = stdout(&o);
    let doc = roxmltree::Document::parse(&svg).unwrap();
    assert_eq!(doc.descendants().filter(|n| n.has_tag_name("polygon")).count(), 1);
    assert!(doc.descendants().all(|n| n.attribute("id") != Some("spiral")));
}

#[test]
fn distances_csv_schema() {
    let o = run(&["distances", "--n-max", "200", "--extrapolate"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,parity,distance,extrapolated"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[..2], ["3", "odd"]);
    let last: Vec<&str> = text.lines().last().unwrap().split(',').collect();
    assert_eq!(last[0], "200");
    assert_eq!(last[3], "");
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("summary,even_mean,"));
    assert!(err.contains("summary,amplitude_extrapolated,"));
}
