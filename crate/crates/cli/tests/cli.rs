use std::path::Path;
use std::process::{Command, Output};

use seidel_core::experiments::{self, ExhaustiveConfig, MonteCarloConfig, SemicircleConfig};
use seidel_core::{emit_graph6, enumerate, DetMode};
use serde_json::Value;

fn seidel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seidel"))
        .args(args)
        .env_remove("SEIDEL_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).unwrap()
}

#[test]
fn det_of_a_single_edge() {
    let v = json(&seidel(&["det", "--graph6", "A_"]));
    assert_eq!(v["det"], "-1");
    assert_eq!(v["n"], 2);
    assert_eq!(v["threshold"], 1);
    assert_eq!(v["holds"], true);
    assert_eq!(v["holds_signed"], false);

    let signed = json(&seidel(&["det", "--graph6", "A_", "--mode", "signed"]));
    assert_eq!(signed["holds"], false);
}

#[test]
fn spectrum_and_energy_of_a_single_edge() {
    let s = json(&seidel(&["spectrum", "--graph6", "A_"]));
    let values: Vec<f64> = s["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert_eq!(values.len(), 2);
    assert!((values[0] + 1.0).abs() < 1e-12 && (values[1] - 1.0).abs() < 1e-12);

    let e = json(&seidel(&["energy", "--graph6", "A_", "--p", "0.5,1.5"]));
    assert!((e["energy"].as_f64().unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn exhaustive_matches_the_library_report() {
    let golden = experiments::run_exhaustive(&ExhaustiveConfig::new(5, DetMode::Absolute), 1)
        .unwrap()
        .to_json()
        + "\n";
    let out = stdout(&seidel(&["exhaustive", "--n", "5", "--mode", "absolute"]));
    assert_eq!(out, golden);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["aggregates"]["exhaustive"]["passing"], 832);
    assert_eq!(v["aggregates"]["exhaustive"]["total"], 1024);
}

#[test]
fn montecarlo_is_deterministic_and_matches_the_library() {
    let args = ["montecarlo", "--n", "30", "--trials", "40", "--seed", "42"];
    let a = stdout(&seidel(&args));
    let b = stdout(&seidel(&[&args[..], &["--workers", "3"]].concat()));
    assert_eq!(a, b);
    let golden =
        experiments::run_monte_carlo(&MonteCarloConfig::new(30, 40, 42, DetMode::Absolute), 1)
            .unwrap()
            .to_json()
            + "\n";
    assert_eq!(a, golden);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["seed"], 42);
    assert_eq!(v["config"]["master_seed"], 42);
    assert!(v["trials"][0]["det"].is_string());
}

#[test]
fn semicircle_matches_the_library_and_writes_a_histogram() {
    let dir = tempfile::tempdir().unwrap();
    let hist = dir.path().join("hist.csv");
    let out = stdout(&seidel(&[
        "semicircle",
        "--n",
        "20",
        "--samples",
        "5",
        "--seed",
        "3",
        "--histogram",
        hist.to_str().unwrap(),
    ]));
    let golden = experiments::run_semicircle(&SemicircleConfig::new(20, 5, 3), 1)
        .unwrap()
        .to_json()
        + "\n";
    assert_eq!(out, golden);
    let csv = std::fs::read_to_string(&hist).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("bin_low,bin_high,count"));
    let counts: u64 = lines
        .map(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(counts, 5);
}

#[test]
fn seed_comes_from_the_environment_or_is_generated() {
    let with_env = Command::new(env!("CARGO_BIN_EXE_seidel"))
        .args(["montecarlo", "--n", "8", "--trials", "4"])
        .env("SEIDEL_SEED", "77")
        .output()
        .unwrap();
    assert_eq!(json(&with_env)["seed"], 77);

    let generated = seidel(&["montecarlo", "--n", "8", "--trials", "4"]);
    let stderr = String::from_utf8_lossy(&generated.stderr);
    let printed: u64 = stderr
        .lines()
        .find_map(|l| l.strip_prefix("seed: "))
        .expect("generated seed is reported")
        .parse()
        .unwrap();
    assert_eq!(json(&generated)["seed"], printed);
}

#[test]
fn csv_tables_have_headers() {
    let out = stdout(&seidel(&[
        "growth", "--n-list", "6,8", "--trials", "5", "--alpha", "0.2", "--seed", "1", "--csv",
    ]));
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].starts_with("n,trials,passing"));
    assert_eq!(lines.len(), 3);
}

#[test]
fn usage_errors_exit_with_2_and_name_the_constraint() {
    for (args, needle) in [
        (vec!["energy", "--graph6", "A_", "--p", "2"], "0 < p < 2"),
        (
            vec![
                "growth", "--n-list", "10", "--trials", "1", "--alpha", "0.5", "--seed", "1",
            ],
            "alpha",
        ),
        (
            vec![
                "semicircle",
                "--n",
                "20",
                "--samples",
                "1",
                "--seed",
                "1",
                "--b",
                "2.5",
            ],
            "0 <= b <= 2",
        ),
        (
            vec![
                "semicircle",
                "--n",
                "20",
                "--samples",
                "1",
                "--seed",
                "1",
                "--b",
                "1.5",
            ],
            "1/2",
        ),
        (vec!["exhaustive", "--n", "9"], "cap"),
        (vec!["det", "--graph6", "A_", "--bogus"], "--bogus"),
    ] {
        let out = seidel(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let stderr = String::from_utf8_lossy(&out.stderr);
        assert!(stderr.contains(needle), "{args:?}: {stderr}");
    }
}

#[test]
fn runtime_errors_exit_with_1() {
    let bad = seidel(&["det", "--graph6", "A"]);
    assert_eq!(bad.status.code(), Some(1));
    let missing = seidel(&["det", "--input", "/nonexistent/graphs.g6"]);
    assert_eq!(missing.status.code(), Some(1));
}

fn convert(from: &str, to: &str, input: &Path, out: &Path) {
    stdout(&seidel(&[
        "convert",
        "--from",
        from,
        "--to",
        to,
        "--input",
        input.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]));
}

#[test]
fn convert_round_trips_the_order_5_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = dir.path().join("all5.g6");
    let edges = dir.path().join("all5.txt");
    let back = dir.path().join("back.g6");
    let corpus: String = enumerate(5)
        .unwrap()
        .map(|g| emit_graph6(&g) + "\n")
        .collect();
    std::fs::write(&g6, &corpus).unwrap();
    convert("graph6", "edgelist", &g6, &edges);
    convert("edgelist", "graph6", &edges, &back);
    assert_eq!(std::fs::read(&back).unwrap(), corpus.as_bytes());
    assert_eq!(
        std::fs::read_to_string(&edges).unwrap().lines().count(),
        1024
    );
}

#[test]
fn file_input_prints_one_entry_per_graph() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.g6");
    std::fs::write(&path, "A?\nA_\nBg\n").unwrap();
    let v = json(&seidel(&["det", "--input", path.to_str().unwrap()]));
    let dets: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["det"].as_str().unwrap())
        .collect();
    assert_eq!(dets, ["-1", "-1", "2"]);
}
