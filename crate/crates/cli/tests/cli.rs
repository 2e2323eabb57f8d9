use std::process::{Command, Output};

use dzv_cli::config::{Overrides, RunConfig};
use dzv_cli::report::{from_json, to_csv, to_json, CSV_HEADER};
use dzv_cli::suites;

fn dzv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dzv"))
        .args(args)
        .env_remove("DZV_PRECISION")
        .output()
        .expect("run dzv")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn config(suites: &str, weights: &str) -> RunConfig {
    let flags = Overrides {
        suites: Some(vec![suites.to_string()]),
        weights: Some(weights.to_string()),
        precision: Some(128),
        jobs: Some(2),
        ..Overrides::default()
    };
    RunConfig::resolve(&flags, None, None).unwrap()
}

#[test]
fn bernoulli_command() {
    let o = dzv(&["bernoulli", "12"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "-691/2730");
    assert_eq!(stdout(&dzv(&["bernoulli", "0"])).trim(), "1");
    assert_eq!(dzv(&["bernoulli", "-1"]).status.code(), Some(2));
}

#[test]
fn dzeta_command_prints_certified_digits() {
    let o = dzv(&["dzeta", "2", "1", "-p", "128"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("1.2020569031595942853997381615114499907"), "{text}");
    assert!(text.contains("+/-"));

    // π^8 / 113400
    let text = stdout(&dzv(&["dzeta", "4", "4", "-p", "128"]));
    assert!(text.starts_with("0.0836731130164953616148904365423877054"), "{text}");

    assert_eq!(dzv(&["dzeta", "1", "2"]).status.code(), Some(2));
}

#[test]
fn precision_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_dzv"))
        .args(["dzeta", "2", "1"])
        .env("DZV_PRECISION", "64")
        .output()
        .unwrap();
    let short = stdout(&o);
    let long = stdout(&dzv(&["dzeta", "2", "1", "-p", "256"]));
    assert!(short.len() < long.len(), "{short} vs {long}");
}

#[test]
fn exit_code_contract() {
    let ok = dzv(&["verify", "--suites", "theorem1", "--weights", "3..6", "--precision", "128"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(dzv(&["verify", "--suites", "nosuch"]).status.code(), Some(2));
    assert_eq!(dzv(&["verify", "--weights", "9..3"]).status.code(), Some(2));
    assert_eq!(dzv(&["verify", "--tol", "0.1"]).status.code(), Some(2));
    assert_eq!(dzv(&["verify", "--precision", "32"]).status.code(), Some(2));
    assert_eq!(dzv(&["frobnicate"]).status.code(), Some(2));

    // a tolerance far below what 64 bits can certify fails every numeric check
    let fail = dzv(&[
        "verify", "--suites", "sum-formula", "--weights", "5..5", "--precision", "64", "--tol", "1e-60",
    ]);
    assert_eq!(fail.status.code(), Some(1));
    assert!(stdout(&fail).contains("[FAIL]"));
}

#[test]
fn json_shapes_and_exact_suites() {
    let one = dzv(&[
        "verify", "--suites", "theorem1", "--weights", "3..12", "--precision", "192", "--tol", "1e-40",
        "--format", "json",
    ]);
    assert_eq!(one.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&one)).unwrap();
    assert_eq!(v["suite"], "theorem1");
    assert_eq!(v["checks"].as_array().unwrap().len(), 10);
    assert_eq!(v["checks"][0]["tolerance"], "1e-40");

    let exact = dzv(&["verify", "--suites", "ramanujan", "--weights", "8..200", "--format", "json"]);
    assert_eq!(exact.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&exact)).unwrap();
    for c in v["checks"].as_array().unwrap() {
        assert!(c.get("tolerance").is_none());
        if c.get("skipped_reason").is_none() {
            assert_eq!(c["exact"], true);
            assert_eq!(c["passed"], true);
        }
    }
    assert_eq!(v["passed_count"], 3 * 33);

    let many = dzv(&["verify", "--suites", "prop1,sum-formula", "--weights", "3..4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&many)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn report_round_trip_and_determinism() {
    let cfg = config("gkz-parity,lemma1,eq26,corollary2-chain", "3..10");
    let a = suites::run(&cfg).unwrap();
    let b = suites::run(&cfg).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.checks, y.checks);
        assert_eq!(x.passed_count + x.failed_count + x.skipped_count, x.checks.len());
    }
    let text = to_json(&a).unwrap();
    assert_eq!(from_json(&text).unwrap(), a);
    let single = to_json(&a[..1]).unwrap();
    assert_eq!(from_json(&single).unwrap(), a[..1].to_vec());
}

#[test]
fn csv_layout() {
    let reports = suites::run(&config("ramanujan", "8..10")).unwrap();
    let csv = to_csv(&reports);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    let rows: Vec<_> = lines.collect();
    assert_eq!(rows.len(), 3 + 2);
    assert!(rows[0].starts_with("ramanujan,ramanujan m=0,8,true,true,0,"));
    assert!(rows.iter().any(|r| r.contains(",10,skipped,")));
}

#[test]
fn config_file_and_output_path() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("run.toml");
    let out_path = dir.path().join("report.csv");
    std::fs::write(
        &cfg_path,
        "suites = [\"corollary1\"]\nweights = \"4..8\"\nprecision = 128\nformat = \"json\"\n",
    )
    .unwrap();
    let o = dzv(&[
        "verify",
        "--config",
        cfg_path.to_str().unwrap(),
        "--format",
        "csv",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let csv = std::fs::read_to_string(&out_path).unwrap();
    assert!(csv.starts_with(CSV_HEADER));
    assert_eq!(csv.lines().count(), 1 + 5);

    std::fs::write(&cfg_path, "bogus = 1\n").unwrap();
    let o = dzv(&["verify", "--config", cfg_path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
