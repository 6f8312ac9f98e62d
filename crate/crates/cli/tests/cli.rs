use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn froblab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_froblab"))
        .args(args)
        .env_remove("FROBLAB_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn msv_fpt_prints_exact_values() {
    let out = froblab(&["msv-fpt", "--m", "2", "--n", "3", "--t", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "2\n");
    assert_eq!(stdout(&froblab(&["msv-fpt", "--m", "3", "--n", "3", "--t", "2"])), "4\n");
    let v = json(&froblab(&["msv-fpt", "--m", "3", "--n", "4", "--t", "3", "--json"]));
    assert_eq!(v["schema"], 1);
    assert_eq!(v["fpt"], "2");
}

#[test]
fn eth_root_of_a_monomial() {
    let dir = tempfile::tempdir().unwrap();
    let ideal = write(dir.path(), "a.id", "p 2\nvars x,y\nx^3*y^5\n");
    let out = froblab(&["eth-root", "--e", "1", "--ideal", &ideal]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "p 2\nvars x,y\nx*y^2\n");
    let v = json(&froblab(&["eth-root", "--e", "1", "--ideal", &ideal, "--json"]));
    assert_eq!(v["generators"], serde_json::json!(["x*y^2"]));
}

#[test]
fn nu_and_fpt_reports() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.id", "p 3\nvars x,y\nx\ny\n");
    let v = json(&froblab(&["nu", "--a", &m, "--b", &m, "--e", "2"]));
    assert_eq!(v["nu"], 16);
    let v = json(&froblab(&["fpt", "--ideal", &m, "--emax", "2"]));
    assert_eq!(v["lower"], "16/9");
    assert_eq!(v["upper"], "2");
}

#[test]
fn test_ideal_and_jumps() {
    let dir = tempfile::tempdir().unwrap();
    let x = write(dir.path(), "x.id", "p 2\nvars x\nx\n");
    let v = json(&froblab(&["test-ideal", "--ideal", &x, "--lambda", "3/2"]));
    assert_eq!(v["ideal"], "p 2\nvars x\nx\n");
    assert_eq!(v["status"], "certified");
    let v = json(&froblab(&["jumps", "--ideal", &x, "--lo", "0", "--hi", "3", "--denom", "4"]));
    assert_eq!(v["jumps"], serde_json::json!(["1", "2", "3"]));
}

#[test]
fn minors_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("i.id");
    let out = froblab(&["minors", "--m", "2", "--n", "3", "--t", "2", "--p", "3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 2 + 3);
}

#[test]
fn verify_main_and_witness_pass() {
    let out = froblab(&["verify-main", "--m", "2", "--n", "2", "--p", "3", "--denom", "2", "--emax", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["jumps"], serde_json::json!(["1", "2", "3"]));
    let out = froblab(&["witness", "--m", "2", "--n", "3", "--p", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["checks"]["g_eta_constant_nonzero"], true);
}

#[test]
fn verification_failure_exits_one() {
    // e_max = 1 is too coarse for the (1,3) cells at p = 2.
    let out = froblab(&["verify-main", "--m", "1", "--n", "3", "--p", "2", "--denom", "4", "--emax", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["passed"], false);
}

#[test]
fn usage_and_parse_errors_exit_two() {
    assert_eq!(froblab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(froblab(&["msv-fpt", "--m", "2", "--n", "3", "--t", "3"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.id", "p 4\nvars x\nx\n");
    let out = froblab(&["eth-root", "--e", "1", "--ideal", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    let missing = dir.path().join("nope.id");
    assert_eq!(froblab(&["eth-root", "--e", "1", "--ideal", missing.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(froblab(&["test-ideal", "--ideal", &bad, "--lambda", "1/0"]).status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_three_and_env_wins() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("i.id");
    froblab(&["minors", "--m", "2", "--n", "3", "--t", "2", "--p", "2", "--out", path.to_str().unwrap()]);
    let ideal = path.to_str().unwrap();
    assert_eq!(froblab(&["fpt", "--ideal", ideal, "--budget", "1"]).status.code(), Some(3));
    let run_with_env = |env: &str, flag: &str| {
        Command::new(env!("CARGO_BIN_EXE_froblab"))
            .args(["fpt", "--ideal", ideal, "--emax", "1", "--budget", flag])
            .env("FROBLAB_BUDGET", env)
            .output()
            .unwrap()
    };
    assert_eq!(run_with_env("1", "1000000").status.code(), Some(3));
    assert_eq!(run_with_env("1000000", "1").status.code(), Some(0));
    assert_eq!(run_with_env("lots", "1").status.code(), Some(2));
}

#[test]
fn output_is_deterministic_and_exact() {
    let args = ["verify-main", "--m", "2", "--n", "3", "--p", "2", "--denom", "4", "--emax", "4", "--nu-e", "2"];
    let first = froblab(&args);
    let second = froblab(&args);
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    let bytes = text.as_bytes();
    let has_float = bytes
        .windows(3)
        .any(|w| w[0].is_ascii_digit() && w[1] == b'.' && w[2].is_ascii_digit());
    assert!(!has_float, "floating-point literal in output");
    assert_eq!(json(&first)["passed"], true);
}

#[test]
fn selfcheck_uses_the_seed() {
    let a = froblab(&["selfcheck", "--seed", "9", "--cases", "8"]);
    let b = froblab(&["selfcheck", "--seed", "9", "--cases", "8"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 9);
}

#[test]
fn timings_are_opt_in() {
    let plain = json(&froblab(&["msv-fpt", "--m", "2", "--n", "3", "--t", "2", "--json"]));
    assert!(plain.get("elapsed_us").is_none());
    let timed = json(&froblab(&["msv-fpt", "--m", "2", "--n", "3", "--t", "2", "--json", "--timings"]));
    assert!(timed["elapsed_us"].is_u64());
}
