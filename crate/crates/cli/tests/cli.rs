use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_multifiber"));
    c.env_remove("MULTIFIBER_PRIME");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = run(&full);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid json")
}

fn keys(v: &Value) -> Vec<String> {
    let mut k: Vec<String> = v.as_object().expect("object").keys().cloned().collect();
    k.sort();
    k
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("multifiber-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn std_prints_the_standard_form() {
    let o = run(&["std", "(13,9,5)(11^2,7^2,3^2)"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "(5,5,5)(3^6)");

    let o = run(&["std", "--trace", "(13,9,5)(11^2,7^2,3^2)"]);
    let lines: Vec<String> = stdout(&o).lines().map(|l| l.trim().to_string()).collect();
    assert_eq!(lines, ["(13,9,5)(11^2,7^2,3^2)", "-> (9,5,5)(7^2,3^4)", "-> (5,5,5)(3^6)", "=> (5,5,5)(3^6)"]);

    assert_eq!(stdout(&run(&["std", "(1,1)(2,2)"])).trim(), "empty");
    let v = json(&["std", "(1,1)(2,2)"]);
    assert_eq!(v["standard"], Value::Null);
    assert_eq!(v["outcome"]["kind"], "empty");
}

#[test]
fn dim_reports_the_oracle() {
    let v = json(&["dim", "(1,1,1,1,1,1,1)(3^3)"]);
    assert_eq!(v["dim_affine"], 42);
    assert_eq!(v["dim_proj"], 41);
    assert_eq!((v["rows"].as_u64(), v["cols"].as_u64(), v["rank"].as_u64()), (Some(87), Some(128), Some(86)));
    assert_eq!(v["prime"], 2147483647u64);
    assert_eq!(
        keys(&v),
        [
            "cols",
            "dim_affine",
            "dim_proj",
            "failure_bound",
            "input",
            "prime",
            "rank",
            "rows",
            "seed",
            "trials_requested",
            "trials_run"
        ]
    );
}

#[test]
fn prime_comes_from_flag_or_environment() {
    let v = json(&["dim", "--prime", "1009", "--seed", "5", "(2,2)(1,1)"]);
    assert_eq!((v["prime"].as_u64(), v["seed"].as_u64()), (Some(1009), Some(5)));

    let o = bin().env("MULTIFIBER_PRIME", "65521").args(["--format", "json", "dim", "(2,2)(1,1)"]).output().unwrap();
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["prime"], 65521);

    let o = run(&["dim", "--prime", "1000", "(2,2)(1)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("invalid prime"));
}

#[test]
fn degen_verdicts() {
    let o = run(&["degen", "(1,1,1,1,1,1,1)(3^3)"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("undecided"));

    let v = json(&["degen", "(13,9,5)(11^2,7^2,3^2)"]);
    assert_eq!(v["verdict"], "non-special");
    assert_eq!(v["report"]["kind"], "non-special");
    assert_eq!(v["report"]["certified_count"], 156);
    assert_eq!(v["standard"], "(5,5,5)(3^6)");
    assert_eq!(v["report"]["certificate"]["kind"], "degeneration");

    let v = json(&["degen", "--strict-compat", "(1,1)(1,1)"]);
    assert_eq!(v["verdict"], "special");
    let v = json(&["degen", "(1,1)(1,1)"]);
    assert_eq!(v["verdict"], "non-special");
}

#[test]
fn dims_labels_counts_and_dimensions() {
    let v = json(&["dims", "(13,9,5)(11^2,7^2,3^2)"]);
    assert_eq!(keys(&v), ["edim", "efdim", "fcount", "fdim", "input", "vcount", "vdim"]);
    assert_eq!((v["vcount"].as_i64(), v["fcount"].as_i64()), (Some(80), Some(154)));
    let text = stdout(&run(&["dims", "(1,1,1,1,1,1,1)(3^3)"]));
    assert!(text.contains("count     20"), "{text}");
    assert!(text.contains("count     41"), "{text}");
}

#[test]
fn parse_errors_exit_with_two() {
    let o = run(&["dims", "(1,1)(1,x)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column 9"));
    assert_eq!(run(&["dims", "(1,-1)(1)"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn conjecture_on_the_quadric_multiples() {
    let v = json(&["conjecture", "(3,3,3)(3^7)"]);
    assert_eq!(v["report"]["agree"], true);
    assert_eq!(v["report"]["oracle_count"], 1);
    assert_eq!(v["systems"].as_array().unwrap().len(), 4);
    let o = run(&["conjecture", "(1,1)(1)"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn phi_round_trip() {
    assert_eq!(stdout(&run(&["phi", "push", "--n", "7", "(4)(3^9)"])).trim(), "(1,1,1,1,1,1,1)(3^3)");
    assert_eq!(stdout(&run(&["phi", "pull", "(1,1,1,1,1,1,1)(3^3)"])).trim(), "(4)(3^9)");
    assert_eq!(stdout(&run(&["phi", "pull", "(1,0,0)(0,-1)"])).trim(), "(1)(1^2,0,-1)");
    assert_eq!(run(&["phi", "push", "--n", "3", "(1)(0^3)"]).status.code(), Some(1));
}

#[test]
fn batch_is_ordered_and_independent_of_jobs() {
    let mut src = String::from("# systems\n\n");
    for (i, d) in (1..=4).flat_map(|a| (0..=3).map(move |b| (a, b))).enumerate() {
        src.push_str(&format!("\"({},{},{})({}^{},{})\"\n", d.0 + 1, d.0, d.1, d.0, 1 + i % 4, d.1));
    }
    let path = temp_file("batch.txt", &src);
    let p = path.to_str().unwrap();
    let one = run(&["batch", p, "--jobs", "1", "--oracle", "--verdict"]);
    let four = run(&["batch", p, "--jobs", "4", "--oracle", "--verdict"]);
    assert!(one.status.success() && four.status.success());
    assert_eq!(one.stdout, four.stdout);

    let lines: Vec<Value> = stdout(&one).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 16);
    let numbers: Vec<u64> = lines.iter().map(|v| v["line"].as_u64().unwrap()).collect();
    assert_eq!(numbers, (3..=18).collect::<Vec<_>>());
    for v in &lines {
        assert_eq!(keys(v), ["dims", "input", "line", "oracle", "std", "verdict"]);
        assert_eq!(keys(&v["verdict"]), ["certified_count", "input_special", "kind", "truncated"]);
    }

    let plain = run(&["batch", p]);
    let first: Value = serde_json::from_str(stdout(&plain).lines().next().unwrap()).unwrap();
    assert_eq!(keys(&first), ["dims", "input", "line", "std"]);
    std::fs::remove_file(path).ok();
}

#[test]
fn batch_reports_bad_lines_and_keeps_going() {
    let path = temp_file("bad.txt", "(1,1)(1)\n(1,1)(1,\n(2,2)()\n");
    let o = run(&["batch", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[1]["line"], 2);
    assert!(lines[1]["error"].as_str().unwrap().contains("parse error"));
    assert_eq!(lines[2]["std"], "(2,2)()");
    std::fs::remove_file(path).ok();

    assert_eq!(run(&["batch", "/nonexistent/multifiber.txt"]).status.code(), Some(1));
}

#[test]
fn selftest_passes() {
    let o = run(&["selftest"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
    let v = json(&["selftest"]);
    assert!(v.as_array().unwrap().iter().all(|c| c["passed"] == true));
}
