use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use seqring::ApSet;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seqring"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_seqring"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&stdout).unwrap_or_else(|e| {
        panic!("{e}: {stdout}\nstderr: {}", String::from_utf8_lossy(&out.stderr))
    });
    (out.status.code().unwrap(), v)
}

fn apset(v: &Value) -> ApSet {
    serde_json::from_value(v["apset"].clone()).unwrap()
}

fn points(v: &Value) -> Vec<u64> {
    serde_json::from_value(v.clone()).unwrap()
}

const SMALL: [&str; 6] = ["--horizon", "400", "--window", "100", "--max-period", "20"];

fn small(args: &[&str]) -> Vec<String> {
    args.iter().chain(SMALL.iter()).map(|s| s.to_string()).collect()
}

#[test]
fn solve_fibonacci() {
    let (code, v) = json(&["solve", "-1;-1", "--init", "0,1"]);
    assert_eq!(code, 0);
    let values = v["sequence"]["values"].as_array().unwrap();
    assert_eq!(values.len(), 2001);
    assert_eq!(values[30], "832040");
    assert_eq!(points(&v["zero_set"]), vec![0]);
    assert_eq!(v["bell_case"], true);
}

#[test]
fn solve_factorials() {
    let args = small(&["solve", "-(z+1)", "--init", "1"]);
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    let (code, v) = json(&args);
    assert_eq!(code, 0);
    let values = v["sequence"]["values"].as_array().unwrap();
    let mut fact: u128 = 1;
    for (k, x) in values.iter().take(30).enumerate() {
        if k > 0 {
            fact *= k as u128;
        }
        assert_eq!(x.as_str().unwrap(), fact.to_string());
    }
    assert_eq!(v["bell_case"], false);
}

#[test]
fn malformed_input_is_an_input_error() {
    let out = run(&["solve", "1;(z", "--init", "0,1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position"));
    let out = run(&["solve", "-1;-1", "--init", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["solve", "-1;-1", "--init", "0,1", "--horizon", "100"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["bogus"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn decompose_classifies_and_reports() {
    let (code, v) = json(&["decompose", "-1;-1", "--init", "2,-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["bell_case"], true);
    assert_eq!(v["status"], "exact-finite");
    assert!(apset(&v).is_finite());

    let args = ["decompose", "-(z-4)/(z-5)", "--init", "1", "--start", "6", "--horizon", "406"];
    let (code, v) = json(&[&args[..], &SMALL[2..]].concat());
    assert_eq!(code, 0);
    assert_eq!(v["bell_case"], false);
    assert_eq!(v["status"], "exact-finite");

    // y(i+2) = y(i) from (0, 1) vanishes exactly on the even indices
    let (code, v) = json(&["decompose", "-1;0", "--init", "0,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "conjectured");
    assert_eq!(apset(&v), ApSet::progression(0, 2));
    assert_eq!(v["period"], 2);
}

#[test]
fn apset_json_round_trips() {
    let (_, v) = json(&["decompose", "-1;0", "--init", "0,1"]);
    let s = apset(&v);
    assert_eq!(s.canonicalize(), s);
    assert_eq!(serde_json::to_value(&s).unwrap(), v["apset"]);
}

#[test]
fn text_and_json_agree() {
    let (_, v) = json(&["decompose", "-1;0", "--init", "0,1"]);
    let text = String::from_utf8(run(&["decompose", "-1;0", "--init", "0,1"]).stdout).unwrap();
    assert!(text.contains(&format!("decomposition: {}", apset(&v))));
    assert!(text.contains("status: conjectured"));
    assert!(text.contains("period: 2"));
}

#[test]
fn orbit_examples() {
    let (code, v) = json(&["orbit", "--equation", "-1;-1", "--subvariety", "detZ + 1"]);
    assert_eq!(code, 0);
    assert_eq!(apset(&v), ApSet::progression(1, 2));

    let (code, v) = json(&["orbit", "--equation", "-1;-1", "--subvariety", "Z[1][1]"]);
    assert_eq!(code, 0);
    assert_eq!(points(&v["membership"]), vec![1]);
    assert_eq!(v["status"], "exact-finite");
    assert_eq!(apset(&v), ApSet::finite([1]));

    let out = run(&[
        "orbit",
        "--system",
        "z-3",
        "--state",
        r#"{"b":0,"B":[["1"]]}"#,
        "--subvariety",
        "Z[1][1]",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("abscissa 3"));
}

#[test]
fn psi_of_the_determinant_alternates() {
    let args = small(&["psi", "--equation", "-1;-1", "--function", "detZ"]);
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    let (code, v) = json(&args);
    assert_eq!(code, 0);
    let values = v["sequence"]["values"].as_array().unwrap();
    for (i, x) in values.iter().enumerate() {
        assert_eq!(x, if i % 2 == 0 { "1" } else { "-1" });
    }
    assert_eq!(v["status"], "exact-finite");
}

#[test]
fn guess_finds_fibonacci_and_reports_failure() {
    let fib: Vec<String> = {
        let (mut a, mut b) = (0u64, 1u64);
        (0..40)
            .map(|_| {
                let s = a.to_string();
                (a, b) = (b, a + b);
                s
            })
            .collect()
    };
    let (code, v) = json(&["guess", &fib.join(",")]);
    assert_eq!(code, 0);
    assert_eq!(v["relation"]["order"], 2);
    assert_eq!(v["relation"]["equation"]["coeffs"], serde_json::json!(["-1", "-1"]));

    let noise: Vec<String> = (0..40u64).map(|i| (i * i * i % 17 + i % 5).to_string()).collect();
    let (code, v) = json(&["guess", &noise.join(","), "--max-order", "2", "--max-degree", "1"]);
    assert_eq!(code, 2);
    assert!(v["relation"].is_null());
}

#[test]
fn bell_check_examples() {
    let (code, v) = json(&["bell-check", "--system", r#"[["1","z^2"],["0","1"]]"#]);
    assert_eq!(code, 0);
    assert_eq!(v["bell_case"], true);
    let (_, v) = json(&["bell-check", "--equation", "z;1"]);
    assert_eq!(v["bell_case"], false);
    assert_eq!(v["kind"], "equation");
    let out = run(&["bell-check", "--equation", "1", "--system", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn period_bounds() {
    let (code, v) = json(&["period-bound", "--system", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["period"], 1);
    let (_, v) = json(&["period-bound", "--equation", "-1;-1"]);
    assert_eq!(v["period"], 2);
}

#[test]
fn demo_checks_pass() {
    let (code, v) = json(&["demo", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["fibonacci_30"], "832040");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    let witnesses = v["period_bound"]["witnesses"].as_array().unwrap();
    let w = witnesses.iter().find(|w| w["label"] == "detY + 1").unwrap();
    assert_eq!(apset(w), ApSet::progression(1, 2));
}

#[test]
fn zeros_and_exit_codes() {
    let v: Vec<String> = (0..=400u64).map(|i| if i % 3 == 2 { "0" } else { "1/2" }.into()).collect();
    let args = ["zeros", &v.join(","), "--horizon", "400", "--window", "100", "--max-period", "20"];
    let (code, out) = json(&args);
    assert_eq!(code, 0);
    assert_eq!(apset(&out), ApSet::progression(2, 3));

    // the tail has period 3 but only periods up to 2 are tried
    let args = ["zeros", &v.join(","), "--horizon", "400", "--window", "100", "--max-period", "2"];
    let (code, out) = json(&args);
    assert_eq!(code, 2);
    assert_eq!(out["status"], "inconclusive");
}

#[test]
fn payloads_from_stdin_and_files() {
    let out = run_stdin(
        &["solve", "-", "--init", "0,1", "--json"],
        r#"{"order": 2, "coeffs": ["-1", "-1"]}"#,
    );
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["sequence"]["values"][30], "832040");

    let path = std::env::temp_dir().join(format!("seqring-cli-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"generators": ["detZ + 1"]}"#).unwrap();
    let arg = format!("@{}", path.display());
    let (code, v) = json(&["orbit", "--equation", "-1;-1", "--subvariety", &arg]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(code, 0);
    assert_eq!(apset(&v), ApSet::progression(1, 2));
}
