use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn pnb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pnb"))
        .args(args)
        .env_remove("PNB_PRIME")
        .output()
        .expect("binary runs")
}

fn pnb_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pnb"))
        .args(args)
        .env_remove("PNB_PRIME")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_ok(args: &[&str]) -> Value {
    let o = pnb(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn validate(schema: &str, v: &Value) {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "schemas", &format!("{schema}.schema.json")]
        .iter()
        .collect();
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator
        .iter_errors(v)
        .map(|e| format!("{} at {}", e, e.instance_path))
        .collect();
    assert!(errors.is_empty(), "{}: {errors:?}", path.display());
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pnb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn enumerate_csv_lists_six_sequences() {
    let o = pnb(&[
        "enumerate",
        "--n",
        "3",
        "--rank",
        "4",
        "--degree",
        "9",
        "--format",
        "csv",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 6);
    // carets are expanded: every field is a plain integer and each line sums to the degree
    for l in &lines {
        let sum: i64 = l.split(',').map(|x| x.parse::<i64>().unwrap()).sum();
        assert_eq!(sum, 9, "{l}");
    }
}

#[test]
fn equality_case_is_not_admissible_but_succeeds() {
    let o = pnb(&["admissible", "--n", "3", "--a", "1", "--b", "0,0,0,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "false");
    let o = pnb(&["admissible", "--n", "3", "--a", "2", "--b", "0^3,1^2"]);
    assert_eq!(stdout(&o).trim(), "true");
}

#[test]
fn lattice_example_has_eight_nodes() {
    let args = [
        "lattice",
        "--n",
        "3",
        "--seq",
        "5,4",
        "--anchor",
        "-1",
        "--max-reg",
        "2",
    ];
    let v = json_ok(&[&args[..], &["--format", "json"]].concat());
    validate("lattice", &v);
    assert_eq!(v["nodes"].as_array().unwrap().len(), 8);
    let dot = stdout(&pnb(&[&args[..], &["--format", "dot"]].concat()));
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches(" -> ").count(), 12);
}

#[test]
fn payloads_validate_against_schemas() {
    let cases: Vec<(&str, Vec<&str>)> = vec![
        (
            "enumerate_sequences",
            vec!["enumerate", "--n", "3", "--rank", "4", "--degree", "9"],
        ),
        (
            "enumerate_hilbert",
            vec!["enumerate", "--n", "3", "--rank", "4", "--max-reg", "2"],
        ),
        (
            "enumerate_pairs",
            vec!["enumerate", "--n", "2", "--rank", "3", "--max-reg", "1", "--c1", "2"],
        ),
        ("hilbert", vec!["hilbert", "--n", "3", "--seq", "5,4", "--anchor", "-1"]),
        ("hilbert", vec!["hilbert", "--n", "2", "--a", "1", "--b", "0^3"]),
        ("matrix", vec!["present", "--n", "3", "--a", "2", "--b", "0,0,0,1,1"]),
        (
            "matrix",
            vec![
                "present",
                "--n",
                "3",
                "--a",
                "2",
                "--b",
                "0,0,0,1,1",
                "--mode",
                "random",
                "--seed",
                "4",
            ],
        ),
        (
            "deform",
            vec![
                "deform",
                "--n",
                "2",
                "--small",
                "1:0^4",
                "--big",
                "1,2:0^4,2",
                "--samples",
                "3",
            ],
        ),
        (
            "admissible",
            vec!["admissible", "--n", "3", "--a", "2", "--b", "0^3,1^2", "--details"],
        ),
        (
            "admissible",
            vec!["admissible", "--n", "3", "--a", "1", "--b", "0^3,1", "--details"],
        ),
    ];
    for (schema, args) in cases {
        let v = json_ok(&args);
        validate(schema, &v);
        if schema == "enumerate_sequences" {
            assert_eq!(v.as_array().unwrap().len(), 6);
        }
    }
    let hilbert = json_ok(&["hilbert", "--n", "3", "--seq", "5,4", "--anchor", "-1"]);
    validate("hilbert_fn", &hilbert["hilbert"]);
    validate("betti_pair", &hilbert["minimal_betti"]);
}

#[test]
fn check_reads_files_and_stdin() {
    let m = stdout(&pnb(&[
        "present",
        "--n",
        "3",
        "--a",
        "2",
        "--b",
        "0,0,0,1,1",
        "--mode",
        "random",
    ]));
    let path = temp_file("m.json", &m);
    let v = json_ok(&["check", path.to_str().unwrap()]);
    validate("check", &v);
    assert_eq!(v[0]["is_bundle"], Value::Bool(true));
    assert_eq!(v[0]["minimal"], v[0]["pair"]);

    let o = pnb_stdin(&["check", "-"], m.as_bytes());
    assert!(o.status.success());
    let w: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(w[0]["source"], "-");
    assert_eq!(w[0]["minimal"], v[0]["minimal"]);
}

#[test]
fn check_minimizes_and_flags_non_bundles() {
    // φ ⊕ 1: the constant entry cancels O(-1) against O(-1).
    let padded = r#"{"n":2,"p":101,"a":[1,1],"b":[0,0,0,1],
        "entries":[["x0","0"],["x1","0"],["x2","0"],["0","1"]]}"#;
    let zero_row = r#"{"n":2,"p":101,"a":[1],"b":[0,0,0],"entries":[["x0"],["x1"],["0"]]}"#;
    let good = temp_file("padded.json", padded);
    let bad = temp_file("zero_row.json", zero_row);
    let o = pnb(&["check", good.to_str().unwrap(), bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    validate("check", &v);
    assert_eq!(v[0]["is_bundle"], Value::Bool(true));
    assert_eq!(v[0]["minimal"]["b"], serde_json::json!([0, 0, 0]));
    assert_eq!(v[1]["is_bundle"], Value::Bool(false));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    validate("error", &err);
    assert_eq!(err["error"], "NotABundle");
}

#[test]
fn domain_errors_exit_one_with_an_error_object() {
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (
            vec!["present", "--n", "3", "--a", "1", "--b", "0,0,0,1"],
            "NotAdmissible",
        ),
        (vec!["check", "/nonexistent/matrix.json"], "Io"),
        (
            vec!["present", "--n", "2", "--a", "1", "--b", "0^3", "--prime", "100"],
            "BadModulus",
        ),
    ];
    for (args, code) in cases {
        let o = pnb(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(o.stdout.is_empty());
        let err: Value = serde_json::from_slice(&o.stderr).unwrap();
        validate("error", &err);
        assert_eq!(err["error"], code, "{args:?}");
    }
}

#[test]
fn usage_errors_exit_two() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["enumerate", "--n", "3", "--rank", "4"],
        vec![
            "enumerate",
            "--n",
            "3",
            "--rank",
            "4",
            "--degree",
            "9",
            "--max-reg",
            "2",
        ],
        vec![
            "lattice",
            "--n",
            "3",
            "--seq",
            "5,4",
            "--max-reg",
            "2",
            "--format",
            "csv",
        ],
        vec!["admissible", "--n", "3", "--b", "0,x"],
        vec!["frobnicate"],
    ];
    for args in cases {
        assert_eq!(pnb(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let runs = [
        vec![
            "present", "--n", "3", "--a", "2,3", "--b", "0^4,1,2", "--mode", "random", "--seed", "9",
        ],
        vec![
            "lattice",
            "--n",
            "3",
            "--seq",
            "5,4",
            "--anchor",
            "-1",
            "--max-reg",
            "2",
            "--format",
            "dot",
        ],
        vec!["enumerate", "--n", "3", "--rank", "4", "--max-reg", "2", "--jobs", "3"],
        vec![
            "deform",
            "--n",
            "2",
            "--small",
            "1:0^4",
            "--big",
            "1,2:0^4,2",
            "--seed",
            "5",
        ],
    ];
    for args in runs {
        assert_eq!(stdout(&pnb(&args)), stdout(&pnb(&args)), "{args:?}");
    }
    let one = stdout(&pnb(&[
        "enumerate",
        "--n",
        "3",
        "--rank",
        "4",
        "--max-reg",
        "2",
        "--jobs",
        "1",
    ]));
    let many = stdout(&pnb(&[
        "enumerate",
        "--n",
        "3",
        "--rank",
        "4",
        "--max-reg",
        "2",
        "--jobs",
        "4",
    ]));
    assert_eq!(one, many);
}

#[test]
fn prime_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_pnb"))
        .args(["present", "--n", "2", "--a", "1", "--b", "0^3"])
        .env("PNB_PRIME", "101")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["p"], 101);
    let v = json_ok(&["present", "--n", "2", "--a", "1", "--b", "0^3"]);
    assert_eq!(v["p"], 32003);
}

#[test]
fn schemas_reject_malformed_payloads() {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "schemas", "matrix.schema.json"]
        .iter()
        .collect();
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let mut m = json_ok(&["present", "--n", "2", "--a", "1", "--b", "0^3"]);
    assert!(validator.is_valid(&m));
    m["entries"][0][0] = Value::from(3);
    assert!(!validator.is_valid(&m));
    m.as_object_mut().unwrap().remove("entries");
    assert!(!validator.is_valid(&m));
}
