mod support;

use serde_json::Value;
use support::{wsim, CASES};

fn stdout_json(args: &[&str]) -> Value {
    let out = wsim(args, None, &[]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn number(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"))
}

fn exit_code(args: &[&str], stdin: Option<&str>, env: &[(&str, &str)]) -> Option<i32> {
    wsim(args, stdin, env).status.code()
}

#[test]
fn golden_outputs() {
    for case in &CASES {
        if let Err(msg) = case.check() {
            panic!("{msg}");
        }
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    for case in &CASES {
        let a = case.run();
        let b = case.run();
        assert_eq!(a.stdout, b.stdout, "{}", case.name);
        assert_eq!(a.stderr, b.stderr, "{}", case.name);
    }
}

#[test]
fn document_shape() {
    let doc = stdout_json(&["concurrence", "inputs/w3_uniform.json"]);
    let keys: Vec<&str> = doc
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    assert_eq!(
        keys,
        ["command", "inputs", "results", "tolerances", "warnings"]
    );
    assert_eq!(doc["inputs"]["norm_sqr"].to_string(), "1.0");
}

#[test]
fn concurrence_examples() {
    let doc = stdout_json(&["concurrence", "inputs/pair_10.json", "--pair", "1,2"]);
    assert_eq!(number(&doc["results"]["closed_form"]), 0.0);
    assert_eq!(number(&doc["results"]["wootters"]), 0.0);

    let w4 = r#"{"n": 4, "coeffs": [0.5, 0.5, 0.5, 0.5]}"#;
    let out = wsim(&["concurrence", "-"], Some(w4), &[]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(number(&doc["results"]["total"]), 1.0);
    assert_eq!(number(&doc["results"]["mirror"]["value"]), 1.0);
    assert!(doc["warnings"].as_array().unwrap().is_empty());

    let doc = stdout_json(&["concurrence", "inputs/w3_uniform.json"]);
    assert_eq!(doc["results"]["mirror"]["self_pair"], 2);
    assert_eq!(doc["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn qst_examples() {
    let uniform2 = r#"{"n": 2, "coeffs": [0.7071067811865476, 0.7071067811865476]}"#;
    let out = wsim(
        &["qst", "-", "--alpha", "0.28", "--beta", "0.96"],
        Some(uniform2),
        &[],
    );
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(number(&doc["results"]["success_probability"]), 1.0);
    assert_eq!(doc["results"]["balancer"]["ancilla"], true);

    let skewed = r#"{"n": 2, "coeffs": [0.8, 0.6]}"#;
    let out = wsim(
        &["qst", "-", "--alpha", "1", "--beta", "0"],
        Some(skewed),
        &[],
    );
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((number(&doc["results"]["success_probability"]) - 0.72).abs() < 1e-12);

    let doc = stdout_json(&[
        "qst",
        "inputs/w5_uniform.json",
        "--alpha",
        "0.6",
        "--beta",
        "0.8",
        "--from",
        "2",
        "--to",
        "4",
    ]);
    assert!((number(&doc["results"]["success_probability"]) - 0.4).abs() < 1e-12);
    assert!(doc["results"].get("sampling").is_none());
}

#[test]
fn prepare_examples() {
    let pair = r#"{"n": 2, "coeffs": [0.7071067811865476, -0.7071067811865476]}"#;
    let out = wsim(
        &["prepare", "-", "--alpha", "0.6", "--beta", "0.8"],
        Some(pair),
        &[],
    );
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((number(&doc["results"]["target_probability"]) - 0.5).abs() < 1e-12);
    assert!((number(&doc["results"]["success_probability"]) - 1.0).abs() < 1e-12);
    assert_eq!(doc["results"]["target_state"]["phi"][1].to_string(), "0.8");

    let doc = stdout_json(&[
        "prepare",
        "inputs/w3_anti.json",
        "--alpha",
        "0.6",
        "--beta",
        "0.8",
    ]);
    assert!((number(&doc["results"]["success_probability"]) - 0.72).abs() < 1e-12);

    let doc = stdout_json(&[
        "prepare",
        "inputs/w3_not_minus.json",
        "--alpha",
        "0.6",
        "--beta",
        "0.8",
    ]);
    assert_eq!(doc["results"]["condition_holds"], false);
    assert_eq!(doc["results"]["claimed_probability"], Value::Null);
    assert_eq!(doc["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn beam_splitter_examples() {
    let doc = stdout_json(&["design-bs", "inputs/w3_uniform.json"]);
    let r = &doc["results"]["reflectivities"];
    assert_eq!(r[0].to_string(), "0.577350269189626");
    assert_eq!(r[1].to_string(), "0.707106781186548");
    assert!(number(&doc["results"]["verification"]["max_deviation"]) < 1e-12);
    assert!(doc["results"].get("pipeline").is_none());

    let single = r#"{"n": 3, "coeffs": [1, 0, 0]}"#;
    let out = wsim(&["design-bs", "-"], Some(single), &[]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["results"]["reflectivities"].to_string(), "[1.0,0.0]");

    let doc = stdout_json(&["simulate-bs", "--reflectivities", "0.7071067811865476"]);
    let mags = &doc["results"]["magnitudes"];
    assert!((number(&mags[0]) - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    assert_eq!(doc["results"]["coefficient_file"]["n"], 2);

    let doc = stdout_json(&["simulate-bs", "--reflectivities", "1"]);
    assert_eq!(doc["results"]["magnitudes"].to_string(), "[1.0,0.0]");
}

#[test]
fn simulated_chain_feeds_back_as_input() {
    let doc = stdout_json(&[
        "simulate-bs",
        "--reflectivities",
        "0.5,0.3,0.9",
        "--phases",
        "0,1.5,-0.5,3",
    ]);
    let file = doc["results"]["coefficient_file"].to_string();
    let out = wsim(&["design-bs", "-"], Some(&file), &[]);
    assert_eq!(out.status.code(), Some(0));
    let back: Value = serde_json::from_slice(&out.stdout).unwrap();
    let r = &back["results"]["reflectivities"];
    for (k, want) in [0.5, 0.3, 0.9].iter().enumerate() {
        assert!((number(&r[k]) - want).abs() < 1e-12);
    }
}

#[test]
fn pretty_output_is_a_table() {
    let out = wsim(
        &[
            "qst",
            "inputs/w5_uniform.json",
            "--alpha",
            "0.6",
            "--beta",
            "0.8",
            "--pretty",
        ],
        None,
        &[],
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("command: qst\n"));
    assert!(text.contains("outcome  heralded  probability  fidelity"));
    assert!(text.contains("success_probability: 0.4"));
}

#[test]
fn exit_codes() {
    assert_eq!(
        exit_code(&["concurrence", "inputs/w3_uniform.json"], None, &[]),
        Some(0)
    );

    let cap = [("WSIM_MAX_QUBITS", "2")];
    assert_eq!(
        exit_code(
            &["concurrence", "inputs/w3_uniform.json", "--pair", "1,2"],
            None,
            &cap
        ),
        Some(1)
    );

    let usage: [&[&str]; 7] = [
        &["concurrence", "inputs/w3_uniform.json", "--pair", "1,4"],
        &["concurrence", "inputs/w3_uniform.json", "--pair", "2,2"],
        &["concurrence", "inputs/missing.json"],
        &[
            "qst",
            "inputs/w3_uniform.json",
            "--alpha",
            "0.6",
            "--beta",
            "0.6",
        ],
        &[
            "qst",
            "inputs/w3_uniform.json",
            "--alpha",
            "1",
            "--beta",
            "0",
            "--from",
            "3",
            "--to",
            "3",
        ],
        &["simulate-bs", "--reflectivities", "1.5"],
        &["frobnicate"],
    ];
    for args in usage {
        assert_eq!(exit_code(args, None, &[]), Some(2), "{args:?}");
    }
    let unnormalized = r#"{"n": 2, "coeffs": [0.6, 0.6]}"#;
    let out = wsim(&["concurrence", "-"], Some(unnormalized), &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("0.72"));

    let degenerate = [
        "qst",
        "inputs/degenerate.json",
        "--alpha",
        "1",
        "--beta",
        "0",
    ];
    assert_eq!(exit_code(&degenerate, None, &[]), Some(3));
}
