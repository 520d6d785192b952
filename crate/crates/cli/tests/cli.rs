//! End-to-end tests of the `nabla` binary: outputs, exit codes and the JSON
//! schema in `schemas/output.json`.

use std::process::{Command, Output};

use regex::Regex;
use serde_json::Value;

fn nabla(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nabla"))
        .args(args)
        .env_remove("NABLA_ENUM_CAP")
        .env_remove("NABLA_SYMBOLIC_MAX_N")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = nabla(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json_of(args: &[&str]) -> Value {
    let v: Value = serde_json::from_str(&stdout(args)).unwrap();
    assert_valid(&v);
    v
}

fn schema() -> Value {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../schemas/output.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Checks the draft-07 keywords the shipped schema uses.
fn validate(root: &Value, schema: &Value, v: &Value, path: &str) -> Result<(), String> {
    if let Some(r) = schema.get("$ref").and_then(Value::as_str) {
        let name = r.strip_prefix("#/definitions/").expect("local ref");
        return validate(root, &root["definitions"][name], v, path);
    }
    if let Some(options) = schema.get("oneOf").and_then(Value::as_array) {
        let matches = options
            .iter()
            .filter(|s| validate(root, s, v, path).is_ok())
            .count();
        if matches != 1 {
            return Err(format!("{path}: {matches} oneOf branches match"));
        }
    }
    if let Some(t) = schema.get("type") {
        let types: Vec<&str> = match t {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => unreachable!(),
        };
        let ok = types.iter().any(|t| match *t {
            "object" => v.is_object(),
            "array" => v.is_array(),
            "string" => v.is_string(),
            "integer" => v.is_u64() || v.is_i64(),
            "boolean" => v.is_boolean(),
            "null" => v.is_null(),
            other => panic!("unsupported type {other}"),
        });
        if !ok {
            return Err(format!("{path}: expected {types:?}, got {v}"));
        }
    }
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        if !options.contains(v) {
            return Err(format!("{path}: {v} not in enum"));
        }
    }
    if let (Some(min), Some(x)) = (schema.get("minimum").and_then(Value::as_i64), v.as_i64()) {
        if x < min {
            return Err(format!("{path}: {x} < {min}"));
        }
    }
    if let (Some(p), Some(s)) = (schema.get("pattern").and_then(Value::as_str), v.as_str()) {
        if !Regex::new(p).unwrap().is_match(s) {
            return Err(format!("{path}: {s:?} does not match {p}"));
        }
    }
    if let (Some(min), Some(s)) = (schema.get("minLength").and_then(Value::as_u64), v.as_str()) {
        if (s.chars().count() as u64) < min {
            return Err(format!("{path}: string too short"));
        }
    }
    if let Some(items) = v.as_array() {
        if let Some(min) = schema.get("minItems").and_then(Value::as_u64) {
            if (items.len() as u64) < min {
                return Err(format!("{path}: fewer than {min} items"));
            }
        }
        if let Some(item_schema) = schema.get("items") {
            for (i, item) in items.iter().enumerate() {
                validate(root, item_schema, item, &format!("{path}[{i}]"))?;
            }
        }
    }
    if let Some(obj) = v.as_object() {
        let props = schema.get("properties").and_then(Value::as_object);
        for key in schema
            .get("required")
            .and_then(Value::as_array)
            .into_iter()
            .flatten()
        {
            let key = key.as_str().unwrap();
            if !obj.contains_key(key) {
                return Err(format!("{path}: missing {key}"));
            }
        }
        for (key, value) in obj {
            match props.and_then(|p| p.get(key)) {
                Some(s) => validate(root, s, value, &format!("{path}.{key}"))?,
                None if schema.get("additionalProperties") == Some(&Value::Bool(false)) => {
                    return Err(format!("{path}: unexpected property {key}"))
                }
                None => {}
            }
        }
    }
    Ok(())
}

fn assert_valid(v: &Value) {
    let root = schema();
    if let Err(e) = validate(&root, &root, v, "$") {
        panic!("schema violation: {e}\n{v}");
    }
}

#[test]
fn validator_rejects_bad_documents() {
    let root = schema();
    let bad = [
        r#"{"n":3,"k":5,"count":21}"#,
        r#"{"n":3,"k":5}"#,
        r#"{"n":3,"k":5,"count":"21","extra":1}"#,
        r#"{"n":3,"k_max":2,"values":["3","x"]}"#,
    ];
    for doc in bad {
        let v: Value = serde_json::from_str(doc).unwrap();
        assert!(validate(&root, &root, &v, "$").is_err(), "{doc}");
    }
}

#[test]
fn count_command() {
    assert_eq!(stdout(&["count", "--n", "3", "--k", "5"]), "21\n");
    assert_eq!(stdout(&["count", "--n", "3", "--k", "0"]), "1\n");
    assert_eq!(stdout(&["count", "--n", "4", "--k", "3"]), "8\n");
    let v = json_of(&["count", "--n", "3", "--k", "5", "--format", "json"]);
    assert_eq!(v.to_string(), r#"{"n":3,"k":5,"count":"21"}"#);
    // beyond 2^64
    let v = json_of(&["count", "--n", "3", "--k", "100", "--format", "json"]);
    assert_eq!(v["count"], "1500520536206896083277");
    assert_eq!(
        stdout(&["count", "--n", "3", "--k", "2", "--format", "csv"]),
        "n,k,count\n3,2,5\n"
    );
}

#[test]
fn sequence_command() {
    assert_eq!(
        stdout(&["sequence", "--n", "3", "--k-max", "5", "--format", "plain"]),
        "3,5,8,13,21\n"
    );
    assert_eq!(
        stdout(&["sequence", "--n", "3", "--k-max", "1", "--format", "plain"]),
        "3\n"
    );
    let v = json_of(&["sequence", "--n", "4", "--k-max", "4"]);
    assert_eq!(v["values"], serde_json::json!(["4", "6", "8", "12"]));
    assert_eq!(
        stdout(&["sequence", "--n", "3", "--k-max", "3", "--format", "csv"]),
        "k,f_k\n1,3\n2,5\n3,8\n"
    );
}

#[test]
fn recurrence_command() {
    let v = json_of(&["recurrence", "--n", "3"]);
    assert_eq!(v["recurrence"], "f(i+2)=f(i+1) + f(i)");
    assert_eq!(v["matches_reference_table"], true);
    assert_eq!(v["characteristic_polynomial"], "λ^3 - λ^2 - λ");

    // the published row for n = 8 does not hold on the sequence
    let v = json_of(&["recurrence", "--n", "8"]);
    assert_eq!(v["recurrence"], "f(i+2)=3 f(i)");
    assert_eq!(v["matches_reference_table"], false);
    assert_eq!(v["reference_row"], "f(i+4)=4 f(i+3) - 3 f(i)");
    assert_eq!(v["reference_row_holds"], false);
    assert_eq!(
        v["reduced_characteristic_recurrence"],
        "f(i+4)=4 f(i+2) - 3 f(i)"
    );

    let v = json_of(&["recurrence", "--n", "12"]);
    assert_eq!(v["verified"], true);
    assert!(v.get("matches_reference_table").is_none());

    let plain = stdout(&["recurrence", "--n", "4", "--format", "plain"]);
    assert!(plain.contains("recurrence: f(i+2)=2 f(i)\n"));
    let csv = stdout(&["recurrence", "--n", "4", "--format", "csv"]);
    assert!(csv.starts_with("field,value\nn,4\n"));
}

#[test]
fn enumerate_command() {
    let v = json_of(&["enumerate", "--n", "3", "--length", "3", "--nontrivial"]);
    let words: Vec<Value> = v["words"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w["indices"].clone())
        .collect();
    assert_eq!(
        words,
        vec![
            serde_json::json!([1, 3, 1]),
            serde_json::json!([2, 2, 2]),
            serde_json::json!([3, 1, 3])
        ]
    );
    assert_eq!(v["words"][0]["named"], "grad∘div∘grad");
    assert_eq!(v["words"][0]["notation"], "∇1∘∇3∘∇1");

    let v = json_of(&["enumerate", "--n", "3", "--length", "2"]);
    assert_eq!(v["count"], "5");
    let v = json_of(&["enumerate", "--n", "4", "--length", "2", "--nontrivial"]);
    assert_eq!(v["count"], "3");
    let v = json_of(&["enumerate", "--n", "4", "--length", "3", "--nontrivial"]);
    assert_eq!(v["count"], "2");

    let plain = stdout(&[
        "enumerate",
        "--n",
        "3",
        "--length",
        "2",
        "--format",
        "plain",
    ]);
    assert_eq!(plain.lines().count(), 5);
    assert!(plain.starts_with("(1,2)  ∇2∘∇1  curl∘grad  zero\n"));
    let csv = stdout(&["enumerate", "--n", "3", "--length", "2", "--format", "csv"]);
    assert!(csv.starts_with("indices,notation,class\n1 2,∇2∘∇1,zero\n"));
}

#[test]
fn enumeration_cap() {
    let out = nabla(&["enumerate", "--n", "3", "--length", "5", "--enum-cap", "20"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("cap of 20"), "{err}");

    let out = Command::new(env!("CARGO_BIN_EXE_nabla"))
        .args(["enumerate", "--n", "3", "--length", "5"])
        .env("NABLA_ENUM_CAP", "20")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn apply_command() {
    assert_eq!(
        stdout(&["apply", "--n", "3", "--word", "1", "--input", "[x1*x2]", "--format", "plain"]),
        "[x2, x1, 0]\n"
    );
    let v = json_of(&["apply", "--n", "3", "--word", "1,2", "--input", "[x1^2*x3]"]);
    assert_eq!(v["output"], serde_json::json!(["0", "0", "0"]));
    let v = json_of(&[
        "apply",
        "--n",
        "3",
        "--word",
        "2",
        "--input",
        r#"["x2*x3","x1^2","x1*x2*x3"]"#,
    ]);
    assert_eq!(
        v["output"],
        serde_json::json!(["x1*x3", "-x2*x3 + x2", "2*x1 - x3"])
    );
    let v = json_of(&[
        "apply",
        "--n",
        "3",
        "--word",
        "3,1",
        "--input",
        "[x1^2, 0, 0]",
    ]);
    assert_eq!(v["output"], serde_json::json!(["2", "0", "0"]));
    let csv = stdout(&[
        "apply",
        "--n",
        "3",
        "--word",
        "3",
        "--input",
        "[x1, x2, x3]",
        "--format",
        "csv",
    ]);
    assert_eq!(csv, "slot,component\n1,3\n");
}

#[test]
fn apply_errors() {
    let out = nabla(&["apply", "--n", "3", "--word", "1,1", "--input", "[x1]"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nabla_1 followed by nabla_1"));

    // parse failures are usage errors
    for input in ["[x1*]", "x1", "[x9]"] {
        let out = nabla(&["apply", "--n", "3", "--word", "1", "--input", input]);
        assert_eq!(out.status.code(), Some(2), "{input}");
    }
    // wrong number of components is a domain error
    let out = nabla(&["apply", "--n", "3", "--word", "2", "--input", "[x1]"]);
    assert_eq!(out.status.code(), Some(1));
    let out = nabla(&["apply", "--n", "13", "--word", "1", "--input", "[x1]"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_and_domain_exit_codes() {
    assert_eq!(nabla(&["count", "--n", "3"]).status.code(), Some(2));
    assert_eq!(
        nabla(&["count", "--n", "x", "--k", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(nabla(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        nabla(&["count", "--n", "2", "--k", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(
        nabla(&["count", "--n", "65", "--k", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(
        nabla(&["count", "--n", "65", "--k", "1", "--max-n", "100"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        nabla(&["sequence", "--n", "3", "--k-max", "0"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn verify_command() {
    let out = nabla(&["verify", "--scope", "counting"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_valid(&v);
    assert_eq!(v["all_passed"], true);

    let out = nabla(&["verify", "--scope", "calculus", "--format", "plain"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).ends_with("3/3 checks passed\n"));

    // four published rows are not minimal recurrences
    let out = nabla(&["verify", "--scope", "recurrence"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_valid(&v);
    assert_eq!(v["passed"], 5);
    assert_eq!(v["total"], 9);
    assert!(String::from_utf8_lossy(&out.stderr).contains("recurrence/table n=6"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["enumerate", "--n", "5", "--length", "4"][..],
        &["recurrence", "--n", "9"][..],
        &["verify", "--scope", "counting", "--format", "csv"][..],
    ] {
        assert_eq!(nabla(args).stdout, nabla(args).stdout);
    }
}
