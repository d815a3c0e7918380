use std::process::{Command, Output};

use serde_json::Value;

fn ringlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringlab"))
        .args(args)
        .env_remove("RINGLAB_MAX_CARD")
        .env_remove("RINGLAB_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = ringlab(args);
    assert!(o.status.success(), "{}", stderr(&o));
    serde_json::from_slice(&o.stdout).unwrap()
}

/// Validates the JSON-schema keywords used by the published schema.
fn validate(v: &Value, schema: &Value, path: &str) -> Result<(), String> {
    if let Some(t) = schema.get("type").and_then(Value::as_str) {
        let ok = match t {
            "object" => v.is_object(),
            "array" => v.is_array(),
            "string" => v.is_string(),
            "boolean" => v.is_boolean(),
            "integer" => v.is_u64() || v.is_i64(),
            _ => true,
        };
        if !ok {
            return Err(format!("{path}: expected {t}, got {v}"));
        }
    }
    if let (Some(min), Some(n)) = (schema.get("minimum").and_then(Value::as_i64), v.as_i64()) {
        if n < min {
            return Err(format!("{path}: {n} < {min}"));
        }
    }
    if let Some(obj) = v.as_object() {
        for key in schema.get("required").and_then(Value::as_array).into_iter().flatten() {
            let key = key.as_str().unwrap();
            if !obj.contains_key(key) {
                return Err(format!("{path}: missing {key}"));
            }
        }
        let props = schema.get("properties").and_then(Value::as_object);
        for (k, x) in obj {
            let sub = props.and_then(|p| p.get(k)).or_else(|| schema.get("additionalProperties"));
            match sub {
                Some(Value::Bool(false)) => return Err(format!("{path}: unexpected key {k}")),
                Some(s) if s.is_object() => validate(x, s, &format!("{path}.{k}"))?,
                _ => {}
            }
        }
    }
    if let Some(arr) = v.as_array() {
        let len = arr.len() as u64;
        if schema.get("minItems").and_then(Value::as_u64).is_some_and(|m| len < m)
            || schema.get("maxItems").and_then(Value::as_u64).is_some_and(|m| len > m)
        {
            return Err(format!("{path}: bad length {len}"));
        }
        if let Some(items) = schema.get("items") {
            for (i, x) in arr.iter().enumerate() {
                validate(x, items, &format!("{path}[{i}]"))?;
            }
        }
    }
    Ok(())
}

fn schema() -> Value {
    serde_json::from_str(include_str!("../schema/report.schema.json")).unwrap()
}

#[test]
fn classify_z5() {
    let v = json(&["classify", "Z(5)", "--json"]);
    assert_eq!(v["flags"]["GWNC"], true);
    assert_eq!(v["flags"]["weaklyNilClean"], false);
    assert_eq!(v["counterexamples"]["weaklyNilClean"], 2);
    assert_eq!(v["fingerprint"], serde_json::json!([[1, 5]]));
    validate(&v, &schema(), "$").unwrap();
}

#[test]
fn classify_m2_z6_has_counterexample() {
    let v = json(&["classify", "M(2,Z(6))", "--json", "--witness"]);
    assert_eq!(v["flags"]["weaklyClean"], true);
    assert_eq!(v["flags"]["GWNC"], false);
    let idx = v["counterexamples"]["GWNC"].as_u64().unwrap();
    assert_eq!(v["witnesses"]["GWNC"]["element"], idx);
    validate(&v, &schema(), "$").unwrap();
    // the counterexample re-verifies as an element
    let e = json(&["element", "M(2,Z(6))", &idx.to_string(), "--json"]);
    assert_eq!(e["unit"], false);
    assert_eq!(e["predicates"]["weaklyNilClean"]["holds"], false);
}

#[test]
fn schema_rejects_a_broken_report() {
    let mut v = json(&["classify", "Z(4)", "--json"]);
    validate(&v, &schema(), "$").unwrap();
    v["flags"]["GWNC"] = Value::from(1);
    assert!(validate(&v, &schema(), "$").is_err());
    v.as_object_mut().unwrap().remove("flags");
    assert!(validate(&v, &schema(), "$").is_err());
}

#[test]
fn text_and_json_agree() {
    let v = json(&["classify", "T(2,Z(6))", "--json"]);
    let o = ringlab(&["classify", "T(2,Z(6))"]);
    let text = stdout(&o);
    for (name, val) in v["flags"].as_object().unwrap() {
        let line = text
            .lines()
            .find(|l| l.split_whitespace().next() == Some(name))
            .unwrap();
        assert_eq!(line.split_whitespace().nth(1).unwrap(), val.to_string(), "{name}");
    }
}

#[test]
fn guard_exit_code_and_precedence() {
    let o = ringlab(&["classify", "M(3,Z(5))"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("card 1953125 exceeds guard 200000"));
    let o = Command::new(env!("CARGO_BIN_EXE_ringlab"))
        .args(["classify", "M(2,Z(3))"])
        .env("RINGLAB_MAX_CARD", "50")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("card 81 exceeds guard 50"));
    let o = Command::new(env!("CARGO_BIN_EXE_ringlab"))
        .args(["classify", "M(2,Z(3))", "--max-card", "100"])
        .env("RINGLAB_MAX_CARD", "50")
        .output()
        .unwrap();
    assert!(o.status.success());
}

#[test]
fn parse_and_validation_errors_exit_2() {
    let o = ringlab(&["classify", "M(0,Z(2))"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("matrix size must be ≥ 1"));
    assert_eq!(ringlab(&["classify", "Z(2) +"]).status.code(), Some(2));
    assert_eq!(ringlab(&["classify", "FM(2,1,Z(2))"]).status.code(), Some(0));
    assert_eq!(ringlab(&["element", "Z(4)", "9"]).status.code(), Some(2));
    assert_eq!(ringlab(&["verify", "--only", "X-1"]).status.code(), Some(2));
}

#[test]
fn element_reports() {
    let v = json(&["element", "Z(4)", "3", "--json"]);
    let w = &v["predicates"]["nilClean"]["witness"];
    assert_eq!((w["idempotent"].as_u64(), w["part"].as_u64()), (Some(1), Some(2)));
    let v = json(&["element", "Z(5)", "2", "--json"]);
    assert_eq!(v["predicates"]["weaklyNilClean"]["holds"], false);
    let v = json(&["element", "Z(6)", "0", "--json"]);
    assert_eq!(v["nilpotent"], true);
    assert_eq!(v["idempotent"], true);
    assert!(v["predicates"].as_object().unwrap().values().all(|p| p["holds"] == true));
}

#[test]
fn quotient_by_generated_ideal() {
    let v = json(&["classify", "Z(12)", "--ideal", "6", "--json"]);
    assert_eq!(v["card"], 6);
    assert_eq!(v["expression"], "Z(12) / <6>");
    let z6 = json(&["classify", "Z(6)", "--json"]);
    assert_eq!(v["flags"], z6["flags"]);
}

#[test]
fn cache_hit_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let cold = ringlab(&["classify", "T(2,Z(3))", "--json", "--cache-dir", d]);
    let warm = ringlab(&["classify", "T(2,Z(3))", "--json", "--cache-dir", d]);
    assert!(cold.status.success() && warm.status.success());
    assert_eq!(cold.stdout, warm.stdout);
    let lines = std::fs::read_to_string(dir.path().join("reports.jsonl")).unwrap();
    assert_eq!(lines.lines().count(), 1);
    // corruption is ignored
    std::fs::write(dir.path().join("reports.jsonl"), "garbage\n").unwrap();
    let again = ringlab(&["classify", "T(2,Z(3))", "--json", "--cache-dir", d]);
    assert_eq!(again.stdout, cold.stdout);
    // the env variable names the same directory
    let via_env = Command::new(env!("CARGO_BIN_EXE_ringlab"))
        .args(["classify", "T(2,Z(3))", "--json"])
        .env("RINGLAB_CACHE_DIR", d)
        .output()
        .unwrap();
    assert_eq!(via_env.stdout, cold.stdout);
}

#[test]
fn verify_only_and_summary() {
    let o = ringlab(&["verify", "--only", "L-2.33"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("PASS L-2.33"));
    assert!(text.trim_end().ends_with("1 passed, 0 failed, 0 skipped"));
    let v = json(&["verify", "--only", "EX-2.1-10,T-2.36", "--json", "--threads", "2"]);
    assert_eq!(v["summary"]["passed"], 2);
    assert_eq!(v["checks"][0]["id"], "EX-2.1-10");
}

#[test]
fn verify_guard_unlocks_cases() {
    let count_skips = |v: &Value| {
        v["checks"][0]["details"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|d| d["outcome"] == "skipped")
            .count()
    };
    let default = json(&["verify", "--only", "P-2.41", "--json"]);
    let raised = json(&["verify", "--only", "P-2.41", "--json", "--max-card", "300000"]);
    assert_eq!(count_skips(&default), 1);
    assert_eq!(count_skips(&raised), 0);
    assert_eq!(raised["checks"][0]["outcome"], "pass");
}

#[test]
fn catalog_listing() {
    let o = ringlab(&["catalog"]);
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("EX-2.1-05 Z(5) GWNC=+ WNC=-")));
    assert_eq!(text, stdout(&ringlab(&["catalog"])));
    let v = json(&["catalog", "--json"]);
    assert_eq!(v.as_array().unwrap().len(), 26);
    assert_eq!(v[3]["expected"]["GWNC"], true);
}
