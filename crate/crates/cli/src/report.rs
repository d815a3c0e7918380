//! Structured reports and their text rendering. Text is always rendered from
//! the structured value, so both forms carry the same truth values.

use std::fmt::Write as _;

use ringlab::decompositions::{classify, element_report, ElemPredicate, Flag, Witness};
use ringlab::structure::{semisimple_fingerprint, Analysis, STRUCTURE_NOTES};
use ringlab::verify::{CatalogEntry, Outcome, Report};
use ringlab::{Elem, Ring};
use serde_json::{json, Map, Value};

/// Full classification report; `--witness` and timings are layered on top
/// by the caller.
pub fn classify_value(expression: &str, an: &Analysis) -> Value {
    let r = an.ring();
    let report = classify(an);
    let mut flags = Map::new();
    let mut cex = Map::new();
    let mut witnesses = Map::new();
    for (flag, verdict) in report.iter() {
        flags.insert(flag.name().into(), json!(verdict.holds()));
        if let Some(a) = verdict.counterexample() {
            cex.insert(flag.name().into(), json!(a.0));
            witnesses.insert(
                flag.name().into(),
                json!({ "element": a.0, "display": r.show(a), "unit": an.is_unit(a) }),
            );
        }
    }
    let fingerprint = match semisimple_fingerprint(an) {
        Ok(fp) => json!(fp.blocks),
        Err(e) => json!({ "error": e.to_string() }),
    };
    json!({
        "expression": expression,
        "card": r.card(),
        "flags": flags,
        "counterexamples": cex,
        "witnesses": witnesses,
        "invariants": {
            "units": an.units().count(),
            "nilpotents": an.nilpotents().count(),
            "idempotents": an.idempotents().count(),
            "jacobson": an.jacobson().count(),
            "center": an.center().count(),
        },
        "fingerprint": fingerprint,
        "structure": serde_json::to_value(report.structure).expect("serializable"),
        "notes": STRUCTURE_NOTES,
    })
}

fn witness_value(r: &Ring, a: Elem, w: &Witness) -> Value {
    let op = if w.sign == ringlab::decompositions::Sign::Plus { "+" } else { "-" };
    json!({
        "sign": w.sign,
        "idempotent": w.idempotent.0,
        "part": w.part.0,
        "kind": w.kind,
        "commuting": w.commuting,
        "equation": format!("{} = {} {op} {}", r.show(a), r.show(w.part), r.show(w.idempotent)),
    })
}

pub fn element_value(expression: &str, an: &Analysis, a: Elem) -> Value {
    let r = an.ring();
    let rep = element_report(an, a);
    let mut preds = Map::new();
    for (p, w) in &rep.predicates {
        preds.insert(
            p.name().into(),
            json!({
                "holds": w.is_some(),
                "witness": w.as_ref().map(|w| witness_value(r, a, w)),
            }),
        );
    }
    json!({
        "expression": expression,
        "card": r.card(),
        "element": a.0,
        "display": rep.display,
        "unit": rep.unit,
        "nilpotent": rep.nilpotent,
        "nilpotencyIndex": an.nilpotency_index(a),
        "idempotent": rep.idempotent,
        "central": rep.central,
        "predicates": preds,
    })
}

fn pm(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

pub fn classify_text(v: &Value, witness: bool) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "ring: {}", v["expression"].as_str().unwrap_or(""));
    let _ = writeln!(s, "card: {}", v["card"]);
    let _ = writeln!(s, "flags:");
    for f in Flag::ALL {
        let holds = v["flags"][f.name()].as_bool().unwrap_or(false);
        let _ = write!(s, "  {:<24} {}", f.name(), pm(holds));
        if let Some(a) = v["counterexamples"].get(f.name()) {
            let _ = write!(s, "  (counterexample {a}");
            if witness {
                let w = &v["witnesses"][f.name()];
                let _ = write!(s, " = {}", w["display"].as_str().unwrap_or(""));
            }
            s.push(')');
        }
        s.push('\n');
    }
    let inv = &v["invariants"];
    let _ = writeln!(
        s,
        "invariants: |U|={} |Nil|={} |Id|={} |J|={} |Z|={}",
        inv["units"], inv["nilpotents"], inv["idempotents"], inv["jacobson"], inv["center"]
    );
    let fp = match v["fingerprint"].as_array() {
        Some(blocks) => {
            let parts: Vec<String> = blocks.iter().map(|b| format!("({},{})", b[0], b[1])).collect();
            format!("{{{}}}", parts.join(","))
        }
        None => v["fingerprint"]["error"].as_str().unwrap_or("?").to_string(),
    };
    let _ = writeln!(s, "fingerprint of R/J: {fp}");
    let _ = writeln!(s, "structure:");
    if let Some(m) = v["structure"].as_object() {
        for (k, b) in m {
            let _ = writeln!(s, "  {:<24} {}", k, pm(b.as_bool().unwrap_or(false)));
        }
    }
    if let Some(t) = v.get("timings") {
        let _ = writeln!(s, "timings: {t}");
    }
    let _ = writeln!(s, "notes:");
    for n in v["notes"].as_array().into_iter().flatten() {
        let _ = writeln!(s, "  - {}", n.as_str().unwrap_or(""));
    }
    s
}

pub fn element_text(v: &Value) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "ring: {} (card {})", v["expression"].as_str().unwrap_or(""), v["card"]);
    let _ = writeln!(s, "element: {} = {}", v["element"], v["display"].as_str().unwrap_or(""));
    for key in ["unit", "nilpotent", "idempotent", "central"] {
        let _ = writeln!(s, "  {:<24} {}", key, pm(v[key].as_bool().unwrap_or(false)));
    }
    for p in ElemPredicate::ALL {
        let entry = &v["predicates"][p.name()];
        let _ = write!(s, "  {:<24} {}", p.name(), pm(entry["holds"].as_bool().unwrap_or(false)));
        if let Some(eq) = entry["witness"]["equation"].as_str() {
            let _ = write!(
                s,
                "  (e={}, {}={}: {eq})",
                entry["witness"]["idempotent"],
                if entry["witness"]["kind"] == "unit" { "u" } else { "q" },
                entry["witness"]["part"]
            );
        }
        s.push('\n');
    }
    s
}

pub fn verify_text(report: &Report) -> String {
    let mut s = String::new();
    for c in &report.checks {
        let tag = match c.outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skipped => "SKIP",
        };
        let _ = writeln!(s, "{tag:<5}{:<12}{}", c.id, c.claim);
        for d in &c.details {
            if d.outcome == Outcome::Pass {
                continue;
            }
            let _ = writeln!(s, "       {:?} {}: {}", d.outcome, d.subject, d.note);
            if let Some(cx) = &d.counterexample {
                let _ = writeln!(s, "         counterexample: {}", cx.reproduce);
            }
        }
    }
    let _ = writeln!(s, "{}", report.summary);
    s
}

pub fn catalog_value(entries: &[CatalogEntry]) -> Value {
    Value::Array(
        entries
            .iter()
            .map(|e| {
                let expected: Map<String, Value> =
                    e.expected.iter().map(|(f, b)| (f.name().to_string(), json!(b))).collect();
                json!({ "id": e.id, "expression": e.expr, "expected": expected, "source": e.source })
            })
            .collect(),
    )
}

pub fn catalog_text(entries: &[CatalogEntry]) -> String {
    let mut s = String::new();
    for e in entries {
        let line = format!("{} {} {}", e.id, e.expr, e.expected_text());
        let _ = writeln!(s, "{:<56} {}", line.trim_end(), e.source);
    }
    s
}
