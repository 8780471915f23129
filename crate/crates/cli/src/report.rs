//! Report JSON and its text rendering.

use serde_json::{json, Map, Value};

use tord_core::arith::SlopeMultiset;
use tord_core::classify::{ClassificationReport, FiltrationVerdict};
use tord_core::linalg::Subspace;

const UNKNOWN: &str = "unknown";

fn unknown() -> Value {
    Value::String(UNKNOWN.into())
}

pub fn basis_json(s: &Subspace) -> Value {
    Value::Array(
        s.basis()
            .iter()
            .map(|row| Value::Array(row.iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

pub fn slopes_json(s: &SlopeMultiset) -> Value {
    Value::Array(
        s.pairs()
            .iter()
            .map(|(slope, m)| json!({"slope": slope.to_string(), "multiplicity": m}))
            .collect(),
    )
}

fn verdict_json(v: &FiltrationVerdict) -> Value {
    let f = &v.filtration;
    json!({
        "flag": f.flag().chain().iter().map(basis_json).collect::<Vec<_>>(),
        "weights": f.weights(),
        "multiplicities": f
            .multiplicities()
            .iter()
            .map(|(w, d)| json!({"weight": w, "dim": d}))
            .collect::<Vec<_>>(),
        "graded_slopes": v.graded_slopes.iter().map(slopes_json).collect::<Vec<_>>(),
        "is_ordinary": v.is_ordinary,
        "slope_hypothesis": v.slope_hypothesis,
        "theorem_applies": v.theorem_applies,
        "offending_gradeds": v.offending_gradeds,
    })
}

fn count(n: Option<usize>) -> Value {
    n.map_or_else(unknown, Value::from)
}

pub fn report_json(r: &ClassificationReport) -> Value {
    let mut o = Map::new();
    o.insert("prime".into(), r.field.prime().into());
    o.insert("ramification".into(), r.field.ramification().into());
    o.insert("dimension".into(), r.dimension.into());
    o.insert("semistable".into(), r.semistable.into());
    o.insert("etale".into(), r.etale().map_or_else(unknown, Value::from));
    o.insert(
        "weakly_admissible".into(),
        match &r.weakly_admissible {
            None => unknown(),
            Some(w) => json!({
                "value": w.admissible,
                "witness": w.witness.as_ref().map_or(Value::Null, basis_json),
                "endpoint_failure": w.endpoint_failure,
            }),
        },
    );
    o.insert("crystalline".into(), r.crystalline.into());
    o.insert("plus_de_rham".into(), r.plus_de_rham.into());
    o.insert("hodge_tate_weights".into(), r.hodge_tate_weights.clone().into());
    o.insert("slopes".into(), slopes_json(&r.slopes));
    o.insert(
        "ordinary".into(),
        match &r.ordinary {
            None => unknown(),
            Some(None) => Value::Null,
            Some(Some(v)) => verdict_json(v),
        },
    );
    o.insert(
        "triangulordinary".into(),
        r.triangulordinary
            .as_ref()
            .map_or_else(unknown, |vs| Value::Array(vs.iter().map(verdict_json).collect())),
    );
    o.insert(
        "trianguline".into(),
        r.trianguline.map_or_else(unknown, |t| {
            let refinements =
                u64::try_from(t.refinements).map_or_else(|_| Value::String(t.refinements.to_string()), Value::from);
            json!({"value": t.value, "refinements": refinements})
        }),
    );
    o.insert("bloch_kato_f_equals_g".into(), r.bloch_kato_f_equals_g.into());
    let tord = r.triangulordinary.as_ref();
    o.insert(
        "counts".into(),
        json!({
            "stable_subspaces": count(r.stable_subspace_count),
            "triangulordinary": count(tord.map(Vec::len)),
            "theorem_applies": count(tord.map(|v| v.iter().filter(|x| x.theorem_applies).count())),
        }),
    );
    o.insert("annotations".into(), r.annotations.clone().into());
    o.insert("warnings".into(), r.warnings.clone().into());
    Value::Object(o)
}

/// Canonical bytes of a JSON value: pretty printed, trailing newline.
pub fn to_canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

fn vector_text(v: &Value) -> String {
    match v {
        Value::Array(xs) => format!("({})", xs.iter().map(scalar_text).collect::<Vec<_>>().join(", ")),
        other => scalar_text(other),
    }
}

fn basis_text(v: &Value) -> String {
    match v {
        Value::Array(rows) if rows.is_empty() => "0".into(),
        Value::Array(rows) => format!(
            "span{{{}}}",
            rows.iter().map(vector_text).collect::<Vec<_>>().join(", ")
        ),
        other => scalar_text(other),
    }
}

fn slopes_text(v: &Value) -> String {
    match v {
        Value::Array(ps) => {
            let parts: Vec<String> = ps
                .iter()
                .map(|p| {
                    let s = scalar_text(&p["slope"]);
                    match p["multiplicity"].as_u64() {
                        Some(1) | None => s,
                        Some(m) => format!("{s} x{m}"),
                    }
                })
                .collect();
            format!("{{{}}}", parts.join(", "))
        }
        other => scalar_text(other),
    }
}

fn verdict_text(v: &Value, indent: &str, out: &mut Vec<String>) {
    let weights = v["weights"].as_array().cloned().unwrap_or_default();
    let flag = v["flag"].as_array().cloned().unwrap_or_default();
    let slopes = v["graded_slopes"].as_array().cloned().unwrap_or_default();
    out.push(format!(
        "{indent}weights {}  ordinary={}  slope_hypothesis={}  theorem_applies={}",
        vector_text(&v["weights"]),
        scalar_text(&v["is_ordinary"]),
        scalar_text(&v["slope_hypothesis"]),
        scalar_text(&v["theorem_applies"]),
    ));
    for (j, w) in weights.iter().enumerate() {
        out.push(format!(
            "{indent}  W{j} = {}  graded weight {} slopes {}",
            basis_text(flag.get(j).unwrap_or(&Value::Null)),
            scalar_text(w),
            slopes_text(slopes.get(j).unwrap_or(&Value::Null)),
        ));
    }
}

/// Human-readable report, computed from the JSON form only.
pub fn render_text(v: &Value) -> String {
    let mut out = Vec::new();
    out.push(format!(
        "module: p = {}, e = {}, dimension {}",
        scalar_text(&v["prime"]),
        scalar_text(&v["ramification"]),
        scalar_text(&v["dimension"])
    ));
    out.push(format!("slopes: {}", slopes_text(&v["slopes"])));
    out.push(format!("Hodge-Tate weights: {}", vector_text(&v["hodge_tate_weights"])));
    out.push(format!("semistable: {}", scalar_text(&v["semistable"])));
    let wa = &v["weakly_admissible"];
    let witness = match wa.get("witness") {
        Some(w) if !w.is_null() => format!(" (witness {})", basis_text(w)),
        _ => String::new(),
    };
    out.push(format!(
        "etale (weakly admissible): {}{witness}",
        scalar_text(&v["etale"])
    ));
    out.push(format!("crystalline: {}", scalar_text(&v["crystalline"])));
    out.push(format!("+de Rham: {}", scalar_text(&v["plus_de_rham"])));
    out.push(format!("H^1_f = H^1_g: {}", scalar_text(&v["bloch_kato_f_equals_g"])));
    match &v["trianguline"] {
        Value::Object(t) => out.push(format!(
            "trianguline: {} ({} refinements)",
            scalar_text(&t["value"]),
            scalar_text(&t["refinements"])
        )),
        other => out.push(format!("trianguline: {}", scalar_text(other))),
    }
    match &v["ordinary"] {
        Value::Object(_) => {
            out.push("ordinary filtration:".into());
            verdict_text(&v["ordinary"], "  ", &mut out);
        }
        other => out.push(format!("ordinary filtration: {}", scalar_text(other))),
    }
    match &v["triangulordinary"] {
        Value::Array(vs) => {
            out.push(format!("triangulordinary filtrations: {}", vs.len()));
            for (i, f) in vs.iter().enumerate() {
                out.push(format!("  [{i}]"));
                verdict_text(f, "    ", &mut out);
            }
        }
        other => out.push(format!("triangulordinary filtrations: {}", scalar_text(other))),
    }
    for key in ["annotations", "warnings"] {
        if let Some(items) = v[key].as_array().filter(|a| !a.is_empty()) {
            out.push(format!("{key}:"));
            out.extend(items.iter().map(|a| format!("  - {}", scalar_text(a))));
        }
    }
    out.push(String::new());
    out.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use tord_core::arith::Field;
    use tord_core::classify::{classify, classify_with, ClassifyOptions};
    use tord_core::corpus::counterexample_bad;

    fn bad() -> tord_core::phimod::FilteredPhiNModule {
        counterexample_bad(Field::new(3, 1).unwrap())
    }

    #[test]
    fn key_order_is_fixed() {
        let v = report_json(&classify(&bad()).unwrap());
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(
            keys,
            [
                "prime",
                "ramification",
                "dimension",
                "semistable",
                "etale",
                "weakly_admissible",
                "crystalline",
                "plus_de_rham",
                "hodge_tate_weights",
                "slopes",
                "ordinary",
                "triangulordinary",
                "trianguline",
                "bloch_kato_f_equals_g",
                "counts",
                "annotations",
                "warnings",
            ]
        );
        assert_eq!(v["weakly_admissible"]["witness"], json!([["1", "0"], ["0", "1"]]));
        assert_eq!(
            v["slopes"],
            json!([{"slope": "-1", "multiplicity": 1}, {"slope": "0", "multiplicity": 1}])
        );
    }

    #[test]
    fn guarded_fields_are_unknown() {
        let options = ClassifyOptions {
            threads: 1,
            max_dim: Some(1),
        };
        let v = report_json(&classify_with(&bad(), &options).unwrap());
        assert_eq!(v["trianguline"], "unknown");
        assert_eq!(v["counts"]["triangulordinary"], "unknown");
        assert_eq!(v["etale"], false);
    }

    #[test]
    fn text_is_rendered_from_json() {
        let text = render_text(&report_json(&classify(&bad()).unwrap()));
        assert!(text.starts_with("module: p = 3, e = 1, dimension 2\n"));
        assert!(text.contains("etale (weakly admissible): false (witness span{(1, 0), (0, 1)})"));
        assert!(text.contains("trianguline: true (1 refinements)"));
        assert!(text.contains("triangulordinary filtrations: 0"));
        assert_eq!(
            render_text(&json!({})).lines().next(),
            Some("module: p = none, e = none, dimension none")
        );
    }
}
