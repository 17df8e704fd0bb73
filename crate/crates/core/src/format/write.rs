use serde_json::{json, Map, Value};

use crate::body::{BodyOfEvidence, FocalElement, Regime};
use crate::codon::{GeneticCode, StatisticalProtein};
use crate::entropy::EntropyReport;
use crate::evaluation::EvalResult;
use crate::frame::Frame;
use crate::fusion::CombinationReport;
use crate::numeric::{json_f64, Mass};

/// Possibility names when the set is exactly their intersection, otherwise
/// the explicit element list.
pub fn focal_to_json(frame: &Frame, focal: &FocalElement) -> Value {
    match focal {
        FocalElement::Theta => json!("theta"),
        FocalElement::Empty => json!("empty"),
        FocalElement::Subset(set) => match frame.naming_of(set) {
            Some(names) => json!(names),
            None => json!({ "elements": frame.labels_of(set).collect::<Vec<_>>() }),
        },
    }
}

pub fn body_to_json<M: Mass>(body: &BodyOfEvidence<M>) -> Value {
    let frame = body.frame();
    let masses: Vec<Value> = body
        .focal_elements()
        .map(|(focal, mass)| json!({ "focal": focal_to_json(frame, focal), "mass": mass.to_json() }))
        .collect();
    json!({ "masses": masses })
}

fn frame_fields(frame: &Frame) -> Map<String, Value> {
    let mut map = Map::new();
    map.insert("ground".into(), json!(frame.ground()));
    let possibilities: Map<String, Value> = frame
        .possibilities()
        .map(|(name, set)| (name.to_string(), json!(frame.labels_of(set).collect::<Vec<_>>())))
        .collect();
    map.insert("possibilities".into(), Value::Object(possibilities));
    map
}

pub fn bundle_to_json<M: Mass>(frame: &Frame, regime: Regime, bodies: &[BodyOfEvidence<M>]) -> Value {
    let mut map = frame_fields(frame);
    map.insert("regime".into(), json!(regime.as_str()));
    map.insert("bodies".into(), Value::Array(bodies.iter().map(body_to_json).collect()));
    Value::Object(map)
}

/// A one-body bundle annotated with the conflict and the rule. It parses
/// back as an ordinary input bundle.
pub fn combination_to_json<M: Mass>(report: &CombinationReport<M>) -> Value {
    let result = &report.result;
    let mut doc = bundle_to_json(result.frame(), result.regime(), std::slice::from_ref(result));
    if let Value::Object(map) = &mut doc {
        map.insert("conflict".into(), report.conflict.to_json());
        map.insert("rule".into(), json!(report.rule.as_str()));
    }
    doc
}

pub fn eval_to_json<M: Mass>(result: &EvalResult<M>, hypothesis: &str) -> Value {
    json!({
        "bel": result.belief.to_json(),
        "pl": result.plausibility.to_json(),
        "hypothesis": hypothesis,
        "mode": result.mode.as_str(),
    })
}

pub fn entropy_to_json<M: Mass>(report: &EntropyReport<M>) -> Value {
    let per: Map<String, Value> = report
        .per_possibility
        .iter()
        .map(|(name, terms)| {
            (
                name.clone(),
                json!({
                    "bel": terms.belief.to_json(),
                    "pl": terms.plausibility.to_json(),
                    "conflict": json_f64(terms.conflict_contribution),
                    "ambiguity": json_f64(terms.ambiguity_contribution),
                }),
            )
        })
        .collect();
    json!({
        "total": json_f64(report.total),
        "conflict_term": json_f64(report.conflict_term),
        "ambiguity_term": json_f64(report.ambiguity_term),
        "mode": report.mode.as_str(),
        "possibilities": per,
    })
}

pub fn protein_to_json(protein: &StatisticalProtein) -> Value {
    let distribution: Map<String, Value> = protein
        .distribution()
        .into_iter()
        .map(|(seq, p)| (seq, json_f64(p)))
        .collect();
    json!({
        "mrna": protein.mrna,
        "samples": protein.samples,
        "seed": protein.seed,
        "counts": protein.counts,
        "distribution": distribution,
    })
}

pub fn code_to_json<M: Mass>(code: &GeneticCode<M>) -> Value {
    let frame = code.frame();
    let amino_acids: Map<String, Value> = frame
        .possibilities()
        .map(|(name, set)| (name.to_string(), json!(frame.labels_of(set).collect::<Vec<_>>())))
        .collect();
    let mut evidence = Map::new();
    for (cell, body) in code.cells() {
        let row = evidence
            .entry(cell.position.to_string())
            .or_insert_with(|| Value::Object(Map::new()));
        if let Value::Object(row) = row {
            row.insert(cell.nucleotide.as_char().to_string(), body_to_json(body));
        }
    }
    json!({
        "name": code.name(),
        "ground": frame.ground(),
        "amino_acids": amino_acids,
        "evidence": evidence,
    })
}

/// Pretty-printed with a trailing newline.
pub fn to_pretty(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).unwrap_or_else(|_| "null".into());
    text.push('\n');
    text
}
