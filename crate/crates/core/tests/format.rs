mod common;

use std::path::PathBuf;

use evidentia::codon::{decode_codon, GeneticCode};
use evidentia::format::{
    bundle_from_value, code_from_value, code_to_json, combination_to_json, detect_numeric_mode, parse_json,
    read_bundle, read_code, to_pretty, trace_to_csv, AnyBundle, AnyCode, Bundle,
};
use evidentia::{combine_all, Error, EvalMode, NumericMode, Rational, Rule};
use serde_json::json;

use common::q;

fn data(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "data", name].iter().collect();
    std::fs::read_to_string(path).unwrap()
}

fn bundle_with(masses: serde_json::Value) -> serde_json::Value {
    json!({
        "ground": ["c1", "c2", "c3", "c4", "c5", "c6"],
        "possibilities": {"A1": ["c1", "c2", "c3", "c4"], "A2": ["c4", "c5"]},
        "regime": "closed",
        "bodies": [{"masses": masses}]
    })
}

fn error_of(doc: serde_json::Value) -> Error {
    read_bundle(&doc.to_string(), None).unwrap_err()
}

#[test]
fn shipped_bundle_holds_the_toy_cells() {
    let AnyBundle::Rational(bundle) = read_bundle(&data("gca.json"), None).unwrap() else {
        panic!("fraction strings select rational arithmetic");
    };
    let code = GeneticCode::<Rational>::toy(false);
    let gca = code.bodies_for("GCA".parse().unwrap());
    assert_eq!(bundle.bodies, gca.to_vec());
}

#[test]
fn shipped_codes_match_builtins() {
    for (file, ambiguous) in [("toy.json", false), ("toy-ambiguous.json", true)] {
        let AnyCode::Rational(code) = read_code(&data(file), None).unwrap() else {
            panic!("{file} should parse as rational");
        };
        assert_eq!(code, GeneticCode::<Rational>::toy(ambiguous), "{file}");
    }
}

#[test]
fn code_documents_round_trip() {
    let standard = GeneticCode::<Rational>::standard().unwrap();
    let doc = code_to_json(&standard);
    assert_eq!(code_from_value::<Rational>(&doc).unwrap(), standard);
    let text = to_pretty(&doc);
    assert_eq!(to_pretty(&parse_json(&text).unwrap()), text);
}

#[test]
fn combined_output_parses_back() {
    for mode in [NumericMode::Rational, NumericMode::Float] {
        for rule in [Rule::Smets, Rule::Dempster] {
            match read_bundle(&data("gca.json"), Some(mode)).unwrap() {
                AnyBundle::Rational(b) => check_round_trip(&b, rule),
                AnyBundle::Float(b) => check_round_trip(&b, rule),
            }
        }
    }
}

fn check_round_trip<M: evidentia::Mass>(bundle: &Bundle<M>, rule: Rule) {
    let report = combine_all(rule, &bundle.bodies).unwrap();
    let doc = combination_to_json(&report);
    let back: Bundle<M> = bundle_from_value(&doc).unwrap();
    assert_eq!(back.bodies, vec![report.result.clone()]);
    assert_eq!(back.regime, report.result.regime());
    assert_eq!(detect_numeric_mode(&doc, None).unwrap(), M::MODE);
}

#[test]
fn numbers_select_float_and_can_be_forced_exact() {
    let doc = bundle_with(json!([{"focal": ["A1"], "mass": 0.25}, {"focal": "theta", "mass": 0.75}]));
    assert!(matches!(
        read_bundle(&doc.to_string(), None).unwrap(),
        AnyBundle::Float(_)
    ));
    let AnyBundle::Rational(exact) = read_bundle(&doc.to_string(), Some(NumericMode::Rational)).unwrap() else {
        panic!("forced rational");
    };
    assert_eq!(exact.bodies[0].theta_mass(), q(3, 4));
}

#[test]
fn mixed_mass_kinds_are_rejected_with_location() {
    let doc = bundle_with(json!([{"focal": ["A1"], "mass": "1/4"}, {"focal": "theta", "mass": 0.75}]));
    let err = error_of(doc);
    assert_eq!(err.root(), &Error::MixedNumericModes);
    assert!(err.to_string().contains("bodies[0].masses[1].mass"), "{err}");
}

#[test]
fn focal_forms() {
    let doc = bundle_with(json!([
        {"focal": ["A1", "A2"], "mass": "1/4"},
        {"focal": {"elements": ["c5", "c6"]}, "mass": "1/4"},
        {"focal": ["A2"], "mass": "1/4"},
        {"focal": "theta", "mass": "1/4"}
    ]));
    let AnyBundle::Rational(b) = read_bundle(&doc.to_string(), None).unwrap() else {
        panic!()
    };
    let frame = &b.frame;
    let body = &b.bodies[0];
    let c4 = evidentia::FocalElement::Subset(frame.subset(["c4"]).unwrap());
    assert_eq!(body.mass(&c4), q(1, 4));
    let back = evidentia::format::body_to_json(body);
    let focals: Vec<_> = back["masses"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m["focal"].clone())
        .collect();
    assert!(focals.contains(&json!(["A1", "A2"])));
    assert!(focals.contains(&json!({"elements": ["c5", "c6"]})));
}

#[test]
fn validation_errors_carry_json_paths() {
    let cases = [
        (
            bundle_with(json!([{"focal": ["A1"], "mass": "-1/4"}, {"focal": "theta", "mass": "5/4"}])),
            "bodies[0].masses[0].mass",
            Error::NegativeMass("-1/4".into()),
        ),
        (
            bundle_with(json!([{"focal": ["A3"], "mass": "1/1"}])),
            "bodies[0].masses[0].focal",
            Error::UnknownPossibility("A3".into()),
        ),
        (
            bundle_with(json!([{"focal": {"elements": ["c9"]}, "mass": "1/1"}])),
            "bodies[0].masses[0].focal.elements",
            Error::UnknownLabel("c9".into()),
        ),
        (
            bundle_with(json!([{"focal": {"elements": []}, "mass": "1/1"}])),
            "bodies[0].masses[0].focal",
            Error::EmptySubset,
        ),
        (
            bundle_with(json!([{"focal": ["A1"], "mass": "1/2"}])),
            "bodies[0]",
            Error::NormalizationViolation("1/2".into()),
        ),
        (
            bundle_with(json!([{"focal": "empty", "mass": "1/1"}])),
            "bodies[0].masses[0]",
            Error::EmptyMassInClosedRegime,
        ),
        (
            bundle_with(json!([{"focal": ["A1"], "mass": "1/1", "weight": 3}])),
            "bodies[0].masses[0]",
            Error::Parse("unexpected key `weight`".into()),
        ),
    ];
    for (doc, path, root) in cases {
        let err = error_of(doc);
        assert_eq!(err.root(), &root, "{err}");
        assert_eq!(err.to_string(), format!("at {path}: {root}"));
    }
}

#[test]
fn frame_errors_point_at_their_section() {
    let mut doc = bundle_with(json!([{"focal": "theta", "mass": "1/1"}]));
    doc["ground"] = json!(["c1", "c1"]);
    assert_eq!(error_of(doc).to_string(), "at ground: duplicate label `c1`");
    let mut doc = bundle_with(json!([{"focal": "theta", "mass": "1/1"}]));
    doc["possibilities"] = json!({"A1": ["c7"]});
    assert_eq!(error_of(doc).to_string(), "at possibilities: unknown ground label `c7`");
    let mut doc = bundle_with(json!([{"focal": "theta", "mass": "1/1"}]));
    doc["regime"] = json!("open");
    assert!(error_of(doc).to_string().starts_with("at regime:"));
}

#[test]
fn code_errors() {
    let mut doc = code_to_json(&GeneticCode::<Rational>::toy(true));
    doc["evidence"]["2"].as_object_mut().unwrap().remove("U");
    let err = code_from_value::<Rational>(&doc).unwrap_err();
    assert_eq!(
        err.root(),
        &Error::MissingEvidenceCell {
            position: 2,
            nucleotide: 'U'
        }
    );

    let mut doc = code_to_json(&GeneticCode::<Rational>::toy(true));
    doc["evidence"]["1"]["A"] = json!({"masses": [{"focal": ["A1"], "mass": "1/2"}]});
    let err = code_from_value::<Rational>(&doc).unwrap_err();
    assert_eq!(err.to_string(), "at evidence.1.A: masses sum to 1/2, expected 1");

    let mut doc = code_to_json(&GeneticCode::<Rational>::toy(true));
    doc["ground"][0] = json!("AAT");
    let err = code_from_value::<Rational>(&doc).unwrap_err();
    assert!(matches!(err.root(), Error::InvalidNucleotide(_)));
}

#[test]
fn float_output_has_seventeen_significant_digits() {
    let doc = bundle_with(json!([{"focal": ["A1"], "mass": 0.1}, {"focal": "theta", "mass": 0.9}]));
    let AnyBundle::Float(b) = read_bundle(&doc.to_string(), None).unwrap() else {
        panic!()
    };
    let text = to_pretty(&evidentia::format::body_to_json(&b.bodies[0]));
    assert!(text.contains("1.0000000000000001e-1"), "{text}");
    assert!(text.contains("9.0000000000000002e-1"), "{text}");
}

#[test]
fn trace_csv_layout() {
    let code = GeneticCode::<Rational>::toy(false);
    let trace = decode_codon(&code, "GCA", Rule::Smets, EvalMode::Table).unwrap();
    let csv = trace_to_csv(&trace).unwrap();
    assert!(!csv.contains('\r'));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "step,focal,mass,bel_A1,bel_A2,pl_A1,pl_A2,entropy,decision");
    // three focals at t1, four at t2, two at t3
    assert_eq!(lines.len(), 1 + 3 + 4 + 2);
    assert!(lines[8].starts_with("3,A1&A2,5/9,0/1,4/9,5/9,1/1,"));
    assert!(lines[9].ends_with(",A2"));
    assert!(lines[1..8].iter().all(|l| l.ends_with(',')));
}

#[test]
fn element_lists_are_quoted_in_csv() {
    let doc = json!({
        "name": "x",
        "ground": code_to_json(&GeneticCode::<Rational>::toy(true))["ground"].clone(),
        "amino_acids": {"A1": ["GCA", "GCC"]},
        "evidence": evidence_with_first_cell(json!({"masses": [
            {"focal": {"elements": ["GCA", "UUU"]}, "mass": "1/2"}, {"focal": "theta", "mass": "1/2"}
        ]}))
    });
    let code = code_from_value::<Rational>(&doc).unwrap();
    let trace = decode_codon(&code, "AAA", Rule::Smets, EvalMode::Literal).unwrap();
    let csv = trace_to_csv(&trace).unwrap();
    assert!(csv.contains("\"{GCA,UUU}\""), "{csv}");
}

fn evidence_with_first_cell(body: serde_json::Value) -> serde_json::Value {
    let vacuous = json!({"masses": [{"focal": "theta", "mass": "1/1"}]});
    let mut evidence = serde_json::Map::new();
    for position in ["1", "2", "3"] {
        let mut row = serde_json::Map::new();
        for n in ["A", "C", "G", "U"] {
            let cell = if position == "1" && n == "A" {
                body.clone()
            } else {
                vacuous.clone()
            };
            row.insert(n.to_string(), cell);
        }
        evidence.insert(position.to_string(), serde_json::Value::Object(row));
    }
    serde_json::Value::Object(evidence)
}
