use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::ptr;

use evidentia::codon::{code_entropy, decode_codon, GeneticCode};
use evidentia::format::trace_to_csv;
use evidentia::{EvalMode, Rational, Rule};
use evidentia_ffi::*;

fn data(name: &str) -> CString {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "data", name]
        .iter()
        .collect();
    CString::new(std::fs::read_to_string(path).unwrap()).unwrap()
}

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = ev_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    ev_string_free(s);
    out
}

unsafe fn bundle(name: &str, numeric: u32) -> *mut EvBundle {
    let mut out = ptr::null_mut();
    assert_eq!(
        ev_bundle_from_json(data(name).as_ptr(), numeric, &mut out),
        EvStatus::Ok
    );
    out
}

#[test]
fn combining_the_shipped_bundle() {
    unsafe {
        let b = bundle("gca.json", EV_NUMERIC_AUTO);
        let mut len = 0;
        assert_eq!(ev_bundle_len(b, &mut len), EvStatus::Ok);
        assert_eq!(len, 3);

        let mut body = ptr::null_mut();
        let mut conflict = f64::NAN;
        assert_eq!(
            ev_bundle_combine(b, EV_RULE_SMETS, &mut body, &mut conflict),
            EvStatus::Ok
        );
        assert_eq!(conflict, 0.0);

        let json: serde_json::Value = serde_json::from_str(&{
            let mut s = ptr::null_mut();
            assert_eq!(ev_body_to_json(body, &mut s), EvStatus::Ok);
            take(s)
        })
        .unwrap();
        let mut masses: Vec<(String, String)> = json["masses"]
            .as_array()
            .unwrap()
            .iter()
            .map(|m| (m["focal"].to_string(), m["mass"].as_str().unwrap().to_owned()))
            .collect();
        masses.sort();
        assert_eq!(
            masses,
            [
                (r#"["A1","A2"]"#.to_string(), "5/9".to_string()),
                (r#"["A2"]"#.to_string(), "4/9".to_string())
            ]
        );

        let (mut bel, mut pl) = (0.0, 0.0);
        assert_eq!(
            ev_body_interval(body, c("A1").as_ptr(), EV_MODE_LITERAL, &mut bel, &mut pl),
            EvStatus::Ok
        );
        assert_eq!((bel, pl), (5.0 / 9.0, 1.0));
        assert_eq!(
            ev_body_interval(body, c("A2").as_ptr(), EV_MODE_TABLE, &mut bel, &mut pl),
            EvStatus::Ok
        );
        assert_eq!((bel, pl), (4.0 / 9.0, 1.0));

        // pairwise folding through single bodies reaches the same result
        let mut parts = [ptr::null_mut(); 3];
        for (i, slot) in parts.iter_mut().enumerate() {
            assert_eq!(ev_bundle_body(b, i, slot), EvStatus::Ok);
        }
        let mut ab = ptr::null_mut();
        let mut abc = ptr::null_mut();
        assert_eq!(
            ev_body_combine(parts[0], parts[1], EV_RULE_SMETS, &mut ab, ptr::null_mut()),
            EvStatus::Ok
        );
        assert_eq!(
            ev_body_combine(ab, parts[2], EV_RULE_SMETS, &mut abc, ptr::null_mut()),
            EvStatus::Ok
        );
        let (mut h1, mut h2) = (0.0, 0.0);
        assert_eq!(ev_body_entropy(body, EV_MODE_TABLE, &mut h1), EvStatus::Ok);
        assert_eq!(ev_body_entropy(abc, EV_MODE_TABLE, &mut h2), EvStatus::Ok);
        assert_eq!(h1, h2);
        assert!(h1 > 0.0);

        for p in parts.into_iter().chain([ab, abc, body]) {
            ev_body_free(p);
        }
        ev_bundle_free(b);
    }
}

#[test]
fn exact_and_float_bodies_mix() {
    unsafe {
        let exact = bundle("gca.json", EV_NUMERIC_RATIONAL);
        let float = bundle("gca.json", EV_NUMERIC_FLOAT);
        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(ev_bundle_body(exact, 0, &mut a), EvStatus::Ok);
        assert_eq!(ev_bundle_body(float, 1, &mut b), EvStatus::Ok);
        let mut ab = ptr::null_mut();
        // equal frames from separate documents combine; one float side makes the result float
        assert_eq!(
            ev_body_combine(a, b, EV_RULE_SMETS, &mut ab, ptr::null_mut()),
            EvStatus::Ok
        );
        let mut s = ptr::null_mut();
        assert_eq!(ev_body_to_json(ab, &mut s), EvStatus::Ok);
        let mixed = take(s);
        assert!(mixed.contains("2.2222222222222221e-1"), "{mixed}");
        ev_body_free(ab);

        let mut b_exact = ptr::null_mut();
        assert_eq!(ev_bundle_body(exact, 1, &mut b_exact), EvStatus::Ok);
        assert_eq!(
            ev_body_combine(a, b_exact, EV_RULE_DEMPSTER, &mut ab, ptr::null_mut()),
            EvStatus::Ok
        );
        assert_eq!(ev_body_to_json(ab, &mut s), EvStatus::Ok);
        assert!(take(s).contains("\"2/9\""));

        let other = c(r#"{"ground": ["x"], "bodies": [{"masses": [{"focal": "theta", "mass": "1/1"}]}]}"#);
        let mut other_bundle = ptr::null_mut();
        assert_eq!(
            ev_bundle_from_json(other.as_ptr(), EV_NUMERIC_AUTO, &mut other_bundle),
            EvStatus::Ok
        );
        let mut stranger = ptr::null_mut();
        assert_eq!(ev_bundle_body(other_bundle, 0, &mut stranger), EvStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(
            ev_body_combine(a, stranger, EV_RULE_SMETS, &mut out, ptr::null_mut()),
            EvStatus::Validation
        );
        assert!(last_error().contains("different frames"));
        assert!(out.is_null());
        ev_body_free(stranger);
        ev_bundle_free(other_bundle);
        for p in [a, b, b_exact, ab] {
            ev_body_free(p);
        }
        ev_bundle_free(exact);
        ev_bundle_free(float);
    }
}

#[test]
fn codes_match_the_library() {
    unsafe {
        let mut code = ptr::null_mut();
        assert_eq!(
            ev_code_builtin(c("toy-ambiguous").as_ptr(), EV_NUMERIC_AUTO, &mut code),
            EvStatus::Ok
        );
        let reference = GeneticCode::<Rational>::toy(true);
        for (mode_id, mode) in [(EV_MODE_LITERAL, EvalMode::Literal), (EV_MODE_TABLE, EvalMode::Table)] {
            let mut h = 0.0;
            assert_eq!(ev_code_entropy(code, mode_id, &mut h), EvStatus::Ok);
            assert_eq!(h, code_entropy(&reference, mode).unwrap());
        }

        let mut csv = ptr::null_mut();
        assert_eq!(
            ev_code_decode(code, c("GCA").as_ptr(), EV_RULE_SMETS, EV_MODE_TABLE, &mut csv),
            EvStatus::Ok
        );
        let expected = trace_to_csv(&decode_codon(&reference, "GCA", Rule::Smets, EvalMode::Table).unwrap()).unwrap();
        assert_eq!(take(csv), expected);

        let mut json = ptr::null_mut();
        assert_eq!(ev_code_to_json(code, &mut json), EvStatus::Ok);
        let mut again = ptr::null_mut();
        let text = c(&take(json));
        assert_eq!(
            ev_code_from_json(text.as_ptr(), EV_NUMERIC_AUTO, &mut again),
            EvStatus::Ok
        );
        let mut h = 0.0;
        assert_eq!(ev_code_entropy(again, EV_MODE_LITERAL, &mut h), EvStatus::Ok);
        assert_eq!(h, code_entropy(&reference, EvalMode::Literal).unwrap());

        ev_code_free(again);
        ev_code_free(code);
    }
}

#[test]
fn translate_and_evolve_are_deterministic() {
    unsafe {
        let mut code = ptr::null_mut();
        assert_eq!(
            ev_code_builtin(c("toy-ambiguous").as_ptr(), EV_NUMERIC_AUTO, &mut code),
            EvStatus::Ok
        );
        let run = || {
            let mut s = ptr::null_mut();
            assert_eq!(
                ev_code_translate(code, c("GCAGCA").as_ptr(), 400, 9, &mut s),
                EvStatus::Ok
            );
            take(s)
        };
        let first = run();
        assert_eq!(first, run());
        let doc: serde_json::Value = serde_json::from_str(&first).unwrap();
        assert_eq!(doc["samples"], 400);

        let evolve = || {
            let mut evolved = ptr::null_mut();
            let mut csv = ptr::null_mut();
            assert_eq!(
                ev_code_evolve(code, 30, 4, EV_MODE_TABLE, &mut evolved, &mut csv),
                EvStatus::Ok
            );
            let mut h = 0.0;
            assert_eq!(ev_code_entropy(evolved, EV_MODE_TABLE, &mut h), EvStatus::Ok);
            ev_code_free(evolved);
            (take(csv), h)
        };
        let (csv, h) = evolve();
        assert_eq!((csv.clone(), h), evolve());
        let mut h0 = 0.0;
        assert_eq!(ev_code_entropy(code, EV_MODE_TABLE, &mut h0), EvStatus::Ok);
        assert!(h < h0);
        assert!(csv.starts_with("step,move,accepted,entropy,current,ambiguity\n0,start,,"));

        // trajectory output is optional
        let mut evolved = ptr::null_mut();
        assert_eq!(
            ev_code_evolve(code, 5, 4, EV_MODE_TABLE, &mut evolved, ptr::null_mut()),
            EvStatus::Ok
        );
        ev_code_free(evolved);
        ev_code_free(code);
    }
}

#[test]
fn failures_set_status_and_message() {
    unsafe {
        let mut b = ptr::null_mut();
        assert_eq!(
            ev_bundle_from_json(ptr::null(), EV_NUMERIC_AUTO, &mut b),
            EvStatus::NullPointer
        );
        assert_eq!(last_error(), "`json` is null");
        assert!(b.is_null());

        let bad = [0xffu8, 0xfe, 0];
        assert_eq!(
            ev_bundle_from_json(bad.as_ptr().cast(), EV_NUMERIC_AUTO, &mut b),
            EvStatus::InvalidUtf8
        );

        let doc = c(r#"{"ground": ["x"], "bodies": [{"masses": [{"focal": "theta", "mass": "-1/2"}]}]}"#);
        assert_eq!(
            ev_bundle_from_json(doc.as_ptr(), EV_NUMERIC_AUTO, &mut b),
            EvStatus::Validation
        );
        assert_eq!(last_error(), "at bodies[0].masses[0].mass: negative mass -1/2");
        assert_eq!(ev_bundle_from_json(doc.as_ptr(), 7, &mut b), EvStatus::Validation);
        assert_eq!(last_error(), "unknown numeric mode 7");

        let conflict = c(r#"{
            "ground": ["x", "y"], "possibilities": {"X": ["x"], "Y": ["y"]},
            "bodies": [{"masses": [{"focal": ["X"], "mass": "1/1"}]}, {"masses": [{"focal": ["Y"], "mass": "1/1"}]}]
        }"#);
        assert_eq!(
            ev_bundle_from_json(conflict.as_ptr(), EV_NUMERIC_AUTO, &mut b),
            EvStatus::Ok
        );
        let mut body = ptr::null_mut();
        assert_eq!(
            ev_bundle_combine(b, EV_RULE_DEMPSTER, &mut body, ptr::null_mut()),
            EvStatus::Computation
        );
        assert!(last_error().contains("total conflict"));
        assert_eq!(
            ev_bundle_combine(b, 9, &mut body, ptr::null_mut()),
            EvStatus::Validation
        );
        assert_eq!(
            ev_bundle_combine(b, EV_RULE_SMETS, ptr::null_mut(), ptr::null_mut()),
            EvStatus::NullPointer
        );
        assert_eq!(ev_bundle_body(b, 2, &mut body), EvStatus::Validation);
        assert_eq!(last_error(), "body index 2 is out of range");
        let mut conflict_mass = 0.0;
        assert_eq!(
            ev_bundle_combine(b, EV_RULE_SMETS, &mut body, &mut conflict_mass),
            EvStatus::Ok
        );
        assert_eq!(conflict_mass, 1.0);
        let (mut bel, mut pl) = (0.0, 0.0);
        assert_eq!(
            ev_body_interval(body, c("Z").as_ptr(), EV_MODE_LITERAL, &mut bel, &mut pl),
            EvStatus::Validation
        );
        assert_eq!(
            ev_body_interval(body, c("empty").as_ptr(), EV_MODE_TBM, &mut bel, &mut pl),
            EvStatus::Ok
        );
        assert_eq!(bel, 1.0);
        ev_body_free(body);
        ev_bundle_free(b);

        let mut code = ptr::null_mut();
        assert_eq!(
            ev_code_builtin(c("yeast").as_ptr(), EV_NUMERIC_AUTO, &mut code),
            EvStatus::Validation
        );
        assert!(last_error().starts_with("unknown builtin code `yeast`"));
        assert_eq!(
            ev_code_builtin(c("toy").as_ptr(), EV_NUMERIC_AUTO, &mut code),
            EvStatus::Ok
        );
        let mut s = ptr::null_mut();
        assert_eq!(
            ev_code_decode(code, c("GCT").as_ptr(), EV_RULE_SMETS, EV_MODE_TABLE, &mut s),
            EvStatus::Validation
        );
        assert_eq!(
            ev_code_translate(code, c("GCA").as_ptr(), 0, 0, &mut s),
            EvStatus::Validation
        );
        let mut evolved = ptr::null_mut();
        assert_eq!(
            ev_code_evolve(code, 0, 0, EV_MODE_TABLE, &mut evolved, ptr::null_mut()),
            EvStatus::Validation
        );
        assert_eq!(
            ev_code_evolve(code, 3, 0, EV_MODE_TABLE, ptr::null_mut(), ptr::null_mut()),
            EvStatus::NullPointer
        );
        assert!(s.is_null() && evolved.is_null());
        ev_code_free(code);

        // freeing NULL is harmless
        ev_string_free(ptr::null_mut());
        ev_body_free(ptr::null_mut());
        ev_bundle_free(ptr::null_mut());
        ev_code_free(ptr::null_mut());
    }
}

#[test]
fn last_error_is_per_thread() {
    unsafe {
        let mut b = ptr::null_mut();
        assert_eq!(
            ev_bundle_from_json(c("{").as_ptr(), EV_NUMERIC_AUTO, &mut b),
            EvStatus::Validation
        );
    }
    let here = last_error();
    let other = std::thread::spawn(|| ev_last_error_message().is_null()).join().unwrap();
    assert!(other);
    assert_eq!(last_error(), here);
}
