//! C ABI over `evidentia`.
//!
//! Every entry point returns an [`EvStatus`]. Results come back through out
//! pointers, and handles are opaque. On failure the thread's last error
//! message is set; read it with [`ev_last_error_message`]. Strings returned
//! through `char **` belong to the caller and go back through
//! [`ev_string_free`]. Each handle type has its own `*_free`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use evidentia::codon::{code_entropy, decode_codon, evolve_code, translate, GeneticCode};
use evidentia::format::{
    body_to_json, builtin_code, code_to_json, protein_to_json, read_bundle, read_code, to_pretty, trace_to_csv,
    trajectory_to_csv, AnyBundle, AnyCode,
};
use evidentia::{
    combine, combine_all, entropy, interval, BodyOfEvidence, Error, ErrorKind, EvalMode, Hypothesis, Mass, NumericMode,
    Rational, Rule,
};

pub const EV_RULE_DEMPSTER: u32 = 0;
pub const EV_RULE_SMETS: u32 = 1;

pub const EV_MODE_LITERAL: u32 = 0;
pub const EV_MODE_TABLE: u32 = 1;
pub const EV_MODE_TBM: u32 = 2;

/// Pick the arithmetic from the document: fraction strings are exact.
pub const EV_NUMERIC_AUTO: u32 = 0;
pub const EV_NUMERIC_RATIONAL: u32 = 1;
pub const EV_NUMERIC_FLOAT: u32 = 2;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Bad input: malformed document, unknown name, out-of-range argument.
    Validation = 3,
    /// Valid input the computation cannot handle, e.g. total conflict.
    Computation = 4,
    Panic = 5,
}

/// A parsed bundle of bodies on one frame.
pub struct EvBundle(AnyBundle);

/// One body of evidence, exact or floating point.
pub struct EvBody(AnyBody);

/// A genetic code: twelve bodies, one per (position, nucleotide).
pub struct EvCode(AnyCode);

#[derive(Clone)]
enum AnyBody {
    Rational(BodyOfEvidence<Rational>),
    Float(BodyOfEvidence<f64>),
}

impl AnyBody {
    fn to_float(&self) -> BodyOfEvidence<f64> {
        match self {
            AnyBody::Rational(b) => b.to_float(),
            AnyBody::Float(b) => b.clone(),
        }
    }
}

struct Failure {
    status: EvStatus,
    message: String,
}

impl Failure {
    fn null(name: &str) -> Self {
        Failure {
            status: EvStatus::NullPointer,
            message: format!("`{name}` is null"),
        }
    }

    fn invalid(message: String) -> Self {
        Failure {
            status: EvStatus::Validation,
            message,
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let status = match err.kind() {
            ErrorKind::Validation => EvStatus::Validation,
            ErrorKind::Computation => EvStatus::Computation,
        };
        Failure {
            status,
            message: err.to_string(),
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: &str) {
    // interior NULs cannot cross the boundary
    let text = CString::new(message.replace('\0', "\\0")).expect("NULs replaced");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> EvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EvStatus::Ok,
        Ok(Err(failure)) => {
            set_last_error(&failure.message);
            failure.status
        }
        Err(payload) => {
            let detail = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(&format!("internal panic: {detail}"));
            EvStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::null(name));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure {
        status: EvStatus::InvalidUtf8,
        message: format!("`{name}` is not UTF-8: {e}"),
    })
}

unsafe fn handle<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::null(name))
}

unsafe fn write_out<T>(out: *mut T, value: T, name: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::null(name));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_optional<T>(out: *mut T, value: T) {
    if !out.is_null() {
        out.write(value);
    }
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

fn c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure::invalid("output contains a NUL byte".into()))
}

fn rule(value: u32) -> Result<Rule, Failure> {
    match value {
        EV_RULE_DEMPSTER => Ok(Rule::Dempster),
        EV_RULE_SMETS => Ok(Rule::Smets),
        other => Err(Failure::invalid(format!("unknown rule {other}"))),
    }
}

fn mode(value: u32) -> Result<EvalMode, Failure> {
    match value {
        EV_MODE_LITERAL => Ok(EvalMode::Literal),
        EV_MODE_TABLE => Ok(EvalMode::Table),
        EV_MODE_TBM => Ok(EvalMode::Tbm),
        other => Err(Failure::invalid(format!("unknown evaluation mode {other}"))),
    }
}

fn numeric(value: u32) -> Result<Option<NumericMode>, Failure> {
    match value {
        EV_NUMERIC_AUTO => Ok(None),
        EV_NUMERIC_RATIONAL => Ok(Some(NumericMode::Rational)),
        EV_NUMERIC_FLOAT => Ok(Some(NumericMode::Float)),
        other => Err(Failure::invalid(format!("unknown numeric mode {other}"))),
    }
}

/// Message of the most recent failure on this thread, or NULL if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ev_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Frees a string returned by this library. NULL is a no-op.
#[no_mangle]
pub unsafe extern "C" fn ev_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a bundle document. `numeric_mode` is one of the `EV_NUMERIC_*` values.
#[no_mangle]
pub unsafe extern "C" fn ev_bundle_from_json(
    json: *const c_char,
    numeric_mode: u32,
    out: *mut *mut EvBundle,
) -> EvStatus {
    guard(|| {
        let bundle = read_bundle(text(json, "json")?, numeric(numeric_mode)?)?;
        write_out(out, boxed(EvBundle(bundle)), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn ev_bundle_free(bundle: *mut EvBundle) {
    if !bundle.is_null() {
        drop(Box::from_raw(bundle));
    }
}

/// Number of bodies in the bundle.
#[no_mangle]
pub unsafe extern "C" fn ev_bundle_len(bundle: *const EvBundle, out: *mut usize) -> EvStatus {
    guard(|| {
        let len = match &handle(bundle, "bundle")?.0 {
            AnyBundle::Rational(b) => b.bodies.len(),
            AnyBundle::Float(b) => b.bodies.len(),
        };
        write_out(out, len, "out")
    })
}

/// Copies body `index` out of the bundle.
#[no_mangle]
pub unsafe extern "C" fn ev_bundle_body(bundle: *const EvBundle, index: usize, out: *mut *mut EvBody) -> EvStatus {
    guard(|| {
        let body = match &handle(bundle, "bundle")?.0 {
            AnyBundle::Rational(b) => b.bodies.get(index).cloned().map(AnyBody::Rational),
            AnyBundle::Float(b) => b.bodies.get(index).cloned().map(AnyBody::Float),
        };
        let body = body.ok_or_else(|| Failure::invalid(format!("body index {index} is out of range")))?;
        write_out(out, boxed(EvBody(body)), "out")
    })
}

/// Left fold of all bodies under `rule_id`. `conflict` may be NULL; otherwise
/// it receives the cumulative conflict: `1 - prod(1 - K_i)` over the steps
/// for Dempster's rule, the final empty-set mass for Smets' rule.
#[no_mangle]
pub unsafe extern "C" fn ev_bundle_combine(
    bundle: *const EvBundle,
    rule_id: u32,
    out: *mut *mut EvBody,
    conflict: *mut f64,
) -> EvStatus {
    guard(|| {
        let rule = rule(rule_id)?;
        let (body, k) = match &handle(bundle, "bundle")?.0 {
            AnyBundle::Rational(b) => {
                let report = combine_all(rule, &b.bodies)?;
                (AnyBody::Rational(report.result), report.conflict.to_f64())
            }
            AnyBundle::Float(b) => {
                let report = combine_all(rule, &b.bodies)?;
                (AnyBody::Float(report.result), report.conflict)
            }
        };
        write_out(out, boxed(EvBody(body)), "out")?;
        write_optional(conflict, k);
        Ok(())
    })
}

/// Combines two bodies on the same frame. Two exact bodies give an exact
/// result; otherwise the computation runs in floating point.
#[no_mangle]
pub unsafe extern "C" fn ev_body_combine(
    a: *const EvBody,
    b: *const EvBody,
    rule_id: u32,
    out: *mut *mut EvBody,
    conflict: *mut f64,
) -> EvStatus {
    guard(|| {
        let rule = rule(rule_id)?;
        let (a, b) = (&handle(a, "a")?.0, &handle(b, "b")?.0);
        let (body, k) = match (a, b) {
            (AnyBody::Rational(x), AnyBody::Rational(y)) => {
                let report = combine(rule, x, y)?;
                (AnyBody::Rational(report.result), report.conflict.to_f64())
            }
            _ => {
                let report = combine(rule, &a.to_float(), &b.to_float())?;
                (AnyBody::Float(report.result), report.conflict)
            }
        };
        write_out(out, boxed(EvBody(body)), "out")?;
        write_optional(conflict, k);
        Ok(())
    })
}

fn bel_pl<M: Mass>(body: &BodyOfEvidence<M>, hypothesis: &str, mode: EvalMode) -> Result<(f64, f64), Failure> {
    let h = Hypothesis::parse(body.frame(), hypothesis)?;
    let r = interval(body, &h, mode)?;
    Ok((r.belief.to_f64(), r.plausibility.to_f64()))
}

/// Belief and plausibility of a named possibility (or `theta` / `empty`).
#[no_mangle]
pub unsafe extern "C" fn ev_body_interval(
    body: *const EvBody,
    hypothesis: *const c_char,
    mode_id: u32,
    belief: *mut f64,
    plausibility: *mut f64,
) -> EvStatus {
    guard(|| {
        let h = text(hypothesis, "hypothesis")?;
        let mode = mode(mode_id)?;
        let (bel, pl) = match &handle(body, "body")?.0 {
            AnyBody::Rational(b) => bel_pl(b, h, mode)?,
            AnyBody::Float(b) => bel_pl(b, h, mode)?,
        };
        write_out(belief, bel, "belief")?;
        write_out(plausibility, pl, "plausibility")
    })
}

/// Total entropy of the body in bits.
#[no_mangle]
pub unsafe extern "C" fn ev_body_entropy(body: *const EvBody, mode_id: u32, out: *mut f64) -> EvStatus {
    guard(|| {
        let mode = mode(mode_id)?;
        let total = match &handle(body, "body")?.0 {
            AnyBody::Rational(b) => entropy(b, mode)?.total,
            AnyBody::Float(b) => entropy(b, mode)?.total,
        };
        write_out(out, total, "out")
    })
}

/// The body as a JSON document; exact bodies keep their fractions.
#[no_mangle]
pub unsafe extern "C" fn ev_body_to_json(body: *const EvBody, out: *mut *mut c_char) -> EvStatus {
    guard(|| {
        let doc = match &handle(body, "body")?.0 {
            AnyBody::Rational(b) => body_to_json(b),
            AnyBody::Float(b) => body_to_json(b),
        };
        write_out(out, c_string(to_pretty(&doc))?, "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn ev_body_free(body: *mut EvBody) {
    if !body.is_null() {
        drop(Box::from_raw(body));
    }
}

/// A shipped code: `toy`, `toy-ambiguous` or `standard`.
#[no_mangle]
pub unsafe extern "C" fn ev_code_builtin(name: *const c_char, numeric_mode: u32, out: *mut *mut EvCode) -> EvStatus {
    guard(|| {
        let code = builtin_code(text(name, "name")?, numeric(numeric_mode)?)?;
        write_out(out, boxed(EvCode(code)), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn ev_code_from_json(json: *const c_char, numeric_mode: u32, out: *mut *mut EvCode) -> EvStatus {
    guard(|| {
        let code = read_code(text(json, "json")?, numeric(numeric_mode)?)?;
        write_out(out, boxed(EvCode(code)), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn ev_code_to_json(code: *const EvCode, out: *mut *mut c_char) -> EvStatus {
    guard(|| {
        let doc = match &handle(code, "code")?.0 {
            AnyCode::Rational(c) => code_to_json(c),
            AnyCode::Float(c) => code_to_json(c),
        };
        write_out(out, c_string(to_pretty(&doc))?, "out")
    })
}

/// Mean entropy over all 64 codons, in bits.
#[no_mangle]
pub unsafe extern "C" fn ev_code_entropy(code: *const EvCode, mode_id: u32, out: *mut f64) -> EvStatus {
    guard(|| {
        let mode = mode(mode_id)?;
        let h = match &handle(code, "code")?.0 {
            AnyCode::Rational(c) => code_entropy(c, mode)?,
            AnyCode::Float(c) => code_entropy(c, mode)?,
        };
        write_out(out, h, "out")
    })
}

fn decode_csv<M: Mass>(code: &GeneticCode<M>, codon: &str, rule: Rule, mode: EvalMode) -> Result<String, Failure> {
    Ok(trace_to_csv(&decode_codon(code, codon, rule, mode)?)?)
}

/// Step-by-step decoding trace of one codon as CSV.
#[no_mangle]
pub unsafe extern "C" fn ev_code_decode(
    code: *const EvCode,
    codon: *const c_char,
    rule_id: u32,
    mode_id: u32,
    out: *mut *mut c_char,
) -> EvStatus {
    guard(|| {
        let (codon, rule, mode) = (text(codon, "codon")?, rule(rule_id)?, mode(mode_id)?);
        let csv = match &handle(code, "code")?.0 {
            AnyCode::Rational(c) => decode_csv(c, codon, rule, mode)?,
            AnyCode::Float(c) => decode_csv(c, codon, rule, mode)?,
        };
        write_out(out, c_string(csv)?, "out")
    })
}

/// Samples `samples` translations of `mrna`; the result is a JSON document
/// of counts and frequencies. The same seed always gives the same document.
#[no_mangle]
pub unsafe extern "C" fn ev_code_translate(
    code: *const EvCode,
    mrna: *const c_char,
    samples: u64,
    seed: u64,
    out: *mut *mut c_char,
) -> EvStatus {
    guard(|| {
        let mrna = text(mrna, "mrna")?;
        let protein = match &handle(code, "code")?.0 {
            AnyCode::Rational(c) => translate(c, mrna, samples, seed)?,
            AnyCode::Float(c) => translate(c, mrna, samples, seed)?,
        };
        write_out(out, c_string(to_pretty(&protein_to_json(&protein)))?, "out")
    })
}

/// Runs entropy descent for at most `steps` proposals. `evolved` receives
/// the final code; `trajectory` (may be NULL) receives the trajectory CSV.
#[no_mangle]
pub unsafe extern "C" fn ev_code_evolve(
    code: *const EvCode,
    steps: usize,
    seed: u64,
    mode_id: u32,
    evolved: *mut *mut EvCode,
    trajectory: *mut *mut c_char,
) -> EvStatus {
    guard(|| {
        let mode = mode(mode_id)?;
        if steps == 0 {
            return Err(Failure::invalid("step budget must be at least 1".into()));
        }
        if evolved.is_null() {
            return Err(Failure::null("evolved"));
        }
        let (final_code, csv) = match &handle(code, "code")?.0 {
            AnyCode::Rational(c) => {
                let t = evolve_code(c, steps, seed, mode)?;
                (AnyCode::Rational(t.final_code.clone()), trajectory_to_csv(&t)?)
            }
            AnyCode::Float(c) => {
                let t = evolve_code(c, steps, seed, mode)?;
                (AnyCode::Float(t.final_code.clone()), trajectory_to_csv(&t)?)
            }
        };
        let csv = if trajectory.is_null() {
            ptr::null_mut()
        } else {
            c_string(csv)?
        };
        write_optional(trajectory, csv);
        write_out(evolved, boxed(EvCode(final_code)), "evolved")
    })
}

#[no_mangle]
pub unsafe extern "C" fn ev_code_free(code: *mut EvCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}
