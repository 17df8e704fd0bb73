//! JSON documents in, JSON and CSV documents out.
//!
//! Rational masses travel as `"p/q"` strings and float masses as JSON
//! numbers. Output maps have sorted keys and floats carry 17 significant
//! digits, so identical inputs give byte-identical files.

mod read;
mod table;
mod write;

pub use read::{
    body_from_value, builtin_code, bundle_from_value, code_from_value, detect_numeric_mode, numeric_mode_from_env,
    parse_json, read_bundle, read_code, AnyBundle, AnyCode, Bundle, NUMERIC_ENV,
};
pub use table::{focal_label, trace_to_csv, trajectory_to_csv};
pub use write::{
    body_to_json, bundle_to_json, code_to_json, combination_to_json, entropy_to_json, eval_to_json, focal_to_json,
    protein_to_json, to_pretty,
};
