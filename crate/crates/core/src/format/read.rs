use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{Map, Value};

use crate::body::{BodyOfEvidence, FocalElement, Regime};
use crate::codon::{Cell, Codon, GeneticCode, Nucleotide};
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::numeric::{Mass, NumericMode, Rational};

/// Environment variable that forces the arithmetic used for input files.
pub const NUMERIC_ENV: &str = "EVIDENTIA_NUMERIC";

/// A frame with the bodies of evidence defined on it.
#[derive(Debug, Clone, PartialEq)]
pub struct Bundle<M> {
    pub frame: Arc<Frame>,
    pub regime: Regime,
    pub bodies: Vec<BodyOfEvidence<M>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum AnyBundle {
    Rational(Bundle<Rational>),
    Float(Bundle<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum AnyCode {
    Rational(GeneticCode<Rational>),
    Float(GeneticCode<f64>),
}

/// Reads [`NUMERIC_ENV`]; unset or blank means "decide from the file".
pub fn numeric_mode_from_env() -> Result<Option<NumericMode>> {
    match std::env::var(NUMERIC_ENV) {
        Ok(text) if !text.trim().is_empty() => text.parse().map(Some).map_err(|e: Error| e.at(NUMERIC_ENV)),
        _ => Ok(None),
    }
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

#[derive(Default)]
struct MassKinds {
    fraction: Option<String>,
    number: Option<String>,
}

fn scan_masses(value: &Value, path: &str, kinds: &mut MassKinds) {
    match value {
        Value::Object(map) => {
            for (key, child) in map {
                let child_path = if path.is_empty() {
                    key.clone()
                } else {
                    format!("{path}.{key}")
                };
                if key == "masses" {
                    if let Value::Array(entries) = child {
                        for (i, entry) in entries.iter().enumerate() {
                            let mass_path = format!("{child_path}[{i}].mass");
                            match entry.get("mass") {
                                Some(Value::String(_)) => {
                                    kinds.fraction.get_or_insert(mass_path);
                                }
                                Some(Value::Number(_)) => {
                                    kinds.number.get_or_insert(mass_path);
                                }
                                _ => {}
                            }
                        }
                    }
                } else {
                    scan_masses(child, &child_path, kinds);
                }
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                scan_masses(item, &format!("{path}[{i}]"), kinds);
            }
        }
        _ => {}
    }
}

/// Arithmetic for a document: the forced mode if given, otherwise rational
/// when masses are fraction strings and float when they are numbers. Mixing
/// the two is rejected either way.
pub fn detect_numeric_mode(doc: &Value, forced: Option<NumericMode>) -> Result<NumericMode> {
    let mut kinds = MassKinds::default();
    scan_masses(doc, "", &mut kinds);
    if let (Some(_), Some(number)) = (&kinds.fraction, &kinds.number) {
        return Err(Error::MixedNumericModes.at(number.clone()));
    }
    Ok(forced.unwrap_or(if kinds.fraction.is_some() {
        NumericMode::Rational
    } else {
        NumericMode::Float
    }))
}

fn object<'a>(value: &'a Value, path: &str, allowed: &[&str]) -> Result<&'a Map<String, Value>> {
    let map = value
        .as_object()
        .ok_or_else(|| Error::Parse("expected an object".into()).at(path))?;
    if let Some(key) = map.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(Error::Parse(format!("unexpected key `{key}`")).at(path));
    }
    Ok(map)
}

fn field<'a>(map: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    map.get(key)
        .ok_or_else(|| Error::Parse(format!("missing key `{key}`")).at(path))
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn strings(value: &Value, path: &str) -> Result<Vec<String>> {
    let items = value
        .as_array()
        .ok_or_else(|| Error::Parse("expected an array of strings".into()).at(path))?;
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            item.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::Parse("expected a string".into()).at(format!("{path}[{i}]")))
        })
        .collect()
}

fn possibilities(value: &Value, path: &str) -> Result<Vec<(String, Vec<String>)>> {
    let map = value
        .as_object()
        .ok_or_else(|| Error::Parse("expected an object of name -> labels".into()).at(path))?;
    map.iter()
        .map(|(name, labels)| Ok((name.clone(), strings(labels, &join(path, name))?)))
        .collect()
}

fn regime(value: &Value, path: &str) -> Result<Regime> {
    match value.as_str() {
        Some("closed") => Ok(Regime::Closed),
        Some("open_tbm") => Ok(Regime::OpenTbm),
        _ => Err(Error::Parse("regime must be \"closed\" or \"open_tbm\"".into()).at(path)),
    }
}

fn mass<M: Mass>(value: &Value, path: &str) -> Result<M> {
    match value {
        Value::String(text) => M::parse_fraction(text),
        Value::Number(n) => M::parse_decimal(&n.to_string()),
        _ => Err(Error::Parse("mass must be a fraction string or a number".into())),
    }
    .map_err(|e| e.at(path))
}

fn focal(frame: &Frame, value: &Value, path: &str) -> Result<FocalElement> {
    let set = match value {
        Value::String(label) => {
            return match label.as_str() {
                "theta" => Ok(FocalElement::Theta),
                "empty" => Ok(FocalElement::Empty),
                other => Err(Error::Parse(format!(
                    "focal label `{other}` must be \"theta\", \"empty\", a list of possibility names, or {{\"elements\": [...]}}"
                ))
                .at(path)),
            };
        }
        Value::Array(_) => {
            let names = strings(value, path)?;
            frame.intersection_of(&names).map_err(|e| e.at(path))?
        }
        Value::Object(_) => {
            let map = object(value, path, &["elements"])?;
            let elements_path = join(path, "elements");
            let labels = strings(field(map, "elements", path)?, &elements_path)?;
            frame.subset(&labels).map_err(|e| e.at(elements_path))?
        }
        _ => return Err(Error::Parse("unrecognized focal element".into()).at(path)),
    };
    if set.is_empty() {
        return Err(Error::EmptySubset.at(path));
    }
    Ok(FocalElement::Subset(set))
}

/// A `{"masses": [...]}` object on `frame`.
pub fn body_from_value<M: Mass>(
    frame: &Arc<Frame>,
    value: &Value,
    regime: Regime,
    path: &str,
) -> Result<BodyOfEvidence<M>> {
    let map = object(value, path, &["masses"])?;
    let masses_path = join(path, "masses");
    let entries = field(map, "masses", path)?
        .as_array()
        .ok_or_else(|| Error::Parse("expected an array".into()).at(&masses_path))?;
    let mut assignments = Vec::with_capacity(entries.len());
    for (i, entry) in entries.iter().enumerate() {
        let entry_path = format!("{masses_path}[{i}]");
        let entry_map = object(entry, &entry_path, &["focal", "mass"])?;
        let f = focal(
            frame,
            field(entry_map, "focal", &entry_path)?,
            &join(&entry_path, "focal"),
        )?;
        let m = mass::<M>(field(entry_map, "mass", &entry_path)?, &join(&entry_path, "mass"))?;
        if m.is_negative() {
            return Err(Error::NegativeMass(m.render()).at(join(&entry_path, "mass")));
        }
        if f == FocalElement::Empty && regime == Regime::Closed {
            return Err(Error::EmptyMassInClosedRegime.at(entry_path));
        }
        assignments.push((f, m));
    }
    BodyOfEvidence::new(frame, assignments, regime).map_err(|e| e.at(path))
}

fn frame_from(map: &Map<String, Value>) -> Result<Arc<Frame>> {
    let ground = strings(field(map, "ground", "")?, "ground")?;
    let none: [(String, Vec<String>); 0] = [];
    Frame::new(ground.iter().cloned(), none).map_err(|e| e.at("ground"))?;
    let named = match map.get("possibilities") {
        Some(value) => possibilities(value, "possibilities")?,
        None => Vec::new(),
    };
    Frame::new(ground, named)
        .map(Arc::new)
        .map_err(|e| e.at("possibilities"))
}

/// Annotation keys written by the combine output; accepted and ignored.
const BUNDLE_KEYS: &[&str] = &["ground", "possibilities", "regime", "bodies", "conflict", "rule"];

pub fn bundle_from_value<M: Mass>(doc: &Value) -> Result<Bundle<M>> {
    let map = object(doc, "", BUNDLE_KEYS)?;
    let frame = frame_from(map)?;
    let regime = match map.get("regime") {
        Some(value) => regime(value, "regime")?,
        None => Regime::Closed,
    };
    let items = field(map, "bodies", "")?
        .as_array()
        .ok_or_else(|| Error::Parse("expected an array".into()).at("bodies"))?;
    let bodies = items
        .iter()
        .enumerate()
        .map(|(i, item)| body_from_value(&frame, item, regime, &format!("bodies[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Bundle { frame, regime, bodies })
}

pub fn read_bundle(text: &str, forced: Option<NumericMode>) -> Result<AnyBundle> {
    let doc = parse_json(text)?;
    Ok(match detect_numeric_mode(&doc, forced)? {
        NumericMode::Rational => AnyBundle::Rational(bundle_from_value(&doc)?),
        NumericMode::Float => AnyBundle::Float(bundle_from_value(&doc)?),
    })
}

pub fn code_from_value<M: Mass>(doc: &Value) -> Result<GeneticCode<M>> {
    let map = object(doc, "", &["name", "ground", "amino_acids", "evidence"])?;
    let name = match map.get("name") {
        Some(Value::String(name)) => name.clone(),
        Some(_) => return Err(Error::Parse("expected a string".into()).at("name")),
        None => String::new(),
    };
    let ground = strings(field(map, "ground", "")?, "ground")?;
    for (i, label) in ground.iter().enumerate() {
        label.parse::<Codon>().map_err(|e| e.at(format!("ground[{i}]")))?;
    }
    let named = possibilities(field(map, "amino_acids", "")?, "amino_acids")?;
    let frame = Arc::new(Frame::new(ground, named).map_err(|e| e.at("amino_acids"))?);
    if frame.ground_len() != 64 {
        return Err(Error::Parse(format!("ground lists {} codons, expected all 64", frame.ground_len())).at("ground"));
    }

    let evidence = object(field(map, "evidence", "")?, "evidence", &["1", "2", "3"])?;
    let mut cells = BTreeMap::new();
    for (position_key, row) in evidence {
        let row_path = format!("evidence.{position_key}");
        let position: u8 = position_key
            .parse()
            .map_err(|_| Error::InvalidPosition(position_key.clone()).at(&row_path))?;
        let row = object(row, &row_path, &["A", "C", "G", "U"])?;
        for (letter, body) in row {
            let body_path = format!("{row_path}.{letter}");
            let nucleotide = letter
                .chars()
                .next()
                .ok_or_else(|| Error::InvalidNucleotide(letter.clone()))
                .and_then(Nucleotide::from_char)
                .map_err(|e| e.at(&body_path))?;
            let cell = Cell::new(position, nucleotide).map_err(|e| e.at(&body_path))?;
            cells.insert(cell, body_from_value(&frame, body, Regime::Closed, &body_path)?);
        }
    }
    GeneticCode::new(name, &frame, cells).map_err(|e| match e {
        Error::MissingEvidenceCell { .. } => e.at("evidence"),
        other => other,
    })
}

pub fn read_code(text: &str, forced: Option<NumericMode>) -> Result<AnyCode> {
    let doc = parse_json(text)?;
    Ok(match detect_numeric_mode(&doc, forced)? {
        NumericMode::Rational => AnyCode::Rational(code_from_value(&doc)?),
        NumericMode::Float => AnyCode::Float(code_from_value(&doc)?),
    })
}

/// One of the shipped codes: `toy`, `toy-ambiguous` or `standard`.
/// Rational unless `forced` says otherwise.
pub fn builtin_code(name: &str, forced: Option<NumericMode>) -> Result<AnyCode> {
    let float = forced == Some(NumericMode::Float);
    match name {
        "toy" | "toy-ambiguous" => {
            let ambiguous = name == "toy-ambiguous";
            Ok(if float {
                AnyCode::Float(GeneticCode::toy(ambiguous))
            } else {
                AnyCode::Rational(GeneticCode::toy(ambiguous))
            })
        }
        "standard" if float => Ok(AnyCode::Float(GeneticCode::standard()?)),
        "standard" => Ok(AnyCode::Rational(GeneticCode::standard()?)),
        other => Err(Error::Parse(format!(
            "unknown builtin code `{other}` (expected toy, toy-ambiguous or standard)"
        ))),
    }
}
