//! Belief and plausibility under three regimes.
//!
//! * `Literal` sums subsets of `H` for belief and everything meeting `H`
//!   (Θ included) for plausibility.
//! * `Table` only evaluates named possibilities. Belief counts subsets of `H`
//!   that lie in no other named possibility; plausibility counts every subset
//!   of `H`. Θ counts toward neither. Overlapping possibilities therefore
//!   split shared mass: it is plausible for both and believed by neither.
//! * `Tbm` follows `Literal` for proper hypotheses and returns the raw masses
//!   of ∅ and Θ for those two labels.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::body::{BodyOfEvidence, FocalElement};
use crate::error::{Error, Result};
use crate::frame::{ElementSet, Frame};
use crate::numeric::Mass;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EvalMode {
    #[default]
    Literal,
    Table,
    Tbm,
}

impl EvalMode {
    pub fn as_str(self) -> &'static str {
        match self {
            EvalMode::Literal => "literal",
            EvalMode::Table => "table",
            EvalMode::Tbm => "tbm",
        }
    }
}

impl fmt::Display for EvalMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EvalMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "literal" => Ok(EvalMode::Literal),
            "table" => Ok(EvalMode::Table),
            "tbm" => Ok(EvalMode::Tbm),
            other => Err(Error::Parse(format!("unknown evaluation mode `{other}`"))),
        }
    }
}

/// A hypothesis: a nonempty subset of the ground, or one of the two labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Hypothesis {
    Set(ElementSet),
    Theta,
    Empty,
}

impl Hypothesis {
    pub fn possibility(frame: &Frame, name: &str) -> Result<Self> {
        frame
            .possibility(name)
            .map(|set| Hypothesis::Set(set.clone()))
            .ok_or_else(|| Error::UnknownPossibility(name.to_string()))
    }

    pub fn from_labels<L, E>(frame: &Frame, labels: L) -> Result<Self>
    where
        L: IntoIterator<Item = E>,
        E: AsRef<str>,
    {
        let set = frame.subset(labels)?;
        if set.is_empty() {
            return Err(Error::HypothesisOutsideFrame);
        }
        Ok(Hypothesis::Set(set))
    }

    /// Resolves a possibility name, or the labels `theta` / `empty`.
    pub fn parse(frame: &Frame, text: &str) -> Result<Self> {
        if let Some(set) = frame.possibility(text) {
            return Ok(Hypothesis::Set(set.clone()));
        }
        match text {
            "theta" | "Θ" => Ok(Hypothesis::Theta),
            "empty" | "∅" => Ok(Hypothesis::Empty),
            other => Err(Error::UnknownPossibility(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalResult<M> {
    pub belief: M,
    pub plausibility: M,
    pub mode: EvalMode,
}

fn check_set(frame: &Frame, set: &ElementSet) -> Result<()> {
    if set.is_empty() || !frame.contains_set(set) {
        Err(Error::HypothesisOutsideFrame)
    } else {
        Ok(())
    }
}

fn literal<M: Mass>(body: &BodyOfEvidence<M>, h: &ElementSet) -> (M, M) {
    let mut bel = M::zero();
    let mut pl = M::zero();
    for (focal, mass) in body.focal_elements() {
        match focal {
            FocalElement::Subset(c) => {
                if c.is_subset(h) {
                    bel = bel + mass.clone();
                }
                if c.intersects(h) {
                    pl = pl + mass.clone();
                }
            }
            FocalElement::Theta => pl = pl + mass.clone(),
            FocalElement::Empty => {}
        }
    }
    (bel, pl)
}

fn table<M: Mass>(body: &BodyOfEvidence<M>, h: &ElementSet) -> Result<(M, M)> {
    let frame = body.frame();
    if !frame.is_named(h) {
        return Err(Error::TableModeOnUnnamedHypothesis);
    }
    let others: Vec<&ElementSet> = frame
        .possibilities()
        .map(|(_, set)| set)
        .filter(|set| *set != h)
        .collect();
    let mut bel = M::zero();
    let mut pl = M::zero();
    for (focal, mass) in body.focal_elements() {
        if let FocalElement::Subset(c) = focal {
            if c.is_subset(h) {
                pl = pl + mass.clone();
                if !others.iter().any(|other| c.is_subset(other)) {
                    bel = bel + mass.clone();
                }
            }
        }
    }
    Ok((bel, pl))
}

/// Belief and plausibility from one pass over the focal elements.
pub fn interval<M: Mass>(body: &BodyOfEvidence<M>, h: &Hypothesis, mode: EvalMode) -> Result<EvalResult<M>> {
    let (belief, plausibility) = match (mode, h) {
        (_, Hypothesis::Set(set)) => {
            check_set(body.frame(), set)?;
            match mode {
                EvalMode::Table => table(body, set)?,
                EvalMode::Literal | EvalMode::Tbm => literal(body, set),
            }
        }
        (EvalMode::Table, _) => return Err(Error::TableModeOnUnnamedHypothesis),
        (EvalMode::Literal, Hypothesis::Theta) => (M::one(), M::one()),
        (EvalMode::Literal, Hypothesis::Empty) => (M::zero(), M::zero()),
        (EvalMode::Tbm, Hypothesis::Theta) => (body.theta_mass(), body.theta_mass()),
        (EvalMode::Tbm, Hypothesis::Empty) => (body.empty_mass(), body.empty_mass()),
    };
    Ok(EvalResult {
        belief,
        plausibility,
        mode,
    })
}

pub fn belief<M: Mass>(body: &BodyOfEvidence<M>, h: &Hypothesis, mode: EvalMode) -> Result<M> {
    interval(body, h, mode).map(|r| r.belief)
}

pub fn plausibility<M: Mass>(body: &BodyOfEvidence<M>, h: &Hypothesis, mode: EvalMode) -> Result<M> {
    interval(body, h, mode).map(|r| r.plausibility)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    ByBelief,
    ByPlausibility,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preference {
    First,
    Second,
    Indifferent,
}

impl Preference {
    pub fn flipped(self) -> Self {
        match self {
            Preference::First => Preference::Second,
            Preference::Second => Preference::First,
            Preference::Indifferent => Preference::Indifferent,
        }
    }
}

pub fn compare_hypotheses<M: Mass>(
    body: &BodyOfEvidence<M>,
    first: &Hypothesis,
    second: &Hypothesis,
    criterion: Criterion,
    mode: EvalMode,
) -> Result<Preference> {
    let a = interval(body, first, mode)?;
    let b = interval(body, second, mode)?;
    let (x, y) = match criterion {
        Criterion::ByBelief => (a.belief, b.belief),
        Criterion::ByPlausibility => (a.plausibility, b.plausibility),
    };
    if x.indifferent(&y) {
        return Ok(Preference::Indifferent);
    }
    Ok(match x.partial_cmp(&y) {
        Some(Ordering::Greater) => Preference::First,
        Some(Ordering::Less) => Preference::Second,
        _ => Preference::Indifferent,
    })
}
