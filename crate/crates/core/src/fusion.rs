//! Conjunctive combination of bodies of evidence.
//!
//! Both rules share the same numerator: every pair of focal elements sends
//! the product of its masses to their intersection. Dempster's rule then
//! discards the mass that landed on ∅ and rescales; Smets' rule keeps it on
//! ∅ as explicit conflict.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;

use crate::body::{BodyOfEvidence, FocalElement, Regime};
use crate::error::{Error, Result};
use crate::numeric::Mass;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Dempster,
    Smets,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::Dempster => "dempster",
            Rule::Smets => "smets",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dempster" => Ok(Rule::Dempster),
            "smets" => Ok(Rule::Smets),
            other => Err(Error::Parse(format!("unknown combination rule `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CombinationReport<M> {
    pub result: BodyOfEvidence<M>,
    /// Mass that fell on ∅ before any renormalization.
    pub conflict: M,
    pub rule: Rule,
}

fn check_frames<M: Mass>(a: &BodyOfEvidence<M>, b: &BodyOfEvidence<M>) -> Result<()> {
    if a.same_frame(b) {
        Ok(())
    } else {
        Err(Error::FrameMismatch)
    }
}

/// Unnormalized conjunctive sum. The ∅ entry holds the conflict.
fn numerator<M: Mass>(a: &BodyOfEvidence<M>, b: &BodyOfEvidence<M>) -> BTreeMap<FocalElement, M> {
    let mut out: BTreeMap<FocalElement, M> = BTreeMap::new();
    for (x, mx) in a.focal_elements() {
        for (y, my) in b.focal_elements() {
            let product = mx.clone() * my.clone();
            let slot = out.entry(x.intersect(y)).or_insert_with(M::zero);
            *slot = slot.clone() + product;
        }
    }
    out
}

/// Σ m_a(X)·m_b(Y) over pairs whose intersection is ∅.
pub fn conflict_mass<M: Mass>(a: &BodyOfEvidence<M>, b: &BodyOfEvidence<M>) -> Result<M> {
    check_frames(a, b)?;
    let mut conflict = M::zero();
    for (x, mx) in a.focal_elements() {
        for (y, my) in b.focal_elements() {
            if x.intersect(y) == FocalElement::Empty {
                conflict = conflict + mx.clone() * my.clone();
            }
        }
    }
    Ok(conflict)
}

/// Dempster-Shafer combination of two closed-regime bodies.
pub fn combine_dempster<M: Mass>(a: &BodyOfEvidence<M>, b: &BodyOfEvidence<M>) -> Result<CombinationReport<M>> {
    check_frames(a, b)?;
    if a.regime() != Regime::Closed || b.regime() != Regime::Closed {
        return Err(Error::RegimeMismatch);
    }
    let mut masses = numerator(a, b);
    let conflict = masses.remove(&FocalElement::Empty).unwrap_or_else(M::zero);
    let agreement = M::one() - conflict.clone();
    if agreement.is_zero() || masses.values().all(Zero::is_zero) {
        return Err(Error::TotalConflict);
    }
    for mass in masses.values_mut() {
        *mass = mass.clone() / agreement.clone();
    }
    Ok(CombinationReport {
        result: BodyOfEvidence::from_raw(Arc::clone(a.frame()), masses, Regime::Closed),
        conflict,
        rule: Rule::Dempster,
    })
}

/// Smets' unnormalized combination; conflict stays on ∅.
pub fn combine_smets<M: Mass>(a: &BodyOfEvidence<M>, b: &BodyOfEvidence<M>) -> Result<CombinationReport<M>> {
    check_frames(a, b)?;
    let masses = numerator(a, b);
    let conflict = masses.get(&FocalElement::Empty).cloned().unwrap_or_else(M::zero);
    Ok(CombinationReport {
        result: BodyOfEvidence::from_raw(Arc::clone(a.frame()), masses, Regime::OpenTbm),
        conflict,
        rule: Rule::Smets,
    })
}

pub fn combine<M: Mass>(rule: Rule, a: &BodyOfEvidence<M>, b: &BodyOfEvidence<M>) -> Result<CombinationReport<M>> {
    match rule {
        Rule::Dempster => combine_dempster(a, b),
        Rule::Smets => combine_smets(a, b),
    }
}

/// Left fold of the pairwise rule.
///
/// The reported conflict is `1 − Π(1 − Kᵢ)` over the steps for Dempster's
/// rule and the final ∅ mass for Smets' rule. Both are independent of the
/// input order.
pub fn combine_all<M: Mass>(rule: Rule, bodies: &[BodyOfEvidence<M>]) -> Result<CombinationReport<M>> {
    let (first, rest) = bodies.split_first().ok_or(Error::EmptyList)?;
    let mut current = first.clone();
    let mut agreement = M::one();
    for (i, body) in rest.iter().enumerate() {
        let step = combine(rule, &current, body).map_err(|e| e.at(format!("bodies[{}]", i + 1)))?;
        agreement = agreement * (M::one() - step.conflict);
        current = step.result;
    }
    let conflict = match rule {
        Rule::Dempster => M::one() - agreement,
        Rule::Smets => current.empty_mass(),
    };
    Ok(CombinationReport {
        result: current,
        conflict,
        rule,
    })
}

/// Classical reliability discounting: subset masses scale by `alpha`, the
/// remainder moves to Θ.
pub fn discount<M: Mass>(body: &BodyOfEvidence<M>, alpha: M) -> Result<BodyOfEvidence<M>> {
    if alpha.is_negative() || alpha > M::one() {
        return Err(Error::AlphaOutOfRange(alpha.render()));
    }
    if body.regime() != Regime::Closed {
        return Err(Error::RegimeMismatch);
    }
    let mut masses: BTreeMap<FocalElement, M> = BTreeMap::new();
    for (focal, mass) in body.focal_elements() {
        if let FocalElement::Subset(_) = focal {
            masses.insert(focal.clone(), mass.clone() * alpha.clone());
        }
    }
    let theta = M::one() - alpha.clone() + alpha * body.theta_mass();
    masses.insert(FocalElement::Theta, theta);
    Ok(BodyOfEvidence::from_raw(
        Arc::clone(body.frame()),
        masses,
        Regime::Closed,
    ))
}
