//! Generalized entropy over named possibilities:
//!
//! ```text
//! H = −Σᵢ Pl(Aᵢ)·log₂ Pl(Aᵢ) / e^(Pl(Aᵢ) − Bel(Aᵢ))  +  Σᵢ [Pl(Aᵢ) − Bel(Aᵢ)]
//! ```
//!
//! The first sum is the conflict term and collapses to Shannon's entropy when
//! the possibilities are disjoint singletons carrying a Bayesian body. The
//! second sum is the ambiguity term. `0·log 0` is taken as 0.

use std::collections::BTreeMap;

use crate::body::BodyOfEvidence;
use crate::error::{Error, Result};
use crate::evaluation::{interval, EvalMode, Hypothesis};
use crate::numeric::{Mass, FLOAT_NORMALIZATION_TOLERANCE};

#[derive(Debug, Clone, PartialEq)]
pub struct PossibilityTerms<M> {
    pub belief: M,
    pub plausibility: M,
    pub conflict_contribution: f64,
    pub ambiguity_contribution: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyReport<M> {
    /// Bits.
    pub total: f64,
    pub conflict_term: f64,
    pub ambiguity_term: f64,
    pub mode: EvalMode,
    pub per_possibility: BTreeMap<String, PossibilityTerms<M>>,
}

fn plogp(p: f64) -> f64 {
    if p > 0.0 {
        p * p.log2()
    } else {
        0.0
    }
}

pub fn entropy<M: Mass>(body: &BodyOfEvidence<M>, mode: EvalMode) -> Result<EntropyReport<M>> {
    let frame = body.frame();
    if frame.possibility_count() == 0 {
        return Err(Error::NoNamedPossibilities);
    }
    let mut per_possibility = BTreeMap::new();
    let mut conflict_term = 0.0;
    let mut ambiguity_term = 0.0;
    for (name, set) in frame.possibilities() {
        let eval = interval(body, &Hypothesis::Set(set.clone()), mode)?;
        let gap = (eval.plausibility.clone() - eval.belief.clone()).to_f64();
        let conflict = -plogp(eval.plausibility.to_f64()) / gap.exp();
        conflict_term += conflict;
        ambiguity_term += gap;
        per_possibility.insert(
            name.to_string(),
            PossibilityTerms {
                belief: eval.belief,
                plausibility: eval.plausibility,
                conflict_contribution: conflict,
                ambiguity_contribution: gap,
            },
        );
    }
    Ok(EntropyReport {
        total: conflict_term + ambiguity_term,
        conflict_term,
        ambiguity_term,
        mode,
        per_possibility,
    })
}

/// Σ [Pl(Aᵢ) − Bel(Aᵢ)] in the body's own arithmetic.
pub fn ambiguity<M: Mass>(body: &BodyOfEvidence<M>, mode: EvalMode) -> Result<M> {
    let frame = body.frame();
    if frame.possibility_count() == 0 {
        return Err(Error::NoNamedPossibilities);
    }
    let mut total = M::zero();
    for (_, set) in frame.possibilities() {
        let eval = interval(body, &Hypothesis::Set(set.clone()), mode)?;
        total = total + (eval.plausibility - eval.belief);
    }
    Ok(total)
}

/// Shannon entropy in bits.
pub fn shannon(p: &[f64]) -> Result<f64> {
    if p.is_empty() {
        return Err(Error::NotAProbabilityVector("empty vector".into()));
    }
    if let Some(bad) = p.iter().find(|x| !x.is_finite() || **x < 0.0) {
        return Err(Error::NotAProbabilityVector(format!(
            "entry {bad} is not a probability"
        )));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > FLOAT_NORMALIZATION_TOLERANCE {
        return Err(Error::NotAProbabilityVector(format!("entries sum to {total}")));
    }
    Ok(-p.iter().copied().map(plogp).sum::<f64>())
}
