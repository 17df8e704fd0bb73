use std::collections::BTreeMap;

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::code::{Codon, GeneticCode};
use crate::body::BodyOfEvidence;
use crate::entropy::entropy;
use crate::error::{Error, Result};
use crate::evaluation::{interval, EvalMode, EvalResult, Hypothesis};
use crate::fusion::{combine, combine_all, Rule};
use crate::numeric::Mass;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    AminoAcid(String),
    /// The amino acids tied on belief.
    Undecided(Vec<String>),
}

impl Decision {
    pub fn is_decided(&self) -> bool {
        matches!(self, Decision::AminoAcid(_))
    }

    pub fn label(&self) -> &str {
        match self {
            Decision::AminoAcid(name) => name,
            Decision::Undecided(_) => "undecided",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep<M> {
    /// Arrival index, starting at 1.
    pub time: usize,
    pub incoming: BodyOfEvidence<M>,
    pub cumulative: BodyOfEvidence<M>,
    /// Conflict of this step's pairwise combination (zero at the first step).
    pub conflict: M,
    pub evaluations: BTreeMap<String, EvalResult<M>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecodingTrace<M> {
    pub codon: Codon,
    pub rule: Rule,
    pub mode: EvalMode,
    pub steps: Vec<TraceStep<M>>,
    pub decision: Decision,
}

impl<M: Mass> DecodingTrace<M> {
    pub fn final_body(&self) -> &BodyOfEvidence<M> {
        &self.steps[self.steps.len() - 1].cumulative
    }
}

fn evaluate_all<M: Mass>(body: &BodyOfEvidence<M>, mode: EvalMode) -> Result<BTreeMap<String, EvalResult<M>>> {
    body.frame()
        .possibilities()
        .map(|(name, set)| Ok((name.to_string(), interval(body, &Hypothesis::Set(set.clone()), mode)?)))
        .collect()
}

/// Unique table-mode belief maximizer, or the tied set.
pub fn decide<M: Mass>(body: &BodyOfEvidence<M>) -> Result<Decision> {
    let beliefs = evaluate_all(body, EvalMode::Table)?;
    let best = beliefs
        .values()
        .map(|r| r.belief.clone())
        .reduce(|a, b| if b > a { b } else { a })
        .ok_or(Error::NoNamedPossibilities)?;
    let mut tied: Vec<String> = beliefs
        .into_iter()
        .filter(|(_, r)| r.belief.indifferent(&best))
        .map(|(name, _)| name)
        .collect();
    if tied.len() == 1 {
        Ok(Decision::AminoAcid(tied.remove(0)))
    } else {
        Ok(Decision::Undecided(tied))
    }
}

/// Folds three testimonies in the given order, recording every step.
pub fn decode_bodies<M: Mass>(
    codon: Codon,
    incoming: [BodyOfEvidence<M>; 3],
    rule: Rule,
    mode: EvalMode,
) -> Result<DecodingTrace<M>> {
    let mut steps: Vec<TraceStep<M>> = Vec::with_capacity(3);
    for (i, body) in incoming.into_iter().enumerate() {
        let (cumulative, conflict) = match steps.last() {
            None => (body.clone(), M::zero()),
            Some(prev) => {
                let report = combine(rule, &prev.cumulative, &body).map_err(|e| e.at(format!("{codon}[{}]", i + 1)))?;
                (report.result, report.conflict)
            }
        };
        let evaluations = evaluate_all(&cumulative, mode)?;
        steps.push(TraceStep {
            time: i + 1,
            incoming: body,
            cumulative,
            conflict,
            evaluations,
        });
    }
    let decision = decide(&steps[2].cumulative)?;
    Ok(DecodingTrace {
        codon,
        rule,
        mode,
        steps,
        decision,
    })
}

pub fn decode_codon<M: Mass>(
    code: &GeneticCode<M>,
    triplet: &str,
    rule: Rule,
    mode: EvalMode,
) -> Result<DecodingTrace<M>> {
    let codon: Codon = triplet.parse()?;
    decode_bodies(codon, code.bodies_for(codon), rule, mode)
}

/// Body after all three nucleotides under Smets' rule.
pub fn final_body<M: Mass>(code: &GeneticCode<M>, codon: Codon) -> Result<BodyOfEvidence<M>> {
    Ok(combine_all(Rule::Smets, &code.bodies_for(codon))?.result)
}

/// Entropy of every codon's decoded body, in [`Codon::all`] order.
pub(crate) fn codon_entropies<M: Mass>(code: &GeneticCode<M>, mode: EvalMode) -> Result<Vec<f64>> {
    Codon::all().map(|codon| codon_entropy(code, codon, mode)).collect()
}

pub(crate) fn codon_entropy<M: Mass>(code: &GeneticCode<M>, codon: Codon, mode: EvalMode) -> Result<f64> {
    Ok(entropy(&final_body(code, codon)?, mode)?.total)
}

pub(crate) fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Mean entropy over all 64 codons of the fully decoded body.
pub fn code_entropy<M: Mass>(code: &GeneticCode<M>, mode: EvalMode) -> Result<f64> {
    Ok(mean(&codon_entropies(code, mode)?))
}

/// Mean ambiguity term over all 64 codons.
pub fn code_ambiguity<M: Mass>(code: &GeneticCode<M>, mode: EvalMode) -> Result<f64> {
    let mut total = 0.0;
    for codon in Codon::all() {
        total += entropy(&final_body(code, codon)?, mode)?.ambiguity_term;
    }
    Ok(total / 64.0)
}

/// Empirical distribution of protein sequences from an ambiguous code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatisticalProtein {
    pub mrna: String,
    pub samples: u64,
    pub seed: u64,
    /// Amino acid names joined by `-`, with how often each sequence came up.
    pub counts: BTreeMap<String, u64>,
}

impl StatisticalProtein {
    pub fn frequency(&self, sequence: &str) -> f64 {
        self.counts.get(sequence).copied().unwrap_or(0) as f64 / self.samples as f64
    }

    pub fn distribution(&self) -> BTreeMap<String, f64> {
        self.counts
            .iter()
            .map(|(seq, &n)| (seq.clone(), n as f64 / self.samples as f64))
            .collect()
    }
}

enum Site {
    Fixed(String),
    Random {
        names: Vec<String>,
        weights: Option<WeightedIndex<f64>>,
    },
}

impl Site {
    fn draw<R: Rng>(&self, rng: &mut R) -> &str {
        match self {
            Site::Fixed(name) => name,
            Site::Random { names, weights } => {
                let i = match weights {
                    Some(w) => w.sample(rng),
                    None => rng.gen_range(0..names.len()),
                };
                &names[i]
            }
        }
    }
}

/// Translates `mrna` codon by codon. Undecided codons draw among the tied
/// amino acids with probability proportional to table-mode plausibility
/// (uniformly if all of those are zero).
pub fn translate<M: Mass>(code: &GeneticCode<M>, mrna: &str, samples: u64, seed: u64) -> Result<StatisticalProtein> {
    let letters: Vec<char> = mrna.trim().chars().collect();
    if !letters.len().is_multiple_of(3) {
        return Err(Error::LengthNotMultipleOfThree(letters.len()));
    }
    if samples == 0 {
        return Err(Error::ZeroSamples);
    }
    let mut cache: BTreeMap<Codon, usize> = BTreeMap::new();
    let mut sites: Vec<Site> = Vec::new();
    let mut layout = Vec::with_capacity(letters.len() / 3);
    for chunk in letters.chunks(3) {
        let codon: Codon = chunk.iter().collect::<String>().parse()?;
        if let Some(&i) = cache.get(&codon) {
            layout.push(i);
            continue;
        }
        let body = final_body(code, codon)?;
        let site = match decide(&body)? {
            Decision::AminoAcid(name) => Site::Fixed(name),
            Decision::Undecided(names) => {
                let weights: Vec<f64> = names
                    .iter()
                    .map(|n| {
                        let h = Hypothesis::possibility(body.frame(), n)?;
                        Ok(interval(&body, &h, EvalMode::Table)?.plausibility.to_f64())
                    })
                    .collect::<Result<_>>()?;
                Site::Random {
                    weights: WeightedIndex::new(&weights).ok(),
                    names,
                }
            }
        };
        cache.insert(codon, sites.len());
        layout.push(sites.len());
        sites.push(site);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for _ in 0..samples {
        let sequence: Vec<&str> = layout.iter().map(|&i| sites[i].draw(&mut rng)).collect();
        *counts.entry(sequence.join("-")).or_insert(0) += 1;
    }
    Ok(StatisticalProtein {
        mrna: letters.iter().map(|c| c.to_ascii_uppercase()).collect(),
        samples,
        seed,
        counts,
    })
}
