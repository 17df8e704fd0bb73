//! Greedy entropy descent over genetic codes.
//!
//! Each step proposes one move from the current code's neighbourhood, drawn
//! without replacement in a seeded random order, and keeps it only if the
//! mean codon entropy drops. A full pass through the neighbourhood with no
//! improvement means a local minimum has been reached.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::code::{Cell, Codon, GeneticCode};
use super::decode::{code_ambiguity, codon_entropies, codon_entropy, mean};
use crate::body::{BodyOfEvidence, FocalElement, Regime};
use crate::error::Result;
use crate::evaluation::EvalMode;
use crate::numeric::Mass;

/// Mass moved by one shift proposal, at most what is available.
pub const SHIFT_QUANTUM: (i64, i64) = (1, 3);

/// A candidate must beat the current entropy by more than this to be kept.
pub const DESCENT_MARGIN: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftDirection {
    /// Commit mass held on Θ to the amino acid.
    TowardPossibility,
    /// Release the amino acid's mass back to Θ.
    TowardTheta,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Mutation<M> {
    Shift {
        cell: Cell,
        possibility: String,
        direction: ShiftDirection,
        amount: M,
    },
    /// Exchange the masses two amino acids hold in one cell.
    Swap { cell: Cell, first: String, second: String },
}

impl<M: Mass> Mutation<M> {
    pub fn cell(&self) -> Cell {
        match self {
            Mutation::Shift { cell, .. } | Mutation::Swap { cell, .. } => *cell,
        }
    }

    pub fn apply(&self, code: &GeneticCode<M>) -> Result<GeneticCode<M>> {
        let frame = code.frame();
        let body = code.cell(self.cell());
        let mut masses: BTreeMap<FocalElement, M> = body.masses().clone();
        let named =
            |name: &str| FocalElement::Subset(frame.possibility(name).cloned().unwrap_or_else(|| frame.empty_set()));
        let mut adjust = |focal: FocalElement, delta: M, add: bool| {
            let slot = masses.entry(focal).or_insert_with(M::zero);
            *slot = if add {
                slot.clone() + delta
            } else {
                slot.clone() - delta
            };
        };
        match self {
            Mutation::Shift {
                possibility,
                direction,
                amount,
                ..
            } => {
                let target = named(possibility);
                let toward = *direction == ShiftDirection::TowardPossibility;
                adjust(target, amount.clone(), toward);
                adjust(FocalElement::Theta, amount.clone(), !toward);
            }
            Mutation::Swap { first, second, .. } => {
                let a = named(first);
                let b = named(second);
                let ma = body.mass(&a);
                let mb = body.mass(&b);
                masses.insert(a, mb);
                masses.insert(b, ma);
            }
        }
        let next = BodyOfEvidence::new(frame, masses, Regime::Closed)?;
        Ok(code.with_cell(self.cell(), next))
    }
}

impl<M: Mass> fmt::Display for Mutation<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mutation::Shift {
                cell,
                possibility,
                direction: ShiftDirection::TowardPossibility,
                amount,
            } => write!(f, "shift {} theta->{possibility} {}", cell, amount.render()),
            Mutation::Shift {
                cell,
                possibility,
                direction: ShiftDirection::TowardTheta,
                amount,
            } => write!(f, "shift {} {possibility}->theta {}", cell, amount.render()),
            Mutation::Swap { cell, first, second } => write!(f, "swap {} {first}<->{second}", cell),
        }
    }
}

/// Every non-trivial single move from `code`, in a fixed order.
pub fn neighborhood<M: Mass>(code: &GeneticCode<M>) -> Vec<Mutation<M>> {
    let quantum = M::from_ratio(SHIFT_QUANTUM.0, SHIFT_QUANTUM.1);
    let frame = code.frame();
    let names: Vec<&str> = frame.possibility_names().collect();
    let mut moves = Vec::new();
    for (cell, body) in code.cells() {
        let theta = body.theta_mass();
        for (i, name) in names.iter().enumerate() {
            let focal = FocalElement::Subset(frame.possibility(name).cloned().unwrap_or_else(|| frame.empty_set()));
            let held = body.mass(&focal);
            if !theta.is_zero() {
                moves.push(Mutation::Shift {
                    cell,
                    possibility: name.to_string(),
                    direction: ShiftDirection::TowardPossibility,
                    amount: M::min_of(quantum.clone(), theta.clone()),
                });
            }
            if !held.is_zero() {
                moves.push(Mutation::Shift {
                    cell,
                    possibility: name.to_string(),
                    direction: ShiftDirection::TowardTheta,
                    amount: M::min_of(quantum.clone(), held.clone()),
                });
            }
            for other in &names[i + 1..] {
                let other_focal =
                    FocalElement::Subset(frame.possibility(other).cloned().unwrap_or_else(|| frame.empty_set()));
                if body.mass(&other_focal) != held {
                    moves.push(Mutation::Swap {
                        cell,
                        first: name.to_string(),
                        second: other.to_string(),
                    });
                }
            }
        }
    }
    moves
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionStep {
    pub step: usize,
    pub proposal: String,
    /// Entropy of the proposed code.
    pub entropy: f64,
    pub accepted: bool,
    /// Entropy of the current code after this step.
    pub current: f64,
    /// Ambiguity term of the current code after this step.
    pub ambiguity: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionTrajectory<M> {
    pub mode: EvalMode,
    pub seed: u64,
    pub initial_entropy: f64,
    pub initial_ambiguity: f64,
    pub steps: Vec<EvolutionStep>,
    pub final_code: GeneticCode<M>,
    /// Stopped because a full neighbourhood sweep found no improvement.
    pub converged: bool,
}

impl<M: Mass> EvolutionTrajectory<M> {
    /// The initial entropy followed by the entropy after each accepted move.
    pub fn accepted_entropies(&self) -> Vec<f64> {
        std::iter::once(self.initial_entropy)
            .chain(self.steps.iter().filter(|s| s.accepted).map(|s| s.entropy))
            .collect()
    }

    pub fn accepted_count(&self) -> usize {
        self.steps.iter().filter(|s| s.accepted).count()
    }

    pub fn final_entropy(&self) -> f64 {
        self.steps.last().map_or(self.initial_entropy, |s| s.current)
    }

    pub fn final_ambiguity(&self) -> f64 {
        self.steps.last().map_or(self.initial_ambiguity, |s| s.ambiguity)
    }

    /// First step after which the code's ambiguity term is zero.
    pub fn first_unambiguous_step(&self) -> Option<usize> {
        if self.initial_ambiguity == 0.0 {
            return Some(0);
        }
        self.steps.iter().find(|s| s.ambiguity == 0.0).map(|s| s.step)
    }
}

/// First-improvement local search on [`code_entropy`](super::code_entropy).
pub fn evolve_code<M: Mass>(
    initial: &GeneticCode<M>,
    max_steps: usize,
    seed: u64,
    mode: EvalMode,
) -> Result<EvolutionTrajectory<M>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = initial.clone();
    let mut per_codon = codon_entropies(&current, mode)?;
    let initial_entropy = mean(&per_codon);
    let initial_ambiguity = code_ambiguity(&current, mode)?;
    let mut current_entropy = initial_entropy;
    let mut current_ambiguity = initial_ambiguity;
    let mut steps = Vec::new();
    let mut converged = false;

    'search: while steps.len() < max_steps {
        let mut moves = neighborhood(&current);
        moves.shuffle(&mut rng);
        let mut improved = false;
        for mutation in moves {
            if steps.len() >= max_steps {
                break 'search;
            }
            let candidate = mutation.apply(&current)?;
            // only codons read through the mutated cell change
            let cell = mutation.cell();
            let mut candidate_per_codon = per_codon.clone();
            for (slot, codon) in Codon::all().enumerate() {
                if codon.nucleotide(cell.position) == cell.nucleotide {
                    candidate_per_codon[slot] = codon_entropy(&candidate, codon, mode)?;
                }
            }
            let entropy = mean(&candidate_per_codon);
            let accepted = entropy < current_entropy - DESCENT_MARGIN;
            if accepted {
                current = candidate;
                per_codon = candidate_per_codon;
                current_entropy = entropy;
                current_ambiguity = code_ambiguity(&current, mode)?;
            }
            steps.push(EvolutionStep {
                step: steps.len() + 1,
                proposal: mutation.to_string(),
                entropy,
                accepted,
                current: current_entropy,
                ambiguity: current_ambiguity,
            });
            if accepted {
                improved = true;
                break;
            }
        }
        if !improved {
            converged = true;
            break;
        }
    }

    Ok(EvolutionTrajectory {
        mode,
        seed,
        initial_entropy,
        initial_ambiguity,
        steps,
        final_code: current,
        converged,
    })
}
