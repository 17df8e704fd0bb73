//! Codon decoding as sequential evidence fusion.
//!
//! A [`GeneticCode`] assigns a body of evidence to every (position,
//! nucleotide) pair. Decoding a codon folds its three testimonies in arrival
//! order; ambiguous codes leave some codons undecided, which translation turns
//! into a distribution over protein sequences.

mod code;
mod decode;
mod evolve;
mod standard;

pub use code::{toy_frame, Cell, Codon, GeneticCode, Nucleotide};
pub use decode::{
    code_ambiguity, code_entropy, decide, decode_bodies, decode_codon, final_body, translate, Decision, DecodingTrace,
    StatisticalProtein, TraceStep,
};
pub use evolve::{
    evolve_code, neighborhood, EvolutionStep, EvolutionTrajectory, Mutation, ShiftDirection, DESCENT_MARGIN,
    SHIFT_QUANTUM,
};
pub use standard::{standard_assignments, standard_frame};
