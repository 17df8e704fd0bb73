//! Evidence theory over frames whose possibilities may overlap.
//!
//! Bodies of evidence combine under Dempster's normalized rule or Smets'
//! unnormalized rule, evaluate to belief/plausibility intervals in three
//! regimes, and feed a generalized entropy. The [`codon`] module uses all of
//! this to decode codons as a sequence of nucleotide testimonies and to
//! evolve codes by entropy descent.

pub mod body;
pub mod cli;
pub mod codon;
pub mod entropy;
pub mod error;
pub mod evaluation;
pub mod format;
pub mod frame;
pub mod fusion;
pub mod numeric;
pub mod refine;

pub use body::{BodyOfEvidence, FocalElement, Regime};
pub use entropy::{ambiguity, entropy, shannon, EntropyReport};
pub use error::{Error, ErrorKind, Result};
pub use evaluation::{
    belief, compare_hypotheses, interval, plausibility, Criterion, EvalMode, EvalResult, Hypothesis, Preference,
};
pub use frame::{ElementSet, Frame};
pub use fusion::{
    combine, combine_all, combine_dempster, combine_smets, conflict_mass, discount, CombinationReport, Rule,
};
pub use numeric::{Mass, NumericMode, Rational};
pub use refine::{coarsen, refine};
