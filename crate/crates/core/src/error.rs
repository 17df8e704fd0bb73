use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Whether a failure means the input was invalid or the computation itself
/// could not proceed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    Computation,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground universe is empty")]
    EmptyGround,
    #[error("ground universe has {0} elements; at most {max} are supported", max = crate::frame::MAX_GROUND)]
    GroundTooLarge(usize),
    #[error("labels must be nonempty")]
    EmptyLabel,
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("possibility `{0}` is empty")]
    EmptyPossibility(String),
    #[error("unknown ground label `{0}`")]
    UnknownLabel(String),
    #[error("unknown possibility `{0}`")]
    UnknownPossibility(String),
    #[error("subset focal elements must be nonempty; use the `empty` label for conflict mass")]
    EmptySubset,
    #[error("element set does not belong to this frame")]
    SubsetOutsideFrame,
    #[error("negative mass {0}")]
    NegativeMass(String),
    #[error("masses sum to {0}, expected 1")]
    NormalizationViolation(String),
    #[error("closed-regime bodies cannot carry mass on the empty label")]
    EmptyMassInClosedRegime,
    #[error("total conflict: all mass falls on the empty set")]
    TotalConflict,
    #[error("merge map does not cover ground label `{0}`")]
    PartialMergeMap(String),
    #[error("refinement map does not cover ground label `{0}`")]
    PartialRefinementMap(String),
    #[error("refinement images overlap on fine label `{0}`")]
    OverlappingImages(String),
    #[error("refinement image of `{0}` is empty")]
    EmptyImage(String),
    #[error("bodies of evidence are defined on different frames")]
    FrameMismatch,
    #[error("Dempster's rule requires closed-regime bodies")]
    RegimeMismatch,
    #[error("at least one body of evidence is required")]
    EmptyList,
    #[error("reliability {0} is outside [0, 1]")]
    AlphaOutOfRange(String),
    #[error("hypothesis is not a nonempty subset of the frame")]
    HypothesisOutsideFrame,
    #[error("table mode only evaluates named possibilities")]
    TableModeOnUnnamedHypothesis,
    #[error("frame has no named possibilities")]
    NoNamedPossibilities,
    #[error("not a probability vector: {0}")]
    NotAProbabilityVector(String),
    #[error("invalid nucleotide `{0}` (expected A, C, G or U)")]
    InvalidNucleotide(String),
    #[error("sequence length {0} is not a multiple of three")]
    LengthNotMultipleOfThree(usize),
    #[error("genetic code is missing the body for position {position}, nucleotide {nucleotide}")]
    MissingEvidenceCell { position: u8, nucleotide: char },
    #[error("codon position {0} is outside 1..=3")]
    InvalidPosition(String),
    #[error("sample count must be at least 1")]
    ZeroSamples,
    #[error("file mixes fraction strings and JSON numbers for masses")]
    MixedNumericModes,
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
    #[error("at {path}: {source}")]
    At {
        path: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::TotalConflict => ErrorKind::Computation,
            Error::At { source, .. } => source.kind(),
            _ => ErrorKind::Validation,
        }
    }

    /// Prefixes the error with a JSON-path-like location.
    pub fn at(self, path: impl Into<String>) -> Error {
        let path = path.into();
        if path.is_empty() {
            return self;
        }
        match self {
            Error::At { path: inner, source } => Error::At {
                path: join_path(&path, &inner),
                source,
            },
            other => Error::At {
                path,
                source: Box::new(other),
            },
        }
    }

    /// The error without any location wrapper.
    pub fn root(&self) -> &Error {
        match self {
            Error::At { source, .. } => source.root(),
            other => other,
        }
    }
}

fn join_path(outer: &str, inner: &str) -> String {
    if inner.starts_with('[') {
        format!("{outer}{inner}")
    } else {
        format!("{outer}.{inner}")
    }
}
