use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("invalid integer literal {0:?}")]
    InvalidInteger(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("denominator must be unsigned")]
    SignedDenominator,
}

/// Manifest problems, located by line (when known) and field path.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error{}{}: {message}", line.map(|l| format!(" at line {l}")).unwrap_or_default(), if field.is_empty() { String::new() } else { format!(" in `{field}`") })]
pub struct ManifestError {
    pub line: Option<usize>,
    pub field: String,
    pub message: String,
}

impl ManifestError {
    pub fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        ManifestError {
            line: None,
            field: field.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator {index} is not a permutation: {reason}")]
    NonPermutation { index: usize, reason: String },
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("group of order {order} exceeds the enumeration bound {bound}")]
    GroupTooLarge { order: usize, bound: usize },
    #[error("action of element {element} is not unimodular")]
    NotUnimodular { element: usize },
    #[error("action is not a homomorphism at pair ({g}, {h})")]
    NotHomomorphism { g: usize, h: usize },
    #[error("lattices are defined over different groups")]
    GroupMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("real decomposition has odd remainder rank {0}")]
    InconsistentRank(usize),
    #[error("no rational solution for the induction system")]
    NoSolution,
    #[error("value expected to be rational is not: {0}")]
    NotRational(String),
    #[error("splitting group is not abelian; only the symbolic identity is available")]
    NonAbelianRealization,
    #[error("character multiplicity is not a nonnegative integer: {0}")]
    MultiplicityNotInteger(String),
    #[error("realization is not surjective onto the group")]
    NotSurjective,
    #[error("realization is not a homomorphism at unit {unit}")]
    RealizationNotHomomorphism { unit: u64 },
    #[error("realization is not totally real: -1 maps to a nontrivial element")]
    NotTotallyReal,
    #[error("listed units do not generate (Z/{modulus})*")]
    UnitsDoNotGenerate { modulus: u64 },
    #[error("modulus {modulus} exceeds the supported bound {bound}")]
    ModulusTooLarge { modulus: u64, bound: u64 },
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u64, modulus: u64 },
    #[error("p-part for p = {prime} did not stabilize within {cap} steps")]
    StabilizationBoundExceeded { prime: u64, cap: u32 },
    #[error("prime {prime} outside the candidate set contributes nontrivially")]
    CandidatePrimeIncomplete { prime: u64 },
    #[error("stabilization check failed for p = {prime} at depth {depth}")]
    StabilizationUnsound { prime: u64, depth: u32 },
    #[error("{ell} divides the conductor: bad reduction")]
    BadReduction { ell: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("lattice characters differ; the tori are not isogenous")]
    CharacterMismatch,
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Manifest(#[from] ManifestError),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Variant name, used as the error kind in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonPermutation { .. } => "NonPermutation",
            Error::InvalidTable(_) => "InvalidTable",
            Error::GroupTooLarge { .. } => "GroupTooLarge",
            Error::NotUnimodular { .. } => "NotUnimodular",
            Error::NotHomomorphism { .. } => "NotHomomorphism",
            Error::GroupMismatch => "GroupMismatch",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::NotSubgroup(_) => "NotSubgroup",
            Error::InconsistentRank(_) => "InconsistentRank",
            Error::NoSolution => "NoSolution",
            Error::NotRational(_) => "NotRational",
            Error::NonAbelianRealization => "NonAbelianRealization",
            Error::MultiplicityNotInteger(_) => "MultiplicityNotInteger",
            Error::NotSurjective => "NotSurjective",
            Error::RealizationNotHomomorphism { .. } => "NotHomomorphism",
            Error::NotTotallyReal => "NotTotallyReal",
            Error::UnitsDoNotGenerate { .. } => "UnitsDoNotGenerate",
            Error::ModulusTooLarge { .. } => "ModulusTooLarge",
            Error::NotAUnit { .. } => "NotAUnit",
            Error::StabilizationBoundExceeded { .. } => "StabilizationBoundExceeded",
            Error::CandidatePrimeIncomplete { .. } => "CandidatePrimeIncomplete",
            Error::StabilizationUnsound { .. } => "StabilizationUnsound",
            Error::BadReduction { .. } => "BadReduction",
            Error::NotPrime(_) => "NotPrime",
            Error::CharacterMismatch => "CharacterMismatch",
            Error::Internal(_) => "Internal",
            Error::Manifest(_) => "ParseError",
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
