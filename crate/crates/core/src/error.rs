use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// [`Error::code`] gives a stable machine-readable identifier for each variant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("sequence {sub} is not a sub-multiset of {sup}")]
    NotSubMultiset { sup: String, sub: String },

    #[error("invalid Betti pair: {0}")]
    InvalidPair(String),

    #[error("Betti pair {0} is not admissible")]
    NotAdmissible(String),

    #[error("operation needs a nonempty source sequence a")]
    EmptyA,

    #[error("invalid bundle sequence: {0}")]
    InvalidBundleSequence(String),

    #[error("regularity {actual} of the minimal element exceeds the bound {bound}")]
    RegularityTooSmall { bound: i64, actual: i64 },

    #[error("node {0} does not belong to this lattice")]
    NotANode(String),

    #[error("unknown export format {0:?}")]
    UnknownFormat(String),

    #[error("modulus or variable count mismatch: {0}")]
    ModulusMismatch(String),

    #[error("bad matrix shape: {0}")]
    ShapeError(String),

    #[error("{0} is not a supported prime modulus")]
    BadModulus(u64),

    #[error("entry ({row}, {col}) has the wrong degree: {detail}")]
    DegreeMismatch { row: usize, col: usize, detail: String },

    #[error("the matrix does not present a vector bundle")]
    NotABundle,

    #[error("{small} is not a generalization of {big}")]
    NotGeneralization { small: String, big: String },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotSubMultiset { .. } => "NotSubMultiset",
            Error::InvalidPair(_) => "InvalidPair",
            Error::NotAdmissible(_) => "NotAdmissible",
            Error::EmptyA => "EmptyA",
            Error::InvalidBundleSequence(_) => "InvalidBundleSequence",
            Error::RegularityTooSmall { .. } => "RegularityTooSmall",
            Error::NotANode(_) => "NotANode",
            Error::UnknownFormat(_) => "UnknownFormat",
            Error::ModulusMismatch(_) => "ModulusMismatch",
            Error::ShapeError(_) => "ShapeError",
            Error::BadModulus(_) => "BadModulus",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::NotABundle => "NotABundle",
            Error::NotGeneralization { .. } => "NotGeneralization",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
