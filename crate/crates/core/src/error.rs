use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failures shared by every layer of the library.
///
/// Checks that *fail* (an identity violated, an axiom missing) are reported
/// through report values; these variants are for inputs that cannot be
/// processed at all.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: i64, max: i64 },

    #[error("source/target mismatch: {0}")]
    Mismatch(String),

    #[error("resource limit exceeded: more than {bound} checks")]
    ResourceLimit { bound: u64 },

    #[error("no product found for {0}")]
    ProductNotFound(String),

    #[error("no colimit found: {0}")]
    ColimitNotFound(String),

    #[error("missing morphism: {0}")]
    MissingMorphism(String),

    #[error("degree {degree} outside the computable range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("homology representative is not a cycle in degree {0}")]
    NotACycle(usize),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("degeneracy maps are required but missing")]
    DegeneraciesMissing,

    #[error("truncation level mismatch: {0}")]
    LevelMismatch(String),

    #[error("unsupported object: {0}")]
    UnsupportedObject(String),

    #[error("cone family failed verification: {0}")]
    ConeNotVerified(String),

    #[error("axiom 3 (swap) is unavailable")]
    Axiom3Unavailable,

    #[error("axiom 4 (join colimit) is unavailable")]
    Axiom4Unavailable,

    #[error("colimit factorization is not unique ({count} candidates)")]
    FactorizationNotUnique { count: usize },

    #[error("no factorization through the colimit exists")]
    FactorizationNotFound,

    #[error("concatenated homotopy has wrong endpoints: {0}")]
    ConcatEndpoints(String),

    #[error("homotopy composition is ill-defined: {0}")]
    CompositionIllDefined(String),

    #[error("boundary equation unsolvable in degree {degree}: {reason}")]
    Unsolvable { degree: usize, reason: String },

    #[error("axiom precondition failed: {0}")]
    AxiomPrecondition(String),

    #[error("prerequisite missing: {0}")]
    PrerequisiteMissing(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(format!("line {} column {}: {}", e.line(), e.column(), e))
    }
}
