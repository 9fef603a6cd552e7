use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a complex on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex {0} lies in no facet")]
    UncoveredVertex(usize),

    #[error("facet list is empty but the complex has {0} vertices")]
    EmptyFacetList(usize),

    #[error("too many vertices: {n} exceeds the cap of {cap}")]
    SizeCapExceeded { n: usize, cap: usize },

    #[error("the given vertex set is not a face of the complex")]
    FaceNotInComplex,

    #[error("Alexander dual undefined: {0}")]
    DualUndefined(String),

    #[error("the Stanley-Reisner ideal is zero (full simplex)")]
    NoGenerators,

    #[error("complex is not Buchsbaum over {0}")]
    NotBuchsbaum(String),

    #[error("degrees must be strictly increasing and positive")]
    DegenerateDegrees,

    #[error("parameter out of range: {0}")]
    ParameterRange(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("no generic coefficient draw succeeded after {0} attempts")]
    GenericityExhausted(usize),

    #[error("lower complex is not contained in the upper complex")]
    NotNested,

    #[error("target facet count {target} outside [{lo}, {hi}]")]
    TargetOutOfRange { target: usize, lo: usize, hi: usize },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    /// Stable machine-readable code, used by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::VertexOutOfRange { .. } => "E_VERTEX_RANGE",
            Error::UncoveredVertex(_) => "E_UNCOVERED_VERTEX",
            Error::EmptyFacetList(_) => "E_EMPTY_FACETS",
            Error::SizeCapExceeded { .. } => "E_SIZE_CAP",
            Error::FaceNotInComplex => "E_NOT_A_FACE",
            Error::DualUndefined(_) => "E_DUAL_UNDEFINED",
            Error::NoGenerators => "E_NO_GENERATORS",
            Error::NotBuchsbaum(_) => "E_NOT_BUCHSBAUM",
            Error::DegenerateDegrees => "E_DEGENERATE_DEGREES",
            Error::ParameterRange(_) => "E_PARAM_RANGE",
            Error::InvalidField(_) => "E_INVALID_FIELD",
            Error::PreconditionFailed(_) => "E_PRECONDITION",
            Error::GenericityExhausted(_) => "E_GENERICITY_EXHAUSTED",
            Error::NotNested => "E_NOT_NESTED",
            Error::TargetOutOfRange { .. } => "E_TARGET_RANGE",
            Error::VerificationFailed(_) => "E_VERIFICATION",
            Error::Parse { .. } => "E_PARSE",
        }
    }
}
