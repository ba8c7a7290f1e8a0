//! Errors shared by every module, each with a stable machine-readable code.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot read input: {0}")]
    Io(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("no zero graded component up to degree {0}")]
    NotFiniteDimensional(usize),
    #[error("not positively graded: {0}")]
    NotPositivelyGraded(String),
    #[error("not generated in degrees 0 and 1")]
    NotDegreeOneGenerated,
    #[error("degree-0 part is not split basic: {0}")]
    NotBasic(String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("field unsupported: {0}")]
    FieldUnsupported(String),
    #[error("resolution did not terminate within {0} steps")]
    CapExceeded(usize),
    #[error("maps are not composable: {0}")]
    Composability(String),
    #[error("index order violated: need j < i, got i = {i}, j = {j}")]
    OrderViolation { i: usize, j: usize },
    #[error("filtration missing: {0}")]
    FiltrationMissing(String),
    #[error("algebra is not Koszul: {0}")]
    NotKoszul(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("not a complex: {0}")]
    NotAComplex(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Io(_) => "io_error",
            Error::Parse { .. } => "parse_error",
            Error::InvalidPresentation(_) => "invalid_presentation",
            Error::UnknownVertex(_) => "unknown_vertex",
            Error::NotFiniteDimensional(_) => "not_finite_dimensional",
            Error::NotPositivelyGraded(_) => "not_positively_graded",
            Error::NotDegreeOneGenerated => "not_degree_one_generated",
            Error::NotBasic(_) => "not_basic",
            Error::AlgebraMismatch => "algebra_mismatch",
            Error::FieldUnsupported(_) => "field_unsupported",
            Error::CapExceeded(_) => "cap_exceeded",
            Error::Composability(_) => "composability",
            Error::OrderViolation { .. } => "order_violation",
            Error::FiltrationMissing(_) => "filtration_missing",
            Error::NotKoszul(_) => "not_koszul",
            Error::PreconditionFailed(_) => "precondition_failed",
            Error::NotAComplex(_) => "not_a_complex",
            Error::Invariant(_) => "invariant_violation",
        }
    }

    /// Process exit code for the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) | Error::Parse { .. } | Error::InvalidPresentation(_) | Error::UnknownVertex(_) => 3,
            Error::Invariant(_) => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
