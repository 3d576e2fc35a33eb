//! Error type shared across the library. Every failure that a caller can
//! provoke carries a witness: the element, pair, or square that broke.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("order cycle through {0:?} and {1:?}")]
    Cycle(String, String),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("duplicate element {0:?}")]
    DuplicateElement(String),
    #[error("map is not monotone: {0:?} <= {1:?} but images are not ordered")]
    NotMonotone(String, String),
    #[error("adjunction fails at ({0:?}, {1:?}): f(p) <= q and p <= g(q) disagree")]
    AdjunctionFailure(String, String),
    #[error("connection is not an insertion: f(g({0:?})) = {1:?}")]
    NotInsertion(String, String),
    #[error("no adjoint exists at {0:?}: {1}")]
    NoAdjoint(String, String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("not a subspace: {0}")]
    NotSubspace(String),
    #[error("colimit over an empty downset")]
    EmptyDownset,
    #[error("functoriality fails: paths from {0:?} to {1:?} through {2:?} disagree")]
    NotFunctorial(String, String, String),
    #[error("presentation mismatch at {0:?}: {1}")]
    PresentationMismatch(String, String),
    #[error("dimension mismatch at {0:?}: expected {1}, got {2}")]
    DimensionMismatch(String, usize, usize),
    #[error("bases do not match: {0}")]
    BaseMismatch(String),
    #[error("image of interval [{0:?}, {1:?}] is not an interval")]
    IntervalViolation(String, String),
    #[error("base poset is not a total order (witness {0:?}, {1:?})")]
    NotTotalOrder(String, String),
    #[error("poset has no maximum element")]
    NoTopElement,
    #[error("bad slice direction: {0}")]
    BadDirection(String),
    #[error("slice line misses the grid: {0}")]
    EmptyIntersection(String),
    #[error("poset has no metric embedding (element {0:?} lacks coordinates)")]
    MissingCoords(String),
    #[error("marginal masses disagree at {0:?}: {1} vs {2}")]
    MassMismatch(String, String, String),
    #[error("diagram has no nonnegative representative (interval {0} has mass {1})")]
    NegativeDiagram(String, String),
    #[error("interleaving cost is infinite (element {0:?})")]
    InfiniteCost(String),
    #[error("critical point {0} lies strictly between {1} and {2}")]
    CriticalBetween(String, String, String),
    #[error("parameter {0} is critical; induced morphism needs a non-critical source")]
    NotUnique(String),
    #[error("duplicate trajectory: elements {0:?} and {1:?} share both adjoint values")]
    DuplicateTrajectory(String, String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
