//! Error types shared across the library.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty input: at least one point is required")]
    EmptyInput,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("direction has near-zero norm")]
    ZeroDirection,
    #[error("parameter {name}={value} outside [{lo}, {hi}]")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("scale factor must be positive, got {0}")]
    NonpositiveScale(f64),
    #[error("matrix is singular (|det| = {0:.3e})")]
    SingularMatrix(f64),
    #[error("matrix is not a similarity: ||M^T M - lambda^2 I|| / lambda^2 = {0:.3e}")]
    NotASimilarity(f64),
    #[error("invalid sampling bounds: {0}")]
    InvalidBounds(String),
    #[error("body is degenerate: {0}")]
    DegenerateBody(String),
    #[error("{what} did not converge within {iterations} iterations")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
    },
    #[error("unsupported ambient dimension {0}")]
    UnsupportedDimension(usize),
    #[error("too many vertices for stabilizer enumeration: {got} > {max}")]
    TooManyVertices { got: usize, max: usize },
    #[error("unsupported body for this operation: {0}")]
    UnsupportedBody(String),
    #[error("unsupported group for this operation: {0}")]
    UnsupportedGroup(String),
    #[error("stabilizer closure check failed: {0}")]
    GroupClosure(String),
    #[error("scenario has no pairs")]
    EmptyScenario,
    #[error("pair {0}: target is not fixed by the anchor's stabilizer (max displacement {1:.3e})")]
    StabilizerViolation(usize, f64),
    #[error("anchors {0} and {1} lie in the same orbit (orbit distance {2:.3e})")]
    OrbitCollision(usize, usize, f64),
    #[error("body lies outside the orbit neighborhood of pair {0}")]
    OutsideNeighborhood(usize),
    #[error("bumps {0} and {1} are simultaneously positive")]
    AmbiguousSupport(usize, usize),
    #[error("invalid delta {delta}: need 0 < 2*delta < diameter = {diameter}")]
    InvalidDelta { delta: f64, diameter: f64 },
    #[error("rejection sampling starved: {accepted} accepted out of {attempted} attempts")]
    SamplingStarvation { accepted: usize, attempted: usize },
    #[error("segment endpoints coincide")]
    DegenerateSegment,
    #[error("body {0} is not of constant width (relative deviation {1:.3e})")]
    NotConstantWidth(usize, f64),
    #[error("document parse error: {0}")]
    Document(String),
}
