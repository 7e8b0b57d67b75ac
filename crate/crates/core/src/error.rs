use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("degenerate cut: subset must be nonempty and proper")]
    DegenerateCut,

    #[error("vertex index {index} out of range for {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("graph is not simple: {0}")]
    NotSimple(String),

    #[error("instance too large for exact search: {size} exceeds limit {limit}")]
    TooLarge { size: usize, limit: usize },

    #[error("vertex map is not a bijection: {0}")]
    NotBijective(String),

    #[error("non-vertex point present at index {0}")]
    NonVertex(usize),

    #[error("duplicate point at index {0}")]
    DuplicatePoint(usize),

    #[error("d must be ≡ 3 (mod 4) and at least 3, got {0}")]
    InvalidXiDimension(usize),

    #[error("zero generator at index {0}")]
    ZeroGenerator(usize),

    #[error("collinear generators not permitted: {0} and {1}")]
    CollinearGenerators(usize, usize),

    #[error("input not half-integral: circuit {block:?} has coefficients {coefficients:?}, not all ±1; half-integral sets only have ±1 circuits")]
    CircuitNotUnimodular {
        block: Vec<usize>,
        coefficients: Vec<String>,
    },

    #[error("input not half-integral: circuit {block:?} shares coordinate {coordinate} with generator {other}; circuit blocks of half-integral sets have disjoint supports")]
    OverlappingSupport {
        block: Vec<usize>,
        other: usize,
        coordinate: usize,
    },

    #[error("input not half-integral: {0}")]
    NotHalfIntegral(String),

    #[error("vertex {vertex} has degree {degree} > 2")]
    DegreeTooHigh { vertex: usize, degree: usize },

    #[error("{what} = {value} out of range [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },

    #[error("invalid routing: {0}")]
    InvalidRouting(String),

    #[error("zero congestion: expansion bound undefined")]
    ZeroCongestion,
}

impl Error {
    /// True for errors signalling a violated mathematical precondition
    /// rather than bad usage.
    pub fn is_precondition_violation(&self) -> bool {
        matches!(
            self,
            Error::CircuitNotUnimodular { .. }
                | Error::OverlappingSupport { .. }
                | Error::NotHalfIntegral(_)
        )
    }
}
