use thiserror::Error;

/// Errors produced by the geometry, solver, and analysis routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {0} is not supported here (expected 2, 3, or 4)")]
    UnsupportedDimension(usize),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("degenerate ring: radii must satisfy 0 < inner < outer, got inner = {inner}, outer = {outer}")]
    DegenerateRing { inner: f64, outer: f64 },

    #[error("chordal radius {0} is out of range: the chordal modulus formula requires radii in (0, 1)")]
    ChordalRadiusOutOfRange(f64),

    #[error("rings are not nested: {0}")]
    NotNested(String),

    #[error("rings use different metrics; nesting is only checked within a single metric")]
    MetricMismatch,

    #[error("operation requires a finite point")]
    InfinitePoint,

    #[error("invalid {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("condenser plates are not separated: {0}")]
    PlatesTouch(String),

    #[error("condenser plate {0} is empty after rasterization")]
    EmptyPlate(&'static str),

    #[error("solver did not certify admissibility after {rounds} constraint rounds (shortest path length {shortest} vs required 1)")]
    NonConvergence {
        rounds: usize,
        shortest: f64,
        /// Best iterate reached before giving up.
        best: Box<crate::modulus::SolveOutput>,
    },

    #[error("not enough usable scales for a fit: have {available}, need at least {needed}")]
    TooFewScales { available: usize, needed: usize },

    #[error("point cloud is empty or degenerate: {0}")]
    DegenerateCloud(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed data: {0}")]
    InvalidData(String),
}

pub type Result<T> = std::result::Result<T, Error>;
