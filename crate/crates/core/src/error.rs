use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph order must be at least 1")]
    InvalidOrder,
    #[error("vertex {vertex} out of range for order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("vertex set of order {set} applied to graph of order {graph}")]
    OrderMismatch { graph: usize, set: usize },
    #[error("enumeration of order {n} exceeds the cap of {cap} (2^(n(n-1)/2) graphs)")]
    EnumerationCap { n: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("truncated graph6 string at offset {offset}: expected {expected} bytes in total")]
    Truncated { offset: usize, expected: usize },
    #[error("trailing bytes after offset {offset}")]
    TrailingBytes { offset: usize },
    #[error("nonzero padding bits in byte at offset {offset}")]
    NonzeroPadding { offset: usize },
    #[error("graph order 0 at offset {offset}")]
    ZeroOrder { offset: usize },
    #[error("graph order {n} is too large for graph6")]
    OrderTooLarge { n: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdgeListError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("cofactor oracle limited to order {max}, got {n}")]
    OracleOrderTooLarge { n: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error(
        "Jacobi iteration did not converge in {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    NoConvergence { sweeps: usize, off_norm: f64 },
    #[error("exponent p = {p} must lie strictly inside (0, 2)")]
    ExponentOutOfRange { p: f64 },
    #[error("tail threshold b = {b} must lie in [0, 2]")]
    ThresholdOutOfRange { b: f64 },
    #[error("tail threshold b = {b} must be nonnegative")]
    NegativeThreshold { b: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    #[error("successes {successes} exceed trials {trials}")]
    SuccessesExceedTrials { successes: u64, trials: u64 },
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("z = {z} must be positive")]
    NonPositiveZ { z: f64 },
}

/// Top-level error for experiment runs.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error("invalid configuration: {0}")]
    Config(String),
}
