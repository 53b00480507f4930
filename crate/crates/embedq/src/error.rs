//! Crate-wide error type.

use std::io;

/// A type alias for `Result<T, Error>`.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while validating data or computing scores.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A matrix value is NaN or infinite.
    #[error("non-finite value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    /// A matrix with zero rows or zero columns was supplied.
    #[error("matrix must have at least one row and one column")]
    EmptyInput,

    /// A median was requested over an empty row subset.
    #[error("cannot take a median over an empty subset")]
    EmptySubset,

    /// Column counts of two matrices disagree.
    #[error("column count mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// Row counts of two paired matrices disagree.
    #[error("row count mismatch: {left} vs {right}")]
    RowCountMismatch { left: usize, right: usize },

    /// A cluster assignment does not form a valid partition.
    #[error("invalid cluster assignment: {reason}")]
    InvalidAssignment { reason: String },

    /// A cluster summary does not match the matrix/assignment it is paired with.
    #[error("inconsistent cluster summary: {reason}")]
    InconsistentSummary { reason: String },

    /// Agglomerative clustering needs at least two samples.
    #[error("clustering needs at least 2 samples, got {n}")]
    TooFewSamples { n: usize },

    /// Requested cluster count is outside 1..=n.
    #[error("cluster count {c} invalid for {n} samples")]
    InvalidClusterCount { c: usize, n: usize },

    /// Sample count exceeds the agglomerative clustering cap.
    #[error(
        "{n} samples exceed the clustering cap of {cap}; \
         use supervised mode or raise the cap"
    )]
    ClusteringTooLarge { n: usize, cap: usize },

    /// Sample count exceeds the rank-metric cap (rank matrices are O(n^2)).
    #[error("{n} samples exceed the rank-metric cap of {cap}")]
    TooLargeForRankMetrics { n: usize, cap: usize },

    /// Neighborhood size k outside the valid range for the metric.
    #[error("neighborhood size {k} invalid for {n} samples")]
    InvalidNeighborhoodSize { k: usize, n: usize },

    /// PCA target dimension outside 1..=min(n, p).
    #[error("target dimension {q} invalid (must be in 1..={max})")]
    InvalidTargetDim { q: usize, max: usize },

    /// The Jacobi SVD failed to converge within the sweep budget.
    #[error("SVD did not converge within {sweeps} sweeps")]
    SvdNonConvergence { sweeps: usize },

    /// A generator was asked for too few points.
    #[error("invalid point count: {reason}")]
    InvalidCount { reason: String },

    /// The polynomial lift only accepts two-dimensional input.
    #[error("expected {expected} input columns, got {got}")]
    WrongInputDimension { expected: usize, got: usize },

    /// A CSV cell failed to parse. Line numbers are 1-based and count the header.
    #[error("parse error on line {line}: {reason}")]
    ParseError { line: usize, reason: String },

    /// The requested label column is absent from the CSV header.
    #[error("missing label column '{name}'")]
    MissingLabelColumn { name: String },

    /// Catch-all for malformed command options.
    #[error("{0}")]
    InvalidArgument(String),

    /// Underlying file I/O failure.
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 input error, 3 shape mismatch,
    /// 4 resource cap.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DimensionMismatch { .. } | Error::RowCountMismatch { .. } => 3,
            Error::ClusteringTooLarge { .. } | Error::TooLargeForRankMetrics { .. } => 4,
            _ => 2,
        }
    }
}
