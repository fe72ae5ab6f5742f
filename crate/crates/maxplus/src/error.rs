//! Error type shared by every operation in the crate.

use thiserror::Error;

/// Errors raised by max-plus operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MpError {
    /// Operand dimensions do not agree.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A scalar outside the carrier set (NaN or +inf) was supplied.
    #[error("invalid scalar {0}: entries must be finite or -inf")]
    InvalidScalar(f64),

    /// Matrix/vector file could not be parsed.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A max-times entry below zero has no max-plus image.
    #[error("negative entry {0} in max-times data")]
    NegativeEntry(f64),

    /// The digraph of the matrix has no cycle, so the cycle mean is -inf.
    #[error("matrix is acyclic: maximum cycle mean is -inf")]
    AcyclicMatrix,

    /// The Kleene star series diverges because the cycle mean is positive.
    #[error("Kleene star diverges: maximum cycle mean {lambda} > 0")]
    DivergentStar { lambda: f64 },

    /// The maximum cycle mean is not the semiring unit.
    #[error("matrix is not definite: maximum cycle mean is {lambda}")]
    NotDefinite { lambda: f64 },

    /// The digraph of the matrix is not strongly connected.
    #[error("matrix is not irreducible")]
    NotIrreducible,

    /// An off-critical entry exceeds the unit or a critical entry misses it.
    #[error("matrix is not visualized")]
    NotVisualized,

    /// A node outside the critical graph was passed where a critical node is required.
    #[error("node {0} is not critical")]
    NonCriticalNode(usize),

    /// The critical graph has more than one strongly connected component.
    #[error("critical graph is not strongly connected")]
    NotStronglyConnectedCritical,

    /// Chain cancellation found a variable whose bound is attained on no side.
    #[error("chain cancellation: bound for variable {variable} attained on no side")]
    CoverageGap { variable: usize },

    /// The transient search exceeded its iteration cap.
    #[error("transient not found within cap {0}")]
    CapExceeded(u64),

    /// The least common multiple of the cyclicities overflowed 64 bits.
    #[error("cyclicity lcm overflows 64 bits")]
    GammaOverflow,
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, MpError>;
