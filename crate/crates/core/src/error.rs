use thiserror::Error;

/// Errors raised across the crate.
///
/// Variants are coarse on purpose: the CLI maps them onto exit codes, and
/// library callers mostly match on the kind rather than the payload.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parity error: {0}")]
    Parity(String),

    #[error("range error: {0}")]
    Range(String),

    #[error("length error: {0}")]
    Length(String),

    #[error("normalization error: {0}")]
    Normalization(String),

    #[error("invalid weight vector: {0}")]
    Weights(String),

    #[error("poset depth {depth} leaves energy comparisons undetermined for {config}")]
    Depth { depth: usize, config: String },

    #[error("cone is not pointed: residual lineality of dimension {0}")]
    NotPointed(usize),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("symbolic right-hand side is ambiguous for row {0}")]
    Tie(String),

    #[error("stability conditions fail: {0}")]
    Stability(String),

    #[error("family not applicable: {0}")]
    Applicability(String),

    #[error("matrix is not Hermitian within tolerance: {0}")]
    NotHermitian(String),

    #[error("trace error: {0}")]
    Trace(String),

    #[error("Jacobi iteration did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
