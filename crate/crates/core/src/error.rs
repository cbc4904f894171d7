use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A table file line could not be accepted.
    #[error("line {line}: {message}")]
    Load { line: usize, message: String },

    #[error("line {line}: missing exponent {n}")]
    MissingExponent { line: usize, n: u32 },

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("entry for n = {n} is {found}, expected {expected}")]
    AnchorMismatch {
        n: u32,
        found: String,
        expected: String,
    },

    #[error("sieve refused x = {x}: above oracle limit {limit}")]
    OracleLimit { x: u64, limit: u64 },

    #[error("{what} = {value} is outside {range}")]
    OutOfRange {
        what: &'static str,
        value: String,
        range: &'static str,
    },

    #[error("duplicate interpolation node {0}")]
    DuplicateNode(String),

    #[error("at least {needed} points are required, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    /// Zero denominator in the inverted-difference recurrence.
    #[error("inverted-difference breakdown at level {level}: node {node} repeats the value of node {pivot}")]
    Breakdown {
        level: usize,
        node: String,
        pivot: String,
    },

    /// The fitted continued fraction does not reproduce one of its nodes.
    #[error("unattainable node {node}: the continued fraction degenerates there")]
    Unattainable { node: String },

    #[error("pole of the continued fraction at x = {0}")]
    Pole(String),

    #[error("cannot fold the affine tail: innermost level coefficient is zero")]
    Fold,

    /// A high-precision value is too close to a rounding boundary for its
    /// certified error bound.
    #[error(
        "precision too low to round {value} (error bound {bound}); recompute with more digits"
    )]
    Precision { value: String, bound: String },

    #[error("series did not converge within {0} terms")]
    Nonconvergence(usize),

    #[error("precision of {0} digits is below the minimum of 30")]
    InsufficientDigits(u32),
}
