use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("item {item}: {field} = {value} exceeds its bound {bound}")]
    BoundViolation {
        item: usize,
        field: &'static str,
        value: i64,
        bound: i64,
    },
    #[error("item {item}: modified {field} would be {value}, below 1")]
    NonPositiveResult {
        item: usize,
        field: &'static str,
        value: i128,
    },
    #[error("length mismatch: {what} has {found} entries, expected {expected}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("target solution uses {used} units of budget, instance budget is {budget}")]
    BudgetMismatch { used: i128, budget: i64 },
    #[error("threshold {t} lies outside the admissible range")]
    OutOfRange { t: String },
    #[error("instance norm is not l1")]
    NotL1,
    #[error("instance norm is not l-infinity")]
    NotLInf,
    #[error("cost repair needs {gap} units but the caps only allow {available}")]
    InfeasibleRepair { gap: i128, available: i128 },
    #[error("items {i} and {j} do not form an (I1, I0) pair")]
    InvalidPair { i: usize, j: usize },
    #[error("invalid partition instance: {0}")]
    InvalidPartition(String),
    #[error("search space of {space} exceeds the oracle limit {limit}")]
    OracleLimitExceeded { space: u128, limit: u128 },
    #[error("instance with {n} items is too large for exhaustive enumeration (max {max})")]
    TooLarge { n: usize, max: usize },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
