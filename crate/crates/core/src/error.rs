use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at column {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("table entry {value} at ({row}, {col}) is outside the carrier 0..{order}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },

    #[error("invalid algebra: {0}")]
    Invalid(String),

    #[error("order {requested} exceeds the cap of {cap}")]
    OrderCap { requested: usize, cap: usize },

    #[error("mismatched algebra kinds: {0}")]
    KindMismatch(String),

    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parameter violation: {0}")]
    Parameter(String),

    #[error("search budget of {budget} evaluations exceeded (naive search space {required})")]
    Budget { budget: u64, required: u128 },

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
