use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: non-integer token {token:?}")]
    NonIntegerToken { line: usize, token: String },

    #[error("no transactions")]
    NoTransactions,

    #[error("invalid item id {0}")]
    InvalidItemId(usize),

    #[error("item {0} has support 0; cosine is undefined")]
    ZeroSupportItem(u64),

    #[error("alpha must lie in [0, 1], got {0}")]
    AlphaOutOfRange(f64),

    #[error("cosine interest requires an ascending-support projection chain")]
    CosineChainMismatch,

    #[error("dataset too large for exact oracle: {0} transactions (limit {1})")]
    OracleGuard(usize, usize),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
