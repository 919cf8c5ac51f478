use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("empty support: the zero polynomial has no Newton polyhedron")]
    EmptySupport,

    #[error("the polynomial does not vanish at the origin")]
    OriginInSupport,

    #[error("work budget exceeded: {needed} evaluations requested, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("not certified non-degenerate at p = {p}: {reason}")]
    NotCertified { p: u64, reason: String },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("pole at evaluation point")]
    PoleAtEvaluation,

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn budget(needed: u128, budget: u64) -> Self {
        Error::BudgetExceeded {
            needed,
            budget: budget as u128,
        }
    }
}
