use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{what} did not converge after {levels} levels (last change {last_change:e})")]
    NonConvergence {
        what: String,
        levels: u32,
        last_change: f64,
    },

    #[error("argument outside the supported domain: {0}")]
    Domain(String),

    #[error("pole at {0}")]
    Pole(String),

    #[error("series converges too slowly at s = {0}")]
    SlowConvergence(String),

    #[error("methods disagree for {what}: |A - B| = {difference:e} exceeds {allowed:e}")]
    MethodDisagreement {
        what: String,
        difference: f64,
        allowed: f64,
    },

    #[error("invalid precision: {0}")]
    InvalidPrecision(String),

    #[error("order {order} exceeds the supported maximum {max} for {what}")]
    OrderTooLarge { what: String, order: u32, max: u32 },

    #[error("unknown constant key: {0}")]
    UnknownKey(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
