// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A problem instance or hypergraph violates one of its invariants.
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    /// Solver options that cannot be honoured for the given instance.
    #[error("configuration error: {0}")]
    Config(String),

    /// The duality gap went negative beyond round-off, which means a dual
    /// iterate left the feasible cone.
    #[error("internal consistency error: duality gap {gap:e} is negative")]
    NegativeGap { gap: f64 },

    /// A reference oracle was asked to run on an input above its size bound.
    #[error("input too large for brute-force oracle: {what} = {got}, limit {limit}")]
    TooLarge {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("parse error in {context}: {message}")]
    Parse { context: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn parse(context: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            context: context.into(),
            message: message.into(),
        }
    }
}
