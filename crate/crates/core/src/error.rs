use thiserror::Error;

use crate::model::schedule::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid schedule: {0}")]
    InvalidSchedule(Violation),

    #[error("infeasible: {machines} machine(s) cannot serve {partitions} partition(s)")]
    Infeasible { machines: usize, partitions: usize },

    #[error("machine speeds are not identical")]
    NotIdentical,

    #[error("algorithm requires unit processing times")]
    UnitJobsRequired,

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("bad reduction input: {0}")]
    BadReductionInput(String),

    #[error("enumeration space {space} exceeds the oracle guard")]
    TooLarge { space: u128 },

    #[error("linear program is infeasible")]
    LpInfeasible,

    #[error("linear program is unbounded")]
    LpUnbounded,

    #[error("no feasible integral flow of full value")]
    NoFeasibleFlow,

    #[error("malformed merge chain: {0}")]
    BadChain(String),

    #[error("no exact covering of the small parts")]
    NoCovering,

    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
