use std::io;

use thiserror::Error;

use crate::model::ArmIndex;

pub type Result<T, E = BaiError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum BaiError {
    #[error("the maximum is attained by more than one arm")]
    NonUniqueBestArm,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("arm {0} was never pulled")]
    NeverPulled(ArmIndex),
    #[error("budget {n} is too small for {learner} with K = {k} (needs at least {required})")]
    BudgetTooSmall {
        learner: &'static str,
        k: usize,
        n: usize,
        required: usize,
    },
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl BaiError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        BaiError::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        BaiError::Config(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            BaiError::Config(_) => 2,
            _ => 3,
        }
    }
}
