use thiserror::Error;

/// Errors raised by environments, policies, oracles and ledgers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid strategy: {0}")]
    InvalidStrategy(&'static str),
    #[error("arm index {arm} out of range for {arms} arms")]
    ArmOutOfRange { arm: usize, arms: usize },
    #[error("invalid arm model: {0}")]
    InvalidArm(&'static str),
    #[error("degenerate environment: {0}")]
    DegenerateEnvironment(&'static str),
    #[error("invalid observation: reward {reward} for arm {arm} is outside [0, 1]")]
    InvalidObservation { arm: usize, reward: f64 },
    #[error("no feasible strategy")]
    NoFeasibleStrategy,
    #[error("empty strategy set")]
    EmptyStrategySet,
    #[error("unsupported instance: {0}")]
    UnsupportedInstance(&'static str),
    #[error("invalid graph: {0}")]
    InvalidGraph(&'static str),
    #[error("instance too large: {size} exceeds limit {limit}")]
    InstanceTooLarge { size: usize, limit: usize },
    #[error("weight vector has length {got}, expected {expected}")]
    WeightLength { expected: usize, got: usize },
    #[error("invalid weight: {0}")]
    InvalidWeight(&'static str),
    #[error("out-of-sequence round: expected t = {expected}, got {got}")]
    Sequencing { expected: u64, got: u64 },
    #[error("domain error: {0}")]
    Domain(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
