use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("constant map: coefficients satisfy ad = bc")]
    ConstantMap,
    #[error("evaluation at pole")]
    Pole,
    #[error("not a self-map of the unit disk: {0}")]
    NotSelfMap(String),
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("branch cut: constant term {0} lies on the closed negative real axis")]
    BranchCut(String),
    #[error("composition out of domain: |g(0)| = {0} >= 1")]
    CompositionOutOfDomain(f64),
    #[error("division by a series with vanishing constant term")]
    DivisionByZero,
    #[error("denominator coefficient d vanishes")]
    ZeroDenominator,
    #[error("weight sequence must be strictly positive (index {0})")]
    NonPositiveWeight(usize),
    #[error("weight sequence too short: need {needed} entries, have {have}")]
    WeightsTooShort { needed: usize, have: usize },
    #[error("operator size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("operators carry different weight sequences")]
    WeightMismatch,
    #[error("block index {k} out of range for order {order}")]
    BlockOutOfRange { k: usize, order: usize },
    #[error("|x| = {0} is not inside the unit disk")]
    OutsideDisk(f64),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("weights not equivalent: {0}")]
    WeightsNotEquivalent(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
