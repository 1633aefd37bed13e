use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("measure space needs at least one atom")]
    EmptySpace,
    #[error("atom {index} has non-positive or non-finite mass {mass}")]
    NonPositiveMass { index: usize, mass: f64 },
    #[error("map target {target} at atom {atom} is outside 0..{n}")]
    TargetOutOfRange { atom: usize, target: usize, n: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operands live on different measure spaces")]
    SpaceMismatch,
    #[error("partition is not a disjoint cover of the atoms: {0}")]
    InvalidPartition(String),
    #[error("operator is not self-adjoint in the weighted metric (relative asymmetry {asymmetry:.3e})")]
    NotSelfAdjoint { asymmetry: f64 },
    #[error("operator is not positive (eigenvalue {eigenvalue:.6e})")]
    NotPositive { eigenvalue: f64 },
    #[error("operator does not admit an A-adjoint: R(T*A) is not contained in R(A)")]
    NoAAdjoint,
    #[error("range inclusion R(B) ⊆ R(A) fails (rank(A) = {rank_a}, rank([A|B]) = {rank_ab})")]
    RangeInclusion { rank_a: usize, rank_ab: usize },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("invalid branch map: {0}")]
    InvalidBranchMap(String),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
