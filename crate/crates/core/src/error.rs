use thiserror::Error;

/// Errors raised by the qudit simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("level {0} is the ancilla and has no two-qubit image")]
    AncillaLevel(usize),
    #[error("level {level} is out of range for dimension {dim}")]
    OutOfRange { level: usize, dim: usize },
    #[error("ancilla level is populated ({0:e}) where it must be negligible")]
    AncillaPopulated(f64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not unitary (max |UU† - I| = {0:e})")]
    NotUnitary(f64),
    #[error("ancilla phase has modulus {0}, expected 1")]
    NotUnitPhase(f64),
    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),
    #[error("invalid pulse levels ({j}, {k}) for dimension {dim}")]
    InvalidLevels { j: usize, k: usize, dim: usize },
    #[error("pulse angle is not finite")]
    NonFiniteAngle,
    #[error("no third level available to synthesize a Y rotation in dimension {0}")]
    NoAncillaAvailable(usize),
    #[error("fixed intermediate level {l} coincides with a rotated level of ({j}, {k})")]
    FixedLevelClash { j: usize, k: usize, l: usize },
    #[error("oracle index {0} is not in 1..=4")]
    InvalidOracle(u8),
    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),
    #[error("coarse readout is ambiguous (p_low = {0})")]
    AmbiguousReadout(f64),
    #[error("search space is empty")]
    EmptySpace,
    #[error("invalid search space: {0}")]
    InvalidSearchSpace(String),
    #[error("malformed JSON document: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
