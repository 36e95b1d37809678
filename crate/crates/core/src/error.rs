use thiserror::Error;

/// Errors raised by state operations, measurements and the dense oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QfeError {
    #[error("qubit index {index} out of range for {n} qubits")]
    QubitOutOfRange { index: usize, n: usize },
    #[error("identical control and target qubit {0}")]
    SameQubit(usize),
    #[error("register must contain at least one qubit")]
    EmptyRegister,
    #[error("non-normalised input: quadratic form does not reduce")]
    NonNormalised,
    #[error("column {index} out of range for rank {rank}")]
    ColumnOutOfRange { index: usize, rank: usize },
    #[error("column {0} is not all-zero")]
    ColumnNotZero(usize),
    #[error("expansion needs 2^{required} terms, cap is 2^{cap}")]
    ExpansionCap { required: usize, cap: usize },
    #[error("ancilla {0} is entangled or not in a Z basis state")]
    AncillaNotClean(usize),
    #[error("ancilla {0} lies in the support of the observable")]
    AncillaInSupport(usize),
    #[error("observable has empty support")]
    EmptyObservable,
    #[error("qubit {0} appears more than once in the observable")]
    DuplicateQubit(usize),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("outcome has probability {0}, which is not reachable")]
    ImpossibleOutcome(f64),
    #[error("probability {0} is not a stabiliser measurement probability")]
    NonStabiliserProbability(f64),
    #[error("circuit contains measurements")]
    UnexpectedMeasurement,
    #[error("dense oracle limited to {cap} qubits, got {n}")]
    OracleCap { n: usize, cap: usize },
}
