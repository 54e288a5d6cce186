use thiserror::Error;

/// Errors produced anywhere in the simulator, the protocol engine or the
/// image pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("register size {0} out of range (1..={max})", max = crate::qsim::MAX_QUBITS)]
    QubitCount(usize),
    #[error("qubit label {label} out of range for a {num_qubits}-qubit register")]
    InvalidQubit { label: usize, num_qubits: usize },
    #[error("qubit label {0} used more than once")]
    QubitCollision(usize),
    #[error("amplitude vector of length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),
    #[error("measurement outcome has zero probability ({0:e})")]
    ZeroProbabilityOutcome(f64),
    #[error("partial trace needs at least one kept qubit")]
    EmptyKeepSet,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("qubit pairs overlap on label {0}")]
    OverlappingPairs(usize),
    #[error("source and target pairings cover different qubits")]
    MismatchedQubitSets,
    #[error("rebase coefficient {0} does not lie on the expected grid")]
    RebaseSnap(f64),
    #[error("malformed bit string {0:?}")]
    MalformedBits(String),
    #[error("secret must contain at least one bit")]
    EmptySecret,
    #[error("reconstruction failed: {0}")]
    ReconstructionFailed(String),
    #[error("reconstruction is ambiguous: {0}")]
    Ambiguous(String),
    #[error("image with side 2^{0} exceeds the register cap")]
    ImageTooLarge(u32),
    #[error("invalid image: {0}")]
    InvalidImage(String),
    #[error("state is not an NEQR image state: {0}")]
    MalformedNeqrState(String),
    #[error("malformed PGM: {0}")]
    MalformedPgm(String),
    #[error("unknown scenario {0:?}")]
    UnknownScenario(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
