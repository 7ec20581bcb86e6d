use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("basis index {index} out of range for {num_qubits} qubits")]
    BasisIndexOutOfRange { index: usize, num_qubits: usize },

    #[error("qubit {qubit} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },

    #[error("qubit {0} listed more than once")]
    DuplicateQubit(usize),

    #[error("register width mismatch: expected {expected} qubits, found {found}")]
    WidthMismatch { expected: usize, found: usize },

    #[error("record {record} out of range for a database of {size} records")]
    RecordOutOfRange { record: usize, size: usize },

    #[error("degenerate cut: both sides of a bipartition must be nonempty")]
    DegenerateCut,

    #[error("gate is not unitary (max |G†G - I| entry = {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("state is not normalized (|norm² - 1| = {deviation:e})")]
    NotNormalized { deviation: f64 },

    #[error("ancilla is entangled with the guess register (purity {purity}); cannot factor")]
    NotFactorable { purity: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The purity, Schmidt-rank and entropy witnesses disagree about a cut.
    /// Signals a numerical bug rather than bad input.
    #[error(
        "entanglement witnesses disagree on cut {cut:?}: purity {purity}, rank {rank}, entropy {entropy} bits"
    )]
    WitnessDisagreement {
        cut: Vec<usize>,
        purity: f64,
        rank: usize,
        entropy: f64,
    },
}

impl Error {
    /// True for errors caused by invalid caller input.
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::WitnessDisagreement { .. })
    }
}
