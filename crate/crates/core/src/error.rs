use alloc::string::String;
use core::fmt;

/// Errors raised by the simulation core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A register would exceed [`MAX_QUBITS`](crate::MAX_QUBITS) or be empty.
    Capacity {
        requested: usize,
    },
    /// A 1-based qubit index is outside `1..=n`.
    QubitOutOfRange {
        index: usize,
        qubits: usize,
    },
    /// Two gate targets refer to the same qubit.
    DuplicateTarget {
        index: usize,
    },
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    ZeroNorm,
    EmptyKeepSet,
    /// The operator is not Hermitian within tolerance.
    NotHermitian {
        deviation: f64,
    },
    /// An eigenvalue is more negative than the clamp tolerance allows.
    NotPositive {
        min_eigenvalue: f64,
    },
    /// The gate's success probability is numerically zero for this input.
    ConversionImpossible {
        success_probability: f64,
    },
    /// A creation operator refers to a spatial mode the stage does not accept.
    ModeOutOfRange {
        mode: u8,
    },
    UnknownName {
        kind: &'static str,
        name: String,
    },
    SelfLoop {
        vertex: usize,
    },
    DuplicateEdge {
        a: usize,
        b: usize,
    },
    InvalidConfig(&'static str),
    /// A replayed network scenario missed one of its fidelity targets.
    ScenarioFailed {
        step: String,
        fidelity: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Capacity { requested } => {
                write!(f, "register of {requested} qubits is outside the supported range 1..={}", crate::MAX_QUBITS)
            }
            Error::QubitOutOfRange { index, qubits } => {
                write!(f, "qubit index {index} out of range for {qubits}-qubit register")
            }
            Error::DuplicateTarget { index } => write!(f, "qubit {index} targeted twice"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::ZeroNorm => write!(f, "state has zero norm"),
            Error::EmptyKeepSet => write!(f, "partial trace must keep at least one qubit"),
            Error::NotHermitian { deviation } => {
                write!(f, "operator is not Hermitian (deviation {deviation:e})")
            }
            Error::NotPositive { min_eigenvalue } => {
                write!(f, "operator is not positive semidefinite (eigenvalue {min_eigenvalue:e})")
            }
            Error::ConversionImpossible { success_probability } => {
                write!(f, "conversion impossible at these angles (success probability {success_probability:e})")
            }
            Error::ModeOutOfRange { mode } => write!(f, "spatial mode {mode} not accepted here"),
            Error::UnknownName { kind, name } => write!(f, "unknown {kind} '{name}'"),
            Error::SelfLoop { vertex } => write!(f, "self-loop on vertex {vertex}"),
            Error::DuplicateEdge { a, b } => write!(f, "duplicate edge ({a}, {b})"),
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::ScenarioFailed { step, fidelity } => {
                write!(f, "scenario step '{step}' reached fidelity {fidelity} only")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
