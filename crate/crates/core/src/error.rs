use thiserror::Error;

use crate::circuit::{GateKind, QubitId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("qubit {qubit} is out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { qubit: QubitId, num_qubits: usize },
    #[error("qubit {0} appears more than once in a single gate")]
    DuplicateQubit(QubitId),
    #[error("{kind} expects {expected} control(s), got {got}")]
    WrongArity {
        kind: GateKind,
        expected: &'static str,
        got: usize,
    },
    #[error("a circuit needs at least one qubit")]
    EmptyRegister,
    #[error("role list has {roles} entries for {num_qubits} qubits")]
    RoleCountMismatch { roles: usize, num_qubits: usize },
    #[error("cannot append a {other}-qubit circuit onto a {this}-qubit register")]
    RegisterMismatch { this: usize, other: usize },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("OpenQASM 2.0 export does not support {0} gates; lower them first")]
    UnsupportedInQasm(GateKind),

    #[error("a C^nX construction needs at least 3 controls, got {0}")]
    TooFewControls(usize),
    #[error("expected {expected} ancilla(s), got {got}")]
    WrongAncillaCount { expected: usize, got: usize },
    #[error("not enough ancillas: need {needed}, have {available}")]
    InsufficientAncillas { needed: usize, available: usize },
    #[error("ancilla pool overlaps the qubits of gate {0}")]
    PoolOverlap(String),

    #[error("a and b must differ")]
    IdenticalStates,
    #[error("bit strings have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("invalid bit string {0:?}: use only 0 and 1")]
    InvalidBits(String),
    #[error("bit strings must have between 1 and 64 bits, got {0}")]
    BadWidth(usize),

    #[error("expected a Toffoli gate, got {0}")]
    NotAToffoli(GateKind),
    #[error("circuit still contains MCX gates; lower them first")]
    McxPresent,

    #[error("{0} is not a classical reversible gate")]
    NotReversible(GateKind),
    #[error("register exceeds dense-simulation cap ({num_qubits} qubits, cap {cap})")]
    RegisterTooLarge { num_qubits: usize, cap: usize },
    #[error("input state has {got} bits but the circuit has {expected} qubits")]
    InputWidth { expected: usize, got: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("statistics table is empty")]
    EmptyTable,
    #[error("csv: {0}")]
    Csv(String),
}
