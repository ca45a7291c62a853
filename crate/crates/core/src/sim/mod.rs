//! Simulation oracles used to check every construction in this crate.
//!
//! * [`run_reversible`] evaluates circuits over {X, CNOT, Toffoli, MCX} on a
//!   single basis state with plain bit operations.
//! * [`run_statevector`] is a dense 2^n amplitude simulator for circuits that
//!   also contain H, T and S gates.
//! * [`SparseState`] holds only the non-zero amplitudes. Transposition
//!   circuits keep at most a handful of terms alive, so the verifiers use it
//!   to sweep every input of registers far beyond the dense cap.

mod basis;
mod sparse;
mod statevector;
mod verify;

pub use basis::{BasisState, MAX_WIDTH};
pub use sparse::{run_sparse, SparseState};
pub use statevector::{run_statevector, StateVector, DEFAULT_QUBIT_CAP};
pub use verify::{
    verify_mcx, verify_transposition, CaseRecord, Outcome, VerificationReport, VerifyOptions,
};

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};

/// Amplitude threshold for treating a simulated result as a basis state.
pub const AMPLITUDE_TOLERANCE: f64 = 1e-9;

/// Packed form of a classical gate: flip `target` when all bits of
/// `controls` are set.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ClassicalOp {
    controls: u64,
    target: u64,
}

impl ClassicalOp {
    #[inline]
    pub(crate) fn apply(self, bits: u64) -> u64 {
        if bits & self.controls == self.controls {
            bits ^ self.target
        } else {
            bits
        }
    }
}

pub(crate) fn control_mask(gate: &Gate) -> u64 {
    gate.controls().iter().fold(0, |m, q| m | 1 << q.0)
}

pub(crate) fn check_width(circuit: &Circuit) -> Result<()> {
    if circuit.num_qubits() > MAX_WIDTH {
        return Err(Error::RegisterTooLarge {
            num_qubits: circuit.num_qubits(),
            cap: MAX_WIDTH,
        });
    }
    Ok(())
}

pub(crate) fn compile_classical(circuit: &Circuit) -> Result<Vec<ClassicalOp>> {
    check_width(circuit)?;
    circuit
        .gates()
        .iter()
        .map(|g| {
            if !g.kind().is_classical() {
                return Err(Error::NotReversible(g.kind()));
            }
            Ok(ClassicalOp {
                controls: control_mask(g),
                target: 1 << g.target().0,
            })
        })
        .collect()
}

pub(crate) fn run_ops(ops: &[ClassicalOp], bits: u64) -> u64 {
    ops.iter().fold(bits, |b, op| op.apply(b))
}

fn check_input(circuit: &Circuit, input: &BasisState) -> Result<()> {
    if input.width() != circuit.num_qubits() {
        return Err(Error::InputWidth {
            expected: circuit.num_qubits(),
            got: input.width(),
        });
    }
    Ok(())
}

/// Apply a classical reversible circuit to a basis state.
pub fn run_reversible(circuit: &Circuit, input: &BasisState) -> Result<BasisState> {
    check_input(circuit, input)?;
    let ops = compile_classical(circuit)?;
    Ok(BasisState::from_raw(input.width(), run_ops(&ops, input.bits())))
}
