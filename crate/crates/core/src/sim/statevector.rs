use num_complex::Complex64;

use super::{check_input, control_mask, BasisState};
use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};

/// Largest register [`run_statevector`] will allocate by default.
pub const DEFAULT_QUBIT_CAP: usize = 20;

/// Phase applied by a diagonal single-qubit gate to the |1> component.
pub(crate) fn phase(kind: GateKind) -> Complex64 {
    let quarter = std::f64::consts::FRAC_PI_4;
    match kind {
        GateKind::T => Complex64::from_polar(1.0, quarter),
        GateKind::Tdg => Complex64::from_polar(1.0, -quarter),
        GateKind::S => Complex64::i(),
        GateKind::Sdg => -Complex64::i(),
        _ => Complex64::new(1.0, 0.0),
    }
}

/// Dense vector of 2^n amplitudes; index bit `i` is qubit `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn basis(state: &BasisState) -> StateVector {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << state.width()];
        amplitudes[state.bits() as usize] = Complex64::new(1.0, 0.0);
        StateVector {
            num_qubits: state.width(),
            amplitudes,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, state: &BasisState) -> Complex64 {
        self.amplitudes[state.bits() as usize]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(Complex64::norm_sqr).sum()
    }

    /// The basis state this vector equals up to global phase, if any.
    pub fn as_basis_state(&self, tolerance: f64) -> Option<BasisState> {
        let (index, amp) = self
            .amplitudes
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))?;
        let rest = self.norm_sqr() - amp.norm_sqr();
        ((amp.norm() - 1.0).abs() <= tolerance && rest <= tolerance)
            .then(|| BasisState::from_raw(self.num_qubits, index as u64))
    }

    pub fn apply(&mut self, gate: &Gate) {
        let t = 1usize << gate.target().0;
        match gate.kind() {
            GateKind::H => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                for i in 0..self.amplitudes.len() {
                    if i & t == 0 {
                        let a = self.amplitudes[i];
                        let b = self.amplitudes[i | t];
                        self.amplitudes[i] = (a + b) * s;
                        self.amplitudes[i | t] = (a - b) * s;
                    }
                }
            }
            GateKind::T | GateKind::Tdg | GateKind::S | GateKind::Sdg => {
                let p = phase(gate.kind());
                for (i, a) in self.amplitudes.iter_mut().enumerate() {
                    if i & t != 0 {
                        *a *= p;
                    }
                }
            }
            GateKind::X | GateKind::Cnot | GateKind::Toffoli | GateKind::Mcx => {
                let c = control_mask(gate) as usize;
                for i in 0..self.amplitudes.len() {
                    if i & t == 0 && i & c == c {
                        self.amplitudes.swap(i, i | t);
                    }
                }
            }
        }
    }
}

/// Dense simulation of `circuit` on a basis-state input. Refuses registers
/// wider than `cap` qubits.
pub fn run_statevector(circuit: &Circuit, input: &BasisState, cap: usize) -> Result<StateVector> {
    check_input(circuit, input)?;
    if circuit.num_qubits() > cap {
        return Err(Error::RegisterTooLarge {
            num_qubits: circuit.num_qubits(),
            cap,
        });
    }
    let mut state = StateVector::basis(input);
    for gate in circuit.gates() {
        state.apply(gate);
    }
    Ok(state)
}
