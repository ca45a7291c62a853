use std::collections::HashMap;

use num_complex::Complex64;

use super::statevector::phase;
use super::{check_input, check_width, control_mask, BasisState};
use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::Result;

/// Amplitudes below this magnitude are dropped after each gate.
const PRUNE: f64 = 1e-13;

/// Statevector that stores only non-zero amplitudes.
#[derive(Debug, Clone)]
pub struct SparseState {
    num_qubits: usize,
    terms: HashMap<u64, Complex64>,
}

impl SparseState {
    pub fn basis(state: &BasisState) -> SparseState {
        SparseState {
            num_qubits: state.width(),
            terms: HashMap::from([(state.bits(), Complex64::new(1.0, 0.0))]),
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn amplitude(&self, state: &BasisState) -> Complex64 {
        self.terms
            .get(&state.bits())
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.terms.values().map(Complex64::norm_sqr).sum()
    }

    /// Non-zero terms sorted by basis index.
    pub fn terms(&self) -> Vec<(BasisState, Complex64)> {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .map(|(&k, &a)| (BasisState::from_raw(self.num_qubits, k), a))
            .collect();
        v.sort_by_key(|(s, _)| s.bits());
        v
    }

    /// The basis state this vector equals up to global phase, if any.
    pub fn as_basis_state(&self, tolerance: f64) -> Option<BasisState> {
        let (&index, amp) = self
            .terms
            .iter()
            .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))?;
        let rest = self.norm_sqr() - amp.norm_sqr();
        ((amp.norm() - 1.0).abs() <= tolerance && rest <= tolerance)
            .then(|| BasisState::from_raw(self.num_qubits, index))
    }

    pub fn apply(&mut self, gate: &Gate) {
        let t = 1u64 << gate.target().0;
        match gate.kind() {
            GateKind::H => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                let mut next: HashMap<u64, Complex64> = HashMap::with_capacity(self.terms.len() * 2);
                for (&k, &a) in &self.terms {
                    let sign = if k & t == 0 { 1.0 } else { -1.0 };
                    *next.entry(k & !t).or_default() += a * s;
                    *next.entry(k | t).or_default() += a * (s * sign);
                }
                next.retain(|_, a| a.norm() > PRUNE);
                self.terms = next;
            }
            GateKind::T | GateKind::Tdg | GateKind::S | GateKind::Sdg => {
                let p = phase(gate.kind());
                for (k, a) in self.terms.iter_mut() {
                    if k & t != 0 {
                        *a *= p;
                    }
                }
            }
            GateKind::X | GateKind::Cnot | GateKind::Toffoli | GateKind::Mcx => {
                let c = control_mask(gate);
                self.terms = self
                    .terms
                    .drain()
                    .map(|(k, a)| if k & c == c { (k ^ t, a) } else { (k, a) })
                    .collect();
            }
        }
    }
}

/// Simulate `circuit` on a basis-state input keeping only non-zero terms.
pub fn run_sparse(circuit: &Circuit, input: &BasisState) -> Result<SparseState> {
    check_input(circuit, input)?;
    check_width(circuit)?;
    let mut state = SparseState::basis(input);
    for gate in circuit.gates() {
        state.apply(gate);
    }
    Ok(state)
}
