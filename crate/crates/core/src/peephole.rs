//! Inverse-pair cancellation.
//!
//! A gate cancels against the closest earlier gate on exactly the same
//! qubits when that gate is its inverse and nothing in between touches any
//! of those qubits. Two T gates on a qubit fuse into S, two T† into S†.

use crate::circuit::{Circuit, Gate, GateKind};

fn fuse(earlier: &Gate, later: &Gate) -> Option<Gate> {
    match (earlier.kind(), later.kind()) {
        (GateKind::T, GateKind::T) => Some(Gate::s(later.target())),
        (GateKind::Tdg, GateKind::Tdg) => Some(Gate::sdg(later.target())),
        _ => None,
    }
}

struct Pass {
    slots: Vec<Option<Gate>>,
    /// Per qubit, indices into `slots` of live gates touching it.
    stacks: Vec<Vec<usize>>,
    changed: bool,
}

impl Pass {
    fn neighbour(&self, gate: &Gate) -> Option<usize> {
        let top = *self.stacks[gate.target().0].last()?;
        let h = self.slots[top].as_ref().expect("stack entries are live");
        let shared = gate.qubits().all(|q| self.stacks[q.0].last() == Some(&top));
        (shared && h.same_qubits(gate)).then_some(top)
    }

    fn remove(&mut self, index: usize) {
        let gate = self.slots[index].take().expect("removing a live gate");
        for q in gate.qubits() {
            self.stacks[q.0].pop();
        }
        self.changed = true;
    }

    fn push(&mut self, gate: Gate) {
        if let Some(index) = self.neighbour(&gate) {
            let earlier = self.slots[index].as_ref().expect("live");
            if earlier.is_inverse_of(&gate) {
                self.remove(index);
                return;
            }
            if let Some(fused) = fuse(earlier, &gate) {
                self.remove(index);
                self.push(fused);
                return;
            }
        }
        let index = self.slots.len();
        for q in gate.qubits() {
            self.stacks[q.0].push(index);
        }
        self.slots.push(Some(gate));
    }
}

/// Cancel inverse pairs and fuse T pairs until nothing changes.
pub fn remove_redundancies(circuit: &Circuit) -> Circuit {
    let mut gates = circuit.gates().to_vec();
    loop {
        let mut pass = Pass {
            slots: Vec::with_capacity(gates.len()),
            stacks: vec![Vec::new(); circuit.num_qubits()],
            changed: false,
        };
        for gate in gates {
            pass.push(gate);
        }
        gates = pass.slots.into_iter().flatten().collect();
        if !pass.changed {
            return circuit.replace_gates(gates);
        }
    }
}
