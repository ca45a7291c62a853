//! Toffoli to Clifford+T lowering.
//!
//! Every Toffoli becomes the 16-gate textbook circuit (6 CNOT, 2 H, 7 T or
//! T†, 1 S). Because a Toffoli is its own inverse, the reversed and
//! daggered circuit is an equally valid lowering. Giving the second member
//! of a repeated Toffoli the reversed form puts mirror-image gates face to
//! face, and [`remove_redundancies`](crate::peephole::remove_redundancies)
//! then deletes them.

use std::fmt;
use std::str::FromStr;

use crate::circuit::{Circuit, Gate, GateKind, QubitId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ToffoliOrientation {
    #[default]
    Standard,
    Inverted,
}

/// The Clifford+T gates for `Tof(c1, c2, t)` in time order.
pub fn toffoli_decomposition(c1: QubitId, c2: QubitId, t: QubitId, orientation: ToffoliOrientation) -> Vec<Gate> {
    let standard = vec![
        Gate::h(t),
        Gate::cnot(c2, t),
        Gate::tdg(t),
        Gate::cnot(c1, t),
        Gate::t(t),
        Gate::cnot(c2, t),
        Gate::tdg(t),
        Gate::cnot(c1, t),
        Gate::tdg(c2),
        Gate::t(t),
        Gate::cnot(c1, c2),
        Gate::h(t),
        Gate::tdg(c2),
        Gate::cnot(c1, c2),
        Gate::t(c1),
        Gate::s(c2),
    ];
    match orientation {
        ToffoliOrientation::Standard => standard,
        ToffoliOrientation::Inverted => standard.iter().rev().map(Gate::inverse).collect(),
    }
}

fn split_toffoli(gate: &Gate) -> Result<(QubitId, QubitId, QubitId)> {
    match (gate.kind(), gate.controls()) {
        (GateKind::Toffoli, &[c1, c2]) => Ok((c1, c2, gate.target())),
        (kind, _) => Err(Error::NotAToffoli(kind)),
    }
}

/// Lower one Toffoli into a circuit just wide enough to hold its qubits.
pub fn lower_toffoli(gate: &Gate, orientation: ToffoliOrientation) -> Result<Circuit> {
    let (c1, c2, t) = split_toffoli(gate)?;
    let width = c1.0.max(c2.0).max(t.0) + 1;
    let mut circuit = Circuit::new(width)?;
    circuit.extend(toffoli_decomposition(c1, c2, t, orientation))?;
    Ok(circuit)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Pairing {
    /// Every Toffoli uses the standard orientation.
    #[default]
    Naive,
    /// Repeated Toffolis alternate orientation so their facing halves cancel.
    InverseAware,
}

impl Pairing {
    pub fn name(self) -> &'static str {
        match self {
            Pairing::Naive => "naive",
            Pairing::InverseAware => "inverse_aware",
        }
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pairing {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "naive" => Ok(Pairing::Naive),
            "inverse_aware" => Ok(Pairing::InverseAware),
            other => Err(format!("unknown pairing {other:?} (naive, inverse_aware)")),
        }
    }
}

/// For each Toffoli that closes a pair, the control order of the Toffoli
/// that opened it.
///
/// A pair is two Toffolis on the same controls (in either order) and target
/// with no gate in between touching either control. Gates on the target
/// are allowed: they only block the two H gates from meeting, while the
/// control-side halves still cancel.
fn find_pairs(gates: &[Gate]) -> Vec<Option<(QubitId, QubitId)>> {
    let mut closes = vec![None; gates.len()];
    let mut opened = vec![false; gates.len()];
    for i in 0..gates.len() {
        if gates[i].kind() != GateKind::Toffoli || closes[i].is_some() || opened[i] {
            continue;
        }
        let g = &gates[i];
        let (c1, c2) = (g.controls()[0], g.controls()[1]);
        for j in i + 1..gates.len() {
            let h = &gates[j];
            if h.kind() == GateKind::Toffoli && h.same_qubits(g) && h.target() == g.target() {
                if closes[j].is_none() {
                    closes[j] = Some((c1, c2));
                    opened[i] = true;
                }
                break;
            }
            if h.acts_on(c1) || h.acts_on(c2) {
                break;
            }
        }
    }
    closes
}

/// Replace every Toffoli in `circuit` with Clifford+T gates.
pub fn lower_all_toffolis(circuit: &Circuit, pairing: Pairing) -> Result<Circuit> {
    if circuit.contains_kind(GateKind::Mcx) {
        return Err(Error::McxPresent);
    }
    let closes = match pairing {
        Pairing::Naive => vec![None; circuit.len()],
        Pairing::InverseAware => find_pairs(circuit.gates()),
    };
    let mut out = circuit.empty_like();
    for (gate, close) in circuit.gates().iter().zip(closes) {
        if gate.kind() != GateKind::Toffoli {
            out.push(gate.clone())?;
            continue;
        }
        let lowered = match close {
            Some((c1, c2)) => toffoli_decomposition(c1, c2, gate.target(), ToffoliOrientation::Inverted),
            None => {
                let (c1, c2, t) = split_toffoli(gate)?;
                toffoli_decomposition(c1, c2, t, ToffoliOrientation::Standard)
            }
        };
        out.extend(lowered)?;
    }
    Ok(out)
}
