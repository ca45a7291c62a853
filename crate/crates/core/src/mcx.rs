//! Toffoli-level constructions of the n-controlled X gate.
//!
//! Three constructions with different ancilla contracts:
//!
//! | function              | ancillas        | Toffoli count              |
//! |-----------------------|-----------------|----------------------------|
//! | [`mcx_borrowed`]      | n-2 borrowed    | 4n-8                       |
//! | [`mcx_single_clean`]  | 1 clean         | 3 (n=3), 6 (n=4), <= 6n-18 |
//! | [`mcx_clean_ladder`]  | n-2 clean       | 2n-3                       |
//!
//! Each takes an explicit [`McxLayout`] so callers decide where helper
//! qubits live in the register. [`lower_mcx`] rewrites every MCX gate of a
//! circuit with one of the three.

use crate::circuit::{Circuit, Gate, GateKind, QubitId, QubitRole};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AncillaKind {
    Borrowed,
    Clean,
}

impl AncillaKind {
    fn role(self) -> QubitRole {
        match self {
            AncillaKind::Borrowed => QubitRole::BorrowedAncilla,
            AncillaKind::Clean => QubitRole::CleanAncilla,
        }
    }
}

/// Where the controls, target and helper qubits of one C^nX sit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct McxLayout {
    controls: Vec<QubitId>,
    target: QubitId,
    ancillas: Vec<QubitId>,
    ancilla_kind: AncillaKind,
}

impl McxLayout {
    pub fn new(
        controls: Vec<QubitId>,
        target: QubitId,
        ancillas: Vec<QubitId>,
        ancilla_kind: AncillaKind,
    ) -> Result<McxLayout> {
        let all: Vec<QubitId> = controls
            .iter()
            .chain(&ancillas)
            .chain(std::iter::once(&target))
            .copied()
            .collect();
        for (i, q) in all.iter().enumerate() {
            if all[..i].contains(q) {
                return Err(Error::DuplicateQubit(*q));
            }
        }
        Ok(McxLayout {
            controls,
            target,
            ancillas,
            ancilla_kind,
        })
    }

    /// Controls `0..n`, target `n`, ancillas `n+1..`.
    pub fn contiguous(n: usize, num_ancillas: usize, ancilla_kind: AncillaKind) -> McxLayout {
        McxLayout {
            controls: (0..n).map(QubitId).collect(),
            target: QubitId(n),
            ancillas: (n + 1..n + 1 + num_ancillas).map(QubitId).collect(),
            ancilla_kind,
        }
    }

    /// Controls and borrowed ancillas interleaved as
    /// `x1 x2 a1 x3 a2 ... a_{n-2} x_n target`.
    pub fn interleaved(n: usize) -> McxLayout {
        assert!(n >= 3);
        let mut controls = vec![QubitId(0), QubitId(1)];
        let mut ancillas = Vec::new();
        for i in 0..n - 2 {
            ancillas.push(QubitId(2 + 2 * i));
            controls.push(QubitId(3 + 2 * i));
        }
        McxLayout {
            controls,
            target: QubitId(2 * n - 2),
            ancillas,
            ancilla_kind: AncillaKind::Borrowed,
        }
    }

    pub fn controls(&self) -> &[QubitId] {
        &self.controls
    }

    pub fn target(&self) -> QubitId {
        self.target
    }

    pub fn ancillas(&self) -> &[QubitId] {
        &self.ancillas
    }

    pub fn ancilla_kind(&self) -> AncillaKind {
        self.ancilla_kind
    }

    pub fn num_controls(&self) -> usize {
        self.controls.len()
    }

    /// One past the largest qubit index used.
    pub fn register_size(&self) -> usize {
        self.controls
            .iter()
            .chain(&self.ancillas)
            .chain(std::iter::once(&self.target))
            .map(|q| q.0 + 1)
            .max()
            .unwrap_or(1)
    }

    fn empty_circuit(&self) -> Circuit {
        let mut roles = vec![QubitRole::Data; self.register_size()];
        for a in &self.ancillas {
            roles[a.0] = self.ancilla_kind.role();
        }
        Circuit::with_roles(roles).expect("layout register is non-empty")
    }

    fn check(&self, expected_ancillas: usize) -> Result<()> {
        if self.controls.len() < 3 {
            return Err(Error::TooFewControls(self.controls.len()));
        }
        if self.ancillas.len() != expected_ancillas {
            return Err(Error::WrongAncillaCount {
                expected: expected_ancillas,
                got: self.ancillas.len(),
            });
        }
        Ok(())
    }
}

/// Gate for 0, 1 or 2 controls; `None` when a real construction is needed.
fn direct(controls: &[QubitId], target: QubitId) -> Option<Gate> {
    match controls {
        [] => Some(Gate::x(target)),
        [c] => Some(Gate::cnot(*c, target)),
        [c1, c2] => Some(Gate::toffoli(*c1, *c2, target)),
        _ => None,
    }
}

/// The 4n-8 Toffoli sequence for n >= 3 controls and n-2 borrowed helpers.
///
/// One block is the descending staircase from the target down to
/// `Tof(x1, x2, a1)` followed by the ascending staircase that stops just
/// short of the target. The whole block is emitted twice; every Toffoli is
/// self-inverse, so the result is an involution.
pub(crate) fn borrowed_gates(controls: &[QubitId], ancillas: &[QubitId], target: QubitId) -> Vec<Gate> {
    if let Some(g) = direct(controls, target) {
        return vec![g];
    }
    let n = controls.len();
    debug_assert_eq!(ancillas.len(), n - 2);
    // step(k) for k in 1..=n-2 is Tof(a_{k-1}, x_{k+1}, a_k) with a_0 := x_1
    // and a_{n-2}'s successor being the target; indices are 0-based below.
    let rung = |k: usize| -> Gate {
        if k == 0 {
            Gate::toffoli(controls[0], controls[1], ancillas[0])
        } else {
            Gate::toffoli(ancillas[k - 1], controls[k + 1], ancillas[k])
        }
    };
    let mut block = Vec::with_capacity(2 * n - 4);
    block.push(Gate::toffoli(ancillas[n - 3], controls[n - 1], target));
    block.extend((0..n - 3).rev().map(|k| rung(k + 1)));
    block.push(rung(0));
    block.extend((1..n - 2).map(rung));
    let mut gates = block.clone();
    gates.extend(block);
    gates
}

/// The 2n-3 Toffoli pyramid for n >= 3 controls and n-2 clean helpers.
pub(crate) fn ladder_gates(controls: &[QubitId], ancillas: &[QubitId], target: QubitId) -> Vec<Gate> {
    if let Some(g) = direct(controls, target) {
        return vec![g];
    }
    let n = controls.len();
    debug_assert_eq!(ancillas.len(), n - 2);
    let mut compute = vec![Gate::toffoli(controls[0], controls[1], ancillas[0])];
    for k in 1..n - 2 {
        compute.push(Gate::toffoli(ancillas[k - 1], controls[k + 1], ancillas[k]));
    }
    let mut gates = compute.clone();
    gates.push(Gate::toffoli(ancillas[n - 3], controls[n - 1], target));
    gates.extend(compute.into_iter().rev());
    gates
}

/// Single clean ancilla: compute AND of the first half of the controls into
/// the ancilla, use it as an extra control on the second half, uncompute.
///
/// Both inner gates are lowered with [`borrowed_gates`], borrowing the
/// lowest-indexed qubits of the opposite block.
pub(crate) fn single_clean_gates(controls: &[QubitId], clean: QubitId, target: QubitId) -> Vec<Gate> {
    if let Some(g) = direct(controls, target) {
        return vec![g];
    }
    let n = controls.len();
    let n0 = n.div_ceil(2);
    let (x, y) = controls.split_at(n0);

    let mut outside_x: Vec<QubitId> = y.iter().copied().chain(std::iter::once(target)).collect();
    outside_x.sort();
    let compute = borrowed_gates(x, &outside_x[..n0.saturating_sub(2)], clean);

    let inner_controls: Vec<QubitId> = y.iter().copied().chain(std::iter::once(clean)).collect();
    let mut outside_y: Vec<QubitId> = x.to_vec();
    outside_y.sort();
    let inner = borrowed_gates(
        &inner_controls,
        &outside_y[..inner_controls.len().saturating_sub(2)],
        target,
    );

    let mut gates = compute.clone();
    gates.extend(inner);
    gates.extend(compute);
    gates
}

/// C^nX with n-2 borrowed ancillas in exactly 4n-8 Toffolis.
pub fn mcx_borrowed(layout: &McxLayout) -> Result<Circuit> {
    layout.check(layout.num_controls().saturating_sub(2))?;
    let mut circuit = layout.empty_circuit();
    circuit.extend(borrowed_gates(&layout.controls, &layout.ancillas, layout.target))?;
    Ok(circuit)
}

/// C^nX with one clean ancilla.
pub fn mcx_single_clean(layout: &McxLayout) -> Result<Circuit> {
    layout.check(1)?;
    if layout.ancilla_kind != AncillaKind::Clean {
        return Err(Error::InvalidParameters(
            "single-ancilla construction needs a clean ancilla".into(),
        ));
    }
    let mut circuit = layout.empty_circuit();
    circuit.extend(single_clean_gates(
        &layout.controls,
        layout.ancillas[0],
        layout.target,
    ))?;
    Ok(circuit)
}

/// C^nX with n-2 clean ancillas in exactly 2n-3 Toffolis.
pub fn mcx_clean_ladder(layout: &McxLayout) -> Result<Circuit> {
    layout.check(layout.num_controls().saturating_sub(2))?;
    if layout.ancilla_kind != AncillaKind::Clean {
        return Err(Error::InvalidParameters(
            "ladder construction needs clean ancillas".into(),
        ));
    }
    let mut circuit = layout.empty_circuit();
    circuit.extend(ladder_gates(&layout.controls, &layout.ancillas, layout.target))?;
    Ok(circuit)
}

/// Which construction [`lower_mcx`] uses for gates with three or more controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum McxStrategy {
    Borrowed,
    SingleClean,
    CleanLadder,
}

impl McxStrategy {
    /// Helper qubits needed for `n` controls.
    pub fn ancillas_needed(self, n: usize) -> usize {
        match (self, n) {
            (_, 0..=2) => 0,
            (McxStrategy::SingleClean, _) => 1,
            _ => n - 2,
        }
    }
}

/// Replace every MCX gate with Toffoli-level gates.
///
/// One- and two-control MCX gates become CNOT and Toffoli directly. The
/// clean strategies draw their helpers from `ancilla_pool`, which the caller
/// guarantees is in |0> wherever an MCX occurs. The borrowed strategy takes
/// pool qubits first and then any other qubit the gate does not touch.
pub fn lower_mcx(circuit: &Circuit, strategy: McxStrategy, ancilla_pool: &[QubitId]) -> Result<Circuit> {
    let mut out = circuit.empty_like();
    for gate in circuit.gates() {
        if gate.kind() != GateKind::Mcx {
            out.push(gate.clone())?;
            continue;
        }
        let controls = gate.controls();
        let target = gate.target();
        if let Some(g) = direct(controls, target) {
            out.push(g)?;
            continue;
        }
        if ancilla_pool.iter().any(|q| gate.acts_on(*q)) {
            return Err(Error::PoolOverlap(gate.to_string()));
        }
        let needed = strategy.ancillas_needed(controls.len());
        let lowered = match strategy {
            McxStrategy::Borrowed => {
                let mut helpers: Vec<QubitId> = ancilla_pool.iter().copied().take(needed).collect();
                let idle = (0..circuit.num_qubits())
                    .map(QubitId)
                    .filter(|q| !gate.acts_on(*q) && !ancilla_pool.contains(q));
                helpers.extend(idle.take(needed - helpers.len()));
                if helpers.len() < needed {
                    return Err(Error::InsufficientAncillas {
                        needed,
                        available: helpers.len(),
                    });
                }
                borrowed_gates(controls, &helpers, target)
            }
            McxStrategy::SingleClean | McxStrategy::CleanLadder => {
                if ancilla_pool.len() < needed {
                    return Err(Error::InsufficientAncillas {
                        needed,
                        available: ancilla_pool.len(),
                    });
                }
                if strategy == McxStrategy::SingleClean {
                    single_clean_gates(controls, ancilla_pool[0], target)
                } else {
                    ladder_gates(controls, &ancilla_pool[..needed], target)
                }
            }
        };
        out.extend(lowered)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::qubits;

    #[test]
    fn borrowed_n4_matches_worked_example() {
        // x1 x2 a1 x3 a2 x4 x5 = qubits 0..7
        let layout = McxLayout::interleaved(4);
        let c = mcx_borrowed(&layout).unwrap();
        let (x1, x2, a1, x3, a2, x4, x5) = (0, 1, 2, 3, 4, 5, 6);
        let expected = vec![
            Gate::toffoli(a2, x4, x5),
            Gate::toffoli(a1, x3, a2),
            Gate::toffoli(x1, x2, a1),
            Gate::toffoli(a1, x3, a2),
            Gate::toffoli(a2, x4, x5),
            Gate::toffoli(a1, x3, a2),
            Gate::toffoli(x1, x2, a1),
            Gate::toffoli(a1, x3, a2),
        ];
        assert_eq!(c.gates(), expected.as_slice());
        assert_eq!(c.count_gates().toffoli, 8);
        assert_eq!(c.count_gates().total, 8);
    }

    #[test]
    fn ladder_n4_is_the_pyramid() {
        // x1 x2 a1 x3 a2 x4 x5, ancillas clean
        let layout = McxLayout::new(
            qubits([0, 1, 3, 5]),
            QubitId(6),
            qubits([2, 4]),
            AncillaKind::Clean,
        )
        .unwrap();
        let c = mcx_clean_ladder(&layout).unwrap();
        assert_eq!(
            c.gates(),
            &[
                Gate::toffoli(0, 1, 2),
                Gate::toffoli(2, 3, 4),
                Gate::toffoli(4, 5, 6),
                Gate::toffoli(2, 3, 4),
                Gate::toffoli(0, 1, 2),
            ]
        );
        assert_eq!(c.role(QubitId(2)), QubitRole::CleanAncilla);
    }

    #[test]
    fn small_counts() {
        let b3 = mcx_borrowed(&McxLayout::contiguous(3, 1, AncillaKind::Borrowed)).unwrap();
        assert_eq!(b3.count_gates().toffoli, 4);
        let s3 = mcx_single_clean(&McxLayout::contiguous(3, 1, AncillaKind::Clean)).unwrap();
        assert_eq!(s3.count_gates().toffoli, 3);
        let s4 = mcx_single_clean(&McxLayout::contiguous(4, 1, AncillaKind::Clean)).unwrap();
        assert_eq!(s4.count_gates().toffoli, 6);
        let l3 = mcx_clean_ladder(&McxLayout::contiguous(3, 1, AncillaKind::Clean)).unwrap();
        assert_eq!(l3.count_gates().toffoli, 3);
    }

    #[test]
    fn layout_errors() {
        assert_eq!(
            mcx_borrowed(&McxLayout::contiguous(2, 0, AncillaKind::Borrowed)),
            Err(Error::TooFewControls(2))
        );
        assert_eq!(
            mcx_borrowed(&McxLayout::contiguous(4, 1, AncillaKind::Borrowed)),
            Err(Error::WrongAncillaCount {
                expected: 2,
                got: 1
            })
        );
        assert_eq!(
            mcx_single_clean(&McxLayout::contiguous(4, 2, AncillaKind::Clean)),
            Err(Error::WrongAncillaCount {
                expected: 1,
                got: 2
            })
        );
        assert!(McxLayout::new(qubits([0, 1, 2]), QubitId(2), vec![], AncillaKind::Clean).is_err());
        assert!(McxLayout::new(qubits([0, 1, 2]), QubitId(3), qubits([1]), AncillaKind::Clean).is_err());
    }

    #[test]
    fn lower_degenerate_arities() {
        let mut c = Circuit::new(4).unwrap();
        c.push(Gate::mcx(qubits([0, 1]), 2)).unwrap();
        c.push(Gate::mcx(qubits([3]), 0)).unwrap();
        for strategy in [McxStrategy::Borrowed, McxStrategy::SingleClean, McxStrategy::CleanLadder] {
            let lowered = lower_mcx(&c, strategy, &[]).unwrap();
            assert_eq!(lowered.gates(), &[Gate::toffoli(0, 1, 2), Gate::cnot(3, 0)]);
        }
    }

    #[test]
    fn lower_ladder_five_controls() {
        let mut c = Circuit::new(9).unwrap();
        c.push(Gate::mcx(qubits(0..5), 5)).unwrap();
        let lowered = lower_mcx(&c, McxStrategy::CleanLadder, &qubits(6..9)).unwrap();
        assert_eq!(lowered.count_gates().toffoli, 7);
        assert_eq!(lowered.count_gates().mcx, 0);
    }

    #[test]
    fn lower_errors() {
        let mut c = Circuit::new(6).unwrap();
        c.push(Gate::mcx(qubits(0..4), 4)).unwrap();
        assert_eq!(
            lower_mcx(&c, McxStrategy::CleanLadder, &qubits([5])),
            Err(Error::InsufficientAncillas {
                needed: 2,
                available: 1
            })
        );
        assert!(matches!(
            lower_mcx(&c, McxStrategy::SingleClean, &qubits([3])),
            Err(Error::PoolOverlap(_))
        ));
        // only qubit 5 is idle; borrowed needs two helpers
        assert!(matches!(
            lower_mcx(&c, McxStrategy::Borrowed, &[]),
            Err(Error::InsufficientAncillas { .. })
        ));
        let mut wide = Circuit::new(7).unwrap();
        wide.push(Gate::mcx(qubits(0..4), 4)).unwrap();
        let lowered = lower_mcx(&wide, McxStrategy::Borrowed, &[]).unwrap();
        assert_eq!(lowered.count_gates().toffoli, 8);
    }
}
