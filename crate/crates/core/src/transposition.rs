//! Circuits that swap two computational basis states |a> and |b> and fix
//! every other basis state.
//!
//! The main construction uses one clean flag qubit and two C^nX gates:
//!
//! ```text
//! data : ──────■──────[Π_a]──[Π_b]──■──────────
//!              │        │      │     │
//! flag : ──H───U_ab─────⊕──────⊕────U_ab───H───
//! ```
//!
//! `U_ab` is an X on every position where `a` and `b` differ, controlled on
//! the flag, and `Π_p` flips the flag exactly when the data register holds
//! `p`. The two projector-controlled flips are lowered with
//! [`mcx_single_clean`](crate::mcx::mcx_single_clean) (strategy
//! [`SynthesisStrategy::Thm3A`], two clean ancillas in total) or with
//! [`mcx_clean_ladder`](crate::mcx::mcx_clean_ladder)
//! ([`SynthesisStrategy::Thm3B`], n-1 clean ancillas). Either way the gate
//! count is linear in n.
//!
//! [`synthesize_gray_code`] is the quadratic baseline that walks a Gray-code
//! path from `a` to `b`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, QubitId, QubitRole};
use crate::error::{Error, Result};
use crate::mcx::{lower_mcx, McxStrategy};
use crate::sim::BasisState;

/// The unordered pair of basis states to swap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TranspositionSpec {
    a: BasisState,
    b: BasisState,
}

impl TranspositionSpec {
    pub fn new(a: BasisState, b: BasisState) -> Result<TranspositionSpec> {
        if a.width() != b.width() {
            return Err(Error::LengthMismatch(a.width(), b.width()));
        }
        if a == b {
            return Err(Error::IdenticalStates);
        }
        Ok(TranspositionSpec { a, b })
    }

    /// Parse two least-index-first bit strings.
    pub fn parse(a: &str, b: &str) -> Result<TranspositionSpec> {
        TranspositionSpec::new(a.parse()?, b.parse()?)
    }

    pub fn n(&self) -> usize {
        self.a.width()
    }

    pub fn a(&self) -> BasisState {
        self.a
    }

    pub fn b(&self) -> BasisState {
        self.b
    }

    /// The same transposition with the roles of `a` and `b` exchanged.
    pub fn swapped(&self) -> TranspositionSpec {
        TranspositionSpec {
            a: self.b,
            b: self.a,
        }
    }

    pub fn hamming(&self) -> usize {
        self.a.hamming(&self.b)
    }

    /// Positions where `a` and `b` differ, ascending.
    pub fn differing_bits(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.a.get(i) != self.b.get(i)).collect()
    }

    /// Image of a data-register state under the transposition.
    pub fn apply(&self, x: BasisState) -> BasisState {
        if x == self.a {
            self.b
        } else if x == self.b {
            self.a
        } else {
            x
        }
    }
}

impl fmt::Display for TranspositionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {})", self.a, self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SynthesisStrategy {
    /// Flag construction, C^nX lowered with one extra clean ancilla.
    #[serde(rename = "thm3_a")]
    Thm3A,
    /// Flag construction, C^nX lowered with n-2 extra clean ancillas.
    #[serde(rename = "thm3_b")]
    Thm3B,
    /// Gray-code path baseline, C^{n-1}X lowered with borrowed ancillas.
    #[serde(rename = "gray")]
    GrayCode,
}

impl SynthesisStrategy {
    pub fn name(self) -> &'static str {
        match self {
            SynthesisStrategy::Thm3A => "thm3_a",
            SynthesisStrategy::Thm3B => "thm3_b",
            SynthesisStrategy::GrayCode => "gray",
        }
    }
}

impl fmt::Display for SynthesisStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SynthesisStrategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "thm3_a" | "a" => Ok(SynthesisStrategy::Thm3A),
            "thm3_b" | "b" => Ok(SynthesisStrategy::Thm3B),
            "gray" | "gray_code" => Ok(SynthesisStrategy::GrayCode),
            other => Err(format!("unknown strategy {other:?} (thm3_a, thm3_b, gray)")),
        }
    }
}

fn check_distinct(flag: QubitId, qubits: &[QubitId]) -> Result<()> {
    for (i, q) in qubits.iter().enumerate() {
        if *q == flag || qubits[..i].contains(q) {
            return Err(Error::DuplicateQubit(*q));
        }
    }
    Ok(())
}

fn register_for(qubits: impl Iterator<Item = QubitId>) -> Result<Circuit> {
    let size = qubits.map(|q| q.0 + 1).max().unwrap_or(1);
    Circuit::new(size)
}

/// One CNOT from `flag` onto each data position where `a` and `b` differ,
/// in ascending position order.
pub fn controlled_u_ab(spec: &TranspositionSpec, flag: QubitId, data: &[QubitId]) -> Result<Circuit> {
    if data.len() != spec.n() {
        return Err(Error::LengthMismatch(data.len(), spec.n()));
    }
    check_distinct(flag, data)?;
    let mut circuit = register_for(data.iter().copied().chain([flag]))?;
    circuit.extend(spec.differing_bits().into_iter().map(|i| Gate::cnot(flag, data[i])))?;
    Ok(circuit)
}

fn zero_positions(pattern: &BasisState, controls: &[QubitId]) -> Vec<Gate> {
    controls
        .iter()
        .enumerate()
        .filter(|(i, _)| !pattern.get(*i))
        .map(|(_, q)| Gate::x(*q))
        .collect()
}

/// Flip `target` exactly when `controls` hold `pattern`: an MCX wrapped in
/// X gates on the controls whose pattern bit is 0.
pub fn projector_controlled_x(pattern: &BasisState, controls: &[QubitId], target: QubitId) -> Result<Circuit> {
    if controls.len() != pattern.width() {
        return Err(Error::LengthMismatch(controls.len(), pattern.width()));
    }
    check_distinct(target, controls)?;
    let mut circuit = register_for(controls.iter().copied().chain([target]))?;
    let sandwich = zero_positions(pattern, controls);
    circuit.extend(sandwich.iter().cloned())?;
    circuit.push(Gate::mcx(controls.to_vec(), target))?;
    circuit.extend(sandwich)?;
    Ok(circuit)
}

/// The flag construction at the MCX level over `n + 1` qubits: data
/// `0..n`, clean flag `n`.
///
/// The Π_b gate lists its controls in descending order. Its lowered form
/// then starts from the opposite end of the data register from where the
/// Π_a lowering ends, so the two never meet in a peephole pass and the
/// Toffoli count stays exactly at the construction count.
pub fn flag_circuit(spec: &TranspositionSpec) -> Result<Circuit> {
    let n = spec.n();
    let flag = QubitId(n);
    let data: Vec<QubitId> = (0..n).map(QubitId).collect();
    let mut roles = vec![QubitRole::Data; n];
    roles.push(QubitRole::CleanAncilla);
    let mut circuit = Circuit::with_roles(roles)?;

    let u_ab = controlled_u_ab(spec, flag, &data)?;
    let pi_a = projector_controlled_x(&spec.a(), &data, flag)?;
    let reversed: Vec<QubitId> = data.iter().rev().copied().collect();
    let b_reversed = BasisState::from_bools(&(0..n).rev().map(|i| spec.b().get(i)).collect::<Vec<_>>())?;
    let pi_b = projector_controlled_x(&b_reversed, &reversed, flag)?;

    circuit.push(Gate::h(flag))?;
    circuit.append(&u_ab)?;
    circuit.append(&pi_a)?;
    circuit.append(&pi_b)?;
    circuit.append(&u_ab)?;
    circuit.push(Gate::h(flag))?;
    Ok(circuit)
}

/// Synthesize the transposition down to {H, X, CNOT, Toffoli}.
///
/// Register layout for the flag strategies: data `0..n`, flag `n`, then the
/// lowering ancillas (one for [`SynthesisStrategy::Thm3A`], `n - 2` for
/// [`SynthesisStrategy::Thm3B`], none when `n <= 2`). All ancillas are
/// clean. [`SynthesisStrategy::GrayCode`] appends `n - 3` borrowed qubits
/// instead (see [`synthesize_gray_code`]).
pub fn synthesize_transposition(spec: &TranspositionSpec, strategy: SynthesisStrategy) -> Result<Circuit> {
    let n = spec.n();
    let (mcx_strategy, extra) = match strategy {
        SynthesisStrategy::GrayCode => return lower_gray_code(spec),
        SynthesisStrategy::Thm3A => (McxStrategy::SingleClean, McxStrategy::SingleClean.ancillas_needed(n)),
        SynthesisStrategy::Thm3B => (McxStrategy::CleanLadder, McxStrategy::CleanLadder.ancillas_needed(n)),
    };
    let mut circuit = flag_circuit(spec)?;
    circuit.widen(n + 1 + extra, QubitRole::CleanAncilla);
    let pool: Vec<QubitId> = (n + 1..n + 1 + extra).map(QubitId).collect();
    lower_mcx(&circuit, mcx_strategy, &pool)
}

/// Gray-code baseline over exactly `n` qubits using {X, CNOT, MCX}.
///
/// Walks `a = g_0, g_1, ..., g_m = b`, flipping the differing bits in
/// ascending order. Each step swaps two neighbouring states with an MCX on
/// the changed bit controlled by all other bits. The path up to `g_{m-1}`
/// conjugates the final swap `g_{m-1} <-> b`.
pub fn synthesize_gray_code(spec: &TranspositionSpec) -> Result<Circuit> {
    let n = spec.n();
    let mut circuit = Circuit::new(n)?;
    let differing = spec.differing_bits();
    let mut path = vec![spec.a()];
    for &bit in &differing {
        let mut next = *path.last().expect("path starts non-empty");
        next.flip(bit);
        path.push(next);
    }

    let step = |from: &BasisState, bit: usize| -> Result<Vec<Gate>> {
        if n == 1 {
            return Ok(vec![Gate::x(bit)]);
        }
        let controls: Vec<QubitId> = (0..n).filter(|&q| q != bit).map(QubitId).collect();
        let pattern = BasisState::from_bools(&controls.iter().map(|q| from.get(q.0)).collect::<Vec<_>>())?;
        Ok(projector_controlled_x(&pattern, &controls, QubitId(bit))?.into_gates())
    };

    let m = differing.len();
    let mut walk = Vec::new();
    for k in 0..m - 1 {
        walk.push(step(&path[k], differing[k])?);
    }
    for gates in &walk {
        circuit.extend(gates.iter().cloned())?;
    }
    circuit.extend(step(&path[m - 1], differing[m - 1])?)?;
    for gates in walk.iter().rev() {
        circuit.extend(gates.iter().cloned())?;
    }
    Ok(circuit)
}

fn lower_gray_code(spec: &TranspositionSpec) -> Result<Circuit> {
    let n = spec.n();
    let mut circuit = synthesize_gray_code(spec)?;
    let helpers = McxStrategy::Borrowed.ancillas_needed(n.saturating_sub(1));
    circuit.widen(n + helpers, QubitRole::BorrowedAncilla);
    let pool: Vec<QubitId> = (n..n + helpers).map(QubitId).collect();
    lower_mcx(&circuit, McxStrategy::Borrowed, &pool)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::GateKind;
    use crate::sim::{run_reversible, run_statevector, DEFAULT_QUBIT_CAP};

    fn spec(a: &str, b: &str) -> TranspositionSpec {
        TranspositionSpec::parse(a, b).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert_eq!(TranspositionSpec::parse("01", "01"), Err(Error::IdenticalStates));
        assert_eq!(TranspositionSpec::parse("01", "011"), Err(Error::LengthMismatch(2, 3)));
        assert!(TranspositionSpec::parse("0x", "01").is_err());
    }

    #[test]
    fn controlled_u_counts() {
        let flag = QubitId(4);
        let data = crate::circuit::qubits(0..3);
        assert_eq!(controlled_u_ab(&spec("000", "111"), flag, &data).unwrap().len(), 3);
        let data4 = crate::circuit::qubits(0..4);
        assert_eq!(controlled_u_ab(&spec("0001", "1110"), flag, &data4).unwrap().len(), 4);
        let c = controlled_u_ab(&spec("10", "11"), QubitId(2), &crate::circuit::qubits(0..2)).unwrap();
        assert_eq!(c.gates(), &[Gate::cnot(2, 1)]);
        assert!(controlled_u_ab(&spec("10", "11"), QubitId(1), &crate::circuit::qubits(0..2)).is_err());
    }

    #[test]
    fn controlled_u_maps_a_to_b_when_flag_set() {
        let s = spec("0001", "1110");
        let c = controlled_u_ab(&s, QubitId(4), &crate::circuit::qubits(0..4)).unwrap();
        let input: BasisState = "00011".parse().unwrap();
        assert_eq!(run_reversible(&c, &input).unwrap().to_string(), "11101");
    }

    #[test]
    fn projector_sandwich_sizes() {
        let controls = crate::circuit::qubits(0..4);
        let all_ones = projector_controlled_x(&"1111".parse().unwrap(), &controls, QubitId(4)).unwrap();
        assert_eq!(all_ones.count_gates().x, 0);
        assert_eq!(all_ones.count_gates().mcx, 1);
        let zeros = projector_controlled_x(&"0000".parse().unwrap(), &controls, QubitId(4)).unwrap();
        assert_eq!(zeros.count_gates().x, 8);
    }

    #[test]
    fn projector_flips_only_on_pattern() {
        let c = projector_controlled_x(&"01".parse().unwrap(), &crate::circuit::qubits(0..2), QubitId(2)).unwrap();
        for bits in 0..8u64 {
            let out = run_reversible(&c, &BasisState::new(3, bits).unwrap()).unwrap();
            let hit = bits & 0b11 == 0b10;
            assert_eq!(out.bits(), if hit { bits ^ 0b100 } else { bits });
        }
    }

    #[test]
    fn n2_swaps_00_and_11() {
        let c = synthesize_transposition(&spec("00", "11"), SynthesisStrategy::Thm3B).unwrap();
        assert_eq!(c.num_qubits(), 3);
        for (input, expected) in [("000", "110"), ("110", "000"), ("100", "100"), ("010", "010")] {
            let out = run_statevector(&c, &input.parse().unwrap(), DEFAULT_QUBIT_CAP).unwrap();
            assert_eq!(out.as_basis_state(1e-9).unwrap().to_string(), expected);
        }
    }

    #[test]
    fn small_n_resource_counts() {
        for strategy in [SynthesisStrategy::Thm3A, SynthesisStrategy::Thm3B] {
            let c = synthesize_transposition(&spec("000", "111"), strategy).unwrap();
            let k = c.count_gates();
            assert_eq!((k.h, k.toffoli, k.mcx), (2, 6, 0));
            assert!(k.x <= 12 && k.cnot <= 6);
            assert_eq!(c.qubits_with_role(QubitRole::CleanAncilla).len(), 2);
        }
        let c = synthesize_transposition(&spec("0", "1"), SynthesisStrategy::Thm3A).unwrap();
        let k = c.count_gates();
        assert_eq!((k.h, k.toffoli, k.cnot), (2, 0, 4));
        assert!(k.x <= 4);
    }

    #[test]
    fn gray_code_adjacent_states_need_one_step() {
        let c = synthesize_gray_code(&spec("0110", "0111")).unwrap();
        assert_eq!(c.count_gates().mcx, 1);
        let c = synthesize_gray_code(&spec("0", "1")).unwrap();
        assert_eq!(c.gates(), &[Gate::x(0)]);
    }

    #[test]
    fn gray_code_swaps_000_and_111() {
        let s = spec("000", "111");
        let c = synthesize_gray_code(&s).unwrap();
        assert!(c.gates().iter().all(|g| g.kind() != GateKind::H));
        for bits in 0..8u64 {
            let x = BasisState::new(3, bits).unwrap();
            assert_eq!(run_reversible(&c, &x).unwrap(), s.apply(x));
        }
    }
}
