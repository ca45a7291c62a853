//! Gate-level circuit representation.
//!
//! A [`Circuit`] is a flat, ordered list of [`Gate`]s over a fixed register.
//! Every qubit carries a [`QubitRole`] so that constructions which interleave
//! helper qubits with data qubits can still be checked against their ancilla
//! contracts. [`GateKind::Mcx`] is a composite kind and has to be lowered by
//! [`crate::mcx::lower_mcx`] before anything downstream of the Toffoli level
//! (Clifford+T lowering, OpenQASM export) will accept the circuit.

mod format;

use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

pub use format::{parse, parse_qasm2, parse_text, serialize, to_qasm2, to_text, Format};

use crate::error::{Error, Result};

/// Zero-based position of a qubit in a register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QubitId(pub usize);

impl QubitId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for QubitId {
    fn from(index: usize) -> Self {
        QubitId(index)
    }
}

impl fmt::Display for QubitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Convert a range or slice of indices into qubit ids.
pub fn qubits<I: IntoIterator<Item = usize>>(indices: I) -> Vec<QubitId> {
    indices.into_iter().map(QubitId).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    H,
    X,
    T,
    Tdg,
    S,
    Sdg,
    Cnot,
    Toffoli,
    Mcx,
}

impl GateKind {
    pub const ALL: [GateKind; 9] = [
        GateKind::H,
        GateKind::X,
        GateKind::T,
        GateKind::Tdg,
        GateKind::S,
        GateKind::Sdg,
        GateKind::Cnot,
        GateKind::Toffoli,
        GateKind::Mcx,
    ];

    /// Token used by the text circuit format.
    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::X => "X",
            GateKind::T => "T",
            GateKind::Tdg => "Tdg",
            GateKind::S => "S",
            GateKind::Sdg => "Sdg",
            GateKind::Cnot => "CNOT",
            GateKind::Toffoli => "Toffoli",
            GateKind::Mcx => "MCX",
        }
    }

    pub fn inverse(self) -> GateKind {
        match self {
            GateKind::T => GateKind::Tdg,
            GateKind::Tdg => GateKind::T,
            GateKind::S => GateKind::Sdg,
            GateKind::Sdg => GateKind::S,
            other => other,
        }
    }

    pub fn is_self_inverse(self) -> bool {
        self.inverse() == self
    }

    /// True for the kinds that permute computational basis states.
    pub fn is_classical(self) -> bool {
        matches!(
            self,
            GateKind::X | GateKind::Cnot | GateKind::Toffoli | GateKind::Mcx
        )
    }

    fn check_arity(self, controls: usize) -> Result<()> {
        let (ok, expected) = match self {
            GateKind::Cnot => (controls == 1, "exactly 1"),
            GateKind::Toffoli => (controls == 2, "exactly 2"),
            GateKind::Mcx => (controls >= 1, "at least 1"),
            _ => (controls == 0, "no"),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::WrongArity {
                kind: self,
                expected,
                got: controls,
            })
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        GateKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown gate kind {s:?}"))
    }
}

/// A single gate: a kind, its control qubits and one target.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gate {
    kind: GateKind,
    controls: Vec<QubitId>,
    target: QubitId,
}

impl Gate {
    /// Checked constructor; rejects arity mismatches and repeated qubits.
    pub fn new(kind: GateKind, controls: Vec<QubitId>, target: QubitId) -> Result<Gate> {
        kind.check_arity(controls.len())?;
        let gate = Gate {
            kind,
            controls,
            target,
        };
        gate.check_distinct()?;
        Ok(gate)
    }

    fn single(kind: GateKind, q: impl Into<QubitId>) -> Gate {
        Gate {
            kind,
            controls: Vec::new(),
            target: q.into(),
        }
    }

    pub fn h(q: impl Into<QubitId>) -> Gate {
        Gate::single(GateKind::H, q)
    }

    pub fn x(q: impl Into<QubitId>) -> Gate {
        Gate::single(GateKind::X, q)
    }

    pub fn t(q: impl Into<QubitId>) -> Gate {
        Gate::single(GateKind::T, q)
    }

    pub fn tdg(q: impl Into<QubitId>) -> Gate {
        Gate::single(GateKind::Tdg, q)
    }

    pub fn s(q: impl Into<QubitId>) -> Gate {
        Gate::single(GateKind::S, q)
    }

    pub fn sdg(q: impl Into<QubitId>) -> Gate {
        Gate::single(GateKind::Sdg, q)
    }

    pub fn cnot(control: impl Into<QubitId>, target: impl Into<QubitId>) -> Gate {
        Gate {
            kind: GateKind::Cnot,
            controls: vec![control.into()],
            target: target.into(),
        }
    }

    pub fn toffoli(
        c1: impl Into<QubitId>,
        c2: impl Into<QubitId>,
        target: impl Into<QubitId>,
    ) -> Gate {
        Gate {
            kind: GateKind::Toffoli,
            controls: vec![c1.into(), c2.into()],
            target: target.into(),
        }
    }

    /// Multi-controlled X. Panics on an empty control list.
    pub fn mcx(controls: Vec<QubitId>, target: impl Into<QubitId>) -> Gate {
        assert!(!controls.is_empty(), "MCX needs at least one control");
        Gate {
            kind: GateKind::Mcx,
            controls,
            target: target.into(),
        }
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn controls(&self) -> &[QubitId] {
        &self.controls
    }

    pub fn target(&self) -> QubitId {
        self.target
    }

    /// Controls followed by the target.
    pub fn qubits(&self) -> impl Iterator<Item = QubitId> + '_ {
        self.controls
            .iter()
            .copied()
            .chain(std::iter::once(self.target))
    }

    pub fn acts_on(&self, q: QubitId) -> bool {
        self.target == q || self.controls.contains(&q)
    }

    pub fn overlaps(&self, other: &Gate) -> bool {
        self.qubits().any(|q| other.acts_on(q))
    }

    pub fn inverse(&self) -> Gate {
        Gate {
            kind: self.kind.inverse(),
            controls: self.controls.clone(),
            target: self.target,
        }
    }

    /// Same target and the same control set. Controls are compared as a set
    /// because every controlled kind here is symmetric in its controls.
    pub fn same_qubits(&self, other: &Gate) -> bool {
        self.target == other.target
            && self.controls.len() == other.controls.len()
            && self.controls.iter().all(|c| other.controls.contains(c))
    }

    /// True when `other` undoes `self`.
    pub fn is_inverse_of(&self, other: &Gate) -> bool {
        self.kind.inverse() == other.kind && self.same_qubits(other)
    }

    fn check_distinct(&self) -> Result<()> {
        for (i, c) in self.controls.iter().enumerate() {
            if *c == self.target || self.controls[..i].contains(c) {
                return Err(Error::DuplicateQubit(*c));
            }
        }
        Ok(())
    }

    fn check_range(&self, num_qubits: usize) -> Result<()> {
        match self.qubits().find(|q| q.0 >= num_qubits) {
            Some(qubit) => Err(Error::QubitOutOfRange { qubit, num_qubits }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.name())?;
        for q in self.qubits() {
            write!(f, " {q}")?;
        }
        Ok(())
    }
}

/// What a qubit is allowed to assume about its input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum QubitRole {
    #[default]
    Data,
    /// Enters in |0> and is returned to |0>.
    CleanAncilla,
    /// Enters in an arbitrary state and is returned unchanged.
    BorrowedAncilla,
}

impl QubitRole {
    pub fn name(self) -> &'static str {
        match self {
            QubitRole::Data => "data",
            QubitRole::CleanAncilla => "clean",
            QubitRole::BorrowedAncilla => "borrowed",
        }
    }
}

impl FromStr for QubitRole {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "data" => Ok(QubitRole::Data),
            "clean" => Ok(QubitRole::CleanAncilla),
            "borrowed" => Ok(QubitRole::BorrowedAncilla),
            other => Err(format!("unknown qubit role {other:?}")),
        }
    }
}

/// An ordered gate list over a register of annotated qubits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circuit {
    roles: Vec<QubitRole>,
    gates: Vec<Gate>,
}

impl Circuit {
    /// Empty circuit whose qubits are all data qubits.
    pub fn new(num_qubits: usize) -> Result<Circuit> {
        Circuit::with_roles(vec![QubitRole::Data; num_qubits])
    }

    pub fn with_roles(roles: Vec<QubitRole>) -> Result<Circuit> {
        if roles.is_empty() {
            return Err(Error::EmptyRegister);
        }
        Ok(Circuit {
            roles,
            gates: Vec::new(),
        })
    }

    /// Build a circuit from a gate list, validating every gate.
    pub fn from_gates(roles: Vec<QubitRole>, gates: Vec<Gate>) -> Result<Circuit> {
        let mut circuit = Circuit::with_roles(roles)?;
        circuit.extend(gates)?;
        Ok(circuit)
    }

    pub fn num_qubits(&self) -> usize {
        self.roles.len()
    }

    pub fn roles(&self) -> &[QubitRole] {
        &self.roles
    }

    pub fn role(&self, q: QubitId) -> QubitRole {
        self.roles[q.0]
    }

    pub fn set_role(&mut self, q: QubitId, role: QubitRole) {
        self.roles[q.0] = role;
    }

    /// Qubits carrying `role`, in index order.
    pub fn qubits_with_role(&self, role: QubitRole) -> Vec<QubitId> {
        (0..self.num_qubits())
            .filter(|&i| self.roles[i] == role)
            .map(QubitId)
            .collect()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn into_gates(self) -> Vec<Gate> {
        self.gates
    }

    /// Append a gate after validating its qubits against this register.
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.kind.check_arity(gate.controls.len())?;
        gate.check_distinct()?;
        gate.check_range(self.num_qubits())?;
        self.gates.push(gate);
        Ok(())
    }

    /// Builder-style [`Circuit::push`].
    pub fn with_gate(mut self, gate: Gate) -> Result<Circuit> {
        self.push(gate)?;
        Ok(self)
    }

    pub fn extend<I: IntoIterator<Item = Gate>>(&mut self, gates: I) -> Result<()> {
        for gate in gates {
            self.push(gate)?;
        }
        Ok(())
    }

    /// Append the gates of `other`. Its register must fit inside this one;
    /// qubit indices are shared.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.num_qubits() > self.num_qubits() {
            return Err(Error::RegisterMismatch {
                this: self.num_qubits(),
                other: other.num_qubits(),
            });
        }
        self.gates.extend(other.gates.iter().cloned());
        Ok(())
    }

    /// Sequential composition: `self` first, then `other`.
    pub fn concat(&self, other: &Circuit) -> Result<Circuit> {
        let mut out = self.clone();
        out.append(other)?;
        Ok(out)
    }

    /// Same register and roles, no gates.
    pub fn empty_like(&self) -> Circuit {
        Circuit {
            roles: self.roles.clone(),
            gates: Vec::new(),
        }
    }

    /// Grow the register to `num_qubits`, giving the new qubits `role`.
    pub fn widen(&mut self, num_qubits: usize, role: QubitRole) {
        if num_qubits > self.roles.len() {
            self.roles.resize(num_qubits, role);
        }
    }

    /// Reversed gate order with every gate replaced by its inverse.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            roles: self.roles.clone(),
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    pub fn count_gates(&self) -> GateCounts {
        GateCounts::of(&self.gates)
    }

    pub fn contains_kind(&self, kind: GateKind) -> bool {
        self.gates.iter().any(|g| g.kind == kind)
    }

    /// True when every gate permutes basis states.
    pub fn is_classical(&self) -> bool {
        self.gates.iter().all(|g| g.kind.is_classical())
    }

    pub(crate) fn replace_gates(&self, gates: Vec<Gate>) -> Circuit {
        Circuit {
            roles: self.roles.clone(),
            gates,
        }
    }
}

/// Exact tally of a gate list by kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GateCounts {
    pub h: usize,
    pub x: usize,
    pub cnot: usize,
    pub toffoli: usize,
    pub mcx: usize,
    /// T plus T-dagger.
    pub t_type: usize,
    /// S plus S-dagger.
    pub s_type: usize,
    pub total: usize,
}

impl GateCounts {
    pub fn of<'a, I: IntoIterator<Item = &'a Gate>>(gates: I) -> GateCounts {
        let mut counts = GateCounts::default();
        for gate in gates {
            counts.record(gate.kind);
        }
        counts
    }

    fn record(&mut self, kind: GateKind) {
        match kind {
            GateKind::H => self.h += 1,
            GateKind::X => self.x += 1,
            GateKind::T | GateKind::Tdg => self.t_type += 1,
            GateKind::S | GateKind::Sdg => self.s_type += 1,
            GateKind::Cnot => self.cnot += 1,
            GateKind::Toffoli => self.toffoli += 1,
            GateKind::Mcx => self.mcx += 1,
        }
        self.total += 1;
    }

    /// H, X, T-type and S-type gates.
    pub fn single_qubit(&self) -> usize {
        self.h + self.x + self.t_type + self.s_type
    }

    /// Whether `total` agrees with the per-kind fields.
    pub fn is_consistent(&self) -> bool {
        self.total
            == self.h + self.x + self.cnot + self.toffoli + self.mcx + self.t_type + self.s_type
    }
}

impl Add for GateCounts {
    type Output = GateCounts;

    fn add(mut self, rhs: GateCounts) -> GateCounts {
        self += rhs;
        self
    }
}

impl AddAssign for GateCounts {
    fn add_assign(&mut self, rhs: GateCounts) {
        self.h += rhs.h;
        self.x += rhs.x;
        self.cnot += rhs.cnot;
        self.toffoli += rhs.toffoli;
        self.mcx += rhs.mcx;
        self.t_type += rhs.t_type;
        self.s_type += rhs.s_type;
        self.total += rhs.total;
    }
}

impl fmt::Display for GateCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "toffoli={} cnot={} h={} x={} t={} s={} mcx={} total={}",
            self.toffoli, self.cnot, self.h, self.x, self.t_type, self.s_type, self.mcx, self.total
        )
    }
}
