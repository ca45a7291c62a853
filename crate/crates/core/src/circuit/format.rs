//! Text and OpenQASM 2.0 encodings.
//!
//! The text format is line based:
//!
//! ```text
//! qubits 3
//! role 0 data
//! role 1 data
//! role 2 clean
//! Toffoli 0 1 2
//! ```
//!
//! Gate lines list the controls first and the target last. Blank lines and
//! lines starting with `#` are ignored on input.

use std::fmt::Write as _;

use super::{Circuit, Gate, GateKind, QubitId, QubitRole};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Qasm2,
}

pub fn serialize(circuit: &Circuit, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Text => Ok(to_text(circuit).into_bytes()),
        Format::Qasm2 => to_qasm2(circuit).map(String::into_bytes),
    }
}

/// Parse either encoding, sniffing the `OPENQASM` header.
pub fn parse(input: &str) -> Result<Circuit> {
    let first = input
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with("//"));
    match first {
        Some(l) if l.starts_with("OPENQASM") => parse_qasm2(input),
        _ => parse_text(input),
    }
}

pub fn to_text(circuit: &Circuit) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "qubits {}", circuit.num_qubits());
    for (i, role) in circuit.roles().iter().enumerate() {
        let _ = writeln!(out, "role {i} {}", role.name());
    }
    for gate in circuit.gates() {
        let _ = writeln!(out, "{gate}");
    }
    out
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_index(token: &str, line: usize) -> Result<usize> {
    token
        .parse()
        .map_err(|_| parse_error(line, format!("expected a qubit index, got {token:?}")))
}

pub fn parse_text(input: &str) -> Result<Circuit> {
    let mut roles: Option<Vec<QubitRole>> = None;
    let mut gates = Vec::new();

    for (i, raw) in input.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "qubits" => {
                if roles.is_some() {
                    return Err(parse_error(line_no, "duplicate qubits header"));
                }
                let [_, n] = tokens[..] else {
                    return Err(parse_error(line_no, "expected `qubits N`"));
                };
                let n = parse_index(n, line_no)?;
                if n == 0 {
                    return Err(parse_error(line_no, "register must be non-empty"));
                }
                roles = Some(vec![QubitRole::Data; n]);
            }
            "role" => {
                let roles = roles
                    .as_mut()
                    .ok_or_else(|| parse_error(line_no, "role before qubits header"))?;
                let [_, q, r] = tokens[..] else {
                    return Err(parse_error(line_no, "expected `role INDEX data|clean|borrowed`"));
                };
                let q = parse_index(q, line_no)?;
                let role: QubitRole = r.parse().map_err(|e: String| parse_error(line_no, e))?;
                let slot = roles
                    .get_mut(q)
                    .ok_or_else(|| parse_error(line_no, format!("role for missing qubit {q}")))?;
                *slot = role;
            }
            kind => {
                if roles.is_none() {
                    return Err(parse_error(line_no, "gate before qubits header"));
                }
                let kind: GateKind = kind.parse().map_err(|e: String| parse_error(line_no, e))?;
                let mut indices = tokens[1..]
                    .iter()
                    .map(|t| parse_index(t, line_no).map(QubitId))
                    .collect::<Result<Vec<_>>>()?;
                let target = indices
                    .pop()
                    .ok_or_else(|| parse_error(line_no, "gate without a target"))?;
                let gate = Gate::new(kind, indices, target).map_err(|e| parse_error(line_no, e.to_string()))?;
                gates.push((line_no, gate));
            }
        }
    }

    let roles = roles.ok_or_else(|| parse_error(0, "missing `qubits N` header"))?;
    let mut circuit = Circuit::with_roles(roles)?;
    for (line_no, gate) in gates {
        circuit
            .push(gate)
            .map_err(|e| parse_error(line_no, e.to_string()))?;
    }
    Ok(circuit)
}

fn qasm_name(kind: GateKind) -> Option<&'static str> {
    Some(match kind {
        GateKind::H => "h",
        GateKind::X => "x",
        GateKind::T => "t",
        GateKind::Tdg => "tdg",
        GateKind::S => "s",
        GateKind::Sdg => "sdg",
        GateKind::Cnot => "cx",
        GateKind::Toffoli => "ccx",
        GateKind::Mcx => return None,
    })
}

/// OpenQASM 2.0 over a single register `q`. Non-data roles are kept in
/// `// role` comments so [`parse_qasm2`] can restore them.
pub fn to_qasm2(circuit: &Circuit) -> Result<String> {
    let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    for (i, role) in circuit.roles().iter().enumerate() {
        if *role != QubitRole::Data {
            let _ = writeln!(out, "// role {i} {}", role.name());
        }
    }
    let _ = writeln!(out, "qreg q[{}];", circuit.num_qubits());
    for gate in circuit.gates() {
        let name = qasm_name(gate.kind()).ok_or(Error::UnsupportedInQasm(gate.kind()))?;
        let args: Vec<String> = gate.qubits().map(|q| format!("q[{q}]")).collect();
        let _ = writeln!(out, "{name} {};", args.join(","));
    }
    Ok(out)
}

fn parse_qasm_operand(operand: &str, register: &str, line: usize) -> Result<QubitId> {
    let operand = operand.trim();
    let inner = operand
        .strip_prefix(register)
        .and_then(|s| s.strip_prefix('['))
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| parse_error(line, format!("bad operand {operand:?}")))?;
    parse_index(inner.trim(), line).map(QubitId)
}

/// Reader for the subset written by [`to_qasm2`].
pub fn parse_qasm2(input: &str) -> Result<Circuit> {
    let mut pending_roles = Vec::new();
    let mut register: Option<(String, usize)> = None;
    let mut gates = Vec::new();

    for (i, raw) in input.lines().enumerate() {
        let line_no = i + 1;
        let mut line = raw.trim();
        if let Some(comment) = line.strip_prefix("//") {
            let tokens: Vec<&str> = comment.split_whitespace().collect();
            if let ["role", q, r] = tokens[..] {
                let q = parse_index(q, line_no)?;
                let role: QubitRole = r.parse().map_err(|e: String| parse_error(line_no, e))?;
                pending_roles.push((line_no, q, role));
            }
            continue;
        }
        if let Some(pos) = line.find("//") {
            line = line[..pos].trim();
        }
        for stmt in line.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            if stmt.starts_with("OPENQASM") || stmt.starts_with("include") {
                continue;
            }
            let (head, rest) = stmt
                .split_once(char::is_whitespace)
                .ok_or_else(|| parse_error(line_no, format!("cannot parse {stmt:?}")))?;
            if head == "qreg" {
                if register.is_some() {
                    return Err(parse_error(line_no, "only one quantum register is supported"));
                }
                let rest = rest.trim();
                let (name, size) = rest
                    .split_once('[')
                    .and_then(|(n, s)| s.strip_suffix(']').map(|s| (n.trim(), s)))
                    .ok_or_else(|| parse_error(line_no, format!("bad register {rest:?}")))?;
                register = Some((name.to_string(), parse_index(size.trim(), line_no)?));
                continue;
            }
            let (name, _) = register
                .as_ref()
                .ok_or_else(|| parse_error(line_no, "gate before qreg"))?;
            let kind = GateKind::ALL
                .into_iter()
                .find(|k| qasm_name(*k) == Some(head))
                .ok_or_else(|| parse_error(line_no, format!("unsupported gate {head:?}")))?;
            let mut operands = rest
                .split(',')
                .map(|o| parse_qasm_operand(o, name, line_no))
                .collect::<Result<Vec<_>>>()?;
            let target = operands
                .pop()
                .ok_or_else(|| parse_error(line_no, "gate without operands"))?;
            let gate = Gate::new(kind, operands, target).map_err(|e| parse_error(line_no, e.to_string()))?;
            gates.push((line_no, gate));
        }
    }

    let (_, size) = register.ok_or_else(|| parse_error(0, "missing qreg declaration"))?;
    if size == 0 {
        return Err(parse_error(0, "register must be non-empty"));
    }
    let mut roles = vec![QubitRole::Data; size];
    for (line_no, q, role) in pending_roles {
        *roles
            .get_mut(q)
            .ok_or_else(|| parse_error(line_no, format!("role for missing qubit {q}")))? = role;
    }
    let mut circuit = Circuit::with_roles(roles)?;
    for (line_no, gate) in gates {
        circuit
            .push(gate)
            .map_err(|e| parse_error(line_no, e.to_string()))?;
    }
    Ok(circuit)
}
