use std::fmt::Write as _;

use rand_core::RngCore;
use rayon::prelude::*;

use super::{compile_classical, run_ops, run_sparse, BasisState, AMPLITUDE_TOLERANCE, MAX_WIDTH};
use crate::circuit::{Circuit, QubitId};
use crate::error::{Error, Result};
use crate::mcx::{AncillaKind, McxLayout};
use crate::rng;
use crate::transposition::TranspositionSpec;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    /// Sweep every input when at most this many bits vary; sample otherwise.
    pub max_exhaustive_bits: usize,
    /// Number of sampled inputs above the exhaustive limit.
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    /// Refuse circuits on more qubits than this.
    pub qubit_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_exhaustive_bits: 20,
            samples: 4096,
            seed: 0,
            tolerance: AMPLITUDE_TOLERANCE,
            qubit_cap: MAX_WIDTH,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

/// One checked input. `actual` is `None` when the output was not a single
/// basis state within tolerance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseRecord {
    pub input: BasisState,
    pub expected: BasisState,
    pub actual: Option<BasisState>,
}

impl CaseRecord {
    pub fn passed(&self) -> bool {
        self.actual == Some(self.expected)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    /// Number of inputs in the full sweep, saturating at `u64::MAX`.
    pub input_space: u64,
    /// Whether every input was checked rather than a seeded sample.
    pub exhaustive: bool,
    pub records: Vec<CaseRecord>,
}

impl VerificationReport {
    pub fn outcome(&self) -> Outcome {
        if self.records.iter().all(CaseRecord::passed) {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    pub fn passed(&self) -> bool {
        self.outcome() == Outcome::Pass
    }

    pub fn checked(&self) -> usize {
        self.records.len()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseRecord> {
        self.records.iter().filter(|r| !r.passed())
    }

    pub fn first_failure(&self) -> Option<&CaseRecord> {
        self.failures().next()
    }

    /// Summary line followed by one line per failing input.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let verdict = match self.outcome() {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
        };
        let mode = if self.exhaustive { "exhaustive" } else { "sampled" };
        let _ = writeln!(
            out,
            "{verdict} ({} of {} inputs checked, {mode}, {} failing)",
            self.checked(),
            self.input_space,
            self.failures().count()
        );
        for r in self.failures() {
            let actual = r.actual.map_or("superposition".to_string(), |s| s.to_string());
            let _ = writeln!(out, "input {} expected {} actual {}", r.input, r.expected, actual);
        }
        out
    }

    /// Machine-readable form: `state,expected,actual,pass`, one row per input.
    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::Csv(e.to_string());
        writer.write_record(["state", "expected", "actual", "pass"]).map_err(csv_err)?;
        for r in &self.records {
            let actual = r.actual.map_or(String::new(), |s| s.to_string());
            writer
                .write_record([
                    r.input.to_string(),
                    r.expected.to_string(),
                    actual,
                    r.passed().to_string(),
                ])
                .map_err(csv_err)?;
        }
        writer.into_inner().map_err(|e| Error::Csv(e.to_string()))
    }
}

enum Engine {
    Classical(Vec<super::ClassicalOp>),
    Sparse,
}

impl Engine {
    fn new(circuit: &Circuit) -> Result<Engine> {
        if circuit.is_classical() {
            Ok(Engine::Classical(compile_classical(circuit)?))
        } else {
            Ok(Engine::Sparse)
        }
    }

    fn run(&self, circuit: &Circuit, input: &BasisState, tolerance: f64) -> Option<BasisState> {
        match self {
            Engine::Classical(ops) => Some(BasisState::from_raw(input.width(), run_ops(ops, input.bits()))),
            Engine::Sparse => run_sparse(circuit, input).ok()?.as_basis_state(tolerance),
        }
    }
}

fn scatter(bits: u64, positions: &[QubitId]) -> u64 {
    positions
        .iter()
        .enumerate()
        .fold(0, |acc, (i, q)| acc | ((bits >> i) & 1) << q.0)
}

fn check_register(circuit: &Circuit, listed: &[&[QubitId]], options: &VerifyOptions) -> Result<()> {
    if circuit.num_qubits() > options.qubit_cap {
        return Err(Error::RegisterTooLarge {
            num_qubits: circuit.num_qubits(),
            cap: options.qubit_cap,
        });
    }
    super::check_width(circuit)?;
    let mut seen = vec![false; circuit.num_qubits()];
    for q in listed.iter().flat_map(|l| l.iter()) {
        if q.0 >= circuit.num_qubits() {
            return Err(Error::QubitOutOfRange {
                qubit: *q,
                num_qubits: circuit.num_qubits(),
            });
        }
        if std::mem::replace(&mut seen[q.0], true) {
            return Err(Error::DuplicateQubit(*q));
        }
    }
    Ok(())
}

/// Inputs to check over `swept` varying bits: all of them, or a seeded
/// sample that always contains `must_include`.
fn input_indices(swept: usize, must_include: &[u64], options: &VerifyOptions) -> (Vec<u64>, bool) {
    if swept <= options.max_exhaustive_bits {
        return ((0..1u64 << swept).collect(), true);
    }
    let mask = if swept == 64 { u64::MAX } else { (1u64 << swept) - 1 };
    let mut rng = rng::stream(options.seed, &[0x7665_7269_6679, swept as u64]);
    let mut picked: Vec<u64> = must_include.to_vec();
    picked.extend((0..options.samples).map(|_| rng.next_u64() & mask));
    picked.sort_unstable();
    picked.dedup();
    (picked, false)
}

/// Qubits that are neither listed nor forced to zero get a value that
/// varies per input and must come back unchanged.
fn borrowed_filler(seed: u64, index: u64, others: &[QubitId]) -> u64 {
    if others.is_empty() {
        return 0;
    }
    let mut state = seed ^ index.rotate_left(17);
    scatter(rng::splitmix64(&mut state), others)
}

/// Check that `circuit` swaps `spec.a` and `spec.b` on `data`, fixes every
/// other data state, and returns each qubit in `ancillas` to 0.
///
/// Ancillas enter as 0. Qubits outside both lists are treated as borrowed:
/// they enter in a pseudo-random state and must exit unchanged.
pub fn verify_transposition(
    circuit: &Circuit,
    spec: &TranspositionSpec,
    data: &[QubitId],
    ancillas: &[QubitId],
    options: &VerifyOptions,
) -> Result<VerificationReport> {
    if data.len() != spec.n() {
        return Err(Error::LengthMismatch(data.len(), spec.n()));
    }
    check_register(circuit, &[data, ancillas], options)?;
    let width = circuit.num_qubits();
    let others: Vec<QubitId> = (0..width)
        .map(QubitId)
        .filter(|q| !data.contains(q) && !ancillas.contains(q))
        .collect();
    let engine = Engine::new(circuit)?;
    let (indices, exhaustive) = input_indices(data.len(), &[spec.a().bits(), spec.b().bits()], options);

    let records = indices
        .par_iter()
        .map(|&x| {
            let filler = borrowed_filler(options.seed, x, &others);
            let image = spec.apply(BasisState::from_raw(spec.n(), x)).bits();
            let input = BasisState::from_raw(width, scatter(x, data) | filler);
            let expected = BasisState::from_raw(width, scatter(image, data) | filler);
            let actual = engine.run(circuit, &input, options.tolerance);
            CaseRecord { input, expected, actual }
        })
        .collect();
    Ok(VerificationReport {
        input_space: 1u64.checked_shl(data.len() as u32).unwrap_or(u64::MAX),
        exhaustive,
        records,
    })
}

/// Check that `circuit` flips the layout's target exactly when all controls
/// are 1 and restores every other qubit.
///
/// Borrowed ancillas are swept over all values alongside controls and
/// target; clean ancillas and qubits outside the layout are held at 0.
pub fn verify_mcx(circuit: &Circuit, layout: &McxLayout, options: &VerifyOptions) -> Result<VerificationReport> {
    let target = [layout.target()];
    check_register(circuit, &[layout.controls(), &target, layout.ancillas()], options)?;
    let width = circuit.num_qubits();
    let mut swept: Vec<QubitId> = layout.controls().to_vec();
    swept.push(layout.target());
    if layout.ancilla_kind() == AncillaKind::Borrowed {
        swept.extend_from_slice(layout.ancillas());
    }
    let control_mask = scatter(u64::MAX, layout.controls());
    let target_bit = 1u64 << layout.target().0;
    let all_ones = (1u64 << layout.num_controls()) - 1;
    let engine = Engine::new(circuit)?;
    let (indices, exhaustive) = input_indices(swept.len(), &[all_ones], options);

    let records = indices
        .par_iter()
        .map(|&x| {
            let bits = scatter(x, &swept);
            let flipped = if bits & control_mask == control_mask { bits ^ target_bit } else { bits };
            let input = BasisState::from_raw(width, bits);
            let expected = BasisState::from_raw(width, flipped);
            let actual = engine.run(circuit, &input, options.tolerance);
            CaseRecord { input, expected, actual }
        })
        .collect();
    Ok(VerificationReport {
        input_space: 1u64.checked_shl(swept.len() as u32).unwrap_or(u64::MAX),
        exhaustive,
        records,
    })
}
