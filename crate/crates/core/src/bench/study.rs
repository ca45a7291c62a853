use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sample::sample_transpositions;
use crate::circuit::{qubits, Circuit, GateCounts, QubitRole};
use crate::clifford_t::{lower_all_toffolis, Pairing};
use crate::error::{Error, Result};
use crate::peephole::remove_redundancies;
use crate::sim::{verify_transposition, VerifyOptions};
use crate::transposition::{synthesize_transposition, SynthesisStrategy, TranspositionSpec};

/// Optional Clifford+T stage after Toffoli-level synthesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Lowering {
    #[default]
    None,
    Naive,
    InverseAware,
}

impl Lowering {
    pub fn name(self) -> &'static str {
        match self {
            Lowering::None => "none",
            Lowering::Naive => "naive",
            Lowering::InverseAware => "inverse_aware",
        }
    }

    pub fn pairing(self) -> Option<Pairing> {
        match self {
            Lowering::None => None,
            Lowering::Naive => Some(Pairing::Naive),
            Lowering::InverseAware => Some(Pairing::InverseAware),
        }
    }
}

impl fmt::Display for Lowering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Lowering {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "none" => Ok(Lowering::None),
            "naive" => Ok(Lowering::Naive),
            "inverse_aware" => Ok(Lowering::InverseAware),
            other => Err(format!("unknown lowering {other:?} (none, naive, inverse_aware)")),
        }
    }
}

/// Synthesize, optionally lower to Clifford+T, optionally optimize.
pub fn compile(spec: &TranspositionSpec, strategy: SynthesisStrategy, lowering: Lowering, optimize: bool) -> Result<Circuit> {
    let mut circuit = synthesize_transposition(spec, strategy)?;
    if let Some(pairing) = lowering.pairing() {
        circuit = lower_all_toffolis(&circuit, pairing)?;
    }
    if optimize {
        circuit = remove_redundancies(&circuit);
    }
    Ok(circuit)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialConfig {
    pub n_range: Vec<usize>,
    pub trials_per_n: usize,
    pub hamming_distance: Option<usize>,
    pub seed: u64,
    pub strategy: SynthesisStrategy,
    pub lowering: Lowering,
    pub optimize: bool,
    /// Applied to every trial circuit. The default sweeps registers of up
    /// to 10 data bits and samples larger ones.
    pub verification: VerifyOptions,
}

impl TrialConfig {
    /// 200 unconstrained trials per `n`, no lowering, optimizer on.
    pub fn new(n_range: Vec<usize>, strategy: SynthesisStrategy, seed: u64) -> TrialConfig {
        TrialConfig {
            n_range,
            trials_per_n: 200,
            hamming_distance: None,
            seed,
            strategy,
            lowering: Lowering::None,
            optimize: true,
            verification: VerifyOptions {
                max_exhaustive_bits: 10,
                samples: 64,
                seed,
                ..VerifyOptions::default()
            },
        }
    }

    /// 100 trials per `n` at a fixed Hamming distance.
    pub fn at_distance(n_range: Vec<usize>, distance: usize, strategy: SynthesisStrategy, seed: u64) -> TrialConfig {
        TrialConfig {
            trials_per_n: 100,
            hamming_distance: Some(distance),
            ..TrialConfig::new(n_range, strategy, seed)
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameters(m));
        if self.n_range.is_empty() {
            return bad("empty n range".into());
        }
        if self.trials_per_n == 0 {
            return bad("trials must be at least 1".into());
        }
        for &n in &self.n_range {
            if n == 0 || n > 60 {
                return bad(format!("n = {n} is outside 1..=60"));
            }
            if let Some(d) = self.hamming_distance {
                if d == 0 || d > n {
                    return bad(format!("hamming distance {d} is impossible for n = {n}"));
                }
            }
        }
        Ok(())
    }
}

/// Toffoli cap for one transposition circuit; `None` for the Gray-code
/// baseline, which has no linear bound.
pub fn toffoli_bound(n: usize, strategy: SynthesisStrategy) -> Option<u64> {
    let n = n as u64;
    match (strategy, n) {
        (SynthesisStrategy::GrayCode, _) => None,
        (_, 1) => Some(0),
        (_, 2) => Some(2),
        (_, 3) => Some(6),
        (SynthesisStrategy::Thm3A, _) => Some(12 * n - 36),
        (SynthesisStrategy::Thm3B, _) => Some(4 * n - 6),
    }
}

/// CNOT cap: two controlled-U blocks of at most `n` CNOTs, or 4 for n = 1.
pub fn cnot_bound(n: usize) -> u64 {
    if n == 1 {
        4
    } else {
        2 * n as u64
    }
}

/// One line of a study: statistics over all trials at one `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyRow {
    pub n: usize,
    pub strategy: SynthesisStrategy,
    pub trials: usize,
    pub avg_cnot: f64,
    pub max_cnot: usize,
    pub avg_toffoli: f64,
    pub max_toffoli: usize,
    pub avg_t: f64,
    pub avg_x: f64,
    pub avg_h: f64,
    pub bound_cnot: u64,
    pub bound_toffoli: Option<u64>,
    pub verified_fraction: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyTable {
    pub hamming_distance: Option<usize>,
    pub lowering: Lowering,
    pub optimize: bool,
    pub rows: Vec<StudyRow>,
}

struct Trial {
    counts: GateCounts,
    verified: bool,
}

fn run_trial(spec: &TranspositionSpec, config: &TrialConfig) -> Result<Trial> {
    let circuit = compile(spec, config.strategy, config.lowering, config.optimize)?;
    let n = spec.n();
    let clean = circuit.qubits_with_role(QubitRole::CleanAncilla);
    let report = verify_transposition(&circuit, spec, &qubits(0..n), &clean, &config.verification)?;
    Ok(Trial {
        counts: circuit.count_gates(),
        verified: report.passed(),
    })
}

fn summarize(n: usize, config: &TrialConfig, trials: &[Trial]) -> StudyRow {
    let count = trials.len() as f64;
    let avg = |f: fn(&GateCounts) -> usize| trials.iter().map(|t| f(&t.counts) as f64).sum::<f64>() / count;
    let max = |f: fn(&GateCounts) -> usize| trials.iter().map(|t| f(&t.counts)).max().unwrap_or(0);
    StudyRow {
        n,
        strategy: config.strategy,
        trials: trials.len(),
        avg_cnot: avg(|k| k.cnot),
        max_cnot: max(|k| k.cnot),
        avg_toffoli: avg(|k| k.toffoli),
        max_toffoli: max(|k| k.toffoli),
        avg_t: avg(|k| k.t_type),
        avg_x: avg(|k| k.x),
        avg_h: avg(|k| k.h),
        bound_cnot: cnot_bound(n),
        bound_toffoli: toffoli_bound(n, config.strategy),
        verified_fraction: trials.iter().filter(|t| t.verified).count() as f64 / count,
        seed: config.seed,
    }
}

/// Run every trial of `config` and aggregate one row per `n`.
///
/// Trials run in parallel; results are gathered in trial order, so the
/// table is bit-identical for a given configuration.
pub fn run_count_study(config: &TrialConfig) -> Result<StudyTable> {
    config.validate()?;
    let mut rows = Vec::with_capacity(config.n_range.len());
    for &n in &config.n_range {
        let specs = sample_transpositions(n, config.trials_per_n, config.hamming_distance, config.seed)?;
        let trials = specs
            .par_iter()
            .map(|spec| run_trial(spec, config))
            .collect::<Result<Vec<_>>>()?;
        rows.push(summarize(n, config, &trials));
    }
    Ok(StudyTable {
        hamming_distance: config.hamming_distance,
        lowering: config.lowering,
        optimize: config.optimize,
        rows,
    })
}
