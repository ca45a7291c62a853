use crate::error::{Error, Result};

/// Parameters of the counting bound: `n` qubits, a gate set of `d` gates
/// each acting on at most `c` qubits, and a family of `family_size`
/// operators to be reached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerBoundParams {
    pub n: u64,
    pub d: u64,
    pub c: u64,
    pub family_size: f64,
}

impl LowerBoundParams {
    /// The transpositions of `n` qubits counted as 2^n - 1 operators.
    pub fn transpositions(n: u64, d: u64, c: u64) -> LowerBoundParams {
        LowerBoundParams {
            n,
            d,
            c,
            family_size: 2f64.powi(n as i32) - 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundMode {
    WorstCase,
    Average,
}

/// log2 of the number of distinct gate placements, (n!/(n-c)!)·d.
pub fn log2_placements(n: u64, d: u64, c: u64) -> f64 {
    ((n - c + 1)..=n).map(|k| (k as f64).log2()).sum::<f64>() + (d as f64).log2()
}

/// Minimum gate count implied by counting circuits, logarithms base 2.
///
/// Worst case: `log|U| / log((n!/(n-c)!)·d)`. Average: half of the family
/// may be free, so `0.5·log(|U|/2)` over the same denominator.
pub fn lower_bound(params: &LowerBoundParams, mode: BoundMode) -> Result<f64> {
    let LowerBoundParams { n, d, c, family_size } = *params;
    if n == 0 || d == 0 || c == 0 {
        return Err(Error::InvalidParameters("n, d and c must be positive".into()));
    }
    if c > n {
        return Err(Error::InvalidParameters(format!("gate arity {c} exceeds {n} qubits")));
    }
    let minimum = match mode {
        BoundMode::WorstCase => 1.0,
        BoundMode::Average => 2.0,
    };
    if !(family_size >= minimum) || !family_size.is_finite() {
        return Err(Error::InvalidParameters(format!(
            "family size {family_size} is below {minimum}"
        )));
    }
    let denominator = log2_placements(n, d, c);
    if denominator <= 0.0 {
        return Err(Error::InvalidParameters("the gate set admits a single placement".into()));
    }
    Ok(match mode {
        BoundMode::WorstCase => family_size.log2() / denominator,
        BoundMode::Average => 0.5 * (family_size / 2.0).log2() / denominator,
    })
}
