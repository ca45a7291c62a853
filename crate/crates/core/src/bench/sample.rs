use std::collections::HashSet;

use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::rng;
use crate::sim::{BasisState, MAX_WIDTH};
use crate::transposition::TranspositionSpec;

/// Unordered pairs at Hamming distance `d` among `n`-bit strings,
/// 2^(n-1)·C(n, d), saturating at `u128::MAX`.
pub fn pairs_at_distance(n: usize, d: usize) -> u128 {
    if d == 0 || d > n {
        return 0;
    }
    let mut binom: u128 = 1;
    for i in 0..d as u128 {
        binom = binom * (n as u128 - i) / (i + 1);
    }
    binom.checked_mul(1u128 << (n - 1)).unwrap_or(u128::MAX)
}

fn uniform_bits<R: RngCore>(rng: &mut R, n: usize) -> u64 {
    if n == 64 {
        rng.next_u64()
    } else {
        rng::uniform_below(rng, 1u64 << n)
    }
}

fn pair(n: usize, a: u64, b: u64) -> TranspositionSpec {
    TranspositionSpec::new(
        BasisState::new(n, a).expect("width checked"),
        BasisState::new(n, b).expect("width checked"),
    )
    .expect("a != b by construction")
}

/// Seeded random transpositions on `n` bits.
///
/// Without a distance, each of the `count` pairs is drawn independently and
/// uniformly from the unordered pairs {a, b} with a != b, trial `i` using
/// its own stream derived from `(seed, n, i)`. With a distance `d`, the
/// whole set is returned (ascending in `a`, then in the flipped mask) when
/// it has at most `count` members; otherwise `count` distinct pairs are
/// drawn without replacement.
pub fn sample_transpositions(
    n: usize,
    count: usize,
    hamming_distance: Option<usize>,
    seed: u64,
) -> Result<Vec<TranspositionSpec>> {
    if n == 0 || n > MAX_WIDTH {
        return Err(Error::BadWidth(n));
    }
    if count == 0 {
        return Err(Error::InvalidParameters("count must be at least 1".into()));
    }
    let Some(d) = hamming_distance else {
        return Ok((0..count as u64)
            .map(|trial| {
                let mut rng = rng::stream(seed, &[n as u64, trial]);
                let a = uniform_bits(&mut rng, n);
                let mut b = uniform_bits(&mut rng, n);
                while b == a {
                    b = uniform_bits(&mut rng, n);
                }
                pair(n, a, b)
            })
            .collect());
    };
    if d == 0 || d > n {
        return Err(Error::InvalidParameters(format!(
            "hamming distance {d} is impossible for {n} bits"
        )));
    }
    if pairs_at_distance(n, d) <= count as u128 {
        return Ok(enumerate(n, d));
    }
    let mut rng = rng::stream(seed, &[n as u64, d as u64, 0x6861_6d6d]);
    let mut seen = HashSet::with_capacity(count);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a = uniform_bits(&mut rng, n);
        let mask = rng::choose_distinct(&mut rng, n, d)
            .into_iter()
            .fold(0u64, |m, i| m | 1 << i);
        let (lo, hi) = (a.min(a ^ mask), a.max(a ^ mask));
        if seen.insert((lo, hi)) {
            out.push(pair(n, lo, hi));
        }
    }
    Ok(out)
}

fn enumerate(n: usize, d: usize) -> Vec<TranspositionSpec> {
    let masks: Vec<u64> = (1u64..1 << n).filter(|m| m.count_ones() as usize == d).collect();
    let mut out = Vec::new();
    for a in 0..1u64 << n {
        for &m in &masks {
            if a < a ^ m {
                out.push(pair(n, a, a ^ m));
            }
        }
    }
    out
}
