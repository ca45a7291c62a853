use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Maximum register width for bit-level simulation.
pub const MAX_WIDTH: usize = 64;

/// A computational basis state of a register of up to 64 qubits.
///
/// Qubit `i` is bit `i` of the packed word. Rendered least-index-first:
/// the string `"011"` has qubit 0 = 0, qubit 1 = 1, qubit 2 = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisState {
    width: usize,
    bits: u64,
}

impl BasisState {
    /// Packed constructor. Bits above `width` must be zero.
    pub fn new(width: usize, bits: u64) -> Result<BasisState> {
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::BadWidth(width));
        }
        if width < 64 && bits >> width != 0 {
            return Err(Error::InvalidParameters(format!(
                "value {bits:#x} does not fit in {width} bits"
            )));
        }
        Ok(BasisState { width, bits })
    }

    pub fn zeros(width: usize) -> Result<BasisState> {
        BasisState::new(width, 0)
    }

    pub(crate) fn from_raw(width: usize, bits: u64) -> BasisState {
        debug_assert!(width >= 1 && width <= MAX_WIDTH);
        BasisState { width, bits }
    }

    pub fn from_bools(bits: &[bool]) -> Result<BasisState> {
        let packed = bits
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | (u64::from(b) << i));
        BasisState::new(bits.len(), packed)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.width, "bit {i} out of range");
        self.bits >> i & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.width, "bit {i} out of range");
        if value {
            self.bits |= 1 << i;
        } else {
            self.bits &= !(1 << i);
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.width, "bit {i} out of range");
        self.bits ^= 1 << i;
    }

    pub fn count_ones(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Number of positions where the two states differ.
    pub fn hamming(&self, other: &BasisState) -> usize {
        (self.bits ^ other.bits).count_ones() as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.width).map(|i| self.get(i))
    }
}

impl FromStr for BasisState {
    type Err = Error;

    fn from_str(s: &str) -> Result<BasisState> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidBits(s.to_string())),
            })
            .collect::<Result<Vec<bool>>>()?;
        if bits.is_empty() || bits.len() > MAX_WIDTH {
            return Err(Error::BadWidth(bits.len()));
        }
        BasisState::from_bools(&bits)
    }
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}
