//! Linear-size circuits for swapping two computational basis states.
//!
//! ```
//! use transposynth::{synthesize_transposition, SynthesisStrategy, TranspositionSpec};
//!
//! let spec = TranspositionSpec::parse("0110", "1011").unwrap();
//! let circuit = synthesize_transposition(&spec, SynthesisStrategy::Thm3B).unwrap();
//! assert_eq!(circuit.count_gates().toffoli, 10);
//! ```

pub mod bench;
pub mod circuit;
pub mod clifford_t;
pub mod error;
pub mod mcx;
pub mod peephole;
pub mod rng;
pub mod sim;
pub mod transposition;

pub use circuit::{Circuit, Gate, GateCounts, GateKind, QubitId, QubitRole};
pub use error::{Error, Result};
pub use transposition::{synthesize_gray_code, synthesize_transposition, SynthesisStrategy, TranspositionSpec};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/circuits.md")]
    mod circuits {}
    #[doc = include_str!("../../../book/src/mcx.md")]
    mod mcx {}
    #[doc = include_str!("../../../book/src/transpositions.md")]
    mod transpositions {}
    #[doc = include_str!("../../../book/src/clifford_t.md")]
    mod clifford_t {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/studies.md")]
    mod studies {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
