//! Count studies over random transpositions, the counting lower bound, and
//! CSV / markdown export.

mod bound;
mod export;
mod sample;
mod study;

pub use bound::{log2_placements, lower_bound, BoundMode, LowerBoundParams};
pub use export::{csv_file_name, export_stats, parse_csv, table1_markdown, to_csv, to_markdown, StatsFormat};
pub use sample::{pairs_at_distance, sample_transpositions};
pub use study::{cnot_bound, compile, run_count_study, toffoli_bound, Lowering, StudyRow, StudyTable, TrialConfig};
