use std::fmt::Write as _;

use super::study::{Lowering, StudyRow, StudyTable};
use crate::error::{Error, Result};
use crate::rng::PRNG_DESCRIPTION;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StatsFormat {
    Csv,
    Markdown,
}

/// `study_<strategy>_<seed>.csv`
pub fn csv_file_name(table: &StudyTable) -> Result<String> {
    let row = table.rows.first().ok_or(Error::EmptyTable)?;
    Ok(format!("study_{}_{}.csv", row.strategy, row.seed))
}

pub fn export_stats(table: &StudyTable, format: StatsFormat) -> Result<Vec<u8>> {
    match format {
        StatsFormat::Csv => to_csv(table),
        StatsFormat::Markdown => to_markdown(table).map(String::into_bytes),
    }
}

fn header_comment(table: &StudyTable) -> String {
    let hamming = table.hamming_distance.map_or("any".to_string(), |d| d.to_string());
    format!(
        "# prng={PRNG_DESCRIPTION}; log_base=2; hamming={hamming}; lowering={}; optimize={}\n",
        table.lowering, table.optimize
    )
}

fn csv_error(e: impl std::fmt::Display) -> Error {
    Error::Csv(e.to_string())
}

pub fn to_csv(table: &StudyTable) -> Result<Vec<u8>> {
    if table.rows.is_empty() {
        return Err(Error::EmptyTable);
    }
    let mut writer = csv::Writer::from_writer(header_comment(table).into_bytes());
    for row in &table.rows {
        writer.serialize(row).map_err(csv_error)?;
    }
    writer.into_inner().map_err(csv_error)
}

/// Inverse of [`to_csv`].
pub fn parse_csv(input: &[u8]) -> Result<StudyTable> {
    let text = std::str::from_utf8(input).map_err(csv_error)?;
    let comment = text
        .lines()
        .next()
        .and_then(|l| l.strip_prefix("# "))
        .ok_or_else(|| Error::Csv("missing header comment".into()))?;
    let mut table = StudyTable {
        hamming_distance: None,
        lowering: Lowering::None,
        optimize: false,
        rows: Vec::new(),
    };
    for field in comment.split("; ") {
        match field.split_once('=') {
            Some(("hamming", "any")) => {}
            Some(("hamming", d)) => table.hamming_distance = Some(d.parse().map_err(csv_error)?),
            Some(("lowering", l)) => table.lowering = l.parse().map_err(Error::Csv)?,
            Some(("optimize", o)) => table.optimize = o.parse().map_err(csv_error)?,
            _ => {}
        }
    }
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    for row in reader.deserialize::<StudyRow>() {
        table.rows.push(row.map_err(csv_error)?);
    }
    if table.rows.is_empty() {
        return Err(Error::EmptyTable);
    }
    Ok(table)
}

fn bound(b: Option<u64>) -> String {
    b.map_or("-".to_string(), |v| v.to_string())
}

/// One row per `n` with averages, maxima and bounds. Studies at a fixed
/// Hamming distance also get blank columns for the external-compiler series.
pub fn to_markdown(table: &StudyTable) -> Result<String> {
    let first = table.rows.first().ok_or(Error::EmptyTable)?;
    let mut out = String::new();
    let hamming = table.hamming_distance.map_or(String::new(), |d| format!(", Hamming distance {d}"));
    let _ = writeln!(
        out,
        "Strategy {}, lowering {}, optimize {}{hamming}, seed {}.\n",
        first.strategy, table.lowering, table.optimize, first.seed
    );
    let external = table.hamming_distance.is_some();
    out.push_str("| n | trials | Avg CNOT | Max CNOT | Bd CNOT | Avg Toffoli | Max Toffoli | Bd Toffoli | Avg T | Avg X | verified |");
    if external {
        out.push_str(" Tweedledum | Pytket-Match | Pytket-Cycle |");
    }
    out.push_str("\n|---|---|---|---|---|---|---|---|---|---|---|");
    if external {
        out.push_str("---|---|---|");
    }
    out.push('\n');
    for r in &table.rows {
        let _ = write!(
            out,
            "| {} | {} | {:.2} | {} | {} | {:.2} | {} | {} | {:.2} | {:.2} | {:.3} |",
            r.n,
            r.trials,
            r.avg_cnot,
            r.max_cnot,
            r.bound_cnot,
            r.avg_toffoli,
            r.max_toffoli,
            bound(r.bound_toffoli),
            r.avg_t,
            r.avg_x,
            r.verified_fraction
        );
        if external {
            out.push_str("  |  |  |");
        }
        out.push('\n');
    }
    if external {
        out.push_str("\nThe Tweedledum and Pytket columns need external compilers and are left blank.\n");
    }
    Ok(out)
}

/// Side-by-side CNOT and Toffoli averages for the two flag strategies, in
/// the usual two-strategy comparison layout.
pub fn table1_markdown(a: &StudyTable, b: &StudyTable) -> Result<String> {
    if a.rows.is_empty() || b.rows.is_empty() {
        return Err(Error::EmptyTable);
    }
    let mut out = String::from(
        "| n | CNOT Avg (a) | CNOT Avg (b) | CNOT Bd | Toffoli Avg (a) | Bd (a) | Toffoli Avg (b) | Bd (b) |\n|---|---|---|---|---|---|---|---|\n",
    );
    for ra in &a.rows {
        let Some(rb) = b.rows.iter().find(|r| r.n == ra.n) else {
            continue;
        };
        let _ = writeln!(
            out,
            "| {} | {:.2} | {:.2} | {} | {} | {} | {} | {} |",
            ra.n,
            ra.avg_cnot,
            rb.avg_cnot,
            ra.bound_cnot,
            ra.avg_toffoli,
            bound(ra.bound_toffoli),
            rb.avg_toffoli,
            bound(rb.bound_toffoli)
        );
    }
    Ok(out)
}
