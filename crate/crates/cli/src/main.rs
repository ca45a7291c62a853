//! `transposynth` command-line front end.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on any usage
//! or input error.

use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use transposynth::bench::{self, run_count_study, Lowering, StatsFormat, TrialConfig};
use transposynth::circuit::{self, Format};
use transposynth::mcx::{self, AncillaKind, McxLayout};
use transposynth::sim::{
    verify_mcx, verify_transposition, BasisState, VerificationReport, VerifyOptions, DEFAULT_QUBIT_CAP,
};
use transposynth::{Circuit, QubitId, QubitRole, SynthesisStrategy, TranspositionSpec};

const CAP_VAR: &str = "TRANSPOSYNTH_SIM_CAP";

#[derive(Parser)]
#[command(name = "transposynth", version, about = "Synthesize and verify basis-state transposition circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize the circuit swapping |a> and |b>.
    Synth(SynthArgs),
    /// Check a circuit file against a transposition or an MCX contract.
    Verify(VerifyArgs),
    /// Gate-count statistics over random transpositions.
    Study(StudyArgs),
    /// Emit one of the C^nX constructions.
    Mcx(McxArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    #[value(name = "thm3_a")]
    Thm3A,
    #[value(name = "thm3_b")]
    Thm3B,
    Gray,
}

impl From<StrategyArg> for SynthesisStrategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Thm3A => SynthesisStrategy::Thm3A,
            StrategyArg::Thm3B => SynthesisStrategy::Thm3B,
            StrategyArg::Gray => SynthesisStrategy::GrayCode,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LowerArg {
    None,
    Naive,
    #[value(name = "inverse_aware")]
    InverseAware,
}

impl From<LowerArg> for Lowering {
    fn from(l: LowerArg) -> Self {
        match l {
            LowerArg::None => Lowering::None,
            LowerArg::Naive => Lowering::Naive,
            LowerArg::InverseAware => Lowering::InverseAware,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Qasm2,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Qasm2 => Format::Qasm2,
        }
    }
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    #[arg(long, value_enum, default_value = "thm3_b")]
    strategy: StrategyArg,
    #[arg(long, value_enum, default_value = "none")]
    lower: LowerArg,
    /// Run the redundancy-removal pass at the end.
    #[arg(long)]
    optimize: bool,
    /// Circuit destination. Without it the circuit goes to standard output
    /// and the gate counts to standard error.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    circuit: PathBuf,
    #[arg(long, requires = "b", conflicts_with = "mcx")]
    a: Option<String>,
    #[arg(long, requires = "a")]
    b: Option<String>,
    /// `n=<k>`: data qubits 0..k are controls, data qubit k is the target.
    #[arg(long, required_unless_present = "a")]
    mcx: Option<String>,
}

#[derive(Args)]
struct StudyArgs {
    /// A single size or an inclusive range `lo..hi`.
    #[arg(long)]
    n: String,
    /// Defaults to 200, or 100 with `--hamming`.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, value_enum, default_value = "thm3_b")]
    strategy: StrategyArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    hamming: Option<usize>,
    #[arg(long, value_enum, default_value = "none")]
    lower: LowerArg,
    /// Skip the redundancy-removal pass.
    #[arg(long)]
    no_optimize: bool,
    /// CSV destination, `study_<strategy>_<seed>.csv` by default. The
    /// markdown table is written next to it with an `.md` extension.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Borrowed,
    #[value(name = "single_clean")]
    SingleClean,
    #[value(name = "clean_ladder")]
    CleanLadder,
}

#[derive(Args)]
struct McxArgs {
    /// Number of controls, at least 3.
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    construction: Construction,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult = Result<(), Failure>;

fn write_output(path: Option<&Path>, bytes: &[u8]) -> CliResult {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| Failure::Usage(e.to_string())),
    }
}

fn synth(args: SynthArgs) -> CliResult {
    let spec = TranspositionSpec::parse(&args.a, &args.b)?;
    let circuit = bench::compile(&spec, args.strategy.into(), args.lower.into(), args.optimize)?;
    let bytes = circuit::serialize(&circuit, args.format.into())?;
    write_output(args.out.as_deref(), &bytes)?;
    let summary = circuit.count_gates().to_string();
    if args.out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}

fn sim_cap() -> Result<usize, Failure> {
    match std::env::var(CAP_VAR) {
        Ok(v) => v
            .parse()
            .map_err(|_| Failure::Usage(format!("{CAP_VAR} must be a qubit count, got {v:?}"))),
        Err(_) => Ok(DEFAULT_QUBIT_CAP),
    }
}

fn restrict(state: &BasisState, positions: &[QubitId]) -> String {
    positions.iter().map(|q| if state.get(q.0) { '1' } else { '0' }).collect()
}

/// `swept` lists the qubits that vary across inputs; counterexamples are
/// shown on those qubits only.
fn print_report(report: &VerificationReport, swept: &[QubitId]) -> CliResult {
    let bits = swept.len();
    let scope = if report.exhaustive {
        format!("2^{bits} states")
    } else {
        format!("{} sampled of 2^{bits} states", report.checked())
    };
    match report.first_failure() {
        None => {
            println!("PASS ({scope})");
            Ok(())
        }
        Some(r) => {
            let actual = r.actual.map_or("a superposition".to_string(), |s| s.to_string());
            Err(Failure::Verification(format!(
                "FAIL ({} of {scope} failing): counterexample x={} (register in {} expected {} got {actual})",
                report.failures().count(),
                restrict(&r.input, swept),
                r.input,
                r.expected
            )))
        }
    }
}

fn parse_mcx_arg(arg: &str) -> Result<usize, Failure> {
    arg.strip_prefix("n=")
        .and_then(|k| k.parse().ok())
        .ok_or_else(|| Failure::Usage(format!("--mcx expects n=<k>, got {arg:?}")))
}

fn verify(args: VerifyArgs) -> CliResult {
    let text = fs::read_to_string(&args.circuit)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", args.circuit.display())))?;
    let circuit = circuit::parse(&text)?;
    let cap = sim_cap()?;
    if circuit.num_qubits() > cap {
        return Err(Failure::Usage(
            transposynth::Error::RegisterTooLarge {
                num_qubits: circuit.num_qubits(),
                cap,
            }
            .to_string(),
        ));
    }
    let options = VerifyOptions {
        max_exhaustive_bits: 24,
        qubit_cap: cap,
        ..VerifyOptions::default()
    };
    let data = circuit.qubits_with_role(QubitRole::Data);
    let clean = circuit.qubits_with_role(QubitRole::CleanAncilla);
    if let (Some(a), Some(b)) = (&args.a, &args.b) {
        let spec = TranspositionSpec::parse(a, b)?;
        if data.len() < spec.n() {
            return Err(Failure::Usage(format!(
                "circuit has {} data qubits, the states have {} bits",
                data.len(),
                spec.n()
            )));
        }
        let report = verify_transposition(&circuit, &spec, &data[..spec.n()], &clean, &options)?;
        return print_report(&report, &data[..spec.n()]);
    }
    let k = parse_mcx_arg(args.mcx.as_deref().unwrap_or_default())?;
    if data.len() < k + 1 {
        return Err(Failure::Usage(format!(
            "an {k}-control MCX needs {} data qubits, the circuit has {}",
            k + 1,
            data.len()
        )));
    }
    let borrowed = circuit.qubits_with_role(QubitRole::BorrowedAncilla);
    let (ancillas, kind) = if borrowed.is_empty() {
        (clean, AncillaKind::Clean)
    } else {
        (borrowed, AncillaKind::Borrowed)
    };
    let mut swept = data[..=k].to_vec();
    if kind == AncillaKind::Borrowed {
        swept.extend_from_slice(&ancillas);
    }
    let layout = McxLayout::new(data[..k].to_vec(), data[k], ancillas, kind)?;
    let report = verify_mcx(&circuit, &layout, &options)?;
    print_report(&report, &swept)
}

fn parse_range(text: &str) -> Result<RangeInclusive<usize>, Failure> {
    let bad = || Failure::Usage(format!("invalid range {text:?}: use n or lo..hi"));
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (lo.parse().map_err(|_| bad())?, hi.parse().map_err(|_| bad())?),
        None => {
            let n = text.parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

fn study(args: StudyArgs) -> CliResult {
    let n_range: Vec<usize> = parse_range(&args.n)?.collect();
    let strategy = SynthesisStrategy::from(args.strategy);
    let mut config = match args.hamming {
        Some(d) => TrialConfig::at_distance(n_range, d, strategy, args.seed),
        None => TrialConfig::new(n_range, strategy, args.seed),
    };
    if let Some(trials) = args.trials {
        config.trials_per_n = trials;
    }
    config.lowering = args.lower.into();
    config.optimize = !args.no_optimize;
    config.validate()?;
    let table = run_count_study(&config)?;
    let csv_path = match args.out {
        Some(p) => p,
        None => PathBuf::from(bench::csv_file_name(&table)?),
    };
    let markdown = bench::export_stats(&table, StatsFormat::Markdown)?;
    write_output(Some(&csv_path), &bench::export_stats(&table, StatsFormat::Csv)?)?;
    write_output(Some(&csv_path.with_extension("md")), &markdown)?;
    write_output(None, &markdown)?;
    if table.rows.iter().any(|r| r.verified_fraction < 1.0) {
        return Err(Failure::Verification("some trial circuits failed verification".into()));
    }
    Ok(())
}

fn mcx_command(args: McxArgs) -> CliResult {
    let n = args.n;
    if n < 3 {
        return Err(Failure::Usage(format!("--n must be at least 3, got {n}")));
    }
    let circuit: Circuit = match args.construction {
        Construction::Borrowed => mcx::mcx_borrowed(&McxLayout::contiguous(n, n - 2, AncillaKind::Borrowed))?,
        Construction::SingleClean => mcx::mcx_single_clean(&McxLayout::contiguous(n, 1, AncillaKind::Clean))?,
        Construction::CleanLadder => mcx::mcx_clean_ladder(&McxLayout::contiguous(n, n - 2, AncillaKind::Clean))?,
    };
    let bytes = circuit::serialize(&circuit, args.format.into())?;
    write_output(args.out.as_deref(), &bytes)?;
    let summary = circuit.count_gates().to_string();
    if args.out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Synth(args) => synth(args),
        Command::Verify(args) => verify(args),
        Command::Study(args) => study(args),
        Command::Mcx(args) => mcx_command(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(message)) => {
            println!("{message}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
