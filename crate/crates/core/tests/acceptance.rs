//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so every line is printed even when an
//! earlier criterion fails; the process exits non-zero if any fails.

use std::time::{Duration, Instant};

use rand_core::RngCore;
use transposynth::bench::{
    lower_bound, run_count_study, sample_transpositions, BoundMode, Lowering, LowerBoundParams, StudyTable,
    TrialConfig,
};
use transposynth::circuit::qubits;
use transposynth::clifford_t::{lower_all_toffolis, lower_toffoli, Pairing, ToffoliOrientation};
use transposynth::mcx::{mcx_borrowed, mcx_clean_ladder, mcx_single_clean, AncillaKind, McxLayout};
use transposynth::peephole::remove_redundancies;
use transposynth::sim::{
    run_reversible, run_statevector, verify_mcx, verify_transposition, BasisState, VerifyOptions,
    DEFAULT_QUBIT_CAP,
};
use transposynth::{
    rng, synthesize_transposition, Circuit, Gate, QubitRole, SynthesisStrategy,
};

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

const SEED: u64 = 20_240_601;
const STRATEGIES: [SynthesisStrategy; 2] = [SynthesisStrategy::Thm3A, SynthesisStrategy::Thm3B];

/// Reference averages for n = 2..=20: CNOT (a), CNOT (b), Toffoli (a).
const TABLE1: [(usize, f64, f64, f64); 19] = [
    (2, 2.60, 2.64, 2.0),
    (3, 3.52, 3.35, 6.0),
    (4, 4.10, 4.18, 12.0),
    (5, 5.13, 5.15, 24.0),
    (6, 6.10, 6.10, 32.0),
    (7, 7.12, 6.95, 48.0),
    (8, 8.33, 8.05, 56.0),
    (9, 8.87, 9.00, 72.0),
    (10, 10.09, 10.36, 80.0),
    (11, 11.14, 10.75, 96.0),
    (12, 11.95, 12.30, 104.0),
    (13, 12.66, 13.09, 120.0),
    (14, 14.05, 14.05, 128.0),
    (15, 14.78, 15.02, 144.0),
    (16, 15.86, 15.82, 152.0),
    (17, 17.03, 16.55, 168.0),
    (18, 18.43, 17.64, 176.0),
    (19, 18.39, 19.24, 192.0),
    (20, 20.12, 20.74, 200.0),
];

fn table1_avg_b(n: usize) -> f64 {
    match n {
        2 => 2.0,
        3 => 6.0,
        _ => (4 * n - 6) as f64,
    }
}

fn exhaustive() -> VerifyOptions {
    VerifyOptions {
        max_exhaustive_bits: 64,
        ..VerifyOptions::default()
    }
}

fn clean_ancillas(c: &Circuit) -> Vec<transposynth::QubitId> {
    c.qubits_with_role(QubitRole::CleanAncilla)
}

fn c1_mcx_oracle() -> Check {
    let start = Instant::now();
    let mut inputs = 0;
    for n in 3..=8 {
        let cases = [
            ("borrowed", McxLayout::contiguous(n, n - 2, AncillaKind::Borrowed), 0),
            ("single_clean", McxLayout::contiguous(n, 1, AncillaKind::Clean), 1),
            ("clean_ladder", McxLayout::contiguous(n, n - 2, AncillaKind::Clean), 2),
        ];
        for (name, layout, which) in cases {
            let circuit = match which {
                0 => mcx_borrowed(&layout),
                1 => mcx_single_clean(&layout),
                _ => mcx_clean_ladder(&layout),
            }
            .map_err(|e| e.to_string())?;
            let report = verify_mcx(&circuit, &layout, &exhaustive()).map_err(|e| e.to_string())?;
            ensure!(report.exhaustive, "{name} n={n} was not exhaustive");
            ensure!(report.passed(), "{name} n={n}: {}", report.to_text());
            inputs += report.checked();
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    Ok(format!("{inputs} inputs over n=3..8, 3 constructions, {elapsed:.2?}"))
}

fn c2_count_formulas() -> Check {
    for n in 3..=12 {
        let toffolis = |c: transposynth::Result<Circuit>| -> Result<(usize, usize), String> {
            let k = c.map_err(|e| e.to_string())?.count_gates();
            Ok((k.toffoli, k.total))
        };
        let (b, bt) = toffolis(mcx_borrowed(&McxLayout::contiguous(n, n - 2, AncillaKind::Borrowed)))?;
        ensure!(b == 4 * n - 8 && bt == b, "borrowed n={n}: {b} Toffolis of {bt} gates");
        let (l, lt) = toffolis(mcx_clean_ladder(&McxLayout::contiguous(n, n - 2, AncillaKind::Clean)))?;
        ensure!(l == 2 * n - 3 && lt == l, "ladder n={n}: {l} Toffolis of {lt} gates");
        let (s, st) = toffolis(mcx_single_clean(&McxLayout::contiguous(n, 1, AncillaKind::Clean)))?;
        let ok = match n {
            3 => s == 3,
            4 => s == 6,
            _ => s <= 6 * n - 18,
        };
        ensure!(ok && st == s, "single_clean n={n}: {s} Toffolis of {st} gates");
    }
    Ok("4n-8, 2n-3 and {3, 6, <=6n-18} hold for n=3..12".into())
}

fn c3_golden() -> Check {
    let layout = McxLayout::interleaved(4);
    let circuit = mcx_borrowed(&layout).map_err(|e| e.to_string())?;
    let (x1, x2, a1, x3, a2, x4, x5) = (0, 1, 2, 3, 4, 5, 6);
    let expected = [
        Gate::toffoli(a2, x4, x5),
        Gate::toffoli(a1, x3, a2),
        Gate::toffoli(x1, x2, a1),
        Gate::toffoli(a1, x3, a2),
        Gate::toffoli(a2, x4, x5),
        Gate::toffoli(a1, x3, a2),
        Gate::toffoli(x1, x2, a1),
        Gate::toffoli(a1, x3, a2),
    ];
    ensure!(circuit.gates() == expected, "got {:?}", circuit.gates());
    Ok("8-Toffoli sequence reproduced gate for gate".into())
}

fn c4_semantics() -> Check {
    let start = Instant::now();
    let mut circuits = 0;
    for n in 1..=10 {
        for spec in sample_transpositions(n, 50, None, SEED).map_err(|e| e.to_string())? {
            for strategy in STRATEGIES {
                let c = synthesize_transposition(&spec, strategy).map_err(|e| e.to_string())?;
                let report = verify_transposition(&c, &spec, &qubits(0..n), &clean_ancillas(&c), &exhaustive())
                    .map_err(|e| e.to_string())?;
                ensure!(
                    report.exhaustive && report.checked() == 1 << n,
                    "{strategy} {spec}: only {} inputs",
                    report.checked()
                );
                ensure!(report.passed(), "{strategy} {spec}: {}", report.to_text());
                circuits += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    Ok(format!("{circuits} circuits, every data basis state, {elapsed:.2?}"))
}

fn c5_resource_caps() -> Check {
    let mut checked = 0;
    for n in 1..=20 {
        for spec in sample_transpositions(n, 50, None, SEED ^ 5).map_err(|e| e.to_string())? {
            for strategy in STRATEGIES {
                let c = synthesize_transposition(&spec, strategy).map_err(|e| e.to_string())?;
                let k = c.count_gates();
                let opt = remove_redundancies(&c).count_gates();
                let cnot_cap = if n == 1 { 4 } else { 2 * n };
                let (toffoli_ok, ancillas) = match (n, strategy) {
                    (1, _) => (k.toffoli == 0, 1),
                    (2, _) => (k.toffoli <= 2, 1),
                    (3, _) => (k.toffoli <= 6, 2),
                    (_, SynthesisStrategy::Thm3A) => (k.toffoli <= 12 * n - 36, 2),
                    _ => (k.toffoli == 4 * n - 6, n - 1),
                };
                let tag = format!("{strategy} {spec}");
                ensure!(k.h == 2, "{tag}: {} H", k.h);
                ensure!(k.x <= 4 * n, "{tag}: {} X", k.x);
                ensure!(opt.x <= 3 * n, "{tag}: {} X after optimizing", opt.x);
                ensure!(k.cnot <= cnot_cap, "{tag}: {} CNOT", k.cnot);
                ensure!(toffoli_ok, "{tag}: {} Toffoli", k.toffoli);
                ensure!(k.mcx == 0, "{tag}: MCX left");
                ensure!(clean_ancillas(&c).len() == ancillas, "{tag}: ancilla count");
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} circuits, n=1..20, both strategies"))
}

fn study(strategy: SynthesisStrategy) -> Result<StudyTable, String> {
    let config = TrialConfig::new((2..=20).collect(), strategy, SEED);
    run_count_study(&config).map_err(|e| e.to_string())
}

fn c6_table1_b(table: &StudyTable) -> Check {
    let mut worst = 0.0f64;
    for (row, &(n, cnot_a, cnot_b, _)) in table.rows.iter().zip(TABLE1.iter()) {
        ensure!(row.n == n && row.trials == 200, "row layout");
        ensure!(row.avg_toffoli == table1_avg_b(n), "n={n}: avg Toffoli {}", row.avg_toffoli);
        let _ = cnot_a;
        ensure!((row.avg_cnot / cnot_b - 1.0).abs() <= 0.15, "n={n}: avg CNOT {} vs {cnot_b}", row.avg_cnot);
        ensure!(row.verified_fraction == 1.0, "n={n}: verified {}", row.verified_fraction);
        worst = worst.max((row.avg_cnot / cnot_b - 1.0).abs());
    }
    Ok(format!(
        "Toffoli averages exact for n=2..20; CNOT within {:.1}% of the (b) column",
        100.0 * worst
    ))
}

fn c7_table1_a(table: &StudyTable) -> Check {
    let mut diffs = Vec::new();
    for (row, &(n, _, _, avg_a)) in table.rows.iter().zip(TABLE1.iter()) {
        ensure!(row.n == n, "row layout");
        if n >= 4 {
            ensure!(row.avg_toffoli <= (12 * n - 36) as f64, "n={n}: {} above bound", row.avg_toffoli);
        }
        let diff = row.avg_toffoli - avg_a;
        ensure!(diff.abs() <= 4.0, "n={n}: {} vs reference {avg_a}", row.avg_toffoli);
        ensure!(row.verified_fraction == 1.0, "n={n}: verified {}", row.verified_fraction);
        if diff != 0.0 {
            diffs.push(format!("n={n}:{diff:+}"));
        }
    }
    if diffs.is_empty() {
        return Ok("within bound and equal to the reference averages at every n".into());
    }
    Ok(format!("within bound; differences from reference averages: {}", diffs.join(" ")))
}

fn c8_fig4() -> Check {
    let mut out = Vec::new();
    for (strategy, expected) in [(SynthesisStrategy::Thm3A, 84.0), (SynthesisStrategy::Thm3B, 70.0)] {
        let mut config = TrialConfig::at_distance(vec![4], 3, strategy, SEED);
        config.lowering = Lowering::Naive;
        config.optimize = false;
        let table = run_count_study(&config).map_err(|e| e.to_string())?;
        let row = &table.rows[0];
        ensure!(row.trials == 32, "{strategy}: {} trials", row.trials);
        ensure!(row.avg_t == expected, "{strategy}: avg T {}", row.avg_t);
        ensure!(row.verified_fraction == 1.0, "{strategy}: verification");
        out.push(format!("{strategy} {}", row.avg_t));
    }
    Ok(format!("avg T at n=4, distance 3: {}", out.join(", ")))
}

fn c9_pair_saving() -> Check {
    let c = Circuit::from_gates(
        vec![QubitRole::Data; 3],
        vec![Gate::toffoli(0, 1, 2), Gate::x(2), Gate::toffoli(0, 1, 2)],
    )
    .map_err(|e| e.to_string())?;
    let lowered = remove_redundancies(&lower_all_toffolis(&c, Pairing::InverseAware).map_err(|e| e.to_string())?);
    let k = lowered.count_gates();
    let single = k.single_qubit() - 1;
    ensure!(k.cnot == 8 && single == 12 && k.x == 1, "{k}");
    let naive = remove_redundancies(&lower_all_toffolis(&c, Pairing::Naive).map_err(|e| e.to_string())?);
    ensure!(naive.count_gates().total > k.total, "no saving over naive");
    Ok(format!(
        "{} CNOT and {single} single-qubit gates around the intervening X (naive: {} gates)",
        k.cnot,
        naive.count_gates().total
    ))
}

fn c10_lowering() -> Check {
    let reference = Circuit::from_gates(vec![QubitRole::Data; 3], vec![Gate::toffoli(0, 1, 2)]).unwrap();
    for orientation in [ToffoliOrientation::Standard, ToffoliOrientation::Inverted] {
        let c = lower_toffoli(&Gate::toffoli(0, 1, 2), orientation).map_err(|e| e.to_string())?;
        for col in 0..8 {
            let input = BasisState::new(3, col).unwrap();
            let image = run_reversible(&reference, &input).unwrap().bits();
            let state = run_statevector(&c, &input, DEFAULT_QUBIT_CAP).map_err(|e| e.to_string())?;
            for row in 0..8u64 {
                let want = if row == image { 1.0 } else { 0.0 };
                let got = state.amplitude(&BasisState::new(3, row).unwrap());
                ensure!((got.re - want).abs() < 1e-9 && got.im.abs() < 1e-9, "{orientation:?} ({row},{col}) = {got}");
            }
        }
    }
    let mut pipelines = 0;
    for n in 1..=8 {
        for spec in sample_transpositions(n, 6, None, SEED ^ 10).map_err(|e| e.to_string())? {
            for strategy in STRATEGIES {
                for lowering in [Lowering::None, Lowering::Naive, Lowering::InverseAware] {
                    for optimize in [false, true] {
                        let c = transposynth::bench::compile(&spec, strategy, lowering, optimize)
                            .map_err(|e| e.to_string())?;
                        let report =
                            verify_transposition(&c, &spec, &qubits(0..n), &clean_ancillas(&c), &exhaustive())
                                .map_err(|e| e.to_string())?;
                        ensure!(report.passed(), "{strategy} {lowering} opt={optimize} {spec}");
                        pipelines += 1;
                    }
                }
            }
        }
    }
    Ok(format!("Toffoli matrix exact in both orientations; {pipelines} pipelines verified for n<=8"))
}

fn c11_lower_bound() -> Check {
    let mut rng = rng::stream(SEED, &[11]);
    let mut worst = 0.0f64;
    let mut evaluated = 0;
    while evaluated < 1000 {
        let n = 1 + rng::uniform_below(&mut rng, 64);
        let c = 1 + rng::uniform_below(&mut rng, n);
        let d = 1 + rng::uniform_below(&mut rng, 32);
        let exp = 1 + rng::uniform_below(&mut rng, n);
        let family_size = (2f64.powi(exp as i32) - 1.0).max(2.0) + (rng.next_u64() % 7) as f64;
        let placements: f64 = ((n - c + 1)..=n).map(|k| k as f64).product::<f64>() * d as f64;
        if placements <= 1.0 {
            continue;
        }
        let params = LowerBoundParams { n, d, c, family_size };
        let direct_worst = family_size.ln() / placements.ln();
        let direct_avg = 0.5 * (family_size / 2.0).ln() / placements.ln();
        let worst_case = lower_bound(&params, BoundMode::WorstCase).map_err(|e| e.to_string())?;
        let average = lower_bound(&params, BoundMode::Average).map_err(|e| e.to_string())?;
        for (got, want) in [(worst_case, direct_worst), (average, direct_avg)] {
            let rel = if want == 0.0 { got.abs() } else { ((got - want) / want).abs() };
            worst = worst.max(rel);
            ensure!(rel < 1e-12, "{params:?}: {got} vs {want}");
        }
        ensure!(average <= worst_case, "{params:?}: average {average} > worst {worst_case}");
        evaluated += 1;
    }
    Ok(format!("1000 tuples, max relative error {worst:.1e}"))
}

fn c12_enumeration() -> Check {
    let expected = [
        (4, 1, 32),
        (4, 2, 48),
        (4, 3, 32),
        (4, 4, 8),
        (5, 1, 80),
        (5, 4, 80),
        (5, 5, 16),
        (6, 6, 32),
        (7, 7, 64),
    ];
    for (n, d, total) in expected {
        let got = sample_transpositions(n, 100, Some(d), SEED).map_err(|e| e.to_string())?.len();
        ensure!(got == total, "({n}, {d}): {got}");
    }
    Ok("all nine (n, d) totals match".into())
}

fn main() {
    let start = Instant::now();
    let mut failed = 0;
    let mut report = |id: usize, name: &str, result: Check| {
        match &result {
            Ok(detail) => println!("criterion {id:>2} PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name}: {why}");
            }
        }
    };
    report(1, "MCX oracle equivalence", c1_mcx_oracle());
    report(2, "exact count formulas", c2_count_formulas());
    report(3, "worked-example golden circuit", c3_golden());
    report(4, "transposition semantics", c4_semantics());
    report(5, "resource caps", c5_resource_caps());
    let table_b = study(SynthesisStrategy::Thm3B);
    let table_a = study(SynthesisStrategy::Thm3A);
    report(6, "count table, strategy (b)", table_b.and_then(|t| c6_table1_b(&t)));
    report(7, "count table, strategy (a)", table_a.and_then(|t| c7_table1_a(&t)));
    report(8, "T-count datapoints", c8_fig4());
    report(9, "inverse-aware pair saving", c9_pair_saving());
    report(10, "lowering correctness", c10_lowering());
    report(11, "lower-bound calculator", c11_lower_bound());
    report(12, "enumeration counts", c12_enumeration());
    println!("acceptance: {} of 12 passed in {:.2?}", 12 - failed, start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
