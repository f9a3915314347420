//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed; exits non-zero if any fail.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use unrefinable::bijection::{
    backward, classify, demonstrate_exclusion, forward, verify_bijection_with, BijectionCase, CaseKind,
    EtaPartition,
};
use unrefinable::criteria::{geometric_analysis, is_unrefinable_geometric, verdicts_agree, HookCell};
use unrefinable::harness::{
    admissible_cases, diagrams_with_cells, emit_partitions, emit_report, run_suite, structure_failures,
    EmitFormat, PartitionRow, Suite, SuiteParams,
};
use unrefinable::maximal::{exceptional, max_missing_subfamily, maximal_unrefinable, ExceptionalKind, SearchMode};
use unrefinable::partition::{triangular_number, DistinctPartition};
use unrefinable::young::{kn_inverse, kn_transform};
use unrefinable::{is_unrefinable, NumericalSet};

/// Largest weight for the brute-force bijection checks.
const BIJECTION_CAP: u32 = 153;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn with_prefix(top: u32, tail: &[u32]) -> DistinctPartition {
    let mut v: Vec<u32> = (1..=top).collect();
    v.extend_from_slice(tail);
    DistinctPartition::new(v).unwrap()
}

fn ensure(cond: bool, failures: &mut Vec<String>, msg: impl FnOnce() -> String) {
    if !cond {
        failures.push(msg());
    }
}

fn conclude(failures: Vec<String>, summary: String) -> Outcome {
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(failures.join("; "))
    }
}

fn criterion_equivalence() -> Outcome {
    let started = Instant::now();
    let mut checked = 0;
    let mut failures = Vec::new();
    for weight in 1..=60 {
        let a = verdicts_agree(weight);
        checked += a.checked;
        if let Some(p) = a.first_divergence {
            failures.push(format!("deciders disagree on {p}"));
        }
    }
    let elapsed = started.elapsed();
    ensure(elapsed < Duration::from_secs(60), &mut failures, || format!("took {elapsed:.1?}"));
    conclude(failures, format!("{checked} partitions of N <= 60 agree ({elapsed:.2?})"))
}

fn criterion_kn_roundtrips() -> Outcome {
    let mut failures = Vec::new();
    let mut sets = 0;
    for mask in 0u32..(1 << 20) {
        let s = NumericalSet::from_gaps((1..=20).filter(|g| mask >> (g - 1) & 1 == 1)).unwrap();
        if s.genus() == 0 {
            // ℕ₀ has no diagram; it is the only set with no gaps.
            ensure(kn_transform(&s).is_err(), &mut failures, || "empty gap set accepted".into());
            continue;
        }
        sets += 1;
        let back = kn_inverse(&kn_transform(&s).unwrap());
        ensure(back == s, &mut failures, || format!("{s} -> {back}"));
    }
    let mut diagrams = 0;
    for cells in 1..=20 {
        for y in diagrams_with_cells(cells) {
            diagrams += 1;
            let back = kn_transform(&kn_inverse(&y)).unwrap();
            ensure(back == y, &mut failures, || format!("{:?} -> {:?}", y.rows(), back.rows()));
        }
    }
    conclude(failures, format!("{sets} numerical sets, {diagrams} diagrams"))
}

fn criterion_examples() -> Outcome {
    let mut failures = Vec::new();

    // (a) the numerical set {0,3,6,8,9,11,12,14,→}
    let s: NumericalSet = "0,3,6,8,9,11,12,14,->".parse().unwrap();
    let y = kn_transform(&s).unwrap();
    ensure(y.rows() == [7, 5, 3, 2, 2, 1, 1], &mut failures, || format!("(a) rows {:?}", y.rows()));
    let col = y.hook_grid().first_column();
    ensure(col == [13, 10, 7, 5, 4, 2, 1], &mut failures, || format!("(a) first column {col:?}"));

    // (b) λ = (1,2,5,6,8)
    let p = DistinctPartition::new([1, 2, 5, 6, 8]).unwrap();
    let analysis = geometric_analysis(&p);
    ensure(analysis.offending.is_empty() && is_unrefinable(&p), &mut failures, || "(b) refinable".into());
    let grid = kn_transform(&NumericalSet::from_partition(&p)).unwrap();
    let grid = grid.hook_grid();
    let heads: Vec<(u32, u32)> = analysis
        .doubling_cells
        .iter()
        .map(|c: &HookCell| (c.hook, grid.hook(c.row, 1)))
        .collect();
    ensure(heads == [(4, 8), (3, 6)], &mut failures, || format!("(b) doubling cells {heads:?}"));
    let sg = NumericalSet::from_partition(&p).is_semigroup();
    ensure(
        !sg.is_semigroup && sg.witness == Some((3, 3)),
        &mut failures,
        || format!("(b) semigroup check {sg:?}"),
    );

    // (c) triangular pair at n = 15
    let tri = BijectionCase::triangular(15).unwrap();
    let lambda = with_prefix(8, &[11, 14, 16, 17, 26]);
    let eta = forward(&lambda, &tri).map(|e| e.partition);
    ensure(
        eta.as_ref().is_ok_and(|e| e.parts() == [1, 3, 4]),
        &mut failures,
        || format!("(c) forward {eta:?}"),
    );
    let back = backward(&EtaPartition::new(DistinctPartition::new([1, 3, 4]).unwrap()), &tri);
    ensure(back.as_ref() == Ok(&lambda), &mut failures, || format!("(c) backward {back:?}"));

    // (d) nt5 pair at n = 15
    let nt5 = BijectionCase::new(CaseKind::Nt5, 15, 3).unwrap();
    let lambda = with_prefix(9, &[12, 14, 15, 25]);
    let eta = forward(&lambda, &nt5).map(|e| e.partition);
    ensure(eta.as_ref().is_ok_and(|e| e.parts() == [3, 5]), &mut failures, || format!("(d) forward {eta:?}"));
    let back = backward(&EtaPartition::new(DistinctPartition::new([3, 5]).unwrap()), &nt5);
    ensure(back.as_ref() == Ok(&lambda), &mut failures, || format!("(d) backward {back:?}"));
    let y = kn_transform(&NumericalSet::from_partition(&lambda)).unwrap();
    ensure(y.is_self_conjugate(), &mut failures, || "(d) not self-conjugate".into());

    // (e) ζ_{19,6}
    let zeta = exceptional(ExceptionalKind::Zeta, 19, Some(6)).unwrap().partition;
    ensure(
        zeta == with_prefix(10, &[12, 13, 14, 15, 16, 23, 34]),
        &mut failures,
        || format!("(e) pattern {zeta}"),
    );
    ensure(is_unrefinable(&zeta), &mut failures, || "(e) refinable".into());
    ensure(zeta.weight() == 182, &mut failures, || format!("(e) weight {}", zeta.weight()));
    let img = classify(&zeta).and_then(|case| forward(&zeta, &case));
    ensure(
        img.as_ref().is_ok_and(|e| e.improper && e.parts() == [6]),
        &mut failures,
        || format!("(e) forward {img:?}"),
    );

    conclude(failures, "examples (a) to (e) reproduce".into())
}

/// Runs the count identities with one search mode.
fn count_identities(mode: SearchMode, failures: &mut Vec<String>) -> Vec<usize> {
    let mut triangular = Vec::new();
    for n in [7u32, 9, 11, 13, 15] {
        let case = BijectionCase::triangular(n).unwrap();
        let mup = maximal_unrefinable(case.source_weight(), mode).unwrap();
        let dk = case.target_family().len();
        triangular.push(mup.len());
        ensure(mup.len() == dk, failures, || {
            format!("{mode:?}: |MUP(T_{n})| = {} but |D_{}| = {dk}", mup.len(), case.k())
        });
    }
    let dks: Vec<usize> = (7..=15)
        .step_by(2)
        .map(|n| BijectionCase::triangular(n).unwrap().target_family().len())
        .collect();
    ensure(dks == [1, 2, 3, 4, 5], failures, || format!("|D_k| for k = 4..8 is {dks:?}"));
    for n in [8u32, 10, 12] {
        let got = maximal_unrefinable(triangular_number(n), mode).unwrap().len();
        ensure(got == 1, failures, || format!("{mode:?}: |MUP(T_{n})| = {got}"));
    }
    let nt5 = BijectionCase::new(CaseKind::Nt5, 15, 3).unwrap();
    let got = maximal_unrefinable(nt5.source_weight(), mode).unwrap().len();
    let want = nt5.target_family().len();
    ensure(got == want && want == 2, failures, || format!("{mode:?}: |MUP(T_15 - 9)| = {got}, |D^o_8| = {want}"));
    let nt4 = BijectionCase::new(CaseKind::Nt4, 15, 4).unwrap();
    let got = maximal_unrefinable(nt4.source_weight(), mode).unwrap().len();
    let want = 1 + nt4.target_family().len();
    ensure(got == want && want == 2, failures, || format!("{mode:?}: |MUP(T_15 - 8)| = {got}, 1 + |D_4| = {want}"));
    triangular
}

fn criterion_counts() -> Outcome {
    let mut failures = Vec::new();
    let started = Instant::now();
    let exhaustive = count_identities(SearchMode::Exhaustive, &mut failures);
    let slow = started.elapsed();
    ensure(slow < Duration::from_secs(300), &mut failures, || format!("exhaustive path took {slow:.1?}"));
    let started = Instant::now();
    let pinned = count_identities(SearchMode::Pinned, &mut failures);
    let fast = started.elapsed();
    ensure(fast < Duration::from_secs(30), &mut failures, || format!("pinned path took {fast:.1?}"));
    ensure(exhaustive == pinned, &mut failures, || "search modes disagree".into());
    failures.dedup();
    conclude(
        failures,
        format!("triangular counts {exhaustive:?}; exhaustive {slow:.2?}, pinned {fast:.2?}"),
    )
}

fn brute_force_ubar(case: &BijectionCase) -> Vec<DistinctPartition> {
    max_missing_subfamily(&maximal_unrefinable(case.source_weight(), SearchMode::Pruned).unwrap())
}

fn criterion_structure() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    let triangular = (7..=15).step_by(2).map(|n| BijectionCase::triangular(n).unwrap());
    let others = admissible_cases(BIJECTION_CAP, 6)
        .into_iter()
        .filter(|c| c.kind() != CaseKind::Triangular);
    for case in triangular.chain(others) {
        for lambda in brute_force_ubar(&case) {
            checked += 1;
            for msg in structure_failures(&case, &lambda) {
                failures.push(format!("{case}: {lambda}: {msg}"));
            }
        }
    }
    conclude(failures, format!("{checked} partitions satisfy the shape invariants"))
}

fn criterion_roundtrips() -> Outcome {
    let mut failures = Vec::new();
    let mut elements = 0;
    let mut targets = 0;
    for case in admissible_cases(BIJECTION_CAP, 6) {
        let report = verify_bijection_with(&case, SearchMode::Pruned).unwrap();
        elements += report.ubar_count;
        targets += report.target_count - report.excluded.len();
        for check in &report.checks {
            let relevant = matches!(check.name, "backward-forward-identity" | "forward-backward-identity");
            if relevant && !check.pass {
                failures.push(format!("{case} {}: {}", check.name, check.detail.clone().unwrap_or_default()));
            }
        }
    }
    conclude(failures, format!("{elements} partitions and {targets} target partitions round-trip"))
}

fn criterion_exclusions() -> Outcome {
    let mut failures = Vec::new();
    let tri = BijectionCase::triangular(15).unwrap();
    let demos = demonstrate_exclusion(&tri);
    match demos.as_slice() {
        [demo] if demo.eta.parts() == [3, 5] => {
            let refinable = demo.constructed.as_ref().is_some_and(|l| !is_unrefinable_geometric(l).unrefinable);
            ensure(refinable, &mut failures, || format!("k = 8: {:?} passes", demo.constructed));
        }
        other => failures.push(format!("k = 8 exclusions {other:?}")),
    }
    let mut nt5_cases = 0;
    for n in (6..=18).step_by(2) {
        let case = BijectionCase::new(CaseKind::Nt5, n, (n - 4) / 2).unwrap();
        for demo in demonstrate_exclusion(&case) {
            nt5_cases += 1;
            let refinable = demo.constructed.as_ref().is_some_and(|l| !is_unrefinable_geometric(l).unrefinable);
            ensure(refinable, &mut failures, || format!("{case}: {} gives {:?}", demo.eta, demo.constructed));
        }
    }
    ensure(nt5_cases > 0, &mut failures, || "no nt5 exclusions exercised".into());
    conclude(failures, format!("(3,5) at k = 8 and {nt5_cases} nt5 constructions are refinable"))
}

fn render_all() -> Vec<u8> {
    let params = SuiteParams::default();
    let mut out = Vec::new();
    for suite in Suite::ALL {
        let report = run_suite(suite, &params).unwrap();
        emit_report(&mut out, &report, EmitFormat::Json).unwrap();
        emit_report(&mut out, &report, EmitFormat::Csv).unwrap();
    }
    let mup = maximal_unrefinable(120, SearchMode::Exhaustive).unwrap();
    for format in [EmitFormat::Json, EmitFormat::Csv] {
        let rows = mup.iter().cloned().map(|partition| PartitionRow { partition, maximal: true });
        emit_partitions(&mut out, rows, format).unwrap();
    }
    out
}

fn criterion_determinism() -> Outcome {
    let first = render_all();
    let second = render_all();
    if first == second {
        Ok(format!("{} bytes identical across two runs", first.len()))
    } else {
        Err("outputs differ between runs".into())
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("criterion equivalence", criterion_equivalence),
        ("KN roundtrips", criterion_kn_roundtrips),
        ("worked examples", criterion_examples),
        ("count identities", criterion_counts),
        ("structural invariants", criterion_structure),
        ("bijection roundtrips", criterion_roundtrips),
        ("exclusion demonstrations", criterion_exclusions),
        ("determinism", criterion_determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(summary) => println!("ACCEPTANCE {} {name}: PASS ({summary})", i + 1),
            Err(why) => {
                failed += 1;
                println!("ACCEPTANCE {} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
