//! Verification suites, b-file ingestion and report emission.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::bijection::{demonstrate_exclusion, verify_bijection_with, BijectionCase, CaseKind};
use crate::criteria::{is_unrefinable, is_unrefinable_geometric, verdicts_agree};
use crate::error::{Error, Result};
use crate::maximal::{
    enumerate_unrefinable, exceptional, lambda_t_bound, max_missing_subfamily,
    maximal_unrefinable, ExceptionalKind, SearchMode,
};
use crate::numset::NumericalSet;
use crate::partition::{triangular_number, DistinctPartition};
use crate::young::{kn_inverse, kn_transform, quasi_symmetric_profile, YoungDiagram};

/// Default weight cap for suites that filter every partition.
pub const EXHAUSTIVE_WEIGHT_CAP: u32 = 120;
/// Default weight cap for suites using the pinned largest-part search.
pub const PINNED_WEIGHT_CAP: u32 = 153;
/// Default weight cap for the decider-agreement suite.
pub const EQUIVALENCE_WEIGHT_CAP: u32 = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Counts,
    Equivalence,
    Roundtrips,
    Structure,
    Exceptions,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Counts,
        Suite::Equivalence,
        Suite::Roundtrips,
        Suite::Structure,
        Suite::Exceptions,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Counts => "counts",
            Suite::Equivalence => "equivalence",
            Suite::Roundtrips => "roundtrips",
            Suite::Structure => "structure",
            Suite::Exceptions => "exceptions",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteParams {
    /// Largest weight examined; `None` picks the suite default.
    pub max_weight: Option<u32>,
    /// Smallest `n` for instances built from `T_n - d`.
    pub min_n: u32,
    /// Largest Frobenius number for numerical-set roundtrips.
    pub max_frobenius: u32,
    /// Largest cell count for diagram roundtrips.
    pub max_cells: u32,
    /// Use the exhaustive search for maximal partitions instead of the
    /// pinned one.
    pub exhaustive: bool,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            max_weight: None,
            min_n: 6,
            max_frobenius: 20,
            max_cells: 20,
            exhaustive: false,
        }
    }
}

impl SuiteParams {
    fn mode(&self) -> SearchMode {
        if self.exhaustive {
            SearchMode::Exhaustive
        } else {
            SearchMode::Pinned
        }
    }

    pub fn weight_cap(&self, suite: Suite) -> u32 {
        self.max_weight.unwrap_or(match suite {
            Suite::Equivalence => EQUIVALENCE_WEIGHT_CAP,
            _ if self.exhaustive => EXHAUSTIVE_WEIGHT_CAP,
            _ => PINNED_WEIGHT_CAP,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub input: String,
    pub expected: String,
    pub got: String,
}

impl Failure {
    fn new(input: impl fmt::Display, expected: impl fmt::Display, got: impl fmt::Display) -> Self {
        Failure {
            input: input.to_string(),
            expected: expected.to_string(),
            got: got.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub instances: usize,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
    pub pass: bool,
    /// Shown in text output only, so JSON and CSV stay reproducible.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerificationReport {
    fn new(suite: &str) -> Self {
        VerificationReport {
            suite: suite.to_string(),
            params: BTreeMap::new(),
            instances: 0,
            failures: Vec::new(),
            notes: Vec::new(),
            pass: true,
            wall_time: Duration::ZERO,
        }
    }

    fn param(&mut self, key: &str, value: impl fmt::Display) {
        self.params.insert(key.to_string(), value.to_string());
    }

    fn finish(mut self, started: Instant) -> Self {
        self.pass = self.failures.is_empty();
        self.wall_time = started.elapsed();
        self
    }
}

pub fn run_suite(suite: Suite, params: &SuiteParams) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = VerificationReport::new(suite.name());
    let cap = params.weight_cap(suite);
    report.param("max_weight", cap);
    match suite {
        Suite::Counts => counts_suite(&mut report, params, cap)?,
        Suite::Equivalence => equivalence_suite(&mut report, cap),
        Suite::Roundtrips => roundtrips_suite(&mut report, params, cap)?,
        Suite::Structure => structure_suite(&mut report, params, cap)?,
        Suite::Exceptions => exceptions_suite(&mut report, params, cap)?,
    }
    Ok(report.finish(started))
}

/// Parses a suite name and runs it.
pub fn run_suite_named(name: &str, params: &SuiteParams) -> Result<VerificationReport> {
    run_suite(name.parse()?, params)
}

/// Every admissible case with source weight at most `cap` and `n >= min_n`,
/// ordered by `(n, d)`.
pub fn admissible_cases(cap: u32, min_n: u32) -> Vec<BijectionCase> {
    let mut cases = Vec::new();
    let mut n = min_n.max(1);
    while triangular_number(n) - (n - 1) <= cap {
        for d in 0..n {
            if triangular_number(n) - d > cap {
                continue;
            }
            let case = match d {
                0 => BijectionCase::triangular(n),
                _ if (n - d).is_multiple_of(2) => BijectionCase::new(CaseKind::Nt5, n, (n - d) / 2),
                _ => BijectionCase::new(CaseKind::Nt4, n, (n - d).div_ceil(2)),
            };
            if let Ok(case) = case {
                cases.push(case);
            }
        }
        n += 1;
    }
    cases
}

fn counts_suite(report: &mut VerificationReport, params: &SuiteParams, cap: u32) -> Result<()> {
    let mode = params.mode();
    report.param("mode", format!("{mode:?}").to_lowercase());
    report.param("min_n", params.min_n);
    let cases = admissible_cases(cap, params.min_n);
    let outcomes: Vec<Result<(BijectionCase, usize, usize)>> = cases
        .par_iter()
        .map(|case| {
            let mup = maximal_unrefinable(case.source_weight(), mode)?;
            let targets = case.target_family().len();
            let expected = if case.kind() == CaseKind::Nt4 { 1 + targets } else { targets };
            Ok((*case, mup.len(), expected))
        })
        .collect();
    for outcome in outcomes {
        let (case, got, expected) = outcome?;
        report.instances += 1;
        if got != expected {
            report.failures.push(Failure::new(
                format!("|MUP({})| for {case}", case.source_weight()),
                expected,
                got,
            ));
        }
    }
    // Even triangular n: only π̃ is maximal.
    let mut n = params.min_n.max(8);
    while triangular_number(n) <= cap {
        if n.is_multiple_of(2) {
            let mup = maximal_unrefinable(triangular_number(n), mode)?;
            let pi = exceptional(ExceptionalKind::Pi, n, None)?.partition;
            report.instances += 1;
            if mup != [pi.clone()] {
                report.failures.push(Failure::new(
                    format!("MUP(T_{n})"),
                    format!("{{{pi}}}"),
                    format!("{} partitions", mup.len()),
                ));
            }
        }
        n += 1;
    }
    Ok(())
}

fn equivalence_suite(report: &mut VerificationReport, cap: u32) {
    for weight in 3..=cap {
        let agreement = verdicts_agree(weight);
        report.instances += agreement.checked;
        if let Some(p) = agreement.first_divergence {
            report.failures.push(Failure::new(p, "same verdict", "deciders disagree"));
        }
    }
}

/// All diagrams with exactly `cells` cells, rows weakly decreasing.
pub fn diagrams_with_cells(cells: u32) -> Vec<YoungDiagram> {
    fn go(rem: u32, max: u32, rows: &mut Vec<u32>, out: &mut Vec<YoungDiagram>) {
        if rem == 0 {
            out.push(YoungDiagram::new(rows.clone()).expect("rows are weakly decreasing"));
            return;
        }
        for r in (1..=max.min(rem)).rev() {
            rows.push(r);
            go(rem - r, r, rows, out);
            rows.pop();
        }
    }
    let mut out = Vec::new();
    if cells > 0 {
        go(cells, cells, &mut Vec::new(), &mut out);
    }
    out
}

fn roundtrips_suite(report: &mut VerificationReport, params: &SuiteParams, cap: u32) -> Result<()> {
    let f = params.max_frobenius;
    report.param("max_frobenius", f);
    report.param("max_cells", params.max_cells);
    // Numerical sets with F <= f are the non-empty subsets of 1..=f.
    let set_failures: Vec<Failure> = (1u64..(1u64 << f))
        .into_par_iter()
        .filter_map(|mask| {
            let s = NumericalSet::from_gaps((1..=f).filter(|g| mask >> (g - 1) & 1 == 1)).ok()?;
            let back = kn_inverse(&kn_transform(&s).ok()?);
            (back != s).then(|| Failure::new(&s, &s, back))
        })
        .collect();
    report.instances += (1usize << f) - 1;
    report.failures.extend(set_failures);

    for cells in 1..=params.max_cells {
        for y in diagrams_with_cells(cells) {
            report.instances += 1;
            let back = kn_transform(&kn_inverse(&y))?;
            if back != y {
                report
                    .failures
                    .push(Failure::new(format!("{:?}", y.rows()), format!("{:?}", y.rows()), format!("{:?}", back.rows())));
            }
        }
    }

    let cases = admissible_cases(cap, params.min_n);
    let reports: Vec<_> = cases
        .par_iter()
        .map(|case| verify_bijection_with(case, params.mode()))
        .collect();
    for r in reports {
        let r = r?;
        report.instances += r.ubar_count + r.target_count;
        for check in &r.checks {
            let roundtrip = matches!(
                check.name,
                "backward-forward-identity" | "forward-backward-identity" | "image-in-target"
            );
            if roundtrip && !check.pass {
                report.failures.push(Failure::new(
                    format!("{} {}", r.case, check.name),
                    "identity",
                    check.detail.clone().unwrap_or_default(),
                ));
            }
        }
    }
    Ok(())
}

fn diagram_of(p: &DistinctPartition) -> YoungDiagram {
    kn_transform(&NumericalSet::from_partition(p)).expect("a partition has gaps")
}

/// Shape invariants expected of an element of the max-missing family.
pub fn structure_failures(case: &BijectionCase, lambda: &DistinctPartition) -> Vec<String> {
    let mut bad = Vec::new();
    let (n, k) = (case.n(), case.k());
    let y = diagram_of(lambda);
    let cells = y.cell_count();
    let expected_cells = match case.kind() {
        CaseKind::Triangular => 3 * n - 3,
        CaseKind::Nt5 => 2 * n - 3 + 2 * k,
        CaseKind::Nt4 => 2 * n - 4 + 2 * k,
    };
    if cells != expected_cells {
        bad.push(format!("{cells} cells, expected {expected_cells}"));
    }
    if let Some(msg) = complementation_failure(lambda) {
        bad.push(msg);
    }
    if case.kind() == CaseKind::Nt5 {
        if !y.is_self_conjugate() {
            bad.push("diagram is not self-conjugate".into());
        }
        return bad;
    }
    let profile = match quasi_symmetric_profile(&y, n) {
        Ok(p) => p,
        Err(e) => {
            bad.push(e.to_string());
            return bad;
        }
    };
    let z = profile.z;
    let extra_sum: u32 = profile.extra_column_hooks.iter().sum();
    if extra_sum != k {
        bad.push(format!("extra column sums to {extra_sum}, expected {k}"));
    }
    let first_row = y.hook_grid().row(1);
    if first_row.iter().filter(|&&h| h + 2 == n).count() != 1 {
        bad.push("hook n-2 is not unique in the first row".into());
    }
    if y.column(z as u32 + 1) != z as u32 {
        bad.push(format!("column {} has {} cells, expected {z}", z + 1, y.column(z as u32 + 1)));
    }
    let grid = y.hook_grid();
    if grid.get(z, z).is_none() || grid.get(z + 1, z + 1).is_some() {
        bad.push(format!("main diagonal does not have {z} cells"));
    }
    for i in 1..=y.rows().len() {
        let r = y.row(i);
        let (want, rel) = if i <= z {
            (y.column(i as u32) + 1, "#C_i + 1")
        } else {
            (y.column(i as u32 + 1), "#C_{i+1}")
        };
        if r != want {
            bad.push(format!("#R_{i} = {r}, expected {rel} = {want}"));
        }
    }
    for i in 1..=z {
        for j in 1..=z {
            if grid.get(i, j) != grid.get(j, i) {
                bad.push(format!("h({i},{j}) != h({j},{i})"));
            }
        }
    }
    bad
}

/// `x ∈ λ ⇔ λ_t - x ∉ λ` below `λ_t`, except `λ_t/2`, which must be absent.
pub fn complementation_failure(lambda: &DistinctPartition) -> Option<String> {
    let lt = lambda.largest();
    if lt.is_multiple_of(2) && lambda.contains(lt / 2) {
        return Some(format!("{lambda} contains {}", lt / 2));
    }
    (1..lt)
        .filter(|&x| 2 * x != lt)
        .find(|&x| lambda.contains(x) == lambda.contains(lt - x))
        .map(|x| format!("{lambda}: {x} and {} are both in or both out", lt - x))
}

fn structure_suite(report: &mut VerificationReport, params: &SuiteParams, cap: u32) -> Result<()> {
    let cases = admissible_cases(cap, params.min_n);
    let per_case: Vec<Result<Vec<Failure>>> = cases
        .par_iter()
        .map(|case| {
            let mup = maximal_unrefinable(case.source_weight(), params.mode())?;
            let ubar = max_missing_subfamily(&mup);
            Ok(ubar
                .iter()
                .flat_map(|l| {
                    structure_failures(case, l)
                        .into_iter()
                        .map(move |msg| Failure::new(format!("{case}: {l}"), "structure", msg))
                })
                .collect())
        })
        .collect();
    for (case, failures) in cases.iter().zip(per_case) {
        let failures = failures?;
        report.instances += 1;
        report.failures.extend(failures);
        let bound = lambda_t_bound(case.n(), case.d())?.bound;
        if bound != case.largest_part() {
            report
                .failures
                .push(Failure::new(format!("bound for {case}"), case.largest_part(), bound));
        }
    }
    Ok(())
}

fn exceptions_suite(report: &mut VerificationReport, params: &SuiteParams, cap: u32) -> Result<()> {
    let mut n = params.min_n.max(6);
    while triangular_number(n) - 4 <= cap {
        let mut patterns = vec![
            (ExceptionalKind::Pi, None, 0),
            (ExceptionalKind::Sigma, None, 3),
            (ExceptionalKind::Tau, None, 4),
        ];
        // d = n - 2k + 1 must stay non-negative.
        for k in 1..n.saturating_sub(2).min(n.div_ceil(2) + 1) {
            patterns.push((ExceptionalKind::Zeta, Some(k), n + 1 - 2 * k));
        }
        for (kind, k, d) in patterns {
            if triangular_number(n) < d || triangular_number(n) - d > cap {
                continue;
            }
            let e = exceptional(kind, n, k)?;
            report.instances += 1;
            let p = &e.partition;
            if p.weight() != triangular_number(n) - d {
                report.failures.push(Failure::new(format!("{kind} n={n} k={k:?}"), triangular_number(n) - d, p.weight()));
            }
            // ζ is unrefinable for d > 3 inside the nt4 range; at d = 3 it is
            // refinable and σ̃ takes its place.
            let expected = match (kind, k) {
                (ExceptionalKind::Zeta, Some(k)) if 8 <= 2 * k && 2 * k + 2 < n => Some(true),
                (ExceptionalKind::Zeta, Some(k)) if 8 <= 2 * k && 2 * k + 2 == n => Some(false),
                (ExceptionalKind::Zeta, _) => None,
                _ => Some(true),
            };
            if let Some(expected) = expected {
                if is_unrefinable(p) != expected {
                    let word = |u: bool| if u { "unrefinable" } else { "refinable" };
                    report.failures.push(Failure::new(
                        format!("{kind} n={n} k={k:?}: {p}"),
                        word(expected),
                        word(!expected),
                    ));
                }
            }
        }
        n += 1;
    }
    for n in [8u32, 10, 12] {
        if triangular_number(n) > cap || n < params.min_n {
            continue;
        }
        report.instances += 1;
        let mup = maximal_unrefinable(triangular_number(n), params.mode())?;
        let pi = exceptional(ExceptionalKind::Pi, n, None)?.partition;
        if mup != [pi.clone()] {
            report.failures.push(Failure::new(format!("MUP(T_{n})"), pi, mup.len()));
        }
    }
    for case in admissible_cases(cap, params.min_n) {
        let applies = match case.kind() {
            CaseKind::Triangular => case.k() >= 7,
            CaseKind::Nt5 => !case.excluded_eta().is_empty(),
            CaseKind::Nt4 => false,
        };
        if !applies {
            continue;
        }
        for demo in demonstrate_exclusion(&case) {
            report.instances += 1;
            let refinable = demo
                .constructed
                .as_ref()
                .is_some_and(|l| !is_unrefinable_geometric(l).unrefinable);
            if !refinable {
                report.failures.push(Failure::new(
                    format!("{case} eta {}", demo.eta),
                    "refinable construction",
                    format!("{:?}", demo.constructed),
                ));
            }
        }
    }
    Ok(())
}

/// An OEIS b-file: `index value` per line, `#` comments.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct BFile {
    pub entries: BTreeMap<u32, u64>,
}

pub fn parse_bfile(text: &str) -> Result<BFile> {
    let mut entries = BTreeMap::new();
    let mut last: Option<u32> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = || Error::MalformedLine {
            line: idx + 1,
            content: raw.to_string(),
        };
        let mut fields = line.split_whitespace();
        let (Some(i), Some(v), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(malformed());
        };
        let i: u32 = i.parse().map_err(|_| malformed())?;
        let v: u64 = v.parse().map_err(|_| malformed())?;
        if last.is_some_and(|prev| i <= prev) {
            return Err(malformed());
        }
        last = Some(i);
        entries.insert(i, v);
    }
    Ok(BFile { entries })
}

/// Compares the b-file against counts of unrefinable partitions for every
/// index up to `max`. A value is accepted under either convention: at least
/// two parts, or at least one part.
pub fn oeis_check(bfile: &BFile, max: u32) -> VerificationReport {
    let started = Instant::now();
    let mut report = VerificationReport::new("oeis-check");
    report.param("max", max);
    let indices: Vec<(u32, u64)> = bfile
        .entries
        .range(..=max)
        .map(|(&i, &v)| (i, v))
        .collect();
    let counts: Vec<(u32, u64, u64, u64)> = indices
        .par_iter()
        .filter(|&&(i, _)| i >= 1)
        .map(|&(i, v)| {
            let proper = enumerate_unrefinable(i).count() as u64;
            let single = DistinctPartition::new([i]).expect("positive");
            let any = proper + u64::from(is_unrefinable(&single));
            (i, v, proper, any)
        })
        .collect();
    if indices.iter().any(|&(i, _)| i == 0) {
        report.notes.push("index 0 skipped".into());
    }
    for (i, v, proper, any) in counts {
        report.instances += 1;
        if v != proper && v != any {
            report.failures.push(Failure::new(
                format!("N={i}"),
                format!("file value {v}"),
                format!("computed {proper} (t>=2) / {any} (t>=1)"),
            ));
        } else if proper != any {
            let convention = if v == proper { "t>=2" } else { "t>=1" };
            report
                .notes
                .push(format!("N={i}: file value {v} matches the {convention} count"));
        }
    }
    report.finish(started)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EmitFormat {
    Json,
    Csv,
    #[default]
    Text,
}

impl FromStr for EmitFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(EmitFormat::Json),
            "csv" => Ok(EmitFormat::Csv),
            "text" => Ok(EmitFormat::Text),
            other => Err(Error::InvalidCase(format!("unknown format {other:?}"))),
        }
    }
}

/// One row of partition output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionRow {
    pub partition: DistinctPartition,
    pub maximal: bool,
}

pub const CSV_HEADER: [&str; 8] = [
    "parts",
    "weight",
    "n",
    "d",
    "lambda_t",
    "missing_count",
    "unrefinable",
    "maximal",
];

/// Writes a partition stream: JSON one object per line, CSV with a header
/// (always present), or a plain table.
pub fn emit_partitions<W, I>(out: W, rows: I, format: EmitFormat) -> Result<()>
where
    W: Write,
    I: IntoIterator<Item = PartitionRow>,
{
    match format {
        EmitFormat::Json => {
            let mut out = out;
            for row in rows {
                serde_json::to_writer(&mut out, &row.partition)?;
                out.write_all(b"\n")?;
            }
            out.flush()?;
        }
        EmitFormat::Csv => {
            let mut w = csv::WriterBuilder::new().delimiter(b';').from_writer(out);
            w.write_record(CSV_HEADER)?;
            for row in rows {
                let p = &row.partition;
                let dec = p.decomposition();
                let parts = p.parts().iter().map(u32::to_string).collect::<Vec<_>>().join(",");
                w.write_record([
                    parts,
                    p.weight().to_string(),
                    dec.n.to_string(),
                    dec.d.to_string(),
                    p.largest().to_string(),
                    p.missing_parts().count().to_string(),
                    is_unrefinable(p).to_string(),
                    row.maximal.to_string(),
                ])?;
            }
            w.flush()?;
        }
        EmitFormat::Text => {
            let mut out = out;
            for row in rows {
                let p = &row.partition;
                writeln!(
                    out,
                    "{p}  weight={} lambda_t={} missing={}",
                    p.weight(),
                    p.largest(),
                    p.missing_parts().count()
                )?;
            }
            out.flush()?;
        }
    }
    Ok(())
}

/// Writes a report. JSON is a single line; CSV lists failures; text is a
/// summary that also shows the elapsed time.
pub fn emit_report<W: Write>(mut out: W, report: &VerificationReport, format: EmitFormat) -> Result<()> {
    match format {
        EmitFormat::Json => {
            serde_json::to_writer(&mut out, report)?;
            out.write_all(b"\n")?;
        }
        EmitFormat::Csv => {
            let mut w = csv::WriterBuilder::new().delimiter(b';').from_writer(&mut out);
            w.write_record(["suite", "input", "expected", "got"])?;
            for f in &report.failures {
                w.write_record([report.suite.as_str(), &f.input, &f.expected, &f.got])?;
            }
            w.flush()?;
        }
        EmitFormat::Text => {
            let status = if report.pass { "PASS" } else { "FAIL" };
            writeln!(
                out,
                "{status} {}: {} instances, {} failures ({:.2?})",
                report.suite,
                report.instances,
                report.failures.len(),
                report.wall_time
            )?;
            for (k, v) in &report.params {
                writeln!(out, "  {k} = {v}")?;
            }
            for f in &report.failures {
                writeln!(out, "  failure: {} expected {} got {}", f.input, f.expected, f.got)?;
            }
            for note in &report.notes {
                writeln!(out, "  note: {note}")?;
            }
        }
    }
    out.flush()?;
    Ok(())
}
