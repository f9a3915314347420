//! `unref`: command-line front end for the unrefinable-partition library.
//!
//! Exit status: 0 success, 1 verification failure, 2 usage error, 3 I/O error.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use unrefinable::bijection::{self, demonstrate_exclusion, verify_bijection_with, BijectionCase, CaseKind, EtaPartition};
use unrefinable::criteria::{geometric_analysis, is_unrefinable_definitional, is_unrefinable_geometric};
use unrefinable::harness::{self, EmitFormat, PartitionRow, Suite, SuiteParams, VerificationReport};
use unrefinable::maximal::{max_missing_subfamily, maximal_unrefinable, SearchMode};
use unrefinable::young::{RenderFormat, RenderMode};
use unrefinable::{
    enumerate_distinct, kn_inverse, kn_transform, DistinctPartition, Error, NumericalSet, PartClassFilter, Parity,
    YoungDiagram,
};

#[derive(Parser)]
#[command(name = "unref", version, about = "Unrefinable partitions, numerical sets and Young diagrams")]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "UNREF_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct FormatFlags {
    /// One JSON object per line.
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Semicolon-separated values with a header.
    #[arg(long)]
    csv: bool,
}

impl FormatFlags {
    fn format(self) -> EmitFormat {
        if self.json {
            EmitFormat::Json
        } else if self.csv {
            EmitFormat::Csv
        } else {
            EmitFormat::Text
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List partitions of a weight into distinct parts.
    Enumerate(EnumerateArgs),
    /// Decide whether a partition is unrefinable.
    Check(CheckArgs),
    /// Numerical set to Young diagram, or back with --inverse.
    Kn(KnArgs),
    /// Draw the Young diagram of a partition.
    Render(RenderArgs),
    /// Forward and backward maps of the correspondences.
    #[command(subcommand)]
    Bijection(BijectionCommand),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Compare unrefinable-partition counts with a user-supplied b-file.
    OeisCheck(OeisArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    All,
    Odd,
    Even,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Pruned,
    Pinned,
}

impl From<ModeArg> for SearchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exhaustive => SearchMode::Exhaustive,
            ModeArg::Pruned => SearchMode::Pruned,
            ModeArg::Pinned => SearchMode::Pinned,
        }
    }
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    weight: u32,
    /// Keep only unrefinable partitions (at least two parts).
    #[arg(long)]
    unrefinable: bool,
    /// Keep only unrefinable partitions with the largest possible largest part.
    #[arg(long)]
    maximal: bool,
    /// With --maximal, keep only those with the most missing parts.
    #[arg(long, requires = "maximal")]
    max_missing: bool,
    #[arg(long, default_value_t = 1)]
    min_parts: usize,
    #[arg(long)]
    max_part: Option<u32>,
    #[arg(long, value_enum, default_value_t = ParityArg::All)]
    parity: ParityArg,
    /// Search strategy for --maximal.
    #[arg(long, value_enum, default_value_t = ModeArg::Pruned)]
    mode: ModeArg,
    #[command(flatten)]
    format: FormatFlags,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Method {
    Def,
    Geo,
    Both,
}

#[derive(Args)]
struct CheckArgs {
    /// Comma-separated parts, e.g. 1,2,5,6,8.
    #[arg(long)]
    partition: DistinctPartition,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    method: Method,
}

#[derive(Args)]
struct KnArgs {
    /// Numerical set such as 0,3,4,7,9,->
    #[arg(long, allow_hyphen_values = true, conflicts_with = "rows")]
    set: Option<NumericalSet>,
    /// Row lengths, top-down; implies --inverse.
    #[arg(long, value_delimiter = ',')]
    rows: Option<Vec<u32>>,
    /// Map a diagram (given by --rows) back to its numerical set.
    #[arg(long)]
    inverse: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderFormatArg {
    Ascii,
    Svg,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long, required_unless_present = "rows")]
    partition: Option<DistinctPartition>,
    #[arg(long, value_delimiter = ',', conflicts_with = "partition")]
    rows: Option<Vec<u32>>,
    /// Write hook lengths into the cells.
    #[arg(long)]
    hooks: bool,
    #[arg(long, value_enum, default_value_t = RenderFormatArg::Ascii)]
    format: RenderFormatArg,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    Triangular,
    Nt5,
    Nt4,
}

impl From<CaseArg> for CaseKind {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::Triangular => CaseKind::Triangular,
            CaseArg::Nt5 => CaseKind::Nt5,
            CaseArg::Nt4 => CaseKind::Nt4,
        }
    }
}

#[derive(Subcommand)]
enum BijectionCommand {
    /// Map a maximal unrefinable partition to its target partition.
    Forward {
        #[arg(long)]
        partition: DistinctPartition,
        /// Defaults to the case read off the weight and largest part.
        #[arg(long, value_enum, requires = "n")]
        case: Option<CaseArg>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Rebuild the partition from a target partition.
    Backward {
        #[arg(long)]
        eta: DistinctPartition,
        #[arg(long, value_enum)]
        case: CaseArg,
        #[arg(long)]
        n: u32,
        /// Inferred from the weight of --eta when absent.
        #[arg(long)]
        k: Option<u32>,
    },
    /// Check a case end to end by brute force.
    Verify {
        #[arg(long, value_enum)]
        case: CaseArg,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: Option<u32>,
        /// Filter every partition instead of the pinned search.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        json: bool,
    },
    /// Show why the excluded target partitions have no preimage.
    Exclusion {
        #[arg(long, value_enum)]
        case: CaseArg,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: Option<u32>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// counts, equivalence, roundtrips, structure, exceptions or all.
    #[arg(long)]
    suite: String,
    #[arg(long)]
    max_weight: Option<u32>,
    #[arg(long, default_value_t = 6)]
    min_n: u32,
    #[arg(long, default_value_t = 20)]
    max_frobenius: u32,
    #[arg(long, default_value_t = 20)]
    max_cells: u32,
    /// Filter every partition instead of the pinned search.
    #[arg(long)]
    exhaustive: bool,
    #[command(flatten)]
    format: FormatFlags,
}

#[derive(Args)]
struct OeisArgs {
    #[arg(long)]
    bfile: PathBuf,
    #[arg(long, default_value_t = 40)]
    max: u32,
    #[command(flatten)]
    format: FormatFlags,
}

/// Why a command stopped.
enum Outcome {
    Failed,
    Usage(String),
    Io(String),
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        match e {
            Error::IoFailure(msg) => Outcome::Io(msg),
            other => Outcome::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Outcome {
    fn from(e: io::Error) -> Self {
        Outcome::Io(e.to_string())
    }
}

type CmdResult = Result<(), Outcome>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out).and_then(|()| out.flush().map_err(Outcome::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Outcome::Failed) => ExitCode::from(1),
        Err(Outcome::Usage(msg)) => {
            let _ = out.flush();
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Outcome::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> CmdResult {
    match command {
        Command::Enumerate(args) => enumerate(args, out),
        Command::Check(args) => check(args, out),
        Command::Kn(args) => kn(args, out),
        Command::Render(args) => render(args, out),
        Command::Bijection(cmd) => bijection_cmd(cmd, out),
        Command::Verify(args) => verify(args, out),
        Command::OeisCheck(args) => oeis(args, out),
    }
}

fn enumerate(args: EnumerateArgs, out: &mut impl Write) -> CmdResult {
    if args.weight == 0 {
        return Err(Outcome::Usage("--weight must be positive".into()));
    }
    let format = args.format.format();
    if args.maximal {
        let mup = maximal_unrefinable(args.weight, args.mode.into())?;
        let rows = if args.max_missing { max_missing_subfamily(&mup) } else { mup };
        let rows = rows.into_iter().map(|partition| PartitionRow { partition, maximal: true });
        harness::emit_partitions(out, rows, format)?;
        return Ok(());
    }
    let parity = match args.parity {
        ParityArg::All => Parity::All,
        ParityArg::Odd => Parity::OddOnly,
        ParityArg::Even => Parity::EvenOnly,
    };
    let mut filter = PartClassFilter::default()
        .with_min_parts(args.min_parts)
        .with_max_part(args.max_part)
        .with_parity(parity);
    if args.unrefinable {
        filter = filter.with_min_parts(args.min_parts.max(2));
    }
    let unrefinable = args.unrefinable;
    let rows = enumerate_distinct(args.weight, filter)
        .filter(|p| !unrefinable || unrefinable::is_unrefinable(p))
        .map(|partition| PartitionRow { partition, maximal: false });
    harness::emit_partitions(out, rows, format)?;
    Ok(())
}

fn check(args: CheckArgs, out: &mut impl Write) -> CmdResult {
    let p = &args.partition;
    let def = (args.method != Method::Geo).then(|| is_unrefinable_definitional(p));
    let geo = (args.method != Method::Def).then(|| is_unrefinable_geometric(p));
    let doubling = geo.as_ref().map(|_| geometric_analysis(p).doubling_cells);
    let unrefinable = def.as_ref().or(geo.as_ref()).is_some_and(|v| v.unrefinable);
    let mut record = json!({ "partition": p, "unrefinable": unrefinable });
    if let Some(d) = def {
        record["definitional"] = json!(d);
    }
    if let Some(g) = geo {
        record["geometric"] = json!(g);
        record["doubling_cells"] = json!(doubling);
    }
    writeln!(out, "{record}")?;
    Ok(())
}

fn kn(args: KnArgs, out: &mut impl Write) -> CmdResult {
    match (args.set, args.rows) {
        (Some(set), None) => {
            if args.inverse {
                return Err(Outcome::Usage("--inverse takes a diagram given by --rows".into()));
            }
            let y = kn_transform(&set)?;
            if args.json {
                let record = json!({
                    "set": set.to_string(),
                    "rows": y.rows(),
                    "first_column_hooks": y.hook_grid().first_column(),
                });
                writeln!(out, "{record}")?;
            } else {
                let rows: Vec<String> = y.rows().iter().map(u32::to_string).collect();
                writeln!(out, "{}", rows.join(","))?;
            }
        }
        (None, Some(rows)) => {
            let y = YoungDiagram::new(rows)?;
            let set = kn_inverse(&y);
            if args.json {
                writeln!(out, "{}", json!({ "rows": y.rows(), "set": set.to_string() }))?;
            } else {
                writeln!(out, "{set}")?;
            }
        }
        _ => return Err(Outcome::Usage("give exactly one of --set or --rows".into())),
    }
    Ok(())
}

fn render(args: RenderArgs, out: &mut impl Write) -> CmdResult {
    let y = match (args.partition, args.rows) {
        (Some(p), _) => kn_transform(&NumericalSet::from_partition(&p))?,
        (None, Some(rows)) => YoungDiagram::new(rows)?,
        (None, None) => return Err(Outcome::Usage("give --partition or --rows".into())),
    };
    let mode = if args.hooks { RenderMode::Hooks } else { RenderMode::Cells };
    let format = match args.format {
        RenderFormatArg::Ascii => RenderFormat::Ascii,
        RenderFormatArg::Svg => RenderFormat::Svg,
    };
    let text = y.render(mode, format);
    match args.out {
        Some(path) => fs::write(&path, text).map_err(|e| Outcome::Io(format!("{}: {e}", path.display())))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// `k` from the flag, else from the case: `(n+1)/2`, `|η|` or `(|η|-2)/2`.
fn resolve_case(kind: CaseKind, n: u32, k: Option<u32>, eta_weight: Option<u32>) -> Result<BijectionCase, Outcome> {
    let k = match (k, kind, eta_weight) {
        (Some(k), _, _) => k,
        (None, CaseKind::Triangular, _) => n.div_ceil(2),
        (None, CaseKind::Nt4, Some(w)) => w,
        (None, CaseKind::Nt5, Some(w)) if w >= 2 => (w - 2) / 2,
        _ => return Err(Outcome::Usage("--k is required for this case".into())),
    };
    Ok(BijectionCase::new(kind, n, k)?)
}

fn bijection_cmd(cmd: BijectionCommand, out: &mut impl Write) -> CmdResult {
    match cmd {
        BijectionCommand::Forward { partition, case, n, k } => {
            let case = match (case, n) {
                (Some(kind), Some(n)) => {
                    let kind = CaseKind::from(kind);
                    let k = match (k, kind) {
                        (Some(k), _) => Some(k),
                        (None, CaseKind::Triangular) => None,
                        (None, _) => bijection::classify(&partition).ok().map(|c| c.k()),
                    };
                    resolve_case(kind, n, k, None)?
                }
                _ => bijection::classify(&partition)?,
            };
            let eta = bijection::forward(&partition, &case)?;
            writeln!(out, "{}", json!({ "case": case, "partition": partition, "eta": eta }))?;
        }
        BijectionCommand::Backward { eta, case, n, k } => {
            let case = resolve_case(case.into(), n, k, Some(eta.weight()))?;
            let lambda = bijection::backward(&EtaPartition::new(eta.clone()), &case)?;
            writeln!(out, "{}", json!({ "case": case, "eta": eta, "partition": lambda }))?;
        }
        BijectionCommand::Verify { case, n, k, exhaustive, json } => {
            let case = resolve_case(case.into(), n, k, None)?;
            let mode = if exhaustive { SearchMode::Exhaustive } else { SearchMode::Pinned };
            let report = verify_bijection_with(&case, mode)?;
            if json {
                writeln!(out, "{}", serde_json::to_string(&report).map_err(Error::from)?)?;
            } else {
                let status = if report.pass { "PASS" } else { "FAIL" };
                writeln!(
                    out,
                    "{status} {case}: weight {}, |MUP| = {}, max-missing = {}, targets = {}, expected |MUP| = {}",
                    report.source_weight, report.mup_count, report.ubar_count, report.target_count, report.expected_mup_count
                )?;
                for (lambda, eta) in &report.pairs {
                    writeln!(out, "  {lambda} <-> {}{}", eta.partition, if eta.improper { " (improper)" } else { "" })?;
                }
                for c in &report.checks {
                    writeln!(
                        out,
                        "  [{}] {}{}",
                        if c.pass { "ok" } else { "FAIL" },
                        c.name,
                        c.detail.as_deref().map(|d| format!(": {d}")).unwrap_or_default()
                    )?;
                }
            }
            if !report.pass {
                return Err(Outcome::Failed);
            }
        }
        BijectionCommand::Exclusion { case, n, k } => {
            let case = resolve_case(case.into(), n, k, None)?;
            for demo in demonstrate_exclusion(&case) {
                writeln!(out, "{}", json!(demo))?;
            }
        }
    }
    Ok(())
}

fn verify(args: VerifyArgs, out: &mut impl Write) -> CmdResult {
    let params = SuiteParams {
        max_weight: args.max_weight,
        min_n: args.min_n,
        max_frobenius: args.max_frobenius,
        max_cells: args.max_cells,
        exhaustive: args.exhaustive,
    };
    if args.max_frobenius > 30 {
        return Err(Outcome::Usage("--max-frobenius is capped at 30".into()));
    }
    let suites: Vec<Suite> = if args.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![args.suite.parse()?]
    };
    let mut pass = true;
    for suite in suites {
        let report = harness::run_suite(suite, &params)?;
        pass &= report.pass;
        emit(out, &report, args.format.format())?;
    }
    if pass {
        Ok(())
    } else {
        Err(Outcome::Failed)
    }
}

fn emit(out: &mut impl Write, report: &VerificationReport, format: EmitFormat) -> CmdResult {
    harness::emit_report(out, report, format)?;
    Ok(())
}

fn oeis(args: OeisArgs, out: &mut impl Write) -> CmdResult {
    let text = fs::read_to_string(&args.bfile).map_err(|e| Outcome::Io(format!("{}: {e}", args.bfile.display())))?;
    let bfile = harness::parse_bfile(&text)?;
    let report = harness::oeis_check(&bfile, args.max);
    emit(out, &report, args.format.format())?;
    if report.pass {
        Ok(())
    } else {
        Err(Outcome::Failed)
    }
}

