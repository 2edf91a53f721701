//! Command-line interface. [`run`] takes the argument list and output
//! streams so the whole front end can be driven from tests.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use mondrian_core::filters::{
    gap_check, hole_check, perimeter_candidates_with, CascadeOptions, GapMode, GapVerdict,
    PerimeterOptions, Stage, Stages,
};
use mondrian_core::oracle::random_guillotine;
use mondrian_core::pieces::{CaseError, PieceCatalog, PieceSet, MIN_PMP_PIECES};
use mondrian_core::solver::{EngineProblem, Outcome as SolveOutcome, SearchOptions, Symmetry};
use mondrian_core::CaseSpec;
use serde::Serialize;

use crate::formats::{self, Document, GuillotineDoc, PerimeterDoc, TilingDoc};
use crate::parallel::{solve_parallel, ParallelOptions, ParallelReport};
use crate::pipeline::{self, Outcome, PipelineConfig, Verdict};
use crate::render;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CRASHED: i32 = 3;
pub const EXIT_LIMIT: i32 = 4;

/// Environment variable consulted when `--threads` is absent.
pub const THREADS_ENV: &str = "MONDRIAN_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "mondrian",
    version,
    about = "Exact search for perfect Mondrian partitions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the candidate pieces of a case.
    Pieces(PiecesArgs),
    /// Run the filter cascade over many cases.
    Scan(ScanArgs),
    /// Decide cases exactly with the backtracking tiler.
    Solve(SolveArgs),
    /// Enumerate the perimeter candidates of one case with their gap and hole results.
    Perimeters(PerimeterArgs),
    /// Write a seeded guillotine instance, a solvable positive control.
    Guillotine(GuillotineArgs),
    /// Render a tiling, perimeter or guillotine document.
    Render(RenderArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ListFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct PiecesArgs {
    pub width: u32,
    pub height: u32,
    pub r: u32,
    #[arg(long, value_enum, default_value_t = ListFormat::Text)]
    pub format: ListFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GapArg {
    Mixed,
    Strict,
}

impl From<GapArg> for GapMode {
    fn from(g: GapArg) -> Self {
        match g {
            GapArg::Mixed => GapMode::Mixed,
            GapArg::Strict => GapMode::Strict,
        }
    }
}

/// Cascade settings shared by `scan` and `solve`.
#[derive(Debug, Args)]
pub struct FilterArgs {
    /// Comma-separated stages out of side, perimeter, gap, hole (or `all`).
    #[arg(long, default_value = "all")]
    pub stages: String,
    #[arg(long, value_enum, default_value_t = GapArg::Mixed)]
    pub gap_mode: GapArg,
    /// Only admit perimeter sides of two or more pieces.
    #[arg(long)]
    pub no_singletons: bool,
    /// Count reflected perimeter candidates separately.
    #[arg(long)]
    pub all_reflections: bool,
}

impl FilterArgs {
    fn options(&self, first_survivor: bool) -> Result<CascadeOptions, CliError> {
        let stages: Stages = self
            .stages
            .parse()
            .map_err(|e| CliError::invalid(format!("--stages: {e}")))?;
        Ok(CascadeOptions {
            stages,
            gap_mode: self.gap_mode.into(),
            singletons: !self.no_singletons,
            canonical_only: !self.all_reflections,
            first_survivor,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanFormat {
    Csv,
    Json,
    /// Only the list of surviving boards.
    Summary,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Scan n x n boards.
    #[arg(long, conflicts_with_all = ["rectangles", "board"])]
    pub squares: bool,
    /// Scan w x h boards with w <= h.
    #[arg(long, conflicts_with = "board")]
    pub rectangles: bool,
    /// Scan one board, e.g. `420x420`.
    #[arg(long, value_parser = parse_board)]
    pub board: Option<(u32, u32)>,
    #[arg(long, default_value_t = 1)]
    pub min: u32,
    #[arg(long)]
    pub max: Option<u32>,
    #[command(flatten)]
    pub filters: FilterArgs,
    /// Stop each case at its first surviving candidate.
    #[arg(long)]
    pub first_survivor: bool,
    /// Per-case time limit in seconds.
    #[arg(long)]
    pub timeout: Option<f64>,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, value_enum, default_value_t = ScanFormat::Csv)]
    pub format: ScanFormat,
    /// Write data here instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// No per-case progress on standard error.
    #[arg(long, short)]
    pub quiet: bool,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub width: u32,
    pub height: u32,
    /// Piece count; every feasible count when absent.
    pub r: Option<u32>,
    /// Skip the filter cascade and go straight to the tiler.
    #[arg(long)]
    pub no_filters: bool,
    #[command(flatten)]
    pub filters: FilterArgs,
    /// Solve the pieces of a guillotine instance instead of a partition case.
    #[arg(long, value_name = "FILE")]
    pub generic_fixture: Option<PathBuf>,
    /// With a fixture: place pieces only as listed.
    #[arg(long)]
    pub no_rotations: bool,
    /// Node limit per search task, e.g. `10000000`, `10^7` or `1e7`.
    #[arg(long, value_parser = parse_count)]
    pub limit_nodes: Option<u64>,
    /// Wall-clock limit in seconds for the whole command.
    #[arg(long)]
    pub limit_time: Option<f64>,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub no_symmetry: bool,
    /// Return the tiling sequential search would find.
    #[arg(long)]
    pub canonical_witness: bool,
    /// Piece counts 2 to 6, below the proven minimum, for auditing that bound.
    #[arg(long)]
    pub lemma_audit: bool,
    /// Directory for witness JSON and SVG files.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = ListFormat::Text)]
    pub format: ListFormat,
}

#[derive(Debug, Args)]
pub struct PerimeterArgs {
    pub width: u32,
    pub height: u32,
    pub r: u32,
    #[arg(long, value_enum, default_value_t = GapArg::Mixed)]
    pub gap_mode: GapArg,
    #[arg(long)]
    pub no_singletons: bool,
    #[arg(long)]
    pub all_reflections: bool,
    /// Emit at most this many candidates.
    #[arg(long)]
    pub limit: Option<usize>,
    /// Only candidates passing both gap and hole.
    #[arg(long)]
    pub survivors: bool,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GuillotineArgs {
    pub width: u32,
    pub height: u32,
    #[arg(long, default_value_t = 6)]
    pub cuts: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RenderFormat {
    Svg,
    Ascii,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = RenderFormat::Svg)]
    pub format: RenderFormat,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn invalid(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::invalid(e.to_string())
    }
}

impl From<formats::FormatError> for CliError {
    fn from(e: formats::FormatError) -> Self {
        CliError::invalid(e.to_string())
    }
}

fn parse_board(s: &str) -> Result<(u32, u32), String> {
    let (w, h) = s.split_once(['x', 'X']).ok_or("expected WxH")?;
    Ok((
        w.trim().parse().map_err(|e| format!("{e}"))?,
        h.trim().parse().map_err(|e| format!("{e}"))?,
    ))
}

/// Accepts plain integers, `a^b` and `aeb`.
fn parse_count(s: &str) -> Result<u64, String> {
    let s = s.trim().replace('_', "");
    let power = |base: &str, exp: &str| -> Result<u64, String> {
        let b: u64 = base.parse().map_err(|e| format!("{e}"))?;
        let e: u32 = exp.parse().map_err(|e| format!("{e}"))?;
        b.checked_pow(e).ok_or_else(|| "too large".to_owned())
    };
    if let Some((b, e)) = s.split_once('^') {
        power(b, e)
    } else if let Some((m, e)) = s.split_once(['e', 'E']) {
        let m: u64 = m.parse().map_err(|e| format!("{e}"))?;
        m.checked_mul(power("10", e)?)
            .ok_or_else(|| "too large".to_owned())
    } else {
        s.parse().map_err(|e| format!("{e}"))
    }
}

/// `--threads`, else the environment variable, else the core count.
pub fn resolve_threads(flag: Option<usize>, env: Option<&str>) -> Result<usize, CliError> {
    if let Some(n) = flag {
        return if n >= 1 {
            Ok(n)
        } else {
            Err(CliError::invalid("--threads must be at least 1"))
        };
    }
    if let Some(v) = env {
        return match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(CliError::invalid(format!(
                "{THREADS_ENV}={v:?} is not a positive integer"
            ))),
        };
    }
    Ok(std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn threads(flag: Option<usize>) -> Result<usize, CliError> {
    resolve_threads(flag, std::env::var(THREADS_ENV).ok().as_deref())
}

fn seconds(s: Option<f64>, flag: &str) -> Result<Option<Duration>, CliError> {
    match s {
        None => Ok(None),
        Some(v) => Duration::try_from_secs_f64(v).map(Some).map_err(|_| {
            CliError::invalid(format!("{flag} must be a non-negative number of seconds"))
        }),
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Pieces(a) => cmd_pieces(&a, out),
        Command::Scan(a) => cmd_scan(&a, out, err),
        Command::Solve(a) => cmd_solve(&a, out, err),
        Command::Perimeters(a) => cmd_perimeters(&a, out),
        Command::Guillotine(a) => cmd_guillotine(&a, out),
        Command::Render(a) => cmd_render(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

fn case_or_invalid(width: u32, height: u32, r: u32) -> Result<CaseSpec, CliError> {
    CaseSpec::new(width, height, r).map_err(|e| {
        CliError::invalid(match e {
            CaseError::NotDivisor { .. } => format!("infeasible: {e}"),
            _ => e.to_string(),
        })
    })
}

fn piece_set_or_invalid(case: CaseSpec) -> Result<PieceSet, CliError> {
    PieceSet::new(case).map_err(|e| CliError::invalid(format!("infeasible: {e}")))
}

#[derive(Serialize)]
struct PieceListing {
    width: u32,
    height: u32,
    r: u32,
    area: u64,
    classes: usize,
    pieces: Vec<PieceRow>,
}

#[derive(Serialize)]
struct PieceRow {
    index: usize,
    w: u32,
    h: u32,
    class: usize,
}

fn cmd_pieces(a: &PiecesArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let case = case_or_invalid(a.width, a.height, a.r)?;
    let ps = piece_set_or_invalid(case)?;
    let listing = PieceListing {
        width: case.width,
        height: case.height,
        r: case.pieces,
        area: case.area,
        classes: ps.class_count(),
        pieces: ps
            .pieces()
            .iter()
            .map(|p| PieceRow {
                index: p.index + 1,
                w: p.width,
                h: p.height,
                class: p.class,
            })
            .collect(),
    };
    match a.format {
        ListFormat::Json => out.write_all(formats::to_json(&listing).as_bytes())?,
        ListFormat::Text => {
            writeln!(
                out,
                "{case}: area {} per piece, {} entries, {} classes",
                case.area,
                listing.pieces.len(),
                listing.classes
            )?;
            for p in &listing.pieces {
                writeln!(out, "{:>4}  {}x{}  class {}", p.index, p.w, p.h, p.class)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_scan(a: &ScanArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let config = PipelineConfig {
        cascade: a.filters.options(a.first_survivor)?,
        timeout: seconds(a.timeout, "--timeout")?,
        workers: threads(a.threads)?,
        min_pieces: MIN_PMP_PIECES,
    };
    let cases = if let Some((w, h)) = a.board {
        pipeline::board_cases(w, h, config.min_pieces)
    } else {
        let max = a
            .max
            .ok_or_else(|| CliError::invalid("--max is required unless --board is given"))?;
        if a.min > max || max == 0 {
            return Err(CliError::invalid("empty range: need 1 <= --min <= --max"));
        }
        if a.rectangles {
            pipeline::rectangle_cases(max, config.min_pieces)
                .into_iter()
                .filter(|c| c.height >= a.min)
                .collect()
        } else {
            pipeline::square_cases(a.min, max, config.min_pieces)
        }
    };
    let total = cases.len();
    let mut done = 0usize;
    let verdicts = pipeline::run_cases(&cases, &config, |v| {
        done += 1;
        if !a.quiet {
            let _ = writeln!(
                err,
                "[{done}/{total}] {}x{} r={} {} ({} ms)",
                v.width, v.height, v.r, v.stage, v.elapsed_ms
            );
        }
    });
    let mut sink: Box<dyn Write + '_> = match &a.output {
        Some(path) => Box::new(fs::File::create(path)?),
        None => Box::new(&mut *out),
    };
    let summary = pipeline::summarize(&verdicts);
    let boards = |pred: &dyn Fn(&pipeline::BoardSummary) -> bool| {
        summary
            .iter()
            .filter(|s| pred(s))
            .map(|s| {
                if s.width == s.height {
                    s.width.to_string()
                } else {
                    format!("{}x{}", s.width, s.height)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut survivors = boards(&|s| !s.surviving.is_empty());
    if survivors.is_empty() {
        survivors.push_str("(none)");
    }
    let undecided = boards(&|s| !s.undecided.is_empty());
    match a.format {
        ScanFormat::Csv => formats::write_verdicts_csv(&mut sink, &verdicts)?,
        ScanFormat::Json => formats::write_verdicts_json(&mut sink, &verdicts)?,
        ScanFormat::Summary => writeln!(sink, "survivors: {survivors}")?,
    }
    sink.flush()?;
    drop(sink);
    writeln!(err, "scanned {total} cases; survivors: {survivors}")?;
    if !undecided.is_empty() {
        writeln!(err, "undecided (timeout or crash): {undecided}")?;
    }
    let crashed: Vec<&Verdict> = verdicts
        .iter()
        .filter(|v| v.stage == Outcome::Crashed)
        .collect();
    for v in &crashed {
        writeln!(
            err,
            "crashed: {}x{} r={}: {}",
            v.width,
            v.height,
            v.r,
            v.error.as_deref().unwrap_or("")
        )?;
    }
    Ok(if crashed.is_empty() {
        EXIT_OK
    } else {
        EXIT_CRASHED
    })
}

/// One line of the `solve` report.
#[derive(Debug, Serialize)]
struct SolveLine {
    width: u32,
    height: u32,
    r: Option<u32>,
    /// FOUND, EXHAUSTED, LIMIT, or the filter stage that eliminated the case.
    verdict: String,
    nodes: u64,
    tasks: usize,
    limited_tasks: usize,
    elapsed_ms: u64,
    witness: Option<String>,
}

fn cmd_solve(a: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let started = Instant::now();
    let deadline = seconds(a.limit_time, "--limit-time")?.map(|d| started + d);
    let parallel = ParallelOptions {
        workers: threads(a.threads)?,
        deadline,
        canonical_witness: a.canonical_witness,
    };
    let search = SearchOptions {
        symmetry: if a.no_symmetry {
            Symmetry::Off
        } else {
            Symmetry::Auto
        },
        node_limit: a.limit_nodes,
    };
    let mut lines = Vec::new();
    if let Some(path) = &a.generic_fixture {
        let text = fs::read_to_string(path)?;
        let Document::Guillotine(doc) = formats::read_document(&text)? else {
            return Err(CliError::invalid(
                "--generic-fixture expects a guillotine instance",
            ));
        };
        let inst = doc.to_instance()?;
        if (inst.width, inst.height) != (a.width, a.height) {
            return Err(CliError::invalid(format!(
                "fixture board is {}x{}, not {}x{}",
                inst.width, inst.height, a.width, a.height
            )));
        }
        let problem =
            EngineProblem::generic(a.width, a.height, &inst.pieces, !a.no_rotations, search)
                .map_err(|e| CliError::invalid(e.to_string()))?;
        let t = Instant::now();
        let report = solve_parallel(&problem, &parallel);
        lines.push(solved_line(
            a,
            None,
            &report,
            t,
            &format!("generic-{}x{}", a.width, a.height),
        )?);
    } else {
        let cases = solve_cases(a)?;
        let cascade = a.filters.options(true)?;
        for case in cases {
            let t = Instant::now();
            if !a.no_filters && !a.lemma_audit {
                let mut budget = || deadline.is_some_and(|d| Instant::now() >= d);
                let outcome = mondrian_core::filters::evaluate_spec(case, &cascade, &mut budget);
                if outcome.stage.eliminated() {
                    lines.push(SolveLine {
                        width: case.width,
                        height: case.height,
                        r: Some(case.pieces),
                        verdict: format!("ELIMINATED({})", outcome.stage),
                        nodes: 0,
                        tasks: 0,
                        limited_tasks: 0,
                        elapsed_ms: t.elapsed().as_millis() as u64,
                        witness: None,
                    });
                    continue;
                }
            }
            let ps = piece_set_or_invalid(case)?;
            let problem =
                EngineProblem::pmp(&ps, search).map_err(|e| CliError::invalid(e.to_string()))?;
            let report = solve_parallel(&problem, &parallel);
            let stem = format!("pmp-{}x{}-r{}", case.width, case.height, case.pieces);
            let line = solved_line(a, Some(case.pieces), &report, t, &stem)?;
            if let SolveOutcome::Found(tiling) = &report.outcome {
                // A tiling of a partition case must pass the area and count rules too.
                tiling
                    .validate_pmp(&case)
                    .map_err(|e| CliError::invalid(format!("internal: invalid witness: {e}")))?;
            }
            lines.push(line);
        }
    }
    for line in &lines {
        match a.format {
            ListFormat::Json => writeln!(
                out,
                "{}",
                serde_json::to_string(line).expect("serializable")
            )?,
            ListFormat::Text => {
                let r = line.r.map(|r| format!(" r={r}")).unwrap_or_default();
                write!(
                    out,
                    "{}x{}{r}: {} nodes={} tasks={} elapsed={:.3}s",
                    line.width,
                    line.height,
                    line.verdict,
                    line.nodes,
                    line.tasks,
                    line.elapsed_ms as f64 / 1000.0
                )?;
                if line.limited_tasks > 0 {
                    write!(out, " limited_tasks={}", line.limited_tasks)?;
                }
                if let Some(w) = &line.witness {
                    write!(out, " witness={w}")?;
                }
                writeln!(out)?;
            }
        }
    }
    if lines.is_empty() {
        writeln!(err, "no feasible cases for {}x{}", a.width, a.height)?;
    }
    let limited = lines.iter().any(|l| l.verdict == "LIMIT");
    Ok(if limited { EXIT_LIMIT } else { EXIT_OK })
}

fn solve_cases(a: &SolveArgs) -> Result<Vec<CaseSpec>, CliError> {
    let allowed = |r: u32| {
        if a.lemma_audit {
            (2..MIN_PMP_PIECES).contains(&r)
        } else {
            r >= MIN_PMP_PIECES
        }
    };
    match a.r {
        Some(r) => {
            if !allowed(r) {
                return Err(CliError::invalid(if a.lemma_audit {
                    format!("--lemma-audit covers r = 2..6, got {r}")
                } else {
                    format!("a perfect partition needs at least {MIN_PMP_PIECES} pieces, got {r}; see --lemma-audit")
                }));
            }
            let case = case_or_invalid(a.width, a.height, r)?;
            piece_set_or_invalid(case)?;
            Ok(vec![case])
        }
        None => {
            CaseSpec::new(a.width, a.height, 1).map_err(|e| CliError::invalid(e.to_string()))?;
            let min = if a.lemma_audit { 2 } else { MIN_PMP_PIECES };
            Ok(
                mondrian_core::pieces::enumerate_cases_from(a.width, a.height, min)
                    .into_iter()
                    .filter(|c| allowed(c.pieces))
                    .collect(),
            )
        }
    }
}

fn solved_line(
    a: &SolveArgs,
    r: Option<u32>,
    report: &ParallelReport,
    started: Instant,
    stem: &str,
) -> Result<SolveLine, CliError> {
    let mut witness = None;
    if let SolveOutcome::Found(tiling) = &report.outcome {
        tiling
            .validate()
            .map_err(|e| CliError::invalid(format!("internal: invalid witness: {e}")))?;
        fs::create_dir_all(&a.out)?;
        let doc = TilingDoc::from_tiling(tiling);
        let json = a.out.join(format!("{stem}.json"));
        let svg = a.out.join(format!("{stem}.svg"));
        fs::write(&json, formats::to_json(&doc))?;
        fs::write(
            &svg,
            render::svg(tiling.width, tiling.height, &doc.pieces, stem),
        )?;
        witness = Some(json.display().to_string());
    }
    Ok(SolveLine {
        width: a.width,
        height: a.height,
        r,
        verdict: report.outcome.label().to_owned(),
        nodes: report.nodes,
        tasks: report.tasks,
        limited_tasks: report.limited,
        elapsed_ms: started.elapsed().as_millis() as u64,
        witness,
    })
}

#[derive(Serialize)]
struct PerimeterReport {
    perimeter: PerimeterDoc,
    /// PASS or FAIL.
    gap: &'static str,
    /// The side the gap test failed on.
    gap_failed_side: Option<mondrian_core::filters::Side>,
    hole: mondrian_core::filters::HoleReport,
    hole_passes: bool,
}

fn cmd_perimeters(a: &PerimeterArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let case = case_or_invalid(a.width, a.height, a.r)?;
    let ps = piece_set_or_invalid(case)?;
    let options = PerimeterOptions {
        singletons: !a.no_singletons,
        canonical_only: !a.all_reflections,
    };
    let mut reports = Vec::new();
    for cand in perimeter_candidates_with(&ps, options) {
        let gap = gap_check(&ps, &cand, a.gap_mode.into());
        let hole = hole_check(&ps, &cand);
        if a.survivors && !(gap.passes() && hole.passes()) {
            continue;
        }
        reports.push(PerimeterReport {
            perimeter: PerimeterDoc::from_candidate(&ps, &cand),
            gap: if gap.passes() { "PASS" } else { "FAIL" },
            gap_failed_side: match &gap {
                GapVerdict::Fail(side) => Some(side.side),
                GapVerdict::Pass(_) => None,
            },
            hole_passes: hole.passes(),
            hole,
        });
        if a.limit.is_some_and(|l| reports.len() >= l) {
            break;
        }
    }
    let text = formats::to_json(&reports);
    match &a.output {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn cmd_guillotine(a: &GuillotineArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    if a.cuts == 0 {
        return Err(CliError::invalid("--cuts must be at least 1"));
    }
    let inst = random_guillotine(a.width, a.height, a.cuts, a.seed)
        .map_err(|e| CliError::invalid(e.to_string()))?;
    let text = formats::to_json(&GuillotineDoc::from_instance(&inst));
    match &a.output {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn cmd_render(a: &RenderArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let text = fs::read_to_string(&a.input)?;
    let (width, height, rects, title) = match formats::read_document(&text)? {
        Document::Tiling(doc) => {
            let t = doc.validated()?;
            (
                t.width,
                t.height,
                doc.pieces,
                format!("tiling {}x{}", t.width, t.height),
            )
        }
        Document::Perimeter(doc) => {
            doc.to_candidate()?;
            let title = format!("perimeter {}x{} r={}", doc.width, doc.height, doc.r);
            (doc.width, doc.height, doc.arrangement(), title)
        }
        Document::Guillotine(doc) => {
            let inst = doc.to_instance()?;
            let title = format!(
                "guillotine {}x{} seed {}",
                inst.width, inst.height, inst.seed
            );
            (inst.width, inst.height, doc.witness, title)
        }
    };
    let rendered = match a.format {
        RenderFormat::Svg => render::svg(width, height, &rects, &title),
        RenderFormat::Ascii => render::ascii(width, height, &rects),
    };
    match &a.output {
        Some(path) => write_file(path, &rendered)?,
        None => out.write_all(rendered.as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))
}

/// Human label for a stage, as used in reports.
pub fn stage_label(stage: Stage) -> &'static str {
    stage.as_str()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_accept_powers() {
        assert_eq!(parse_count("10^7"), Ok(10_000_000));
        assert_eq!(parse_count("1e7"), Ok(10_000_000));
        assert_eq!(parse_count("25_000"), Ok(25_000));
        assert!(parse_count("10^99").is_err());
        assert!(parse_count("lots").is_err());
    }

    #[test]
    fn thread_precedence() {
        assert_eq!(resolve_threads(Some(3), Some("5")).unwrap(), 3);
        assert_eq!(resolve_threads(None, Some("5")).unwrap(), 5);
        assert!(resolve_threads(None, None).unwrap() >= 1);
        assert!(resolve_threads(Some(0), None).is_err());
        assert!(resolve_threads(None, Some("zero")).is_err());
    }

    #[test]
    fn boards_parse() {
        assert_eq!(parse_board("420x360"), Ok((420, 360)));
        assert!(parse_board("420").is_err());
    }
}
