//! Command-line front end: `generate`, `solve`, `verify` and `bench`.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::pattern::{self, ColorGrid};
use crate::search::{self, Event, SearchObserver, SolveConfig};
use crate::sim::{verify_solution, VerificationReport};
use crate::tiles::TileSystem;

#[derive(Debug, Parser)]
#[command(
    name = "tilesynth",
    version,
    about = "Minimal tile sets for patterned self-assembly"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated pattern.
    Generate(GenerateArgs),
    /// Search for a smallest tile set assembling a pattern.
    Solve(SolveArgs),
    /// Check that a tile set assembles a pattern.
    Verify(VerifyArgs),
    /// Merge-count percentiles of exact solves on random patterns.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PatternType {
    Sierpinski,
    Counter,
    Random,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long = "type", value_enum)]
    pub kind: PatternType,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub m: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    /// Number of colours (random patterns only).
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub pattern: PathBuf,
    /// Search until optimality is proven (the default).
    #[arg(long, conflicts_with = "cutoff")]
    pub exact: bool,
    /// Stop after this many merge operations.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub cutoff: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also emit a progress event every N merges.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub report_every: Option<u64>,
    /// Tile-set file; stdout if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Event stream file; stderr if omitted.
    #[arg(long)]
    pub events: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub pattern: PathBuf,
    #[arg(long)]
    pub tiles: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated sizes, e.g. 2x2,3x3.
    #[arg(long, default_value = "2x2,2x3,3x3,3x4,4x4", value_parser = parse_sizes)]
    pub sizes: Sizes,
    /// Random instances per size.
    #[arg(long, default_value_t = 21, value_parser = clap::value_parser!(u64).range(1..))]
    pub runs: u64,
    /// Base seed; instance `i` uses seed + i for the pattern and the search.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sizes(pub Vec<(usize, usize)>);

fn parse_sizes(s: &str) -> Result<Sizes, String> {
    s.split(',')
        .map(|item| {
            let (m, n) = item
                .trim()
                .split_once('x')
                .ok_or_else(|| format!("bad size {item:?}"))?;
            let m: usize = m.parse().map_err(|_| format!("bad width in {item:?}"))?;
            let n: usize = n.parse().map_err(|_| format!("bad height in {item:?}"))?;
            if m == 0 || n == 0 {
                return Err(format!("empty size {item:?}"));
            }
            Ok((m, n))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Sizes)
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn execute(command: Command) -> Result<i32, String> {
    match command {
        Command::Generate(a) => generate(a),
        Command::Solve(a) => solve(a),
        Command::Verify(a) => verify(a),
        Command::Bench(a) => bench(a),
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    }
}

fn load_pattern(path: &Path) -> Result<ColorGrid, String> {
    ColorGrid::parse(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn generate(a: GenerateArgs) -> Result<i32, String> {
    let (m, n) = (a.m as usize, a.n as usize);
    let grid = match a.kind {
        PatternType::Sierpinski => pattern::sierpinski(m, n),
        PatternType::Counter => pattern::binary_counter(m, n),
        PatternType::Random => pattern::random(m, n, a.k as usize, a.seed),
    }
    .map_err(|e| e.to_string())?;
    write_out(a.out.as_deref(), &grid.emit())?;
    Ok(0)
}

/// Writes each event as a line, remembering the first I/O error.
struct EventWriter {
    sink: Box<dyn Write>,
    error: Option<io::Error>,
}

impl SearchObserver for EventWriter {
    fn on_event(&mut self, event: &Event) {
        if self.error.is_none() {
            if let Err(e) = writeln!(self.sink, "{event}") {
                self.error = Some(e);
            }
        }
    }
}

fn solve(a: SolveArgs) -> Result<i32, String> {
    let grid = load_pattern(&a.pattern)?;
    let mut cfg = match a.cutoff {
        Some(c) => SolveConfig::anytime(c, a.seed),
        None => SolveConfig::exact(a.seed),
    };
    cfg.report_every = a.report_every.and_then(std::num::NonZeroU64::new);
    let sink: Box<dyn Write> = match &a.events {
        Some(p) => Box::new(io::BufWriter::new(
            fs::File::create(p).map_err(|e| format!("{}: {e}", p.display()))?,
        )),
        None => Box::new(io::stderr()),
    };
    let mut events = EventWriter { sink, error: None };
    let result = search::solve_observed(&grid, &cfg, None, &mut events);
    if let Some(e) = events.error.take() {
        return Err(format!("writing events: {e}"));
    }
    events
        .sink
        .flush()
        .map_err(|e| format!("writing events: {e}"))?;
    write_out(a.out.as_deref(), &result.best_system.emit())?;
    Ok(0)
}

fn verify(a: VerifyArgs) -> Result<i32, String> {
    let grid = load_pattern(&a.pattern)?;
    let sys =
        TileSystem::parse(&read(&a.tiles)?).map_err(|e| format!("{}: {e}", a.tiles.display()))?;
    match verify_solution(&sys, &grid) {
        VerificationReport::Pass(_) => {
            println!("ok tiles={}", sys.len());
            Ok(0)
        }
        VerificationReport::Fail(f) => {
            println!("fail {f}");
            Ok(1)
        }
    }
}

/// Nearest-rank percentile of sorted data.
pub fn percentile(sorted: &[u64], pct: u32) -> u64 {
    assert!(!sorted.is_empty());
    let rank = (pct as usize * sorted.len()).div_ceil(100).max(1);
    sorted[rank - 1]
}

/// Merge counts of exact solves on `runs` random 2-coloured patterns.
pub fn bench_merges(m: usize, n: usize, runs: u64, seed: u64) -> Result<Vec<u64>, String> {
    let mut merges = (0..runs)
        .into_par_iter()
        .map(|i| {
            let s = seed.wrapping_add(i);
            let grid = pattern::random(m, n, 2, s).map_err(|e| e.to_string())?;
            Ok(search::solve(&grid, &SolveConfig::exact(s)).merges_performed)
        })
        .collect::<Result<Vec<u64>, String>>()?;
    merges.sort_unstable();
    Ok(merges)
}

fn bench(a: BenchArgs) -> Result<i32, String> {
    let mut table = String::from("size\tp20\tmedian\tp80\n");
    for &(m, n) in &a.sizes.0 {
        let merges = bench_merges(m, n, a.runs, a.seed)?;
        table.push_str(&format!(
            "{m}x{n}\t{}\t{}\t{}\n",
            percentile(&merges, 20),
            percentile(&merges, 50),
            percentile(&merges, 80)
        ));
    }
    write_out(a.out.as_deref(), &table)?;
    Ok(0)
}
