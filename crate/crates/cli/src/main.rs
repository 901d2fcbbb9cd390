//! `zfn`: batch zero forcing computations over graph6/sparse6 streams,
//! one JSON object per input line.

mod commands;
mod record;

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use zforce::graph::{write_graph6, NamedGraph};
use zforce::solver::SolverConfig;

use commands::LemmaSet;
use record::{RunRecord, Status, Summary, SummaryLine};

/// Lines handed to the worker pool at once; output is flushed per chunk.
const CHUNK: usize = 256;

#[derive(Parser)]
#[command(
    name = "zfn",
    version,
    about = "Zero forcing numbers, girth bounds and proof checks"
)]
struct Cli {
    /// Append one aggregate JSON object after the records.
    #[arg(long, global = true)]
    summary: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct SolveArgs {
    /// Threads used inside one exact search.
    #[arg(long, env = "ZFN_WORKERS", default_value_t = 1)]
    workers: usize,
    /// Stop a search after this many closure extensions and report an interval.
    #[arg(long)]
    budget: Option<u64>,
    /// Graphs processed concurrently; output order always follows input order.
    #[arg(long, env = "ZFN_JOBS", default_value_t = 1)]
    jobs: usize,
}

impl SolveArgs {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            node_budget: self.budget,
            workers: self.workers,
            ..Default::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact zero forcing number of every input graph.
    Number {
        /// graph6/sparse6 file, one graph per line; stdin when absent or `-`.
        input: Option<PathBuf>,
        /// Also run plain subset enumeration and compare.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        solve: SolveArgs,
    },
    /// Compare Z(G) with δ + (δ − 2)(g − 3); exit 1 on any violation.
    CheckBound {
        input: Option<PathBuf>,
        #[command(flatten)]
        solve: SolveArgs,
    },
    /// Build the forcing-chronology structures and run every check.
    #[command(group(ArgGroup::new("initial").required(true).args(["set", "minimum"])))]
    Lemmas {
        input: Option<PathBuf>,
        /// Initial black set as comma-separated vertex indices.
        #[arg(long)]
        set: Option<String>,
        /// Use the solver's minimum zero forcing set.
        #[arg(long)]
        minimum: bool,
        #[command(flatten)]
        solve: SolveArgs,
    },
    /// Maximum edges on n vertices with no cycle of length at most l.
    Extremal {
        n: usize,
        ell: usize,
        /// Also search all graphs exhaustively (n <= 8).
        #[arg(long)]
        oracle: bool,
    },
    /// Build a named graph (petersen, heawood, mcgee, cycle(n), ...).
    Named {
        name: String,
        #[arg(long, value_enum, default_value_t = Emit::Report)]
        emit: Emit,
        #[command(flatten)]
        solve: SolveArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    G6,
    Report,
}

fn parse_set(text: &str) -> Result<Vec<usize>, String> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| format!("bad vertex index {t:?} in --set"))
        })
        .collect()
}

fn open(input: Option<&PathBuf>) -> io::Result<Box<dyn BufRead>> {
    match input {
        Some(p) if p.as_os_str() != "-" => Ok(Box::new(BufReader::new(File::open(p)?))),
        _ => Ok(Box::new(BufReader::new(io::stdin()))),
    }
}

/// Exit status accumulated over a run: a failed mathematical check outranks
/// an input error, which outranks success.
#[derive(Default)]
struct Outcome {
    failed: bool,
    input_error: bool,
}

impl Outcome {
    fn note(&mut self, status: Status) {
        match status {
            Status::Violation => self.failed = true,
            Status::Error => self.input_error = true,
            _ => {}
        }
    }

    fn code(&self) -> ExitCode {
        if self.failed {
            ExitCode::from(1)
        } else if self.input_error {
            ExitCode::from(2)
        } else {
            ExitCode::SUCCESS
        }
    }
}

fn emit_json<T: Serialize>(out: &mut impl Write, value: &T) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    out.write_all(b"\n")
}

/// Runs `per_line` over every nonempty input line on `jobs` threads and
/// prints the records in input order.
fn run_stream<F>(
    input: Option<&PathBuf>,
    jobs: usize,
    summary: bool,
    per_line: F,
) -> io::Result<Outcome>
where
    F: Fn(usize, &str) -> RunRecord + Sync,
{
    let reader = open(input)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(io::Error::other)?;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut outcome = Outcome::default();
    let mut totals = Summary::default();
    let mut chunk: Vec<(usize, String)> = Vec::with_capacity(CHUNK);
    let mut lines = reader.lines().enumerate();

    loop {
        chunk.clear();
        while chunk.len() < CHUNK {
            match lines.next() {
                Some((i, line)) => {
                    let line = line?;
                    let line = line.trim();
                    if !line.is_empty() {
                        chunk.push((i, line.to_string()));
                    }
                }
                None => break,
            }
        }
        if chunk.is_empty() {
            break;
        }
        let records: Vec<RunRecord> = pool.install(|| {
            chunk
                .par_iter()
                .map(|(i, line)| per_line(*i, line))
                .collect()
        });
        for r in &records {
            outcome.note(r.status);
            totals.add(r);
            emit_json(&mut out, r)?;
        }
        out.flush()?;
    }
    if summary {
        emit_json(&mut out, &SummaryLine { summary: &totals })?;
    }
    out.flush()?;
    Ok(outcome)
}

fn usage_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("zfn: {message}");
    ExitCode::from(2)
}

fn run(cli: Cli) -> io::Result<ExitCode> {
    let summary = cli.summary;
    let outcome = match cli.command {
        Command::Number {
            input,
            oracle,
            solve,
        } => {
            let cfg = solve.config();
            run_stream(input.as_ref(), solve.jobs, summary, |i, line| {
                commands::number(i, line, &cfg, oracle)
            })?
        }
        Command::CheckBound { input, solve } => {
            let cfg = solve.config();
            run_stream(input.as_ref(), solve.jobs, summary, |i, line| {
                commands::check_bound(i, line, &cfg)
            })?
        }
        Command::Lemmas {
            input,
            set,
            minimum: _,
            solve,
        } => {
            let initial = match set {
                Some(text) => match parse_set(&text) {
                    Ok(vs) => LemmaSet::Given(vs),
                    Err(e) => return Ok(usage_error(e)),
                },
                None => LemmaSet::Minimum,
            };
            let cfg = solve.config();
            run_stream(input.as_ref(), solve.jobs, summary, |i, line| {
                commands::lemmas(i, line, &initial, &cfg)
            })?
        }
        Command::Extremal { n, ell, oracle } => {
            let rec = match commands::extremal(n, ell, oracle) {
                Ok(rec) => rec,
                Err(e) => return Ok(usage_error(e)),
            };
            let mut out = io::stdout().lock();
            emit_json(&mut out, &rec)?;
            Outcome {
                failed: rec.agree == Some(false),
                ..Default::default()
            }
        }
        Command::Named { name, emit, solve } => {
            let parsed: NamedGraph = match name.parse() {
                Ok(p) => p,
                Err(e) => return Ok(usage_error(e)),
            };
            let mut out = io::stdout().lock();
            let mut outcome = Outcome::default();
            match emit {
                Emit::G6 => {
                    let g = match parsed.build() {
                        Ok(g) => g,
                        Err(e) => return Ok(usage_error(e)),
                    };
                    writeln!(out, "{}", write_graph6(&g))?;
                }
                Emit::Report => {
                    let r = commands::named_report(parsed, &solve.config());
                    outcome.note(r.status);
                    emit_json(&mut out, &r)?;
                }
            }
            outcome
        }
    };
    Ok(outcome.code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => usage_error(e),
    }
}
