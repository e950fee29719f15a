//! The `amd` command line.

use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::certificate::{Certificate, Verdict};
use crate::cyclotomic::build_f;
use crate::factor::report::{conjecture_verdict_cached, factor_report, Match, Verdict as FactorVerdict};
use crate::oracle::{gen_line_digraph_complete, parse_digraph, run_battery, serialize_digraph, verify_moore, Instance};
use crate::sieve::{decide_with, DecideOptions};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_UNKNOWN: u8 = 2;
pub const EXIT_ORACLE: u8 = 3;

const MAX_D: u64 = 12;
const MAX_K: u64 = 300;

#[derive(Debug, Parser)]
#[command(name = "amd", version, about = "Almost Moore digraph nonexistence certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide one (d, k) cell and write its certificate as JSON.
    Decide {
        d: u64,
        k: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip published nonexistence results and use computed evidence only.
        #[arg(long)]
        no_literature: bool,
    },
    /// Factor F_{i,k} over a grid and compare with the conjectured pattern.
    Conjecture {
        #[arg(long, value_parser = parse_range)]
        i: RangeInclusive<u64>,
        #[arg(long, value_parser = parse_range)]
        k: RangeInclusive<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Decide every cell of a (d, k) grid and write CSV rows.
    Sweep {
        #[arg(long, value_parser = parse_range)]
        d: RangeInclusive<u64>,
        #[arg(long, value_parser = parse_range)]
        k: RangeInclusive<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        no_literature: bool,
        /// Lift the default d <= 12, k <= 300 limits.
        #[arg(long)]
        allow_large: bool,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Generate, check, or fully verify (d, 2) instances.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Factor one F_{i,k} and print degrees and certificate kind.
    Factor {
        #[arg(long)]
        i: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
pub struct RunOpts {
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Write zero instead of wall-clock times, for byte-identical output.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Write the line digraph of the complete digraph on d + 1 symbols.
    Gen {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify I + A + ... + A^k = J + P for a digraph file.
    Check { file: PathBuf },
    /// Run the full structural battery on a digraph file.
    Report {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

pub fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected LO..HI, got {s:?}"))?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: u64 = lo.trim().parse().map_err(|e| format!("{lo:?}: {e}"))?;
    let hi: u64 = hi.trim().parse().map_err(|e| format!("{hi:?}: {e}"))?;
    Ok(lo..=hi)
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Csv(#[from] csv::Error),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parses `std::env::args` and runs; usage errors exit 1.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("amd: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Decide { d, k, out, no_literature } => cmd_decide(d, k, out.as_deref(), no_literature),
        Command::Conjecture { i, k, out, run } => {
            with_pool(run.jobs, || cmd_conjecture(i, k, out.as_deref(), run.no_timing))
        }
        Command::Sweep {
            d,
            k,
            out,
            no_literature,
            allow_large,
            run,
        } => with_pool(run.jobs, || {
            cmd_sweep(d, k, out.as_deref(), no_literature, allow_large, run.no_timing)
        }),
        Command::Oracle(o) => cmd_oracle(o),
        Command::Factor { i, k, json } => cmd_factor(i, k, json),
    }
}

fn with_pool(jobs: Option<usize>, f: impl FnOnce() -> Result<u8, CliError> + Send) -> Result<u8, CliError> {
    match jobs {
        Some(0) => Err(usage("--jobs must be positive")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| usage(e.to_string()))?
            .install(f),
        None => f(),
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_decide(d: u64, k: u64, out: Option<&Path>, no_literature: bool) -> Result<u8, CliError> {
    if d < 2 || k < 2 {
        return Err(usage("decide needs d >= 2 and k >= 2"));
    }
    let cert = decide_with(
        d,
        k,
        DecideOptions {
            literature: !no_literature,
            ..Default::default()
        },
    );
    write_output(out, &(cert.to_json() + "\n"))?;
    if out.is_some() {
        println!("{} {}", cert.verdict, cert.method.map_or("-", |m| m.name()));
    }
    Ok(if cert.verdict == Verdict::Unknown { EXIT_UNKNOWN } else { EXIT_OK })
}

#[derive(Debug, Serialize)]
pub struct ConjectureSummary {
    pub cells: usize,
    pub consistent: usize,
    pub inconsistent: usize,
    pub unresolved: usize,
    pub reducible: usize,
    /// Reducible cells with exactly two factors.
    pub two_factors: usize,
    /// Reducible cells whose factors multiply back to `F_{i,k}`.
    pub products_verified: usize,
    pub elapsed_ms: u128,
}

fn cmd_conjecture(
    i: RangeInclusive<u64>,
    k: RangeInclusive<u64>,
    out: Option<&Path>,
    no_timing: bool,
) -> Result<u8, CliError> {
    if !i.is_empty() && *i.start() <= 2 {
        return Err(usage("conjecture needs i > 2"));
    }
    if !k.is_empty() && *k.start() <= 1 {
        return Err(usage("conjecture needs k > 1"));
    }
    let start = Instant::now();
    let cells: Vec<(u64, u64)> = i.flat_map(|i| k.clone().map(move |k| (i, k))).collect();
    let results: Vec<_> = cells
        .par_iter()
        .map(|&(i, k)| {
            let v = conjecture_verdict_cached(i, k as usize);
            let product_ok = v.observed.verdict == FactorVerdict::Reducible
                && v.observed.factors.iter().fold(crate::algebra::IntPoly::one(), |a, b| &a * b)
                    == build_f(i, k as usize);
            (v, product_ok)
        })
        .collect();
    let count = |m: Match| results.iter().filter(|(v, _)| v.outcome == m).count();
    let summary = ConjectureSummary {
        cells: results.len(),
        consistent: count(Match::Consistent),
        inconsistent: count(Match::Inconsistent),
        unresolved: count(Match::Unresolved),
        reducible: results.iter().filter(|(v, _)| v.observed.verdict == FactorVerdict::Reducible).count(),
        two_factors: results
            .iter()
            .filter(|(v, _)| v.observed.verdict == FactorVerdict::Reducible && v.observed.factor_degrees.len() == 2)
            .count(),
        products_verified: results.iter().filter(|(_, ok)| *ok).count(),
        elapsed_ms: if no_timing { 0 } else { start.elapsed().as_millis() },
    };
    let summary_json = serde_json::to_string_pretty(&summary).unwrap() + "\n";
    if let Some(dir) = out {
        fs::create_dir_all(dir)?;
        let mut lines = String::new();
        for (v, _) in &results {
            lines += &serde_json::to_string(&**v).unwrap();
            lines.push('\n');
        }
        fs::write(dir.join("reports.jsonl"), lines)?;
        fs::write(dir.join("summary.json"), &summary_json)?;
    }
    print!("{summary_json}");
    Ok(if summary.inconsistent == 0 { EXIT_OK } else { EXIT_UNKNOWN })
}

/// One CSV line of a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct SweepRow {
    pub d: u64,
    pub k: u64,
    pub verdict: String,
    pub method: String,
    pub witness: Option<u64>,
    pub runtime_ms: u128,
}

impl SweepRow {
    pub fn from_certificate(c: &Certificate, runtime_ms: u128) -> Self {
        Self {
            d: c.d,
            k: c.k,
            verdict: c.verdict.to_string(),
            method: c.method.map_or("", |m| m.name()).to_string(),
            witness: c.witness,
            runtime_ms,
        }
    }
}

pub fn sweep_rows(d: RangeInclusive<u64>, k: RangeInclusive<u64>, opts: DecideOptions, timing: bool) -> Vec<SweepRow> {
    let cells: Vec<(u64, u64)> = d.flat_map(|d| k.clone().map(move |k| (d, k))).collect();
    let mut rows: Vec<SweepRow> = cells
        .par_iter()
        .map(|&(d, k)| {
            let t = Instant::now();
            let c = decide_with(d, k, opts);
            SweepRow::from_certificate(&c, if timing { t.elapsed().as_millis() } else { 0 })
        })
        .collect();
    rows.sort_by_key(|r| (r.d, r.k));
    rows
}

fn cmd_sweep(
    d: RangeInclusive<u64>,
    k: RangeInclusive<u64>,
    out: Option<&Path>,
    no_literature: bool,
    allow_large: bool,
    no_timing: bool,
) -> Result<u8, CliError> {
    if !d.is_empty() && *d.start() < 2 || !k.is_empty() && *k.start() < 2 {
        return Err(usage("sweep needs d >= 2 and k >= 2"));
    }
    if !allow_large && (*d.end() > MAX_D || *k.end() > MAX_K) {
        return Err(usage(format!("ranges limited to d <= {MAX_D}, k <= {MAX_K}; pass --allow-large")));
    }
    let opts = DecideOptions {
        literature: !no_literature,
        ..Default::default()
    };
    let rows = sweep_rows(d, k, opts, !no_timing);
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &rows {
        w.serialize(r)?;
    }
    let text = String::from_utf8(w.into_inner().map_err(|e| usage(e.to_string()))?).unwrap();
    write_output(out, &text)?;
    if out.is_some() {
        let unknown = rows.iter().filter(|r| r.verdict == "Unknown").count();
        println!("{} cells, {unknown} unknown", rows.len());
    }
    Ok(EXIT_OK)
}

fn read_instance(path: &Path) -> Result<Result<Instance, String>, CliError> {
    let text = fs::read_to_string(path)?;
    Ok(parse_digraph(&text).map_err(|e| format!("{}: {e}", path.display())))
}

fn cmd_oracle(cmd: OracleCommand) -> Result<u8, CliError> {
    match cmd {
        OracleCommand::Gen { d, out } => {
            if d < 2 {
                return Err(usage("gen needs d >= 2"));
            }
            let inst = Instance {
                graph: gen_line_digraph_complete(d),
                d: d as u64,
                k: 2,
            };
            write_output(out.as_deref(), &serialize_digraph(&inst).expect("line digraph has arcs"))?;
            Ok(EXIT_OK)
        }
        OracleCommand::Check { file } => {
            let inst = read_instance(&file)?.map_err(usage)?;
            match verify_moore(&inst.graph, inst.d, inst.k) {
                Ok(c) => {
                    let structure: Vec<String> = c.cycle_counts().iter().map(|(j, m)| format!("{j}:{m}")).collect();
                    println!(
                        "ok: ({}, {})-digraph on {} vertices, {} self-repeats, repeat cycles {}",
                        inst.d,
                        inst.k,
                        inst.graph.n(),
                        c.self_repeats.len(),
                        structure.join(" ")
                    );
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    println!("FAILED: {e}");
                    Ok(EXIT_ORACLE)
                }
            }
        }
        OracleCommand::Report { file, json } => {
            let inst = read_instance(&file)?.map_err(usage)?;
            let rep = run_battery(&inst.graph, inst.d, inst.k);
            if json {
                println!("{}", serde_json::to_string_pretty(&rep).unwrap());
            } else {
                for a in &rep.assertions {
                    let tag = if a.passed { "PASS" } else { "FAIL" };
                    if a.detail.is_empty() {
                        println!("{tag} {}", a.name);
                    } else {
                        println!("{tag} {}: {}", a.name, a.detail);
                    }
                }
            }
            Ok(if rep.passed() { EXIT_OK } else { EXIT_ORACLE })
        }
    }
}

fn cmd_factor(i: u64, k: u64, json: bool) -> Result<u8, CliError> {
    if i == 0 || k == 0 {
        return Err(usage("factor needs i >= 1 and k >= 1"));
    }
    let r = factor_report(i, k as usize);
    if json {
        println!("{}", serde_json::to_string_pretty(&r).unwrap());
    } else {
        println!("F_{{{i},{k}}}: degree {}", r.degree);
        println!("verdict: {:?}", r.verdict);
        println!("factor degrees: {:?}", r.factor_degrees);
        match r.certificate_kind {
            Some(kind) => println!("certificate: {kind:?}"),
            None => println!("certificate: none"),
        }
        println!("primes: {:?}", r.primes_used);
    }
    Ok(if r.verdict == FactorVerdict::Unresolved { EXIT_UNKNOWN } else { EXIT_OK })
}
