use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use regseq::corpus::{builtin_assertions, read_assertions, run_corpus, CorpusOptions};
use regseq::report::Header;
use regseq::{analyze_spec, compare, materialize, parse_spec, plot_data, QuotientSpec};

/// Growth analysis of positive sequences given by their log-quotients.
#[derive(Parser)]
#[command(name = "regseq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Truncation {
    /// Number of quotients to materialize.
    #[arg(long, env = "REGSEQ_DEFAULT_N", default_value_t = regseq::tolerances::DEFAULT_N)]
    n: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis of one sequence, written as a JSON report.
    Analyze {
        /// Sequence spec, e.g. `gevrey:alpha=1.5` or `file:quotients.txt`.
        #[arg(long)]
        spec: String,
        #[command(flatten)]
        n: Truncation,
        /// Output path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Add generation time to the report header.
        #[arg(long)]
        timestamp: bool,
    },
    /// Equivalence of two sequences (quotient-wise and sequence-wise).
    Compare {
        #[arg(long)]
        spec: String,
        #[arg(long = "spec-b")]
        spec_b: String,
        #[command(flatten)]
        n: Truncation,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// TSV of `log_t, M, d_M` over the evaluation grid.
    PlotData {
        #[arg(long)]
        spec: String,
        #[command(flatten)]
        n: Truncation,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Analyze every built-in fixture into a directory with an index file.
    Corpus {
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        /// Check the built-in expectations, plus those in FILE if given; exit 3 on failure.
        #[arg(long = "assert", value_name = "FILE", num_args = 0..=1)]
        assert: Option<Option<PathBuf>>,
        /// Cap every fixture's truncation (quick runs).
        #[arg(long)]
        n: Option<usize>,
    },
}

enum Failure {
    Error(String),
    Assertions(Vec<String>),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Error(e.to_string())
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure::Error(format!("{}: {e}", p.display())))
        }
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn check_n(spec: &QuotientSpec, n: usize) -> Result<(), Failure> {
    if let Some(len) = spec.max_len() {
        if len < n {
            return Err(Failure::Error(format!(
                "table has {len} quotients; pass --n {len} or less"
            )));
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze {
            spec,
            n,
            out,
            timestamp,
        } => {
            let q = parse_spec(&spec)?;
            check_n(&q, n.n)?;
            let mut report = analyze_spec(&q, &spec, n.n)?;
            if timestamp {
                report.header = Header::stamped();
            }
            emit(out.as_deref(), &(report.to_json()? + "\n"))?;
            if out.is_some() {
                eprintln!(
                    "{}: strongly regular {:?}, proximate order {:?}",
                    spec, report.properties.strongly_regular.status, report.proximate_order.verdict
                );
            }
        }
        Command::Compare {
            spec,
            spec_b,
            n,
            out,
        } => {
            let (qa, qb) = (parse_spec(&spec)?, parse_spec(&spec_b)?);
            check_n(&qa, n.n)?;
            check_n(&qb, n.n)?;
            let a = materialize(&qa, n.n)?;
            let b = materialize(&qb, n.n)?;
            let r = compare(&a, &b, &spec, &spec_b)?;
            emit(out.as_deref(), &(serde_json::to_string_pretty(&r)? + "\n"))?;
        }
        Command::PlotData { spec, n, out } => {
            let q = parse_spec(&spec)?;
            check_n(&q, n.n)?;
            if n.n < regseq::tolerances::MIN_ANALYSIS_N {
                return Err(Failure::Error(format!(
                    "truncation {} is below {}",
                    n.n,
                    regseq::tolerances::MIN_ANALYSIS_N
                )));
            }
            let t = materialize(&q, n.n)?;
            emit(out.as_deref(), &plot_data(&t, &spec))?;
        }
        Command::Corpus { out, assert, n } => {
            let assertions = match assert {
                None => None,
                Some(file) => {
                    let mut a = builtin_assertions();
                    if let Some(f) = file {
                        a.extend(read_assertions(&f)?);
                    }
                    Some(a)
                }
            };
            let idx = run_corpus(
                &out,
                &CorpusOptions {
                    max_truncation: n,
                    assertions,
                },
            )?;
            eprintln!(
                "{} reports in {}; {} assertions checked",
                idx.fixtures.len(),
                out.display(),
                idx.assertions_checked
            );
            if !idx.passed() {
                return Err(Failure::Assertions(idx.assertion_failures));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Error(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Assertions(fails)) => {
            for f in &fails {
                eprintln!("assertion failed: {f}");
            }
            ExitCode::from(3)
        }
    }
}
