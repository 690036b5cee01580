use std::fs;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qpi_cli::answer_line;
use qpi_cli::batch::{answer_all, read_queries};
use qpi_cli::bench::{self, Profile};
use qpi_cli::selftest::{self, SelftestConfig};
use qpi_core::Index;

#[derive(Parser)]
#[command(name = "qpi", version, about = "Cover queries on factors of a text")]
struct Cli {
    /// Print one JSON object per answer.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for batch answering (0 = one per core).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// Seed for selftest and bench randomness.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Source {
    /// Previously built index.
    #[arg(long, conflicts_with = "text")]
    index: Option<PathBuf>,

    /// Raw text file; the index is built in memory.
    #[arg(long)]
    text: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Quick,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index from a raw text file.
    Build {
        input: PathBuf,
        /// Where to write the index.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Answer queries given as arguments, or read them from stdin.
    Query {
        #[command(flatten)]
        source: Source,
        queries: Vec<String>,
    },
    /// Answer every line of a query file, in order.
    Batch {
        #[command(flatten)]
        source: Source,
        file: PathBuf,
    },
    /// Compare the index against brute-force oracles.
    Selftest {
        #[arg(long, default_value_t = 8)]
        exhaustive_len: usize,
        #[arg(long, default_value_t = 20)]
        strings: usize,
        #[arg(long, default_value_t = 300)]
        len: usize,
        #[arg(long, default_value_t = 200)]
        factors: usize,
    },
    /// Build and query latencies on random binary texts.
    Bench {
        #[arg(long, value_enum, default_value = "quick")]
        profile: ProfileArg,
        #[arg(long, default_value_t = 1000)]
        queries: usize,
        /// Also write the table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn load(source: &Source) -> Result<Index, String> {
    match (&source.index, &source.text) {
        (Some(p), _) => Index::load(p).map_err(|e| format!("{}: {e}", p.display())),
        (None, Some(p)) => {
            let bytes = fs::read(p).map_err(|e| format!("{}: {e}", p.display()))?;
            Index::build(bytes).map_err(|e| format!("{}: {e}", p.display()))
        }
        (None, None) => Err("one of --index or --text is required".into()),
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    let out = io::stdout();
    let mut out = out.lock();
    let io_err = |e: io::Error| e.to_string();
    match cli.command {
        Command::Build { input, output } => {
            let bytes = fs::read(&input).map_err(|e| format!("{}: {e}", input.display()))?;
            let t = Instant::now();
            let idx = Index::build(bytes).map_err(|e| format!("{}: {e}", input.display()))?;
            let elapsed = t.elapsed();
            log::info!("built index in {elapsed:?}");
            if let Some(path) = &output {
                idx.save(path).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            writeln!(
                out,
                "n={} runs={} seed_intervals={} build_ms={:.1}",
                idx.n(),
                idx.runs().len(),
                idx.seed_sets().stored_intervals(),
                elapsed.as_secs_f64() * 1e3
            )
            .map_err(io_err)?;
        }
        Command::Query { source, queries } => {
            let idx = load(&source)?;
            if queries.is_empty() {
                for line in io::stdin().lock().lines() {
                    let line = line.map_err(io_err)?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    writeln!(out, "{}", answer_line(&idx, &line, cli.json)).map_err(io_err)?;
                    out.flush().map_err(io_err)?;
                }
            } else {
                for q in &queries {
                    writeln!(out, "{}", answer_line(&idx, q, cli.json)).map_err(io_err)?;
                }
            }
        }
        Command::Batch { source, file } => {
            let idx = load(&source)?;
            let f = fs::File::open(&file).map_err(|e| format!("{}: {e}", file.display()))?;
            let lines = read_queries(io::BufReader::new(f)).map_err(io_err)?;
            for a in answer_all(&idx, &lines, cli.json, cli.threads) {
                writeln!(out, "{a}").map_err(io_err)?;
            }
        }
        Command::Selftest {
            exhaustive_len,
            strings,
            len,
            factors,
        } => {
            let cfg = SelftestConfig {
                exhaustive_len,
                random_strings: strings,
                random_len: len,
                factors_per_string: factors,
                seed: cli.seed,
            };
            let report = selftest::run(&cfg);
            for m in report.mismatches.iter().take(20) {
                writeln!(out, "MISMATCH {m}").map_err(io_err)?;
            }
            writeln!(
                out,
                "selftest: {} strings, {} factors, {} mismatches",
                report.strings,
                report.factors,
                report.mismatches.len()
            )
            .map_err(io_err)?;
            return Ok(report.passed());
        }
        Command::Bench { profile, queries, csv } => {
            let profile = match profile {
                ProfileArg::Quick => Profile::Quick,
                ProfileArg::Full => Profile::Full,
            };
            let rows = bench::run(profile, queries, cli.seed);
            write!(out, "{}", bench::render_table(&rows)).map_err(io_err)?;
            if let Some(path) = csv {
                fs::write(&path, bench::render_csv(&rows)).map_err(|e| format!("{}: {e}", path.display()))?;
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("QPI_LOG", "warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("qpi: {msg}");
            ExitCode::from(2)
        }
    }
}
