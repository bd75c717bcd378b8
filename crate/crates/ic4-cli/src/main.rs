//! `ic4`: generate graphs, detect and find induced 4-cycles, run the
//! self-check suites and benchmarks.
//!
//! Exit status: 0 when a cycle is found (or a witness verifies, or all
//! suites pass), 1 when none is found (or the witness is bad, or a suite
//! fails), 2 on any error.

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use induced_c4::bench::{fit_slope, read_csv, write_csv, Algo, BenchPlan};
use induced_c4::decomposition::DecompConfig;
use induced_c4::detector::{Fallback, Phase, PhaseTimings};
use induced_c4::graph_core::naive_detect;
use induced_c4::selftest;
use induced_c4::{detect, find, load_graph, oracle_detect, verify_witness, write_graph, C4Witness, DetectionReport, Graph, GraphSpec};
use std::fs::File;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "ic4", version, about = "Induced 4-cycle detection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph from a spec such as `gnp:n=64,p=0.5,seed=1`.
    Gen {
        spec: String,
        /// Output file; standard output when omitted.
        #[arg(long, short = 'o')]
        out: Option<PathBuf>,
    },
    /// Decide whether the graph in PATH has an induced 4-cycle.
    Detect {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = AlgoArg::Fast)]
        algo: AlgoArg,
    },
    /// Print the vertices of an induced 4-cycle in PATH.
    Find { path: PathBuf },
    /// Check that a b c d is an induced 4-cycle in that cyclic order.
    Verify { path: PathBuf, a: usize, b: usize, c: usize, d: usize },
    /// Run the self-check suites.
    Selftest {
        /// Largest vertex count of the exhaustive suite.
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
    /// Time the algorithms on G(n, 1/2) and fit the runtime slope.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "1024,2048,4096")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        reps: u64,
        /// CSV file to append records to; created with a header if absent.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Fast,
    Oracle,
    Naive,
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    load_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

/// Report for a baseline algorithm, which has no phases.
fn baseline_report(g: &Graph, run: fn(&Graph) -> Option<C4Witness>) -> DetectionReport {
    let start = Instant::now();
    let witness = run(g);
    let total = start.elapsed().as_secs_f64() * 1e3;
    DetectionReport {
        found: witness.is_some(),
        phase: Phase::OracleFallback,
        witness,
        n: g.n(),
        timings: PhaseTimings { total, ..PhaseTimings::default() },
        fallback: Fallback::None,
        diagnostic: None,
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen { spec, out } => {
            let spec: GraphSpec = spec.parse()?;
            let text = write_graph(&spec.generate()?.graph);
            match out {
                Some(path) => std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Detect { path, algo } => {
            let g = read_graph(&path)?;
            let report = match algo {
                AlgoArg::Fast => detect(&g, &DecompConfig::default()),
                AlgoArg::Oracle => baseline_report(&g, oracle_detect),
                AlgoArg::Naive => baseline_report(&g, naive_detect),
            };
            if let Some(d) = &report.diagnostic {
                eprintln!("warning: {d}");
            }
            println!("{}", if report.found { "FOUND" } else { "NONE" });
            println!("{report}");
            Ok(status(report.found))
        }
        Command::Find { path } => {
            let g = read_graph(&path)?;
            let w = find(&g, &DecompConfig::default())?;
            match w {
                Some(w) => {
                    let [a, b, c, d] = w.as_array();
                    println!("FOUND {a} {b} {c} {d}");
                }
                None => println!("NONE"),
            }
            Ok(status(w.is_some()))
        }
        Command::Verify { path, a, b, c, d } => {
            let g = read_graph(&path)?;
            let ok = verify_witness(&g, &C4Witness::new(a, b, c, d));
            println!("{}", if ok { "OK" } else { "BAD" });
            Ok(status(ok))
        }
        Command::Selftest { max_n } => {
            let reports = [
                selftest::exhaustive(max_n),
                selftest::differential(2000),
                selftest::hard_instances(100),
                selftest::decomposition_invariants(100),
                selftest::orderings(1000, 1000),
                selftest::range_queries(10_000),
                selftest::structural(500),
                selftest::scaling(&[1024, 2048, 4096, 8192], 3),
            ];
            for r in &reports {
                println!("{r}");
            }
            Ok(status(reports.iter().all(|r| r.passed)))
        }
        Command::Bench { sizes, reps, csv, jobs } => {
            let mut plan = BenchPlan::new(sizes, reps);
            plan.jobs = jobs.max(1);
            let records = plan.run()?;
            if let Some(path) = csv {
                let mut all = Vec::new();
                if path.exists() && std::fs::metadata(&path)?.len() > 0 {
                    all = read_csv(File::open(&path)?).with_context(|| format!("reading {}", path.display()))?;
                }
                all.extend(records.iter().cloned());
                write_csv(File::create(&path)?, &all).with_context(|| format!("writing {}", path.display()))?;
            }
            for r in &records {
                eprintln!("n={} seed={} algo={} found={} ms={:.3}", r.n, r.seed, r.algo, u8::from(r.found), r.ms);
            }
            match fit_slope(&records, Algo::Fast) {
                Some(s) => println!("slope={s:.4}"),
                None => println!("slope=nan"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
