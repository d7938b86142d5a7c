use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use qturan::harness::{self, Command, InputSource, RunConfig, RunOutput, DEFAULT_TOL};

/// Numerical checks of localized spectral Turán bounds.
#[derive(Parser, Debug)]
#[command(name = "qturan", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check the proven bounds and their equality characterizations.
    Verify(GraphArgs),
    /// Scan the edge-localized signless Laplacian conjecture (never fails).
    Conjecture(GraphArgs),
    /// Check the one-negative-edge complete graphs against the signed analogue.
    Counterexample(FamilyArgs),
    /// Randomized weighted signed trials.
    RandomSigned(RandomArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// Bounds to keep, comma separated (e.g. vertex-q,a-alpha).
    #[arg(long, value_delimiter = ',')]
    theorem: Vec<String>,
    /// Values of alpha for the A_alpha bound, comma separated.
    #[arg(long, value_delimiter = ',')]
    alpha: Vec<f64>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    threads: Option<usize>,
    /// Write the run summary as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write one row per graph and bound.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Stop at the first malformed input line (exit code 3).
    #[arg(long)]
    fail_fast: bool,
}

#[derive(Args, Debug)]
struct GraphArgs {
    /// graph6 file, or a `.sg` signed edge list.
    #[arg(long, conflicts_with = "enumerate")]
    input: Option<PathBuf>,
    /// All connected graphs of order N, or of orders A..B.
    #[arg(long)]
    enumerate: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long, default_value_t = 4)]
    n_min: usize,
    #[arg(long, default_value_t = 20)]
    n_max: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct RandomArgs {
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    common: Common,
}

fn parse_range(s: &str) -> anyhow::Result<(usize, usize)> {
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let a = a.trim().parse().with_context(|| format!("bad order '{a}'"))?;
    let b = b.trim().parse().with_context(|| format!("bad order '{b}'"))?;
    Ok((a, b))
}

fn graph_input(args: &GraphArgs) -> anyhow::Result<InputSource> {
    match (&args.input, &args.enumerate) {
        (Some(p), None) => Ok(if p.extension().is_some_and(|e| e == "sg") {
            InputSource::SgFile(p.clone())
        } else {
            InputSource::Graph6File(p.clone())
        }),
        (None, Some(r)) => {
            let (min, max) = parse_range(r)?;
            Ok(InputSource::Enumerate { min, max })
        }
        _ => bail!("exactly one of --input or --enumerate is required"),
    }
}

fn config(command: Command, input: InputSource, c: &Common) -> RunConfig {
    let mut cfg = RunConfig::new(command, input);
    if !c.theorem.is_empty() {
        cfg.theorems = Some(c.theorem.clone());
    }
    if !c.alpha.is_empty() {
        cfg.alphas = c.alpha.clone();
    }
    cfg.tol = c.tol;
    cfg.threads = c
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    cfg.fail_fast = c.fail_fast;
    cfg
}

fn print_summary(out: &RunOutput) {
    let s = &out.summary;
    println!("command: {}", s.command);
    println!("processed: {}", s.processed);
    if s.skipped_disconnected > 0 {
        println!("skipped (disconnected): {}", s.skipped_disconnected);
    }
    for e in &s.input_errors {
        println!("input error (line {}): {}", e.line, e.message);
    }
    println!("violations: {}", s.violations.len());
    for v in &s.violations {
        println!("  {} {} slack={:e}", v.graph, v.bound, v.slack);
    }
    for m in &s.characterization_mismatches {
        println!(
            "  equality mismatch: {} {} equality={} ({})",
            m.graph, m.bound, m.equality, m.classification
        );
    }
    println!("equality cases: {}", s.equality_cases.len());
    for m in &s.min_slack {
        println!("  n={} graphs={} min slack={:e} at {}", m.n, m.graphs, m.min_slack, m.graph);
    }
    for c in &s.candidate_counterexamples {
        println!("  candidate: {} slack={:e}", c.graph, c.slack);
    }
    for r in &s.family {
        println!(
            "  n={} q={:.12} rhs={:.12} passed={}",
            r.n, r.q, r.rhs, r.passed
        );
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    let (cfg, common) = match &cli.command {
        Cmd::Verify(a) => (config(Command::Verify, graph_input(a)?, &a.common), &a.common),
        Cmd::Conjecture(a) => (config(Command::Conjecture, graph_input(a)?, &a.common), &a.common),
        Cmd::Counterexample(a) => (
            config(
                Command::Counterexample,
                InputSource::Family { n_min: a.n_min, n_max: a.n_max },
                &a.common,
            ),
            &a.common,
        ),
        Cmd::RandomSigned(a) => (
            config(
                Command::RandomSigned,
                InputSource::Random { n_max: a.n_max, trials: a.trials, seed: a.seed },
                &a.common,
            ),
            &a.common,
        ),
    };
    let out = harness::run(&cfg)?;
    if let Some(path) = &common.json {
        std::fs::write(path, out.summary.to_json())
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &common.csv {
        std::fs::write(path, out.csv()?).with_context(|| format!("writing {}", path.display()))?;
    }
    print_summary(&out);
    eprintln!("wall time: {:.3}s", out.summary.wall_time.as_secs_f64());
    Ok(out.summary.exit_code(cfg.fail_fast))
}
