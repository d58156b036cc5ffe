use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use invgraph_harness::{
    brute_force_oracle, emit_svg, load_problems, parse_problem, run_benchmark, run_reach, run_solver, BenchOptions,
    RowOutcome, RunOptions, SolverKind, Trace,
};

#[derive(Parser)]
#[command(name = "invgraph", version, about = "Inverse graphical global optimization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one problem file.
    Solve {
        problem: PathBuf,
        #[arg(long, value_enum, default_value = "inverse")]
        solver: SolverArg,
        /// Accuracy target; defaults to the file's epsilon.
        #[arg(long)]
        eps: Option<f64>,
        /// Domain scale S in (0, 1).
        #[arg(long)]
        scale: Option<f64>,
        /// Write a line-delimited JSON trace (with boxes) here.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Run every problem in a directory and write a CSV report.
    Bench {
        dir: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Restrict to these solvers instead of each file's list.
        #[arg(long, value_enum, value_delimiter = ',')]
        solvers: Option<Vec<SolverArg>>,
        /// Per-run timeout in milliseconds.
        #[arg(long)]
        timeout_ms: Option<u64>,
        /// Also time first attainment of each problem's target value.
        #[arg(long)]
        reach: Option<PathBuf>,
    },
    /// Brute-force grid reference value of a design-centering problem.
    Oracle {
        problem: PathBuf,
        #[arg(long, default_value_t = 1000)]
        grid: usize,
    },
    /// Render one event of a trace as SVG.
    Snapshot {
        trace: PathBuf,
        #[arg(long)]
        step: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum SolverArg {
    Inverse,
    InverseLipschitz,
    Bnb,
}

impl From<SolverArg> for SolverKind {
    fn from(s: SolverArg) -> Self {
        match s {
            SolverArg::Inverse => SolverKind::Inverse,
            SolverArg::InverseLipschitz => SolverKind::InverseLipschitz,
            SolverArg::Bnb => SolverKind::Bnb,
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve {
            problem,
            solver,
            eps,
            scale,
            trace,
        } => {
            let p = parse_problem(&problem)?;
            let solver = SolverKind::from(solver);
            let opts = RunOptions {
                epsilon: eps,
                domain_scale: scale,
                trace: trace.is_some(),
                trace_boxes: trace.is_some(),
                timeout: None,
            };
            let r = run_solver(&p, solver, &opts).with_context(|| format!("{} on {}", solver, p.name))?;
            println!("problem      {}", p.name);
            println!("solver       {solver}");
            println!("value        {}", r.value);
            println!("point        {:?}", r.point);
            println!("certificate  {}", r.accuracy_certificate);
            println!(
                "calls        classify={} objective={} sub_ops={}",
                r.stats.classification_calls, r.stats.objective_calls, r.stats.sub_operations
            );
            println!("splits       {}", r.stats.splits);
            println!("seconds      {:.6}", r.stats.wall_time);
            if let (Some(path), Some(events)) = (trace, r.trace) {
                Trace::new(&p, solver, eps.unwrap_or(p.epsilon), events).save(&path)?;
                println!("trace        {}", path.display());
            }
        }
        Command::Bench {
            dir,
            out,
            solvers,
            timeout_ms,
            reach,
        } => {
            let problems = load_problems(&dir)?;
            let opts = BenchOptions {
                solvers: solvers.map(|v| v.into_iter().map(SolverKind::from).collect()),
                timeout: timeout_ms.map(Duration::from_millis),
            };
            let f = File::create(&out).with_context(|| format!("creating {}", out.display()))?;
            let report = run_benchmark(&problems, &opts, BufWriter::new(f))?;
            let timeouts = report.rows.iter().filter(|r| r.outcome == RowOutcome::TimedOut).count();
            println!("{} rows ({timeouts} timed out) -> {}", report.rows.len(), out.display());
            if let Some(path) = reach {
                let f = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
                let rows = run_reach(&problems, &opts, BufWriter::new(f))?;
                println!("{} reach rows -> {}", rows.len(), path.display());
            }
        }
        Command::Oracle { problem, grid } => {
            let p = parse_problem(&problem)?;
            let o = brute_force_oracle(&p, grid)?;
            println!("value       {}", o.value);
            println!("point       {:?}", o.point);
            println!("grid_error  {}", o.grid_error);
        }
        Command::Snapshot { trace, step, out } => {
            let t = Trace::load(&trace)?;
            let f = File::create(&out).with_context(|| format!("creating {}", out.display()))?;
            emit_svg(&t, step, BufWriter::new(f))?;
            println!("{}", out.display());
        }
    }
    Ok(())
}
