//! Problem files, brute-force oracles, benchmarks and trace snapshots for the
//! `invgraph` solvers.

pub mod bench;
pub mod oracle;
pub mod problem;
pub mod run;
pub mod svg;

pub use bench::{load_problems, run_benchmark, run_reach, BenchOptions, BenchmarkReport, ReachRow, ReportRow, RowOutcome};
pub use oracle::{brute_force_oracle, grid_oracle, Oracle};
pub use problem::{parse_problem, parse_problem_str, Builtin, ProblemError, ProblemFile, ProblemKind, RawProblem, SolverKind};
pub use run::{run_solver, RunOptions, Trace, TraceHeader};
pub use svg::emit_svg;
