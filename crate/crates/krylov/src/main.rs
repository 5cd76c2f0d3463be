use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use krylov::generate::MatrixKind;
use krylov::run::{self, CompareConfig, GenerateConfig, Method, Outcome, RunConfig, Variant, EXIT_ERROR};
use krylov_core::Preconditioner;

/// Krylov subspace solvers for sparse linear systems.
#[derive(Parser)]
#[command(name = "krylov", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve A x = b and print x, one value per line.
    Solve(SolveArgs),
    /// Write a seeded test matrix in Matrix Market format.
    Generate(GenerateArgs),
    /// Run several method+preconditioner variants on one system.
    Compare(CompareArgs),
}

#[derive(Args)]
struct SystemArgs {
    /// Matrix Market coordinate file.
    #[arg(long)]
    matrix: PathBuf,
    /// Right-hand side (Matrix Market vector or one value per line); all ones when omitted.
    #[arg(long)]
    rhs: Option<PathBuf>,
    /// Restart length for gmres_restarted.
    #[arg(long)]
    restart: Option<usize>,
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
    /// Iteration budget [default: 10 n].
    #[arg(long)]
    maxit: Option<usize>,
    /// Seed for a random right-hand side when --rhs is omitted.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[arg(long, value_enum, default_value = "gmres")]
    method: Method,
    /// none, ilu0 or ic0.
    #[arg(long, default_value = "none", value_parser = parse_precond)]
    precond: Preconditioner,
    /// CSV file for the residual history.
    #[arg(long)]
    history: Option<PathBuf>,
    /// Write the solution here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    kind: MatrixKind,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Mirror off-diagonal entries so diag_dominant output is SPD.
    #[arg(long)]
    symmetric: bool,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// method[+precond], e.g. gmres+ilu0 or cg+ic0; repeat or comma-separate.
    #[arg(long = "variant", required = true, value_delimiter = ',')]
    variants: Vec<Variant>,
    /// Directory receiving one <variant>.csv history per variant.
    #[arg(long)]
    history: Option<PathBuf>,
}

fn parse_precond(s: &str) -> Result<Preconditioner, String> {
    s.parse().map_err(|e: krylov_core::Error| e.to_string())
}

fn run_config(system: SystemArgs, method: Method, precond: Preconditioner) -> RunConfig {
    RunConfig {
        matrix: system.matrix,
        rhs: system.rhs,
        method,
        restart: system.restart,
        precond,
        tol: system.tol,
        max_iterations: system.maxit,
        history: None,
        out: None,
        seed: system.seed,
    }
}

fn dispatch(command: Command) -> Result<Outcome, run::CliError> {
    match command {
        Command::Solve(a) => {
            let config = RunConfig { history: a.history, out: a.out, ..run_config(a.system, a.method, a.precond) };
            run::cmd_solve(&config)
        }
        Command::Generate(a) => run::cmd_generate(&GenerateConfig {
            kind: a.kind,
            n: a.n,
            seed: a.seed,
            symmetric: a.symmetric,
            out: a.out,
        }),
        Command::Compare(a) => {
            let mut base = run_config(a.system, Method::Gmres, Preconditioner::None);
            base.history = a.history;
            run::cmd_compare(&CompareConfig { base, variants: a.variants })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR as u8 } else { 0 });
        }
    };
    match dispatch(cli.command) {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.stdout.as_bytes());
            let _ = std::io::stderr().write_all(out.stderr.as_bytes());
            ExitCode::from(out.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
