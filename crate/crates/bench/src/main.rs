use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rsane::manifolds::StiefelRetraction;
use rsane::{BbMode, SigmaMode};
use rsane_bench::summary::format_table;
use rsane_bench::{run_experiment, ExperimentSpec, Problem};

#[derive(Parser)]
#[command(
    name = "rsane-bench",
    version,
    about = "Run spectral residual experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenpair of a symmetric matrix on the unit sphere.
    Eig(Common),
    /// The eigenpair problem solved by the Euclidean method.
    SaneEig(Common),
    /// Nonlinear eigenvalue problem on the Stiefel manifold.
    Nep(Common),
    /// Joint diagonalization on the oblique manifold.
    Jd(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum RetractionArg {
    Qr,
    Polar,
}

#[derive(Clone, Copy, ValueEnum)]
enum BbArg {
    Rbb1,
    Rbb2,
    Adaptive,
}

#[derive(Clone, Copy, ValueEnum)]
enum SigmaArg {
    Fd,
    Exact,
}

#[derive(Args)]
struct Common {
    /// Matrix Market file (eig problems); a random SPD matrix is used otherwise.
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    /// Number of matrices in a joint diagonalization instance.
    #[arg(long)]
    nmat: Option<usize>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    reps: usize,
    #[arg(long, value_enum)]
    retraction: Option<RetractionArg>,
    #[arg(long, value_enum)]
    bb: Option<BbArg>,
    #[arg(long, value_enum)]
    sigma: Option<SigmaArg>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    max_iter: Option<usize>,
    /// Output directory for traces and summaries.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write one CSV trace per run (the default when --out is given).
    #[arg(long, overrides_with = "no_trace")]
    trace: bool,
    #[arg(long, overrides_with = "trace")]
    no_trace: bool,
}

fn spec_from(problem: Problem, a: Common) -> ExperimentSpec {
    let mut spec = ExperimentSpec::new(problem);
    spec.matrix = a.matrix;
    if let Some(n) = a.n {
        spec.n = n;
    }
    if let Some(p) = a.p {
        spec.p = p;
    }
    if let Some(k) = a.nmat {
        spec.nmat = k;
    }
    if let Some(mu) = a.mu {
        spec.mu = mu;
    }
    spec.seed = a.seed;
    spec.reps = a.reps;
    if let Some(r) = a.retraction {
        spec.retraction = match r {
            RetractionArg::Qr => StiefelRetraction::Qr,
            RetractionArg::Polar => StiefelRetraction::Polar,
        };
    }
    if let Some(b) = a.bb {
        spec.config.bb_mode = match b {
            BbArg::Rbb1 => BbMode::Rbb1,
            BbArg::Rbb2 => BbMode::Rbb2,
            BbArg::Adaptive => BbMode::Adaptive,
        };
    }
    if let Some(s) = a.sigma {
        spec.config.sigma_mode = match s {
            SigmaArg::Fd => SigmaMode::FiniteDifference,
            SigmaArg::Exact => SigmaMode::Exact,
        };
    }
    spec.eps = a.eps;
    if let Some(k) = a.max_iter {
        spec.config.max_iter = k;
    }
    spec.out = a.out;
    spec.write_traces = !a.no_trace;
    spec
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let spec = match cli.command {
        Command::Eig(a) => spec_from(Problem::Eig, a),
        Command::SaneEig(a) => spec_from(Problem::SaneEig, a),
        Command::Nep(a) => spec_from(Problem::Nep, a),
        Command::Jd(a) => spec_from(Problem::Jd, a),
    };
    let result = match run_experiment(&spec) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    print!("{}", format_table(std::slice::from_ref(&result.summary)));
    for run in &result.runs {
        let o = &run.outcome;
        match (&o.status, &o.error) {
            (Some(s), _) if !s.is_converged() => eprintln!("rep {} (seed {}): {s}", o.rep, o.seed),
            (None, Some(e)) => eprintln!("rep {} (seed {}): error: {e}", o.rep, o.seed),
            _ => {}
        }
    }
    if result.all_converged() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
