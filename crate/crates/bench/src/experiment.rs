//! Batches of seeded runs and their output files.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use rsane::fields::{EigenField, EuclideanEigenField, NepField};
use rsane::linalg::Mat;
use rsane::manifolds::{Oblique, Sphere, Stiefel, StiefelRetraction};
use rsane::solver::sane_solve;
use rsane::{solve, BbMode, Manifold, SolverConfig, SolverReport, VectorField};

use crate::error::{BenchError, Result};
use crate::generate::{eig_start, jd_instance, random_spd, rep_seed, stiefel_start};
use crate::mtx::load_matrix_market;
use crate::summary::{
    format_table, summarize, write_runs_csv, write_summary_csv, RunOutcome, SummaryRow,
};
use crate::trace::save_trace;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem {
    /// Extreme eigenpair problem on the sphere.
    Eig,
    /// The same problem solved in `R^n` by the Euclidean method.
    SaneEig,
    /// Nonlinear eigenvalue problem on the Stiefel manifold.
    Nep,
    /// Joint diagonalization on the oblique manifold.
    Jd,
}

impl Problem {
    /// Residual tolerance used when the spec does not set one. For the eig
    /// problems this is the base of the relative test `max(eps, eps ‖G(x0)‖)`.
    pub fn default_eps(self) -> f64 {
        match self {
            Problem::Eig | Problem::SaneEig => 2e-5,
            Problem::Nep => 1e-4,
            Problem::Jd => 1e-5,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub problem: Problem,
    /// Matrix Market file for the eig problems; a random SPD matrix of size
    /// `n` is generated per run when absent.
    pub matrix: Option<PathBuf>,
    pub n: usize,
    pub p: usize,
    /// Number of matrices in a joint diagonalization instance.
    pub nmat: usize,
    pub mu: f64,
    pub seed: u64,
    pub reps: usize,
    pub retraction: StiefelRetraction,
    pub config: SolverConfig,
    /// Overrides [`Problem::default_eps`].
    pub eps: Option<f64>,
    pub out: Option<PathBuf>,
    pub write_traces: bool,
}

impl ExperimentSpec {
    pub fn new(problem: Problem) -> Self {
        let mut config = SolverConfig::default();
        if problem == Problem::SaneEig {
            config.bb_mode = BbMode::Rbb1;
        }
        let p = match problem {
            Problem::Eig | Problem::SaneEig => 1,
            Problem::Nep => 10,
            Problem::Jd => 20,
        };
        Self {
            problem,
            matrix: None,
            n: 100,
            p,
            nmat: 5,
            mu: 1.0,
            seed: 0,
            reps: 1,
            retraction: StiefelRetraction::Polar,
            config,
            eps: None,
            out: None,
            write_traces: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(BenchError::Spec(m.to_string()));
        if self.reps == 0 {
            return bad("repetitions must be at least 1");
        }
        if self.matrix.is_none() && self.n == 0 {
            return bad("n must be positive");
        }
        if matches!(self.problem, Problem::Nep | Problem::Jd) && (self.p == 0 || self.p > self.n) {
            return bad("p must satisfy 1 <= p <= n");
        }
        if self.problem == Problem::Jd && self.nmat == 0 {
            return bad("need at least one matrix");
        }
        if !(self.mu >= 0.0 && self.mu.is_finite()) {
            return bad("mu must be finite and nonnegative");
        }
        if let Some(e) = self.eps {
            if !(e > 0.0 && e.is_finite()) {
                return bad("eps must be positive");
            }
        }
        if self.matrix.is_some() && !matches!(self.problem, Problem::Eig | Problem::SaneEig) {
            return bad("a matrix file only applies to the eig problems");
        }
        self.config.validate()?;
        Ok(())
    }

    /// Label used in summaries and output file names.
    pub fn name(&self) -> String {
        let source = || match &self.matrix {
            Some(p) => p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "matrix".into()),
            None => "spd".into(),
        };
        match self.problem {
            Problem::Eig => format!("rsane-eig-{}", source()),
            Problem::SaneEig => format!("sane-eig-{}", source()),
            Problem::Nep => format!("rsane-nep-{}", retraction_name(self.retraction)),
            Problem::Jd => "rsane-jd".into(),
        }
    }
}

pub fn retraction_name(r: StiefelRetraction) -> &'static str {
    match r {
        StiefelRetraction::Qr => "qr",
        StiefelRetraction::Polar => "polar",
    }
}

/// One run: the outcome row plus the full report when the solver produced one.
#[derive(Debug, Clone)]
pub struct Run {
    pub outcome: RunOutcome,
    pub report: Option<SolverReport>,
}

#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub name: String,
    pub runs: Vec<Run>,
    pub summary: SummaryRow,
}

impl ExperimentResult {
    pub fn all_converged(&self) -> bool {
        self.runs.iter().all(|r| r.outcome.converged())
    }
}

/// Runs `solve` and records the wall-clock time on the report.
pub fn timed<F>(f: F) -> rsane::Result<SolverReport>
where
    F: FnOnce() -> rsane::Result<SolverReport>,
{
    let start = Instant::now();
    let mut report = f()?;
    report.elapsed_secs = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Runs every repetition, in parallel, and writes the outputs when
/// `spec.out` is set. Solver errors are recorded per run; only problems
/// with the spec itself or its input files are fatal.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    spec.validate()?;
    let shared = match (&spec.matrix, spec.problem) {
        (Some(path), Problem::Eig | Problem::SaneEig) => {
            Some(EigenField::sparse(load_matrix_market(path)?)?)
        }
        _ => None,
    };
    let runs: Vec<Run> = (0..spec.reps)
        .into_par_iter()
        .map(|rep| run_one(spec, shared.as_ref(), rep))
        .collect();
    let (n, p) = match &shared {
        Some(f) => (f.dim(), 1),
        None => (spec.n, spec.p),
    };
    let outcomes: Vec<RunOutcome> = runs.iter().map(|r| r.outcome.clone()).collect();
    let name = spec.name();
    let result = ExperimentResult {
        summary: summarize(&name, n, p, &outcomes),
        name,
        runs,
    };
    if let Some(dir) = &spec.out {
        write_outputs(dir, &result, spec.write_traces)?;
    }
    Ok(result)
}

fn run_one(spec: &ExperimentSpec, shared: Option<&EigenField>, rep: usize) -> Run {
    let seed = rep_seed(spec.seed, rep);
    let (report, nrmf) = match solve_instance(spec, shared, seed) {
        Ok(v) => v,
        Err(e) => {
            return Run {
                outcome: RunOutcome {
                    rep,
                    seed,
                    status: None,
                    nfe: 0,
                    nrmf: f64::NAN,
                    nitr: 0,
                    time_secs: 0.0,
                    error: Some(e.to_string()),
                },
                report: None,
            }
        }
    };
    Run {
        outcome: RunOutcome {
            rep,
            seed,
            status: Some(report.status),
            nfe: report.nfe,
            nrmf,
            nitr: report.iterations,
            time_secs: report.elapsed_secs,
            error: None,
        },
        report: Some(report),
    }
}

fn solve_instance(
    spec: &ExperimentSpec,
    shared: Option<&EigenField>,
    seed: u64,
) -> Result<(SolverReport, f64)> {
    let eps = spec.eps.unwrap_or(spec.problem.default_eps());
    let mut cfg = spec.config.clone();
    cfg.eps = eps;
    match spec.problem {
        Problem::Eig | Problem::SaneEig => {
            let generated;
            let field = match shared {
                Some(f) => f,
                None => {
                    generated = EigenField::dense(random_spd(spec.n, seed)?)?;
                    &generated
                }
            };
            let euclid = EuclideanEigenField::new(field);
            let x0 = eig_start(field.dim());
            cfg.eps = eps.max(eps * euclid.eval(&x0)?.norm());
            let report = if spec.problem == Problem::Eig {
                timed(|| solve(field, &Sphere::new(field.dim()), &x0, &cfg))?
            } else {
                timed(|| sane_solve(&euclid, &x0, &cfg))?
            };
            let nrmf = eig_nrmf(&euclid, &report.x, &x0)?;
            Ok((report, nrmf))
        }
        Problem::Nep => {
            let field = NepField::new(spec.n, spec.p, spec.mu)?;
            let geom = Stiefel::new(spec.n, spec.p, spec.retraction);
            let x0 = stiefel_start(spec.n, spec.p, seed)?;
            let report = timed(|| solve(&field, &geom, &x0, &cfg))?;
            let nrmf = report.residual_norm;
            Ok((report, nrmf))
        }
        Problem::Jd => {
            let (field, x0) = jd_instance(spec.n, spec.p, spec.nmat, seed)?;
            let geom = Oblique::new(spec.n, spec.p);
            debug_assert!(geom.feasibility_gap(&x0) <= 1e-12);
            let report = timed(|| solve(&field, &geom, &x0, &cfg))?;
            let nrmf = report.residual_norm;
            Ok((report, nrmf))
        }
    }
}

/// `min(‖G(x)‖ / ‖x0‖, ‖G(x)‖)` with `G` the Euclidean eigen-residual.
pub fn eig_nrmf(euclid: &EuclideanEigenField, x: &Mat, x0: &Mat) -> Result<f64> {
    let g = euclid.eval(x)?.norm();
    Ok((g / x0.norm()).min(g))
}

/// Writes `summary.txt`, `summary.csv`, `runs.csv` and, optionally, one trace
/// per run into `dir`.
pub fn write_outputs(dir: &Path, result: &ExperimentResult, traces: bool) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| BenchError::io(dir, e))?;
    let create = |name: &str| -> Result<BufWriter<File>> {
        let path = dir.join(name);
        File::create(&path)
            .map(BufWriter::new)
            .map_err(|e| BenchError::io(path, e))
    };
    let table = format_table(std::slice::from_ref(&result.summary));
    let path = dir.join("summary.txt");
    fs::write(&path, table).map_err(|e| BenchError::io(path, e))?;
    write_summary_csv(
        std::slice::from_ref(&result.summary),
        create("summary.csv")?,
    )?;
    let outcomes: Vec<RunOutcome> = result.runs.iter().map(|r| r.outcome.clone()).collect();
    write_runs_csv(&outcomes, create("runs.csv")?)?;
    if traces {
        for run in &result.runs {
            if let Some(report) = &run.report {
                let path = dir.join(trace_file_name(&result.name, run.outcome.rep));
                save_trace(&path, &report.trace)?;
            }
        }
    }
    Ok(())
}

pub fn trace_file_name(name: &str, rep: usize) -> String {
    format!("{name}-rep{rep:03}.csv")
}
