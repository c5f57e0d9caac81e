//! Per-run outcomes and the averaged summary table.

use std::fmt::Write as _;
use std::io::Write;

use rsane::Status;

use crate::error::{BenchError, Result};

/// Result of one run in a batch.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub rep: usize,
    pub seed: u64,
    /// `None` when the solver returned an error instead of a report.
    pub status: Option<Status>,
    pub nfe: usize,
    pub nrmf: f64,
    pub nitr: usize,
    pub time_secs: f64,
    pub error: Option<String>,
}

impl RunOutcome {
    pub fn converged(&self) -> bool {
        self.status.is_some_and(Status::is_converged)
    }
}

/// Means over the runs of one experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub name: String,
    pub n: usize,
    pub p: usize,
    pub runs: usize,
    pub converged: usize,
    pub nfe: f64,
    pub nrmf: f64,
    pub nitr: f64,
    pub time: f64,
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    if count == 0 {
        f64::NAN
    } else {
        sum / count as f64
    }
}

/// Averages the runs that produced a report; runs that errored count towards
/// `runs` only.
pub fn summarize(name: &str, n: usize, p: usize, outcomes: &[RunOutcome]) -> SummaryRow {
    let ok: Vec<&RunOutcome> = outcomes.iter().filter(|o| o.status.is_some()).collect();
    SummaryRow {
        name: name.to_string(),
        n,
        p,
        runs: outcomes.len(),
        converged: outcomes.iter().filter(|o| o.converged()).count(),
        nfe: mean(ok.iter().map(|o| o.nfe as f64)),
        nrmf: mean(ok.iter().map(|o| o.nrmf)),
        nitr: mean(ok.iter().map(|o| o.nitr as f64)),
        time: mean(ok.iter().map(|o| o.time_secs)),
    }
}

pub fn format_table(rows: &[SummaryRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<24} {:>7} {:>4} {:>10} {:>10} {:>9} {:>9} {:>9}",
        "name", "n", "p", "Nfe", "NrmF", "Nitr", "Time", "conv"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{:<24} {:>7} {:>4} {:>10.1} {:>10.2e} {:>9.1} {:>9.3} {:>9}",
            r.name,
            r.n,
            r.p,
            r.nfe,
            r.nrmf,
            r.nitr,
            r.time,
            format!("{}/{}", r.converged, r.runs)
        );
    }
    s
}

pub fn write_summary_csv<W: Write>(rows: &[SummaryRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "name",
        "n",
        "p",
        "runs",
        "converged",
        "Nfe",
        "NrmF",
        "Nitr",
        "Time",
    ])?;
    for r in rows {
        w.write_record([
            r.name.clone(),
            r.n.to_string(),
            r.p.to_string(),
            r.runs.to_string(),
            r.converged.to_string(),
            format!("{:.16e}", r.nfe),
            format!("{:.16e}", r.nrmf),
            format!("{:.16e}", r.nitr),
            format!("{:.3}", r.time),
        ])?;
    }
    w.flush().map_err(|e| BenchError::Csv(e.into()))
}

pub fn write_runs_csv<W: Write>(outcomes: &[RunOutcome], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "rep", "seed", "status", "Nfe", "NrmF", "Nitr", "Time", "error",
    ])?;
    for o in outcomes {
        w.write_record([
            o.rep.to_string(),
            o.seed.to_string(),
            o.status
                .map(|s| s.as_str().to_string())
                .unwrap_or_else(|| "error".into()),
            o.nfe.to_string(),
            format!("{:.16e}", o.nrmf),
            o.nitr.to_string(),
            format!("{:.3}", o.time_secs),
            o.error.clone().unwrap_or_default(),
        ])?;
    }
    w.flush().map_err(|e| BenchError::Csv(e.into()))
}
