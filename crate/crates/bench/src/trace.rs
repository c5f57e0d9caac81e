//! Per-iteration CSV traces.
//!
//! One row per [`IterationRecord`], floats in `{:.16e}` so that reading a
//! trace back reproduces the records bit for bit. Absent step fields are
//! empty cells.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use rsane::IterationRecord;

use crate::error::{BenchError, Result};

pub const COLUMNS: [&str; 15] = [
    "k",
    "residual_norm",
    "merit",
    "c",
    "q",
    "nfe",
    "feasibility_gap",
    "sigma",
    "tau_start",
    "tau",
    "backtracks",
    "rel_x",
    "rel_f",
    "y_gap",
    "fallback",
];

fn float(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt_float(v: Option<f64>) -> String {
    v.map(float).unwrap_or_default()
}

pub fn write_trace<W: Write>(trace: &[IterationRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS)?;
    for r in trace {
        w.write_record([
            r.k.to_string(),
            float(r.residual_norm),
            float(r.merit),
            float(r.c),
            float(r.q),
            r.nfe.to_string(),
            float(r.feasibility_gap),
            opt_float(r.sigma),
            opt_float(r.tau_start),
            opt_float(r.tau),
            r.backtracks.map(|b| b.to_string()).unwrap_or_default(),
            opt_float(r.rel_x),
            opt_float(r.rel_f),
            opt_float(r.y_gap),
            u8::from(r.fallback).to_string(),
        ])?;
    }
    w.flush().map_err(|e| BenchError::Csv(e.into()))?;
    Ok(())
}

pub fn save_trace(path: &Path, trace: &[IterationRecord]) -> Result<()> {
    let file = File::create(path).map_err(|e| BenchError::io(path, e))?;
    write_trace(trace, BufWriter::new(file))
}

pub fn read_trace<R: Read>(input: R) -> Result<Vec<IterationRecord>> {
    let mut rd = csv::Reader::from_reader(input);
    let header = rd.headers()?.clone();
    if header.iter().ne(COLUMNS) {
        return Err(BenchError::parse(1, "unexpected trace header"));
    }
    let mut out = Vec::new();
    for (i, rec) in rd.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        let cell = |c: usize| rec.get(c).unwrap_or("");
        let req = |c: usize| -> Result<f64> {
            cell(c)
                .parse()
                .map_err(|_| BenchError::parse(line, format!("bad {} `{}`", COLUMNS[c], cell(c))))
        };
        let opt = |c: usize| -> Result<Option<f64>> {
            if cell(c).is_empty() {
                Ok(None)
            } else {
                req(c).map(Some)
            }
        };
        let int = |c: usize| -> Result<usize> {
            cell(c)
                .parse()
                .map_err(|_| BenchError::parse(line, format!("bad {} `{}`", COLUMNS[c], cell(c))))
        };
        out.push(IterationRecord {
            k: int(0)?,
            residual_norm: req(1)?,
            merit: req(2)?,
            c: req(3)?,
            q: req(4)?,
            nfe: int(5)?,
            feasibility_gap: req(6)?,
            sigma: opt(7)?,
            tau_start: opt(8)?,
            tau: opt(9)?,
            backtracks: if cell(10).is_empty() {
                None
            } else {
                Some(int(10)? as u32)
            },
            rel_x: opt(11)?,
            rel_f: opt(12)?,
            y_gap: opt(13)?,
            fallback: match cell(14) {
                "0" => false,
                "1" => true,
                other => return Err(BenchError::parse(line, format!("bad fallback `{other}`"))),
            },
        });
    }
    Ok(out)
}
