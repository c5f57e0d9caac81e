//! Matrix Market reader for real symmetric matrices.
//!
//! Supports the `coordinate` and `array` formats with `real` or `integer`
//! fields and `general` or `symmetric` symmetry. General files must be
//! numerically symmetric; they are symmetrized exactly on load.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use rsane::linalg::CsrMatrix;

use crate::error::{BenchError, Result};

/// Relative asymmetry tolerated in a `general` file.
pub const ASYMMETRY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Layout {
    Coordinate,
    Array,
}

pub fn load_matrix_market(path: impl AsRef<Path>) -> Result<CsrMatrix> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| BenchError::io(path, e))?;
    read_matrix_market(BufReader::new(file)).map_err(|e| match e {
        BenchError::Parse { .. } => BenchError::InFile {
            path: path.to_path_buf(),
            source: Box::new(e),
        },
        other => other,
    })
}

pub fn read_matrix_market(reader: impl BufRead) -> Result<CsrMatrix> {
    let mut lines = reader.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (line_no, header) = match lines.next() {
        Some((n, l)) => (n, l.map_err(|e| BenchError::parse(n, e.to_string()))?),
        None => return Err(BenchError::parse(1, "empty file")),
    };
    let (layout, symmetric) = parse_header(&header, line_no)?;

    // skip comments and blank lines up to the size line
    let mut data = lines.filter_map(|(n, l)| match l {
        Ok(s) if s.trim().is_empty() || s.trim_start().starts_with('%') => None,
        Ok(s) => Some(Ok((n, s))),
        Err(e) => Some(Err(BenchError::parse(n, e.to_string()))),
    });
    let (size_line, size) = data
        .next()
        .ok_or_else(|| BenchError::parse(line_no + 1, "missing size line"))??;
    let dims = parse_numbers::<usize>(&size, size_line)?;
    let (nrows, ncols, expected) = match (layout, dims.as_slice()) {
        (Layout::Coordinate, &[r, c, nnz]) => (r, c, nnz),
        (Layout::Array, &[r, c]) => {
            let count = if symmetric { r * (r + 1) / 2 } else { r * c };
            (r, c, count)
        }
        _ => return Err(BenchError::parse(size_line, "malformed size line")),
    };
    if nrows != ncols {
        return Err(BenchError::parse(
            size_line,
            format!("matrix is {nrows}x{ncols}, expected square"),
        ));
    }
    let n = nrows;

    let mut triplets = Vec::with_capacity(if symmetric { 2 * expected } else { expected });
    let mut count = 0usize;
    let mut last_line = size_line;
    for item in data {
        let (ln, text) = item?;
        last_line = ln;
        if count == expected {
            return Err(BenchError::parse(
                ln,
                format!("more than {expected} entries"),
            ));
        }
        let (i, j, v) = match layout {
            Layout::Coordinate => {
                let fields: Vec<&str> = text.split_whitespace().collect();
                if fields.len() != 3 {
                    return Err(BenchError::parse(ln, "expected `row col value`"));
                }
                let i = parse_index(fields[0], n, ln)?;
                let j = parse_index(fields[1], n, ln)?;
                (i, j, parse_value(fields[2], ln)?)
            }
            Layout::Array => {
                let fields: Vec<&str> = text.split_whitespace().collect();
                if fields.len() != 1 {
                    return Err(BenchError::parse(ln, "expected one value per line"));
                }
                let (i, j) = array_position(count, n, symmetric);
                (i, j, parse_value(fields[0], ln)?)
            }
        };
        if symmetric {
            if j > i {
                return Err(BenchError::parse(
                    ln,
                    "symmetric file has an entry above the diagonal",
                ));
            }
            triplets.push((i, j, v));
            if i != j {
                triplets.push((j, i, v));
            }
        } else {
            triplets.push((i, j, v));
        }
        count += 1;
    }
    if count != expected {
        return Err(BenchError::parse(
            last_line,
            format!("expected {expected} entries, found {count}"),
        ));
    }

    let a = CsrMatrix::from_triplets(n, n, &triplets)?;
    if symmetric {
        return Ok(a);
    }
    symmetrize(&a)
}

fn parse_header(header: &str, line: usize) -> Result<(Layout, bool)> {
    let words: Vec<String> = header
        .split_whitespace()
        .map(str::to_ascii_lowercase)
        .collect();
    if words.len() != 5 || words[0] != "%%matrixmarket" {
        return Err(BenchError::parse(line, "missing %%MatrixMarket header"));
    }
    if words[1] != "matrix" {
        return Err(BenchError::parse(
            line,
            format!("unsupported object `{}`", words[1]),
        ));
    }
    let layout = match words[2].as_str() {
        "coordinate" => Layout::Coordinate,
        "array" => Layout::Array,
        other => {
            return Err(BenchError::parse(
                line,
                format!("unsupported format `{other}`"),
            ))
        }
    };
    match words[3].as_str() {
        "real" | "integer" => {}
        other => {
            return Err(BenchError::parse(
                line,
                format!("field `{other}` is not real"),
            ))
        }
    }
    let symmetric = match words[4].as_str() {
        "general" => false,
        "symmetric" => true,
        other => {
            return Err(BenchError::parse(
                line,
                format!("unsupported symmetry `{other}`"),
            ))
        }
    };
    Ok((layout, symmetric))
}

fn parse_numbers<T: std::str::FromStr>(text: &str, line: usize) -> Result<Vec<T>> {
    text.split_whitespace()
        .map(|w| {
            w.parse()
                .map_err(|_| BenchError::parse(line, format!("bad number `{w}`")))
        })
        .collect()
}

fn parse_index(word: &str, n: usize, line: usize) -> Result<usize> {
    let i: usize = word
        .parse()
        .map_err(|_| BenchError::parse(line, format!("bad index `{word}`")))?;
    if i == 0 || i > n {
        return Err(BenchError::parse(
            line,
            format!("index {i} outside 1..={n}"),
        ));
    }
    Ok(i - 1)
}

fn parse_value(word: &str, line: usize) -> Result<f64> {
    let v: f64 = word
        .parse()
        .map_err(|_| BenchError::parse(line, format!("bad value `{word}`")))?;
    if !v.is_finite() {
        return Err(BenchError::parse(
            line,
            format!("non-finite value `{word}`"),
        ));
    }
    Ok(v)
}

/// Zero-based position of the `k`-th stored value of a column-major array.
fn array_position(k: usize, n: usize, symmetric: bool) -> (usize, usize) {
    if !symmetric {
        return (k % n, k / n);
    }
    // lower triangle, column by column
    let mut j = 0;
    let mut start = 0;
    while start + (n - j) <= k {
        start += n - j;
        j += 1;
    }
    (j + (k - start), j)
}

fn symmetrize(a: &CsrMatrix) -> Result<CsrMatrix> {
    // ‖A - Aᵀ‖²: stored pairs, plus stored entries whose mirror is absent
    let mut diff_sq = 0.0;
    for (i, j, v) in a.triplets() {
        let m = a.get(j, i);
        diff_sq += (v - m) * (v - m);
        if m == 0.0 {
            diff_sq += v * v;
        }
    }
    let asym = diff_sq.sqrt();
    let scale = a.frobenius_norm();
    if asym > ASYMMETRY_TOL * scale {
        return Err(BenchError::Spec(format!(
            "general matrix is not symmetric (relative asymmetry {:.3e})",
            asym / scale
        )));
    }
    let n = a.shape().0;
    let half: Vec<(usize, usize, f64)> = a
        .triplets()
        .flat_map(|(i, j, v)| [(i, j, 0.5 * v), (j, i, 0.5 * v)])
        .collect();
    Ok(CsrMatrix::from_triplets(n, n, &half)?)
}
