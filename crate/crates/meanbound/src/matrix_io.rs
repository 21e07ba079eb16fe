//! Plain-text matrix files: the first line holds the dimension, followed by
//! one line per row of whitespace-separated decimals. Blank lines and lines
//! starting with `#` are ignored.

use std::fmt::Write as _;
use std::path::Path;

use meanbound_core::{SpdMatrix, SymMatrix};

use crate::error::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        context: String::new(),
        line,
        msg: msg.into(),
    }
}

/// Parses the text format into a symmetric matrix. Asymmetry beyond the
/// construction tolerance is reported with its residual.
pub fn parse_matrix(text: &str) -> Result<SymMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (first, header) = lines.next().ok_or_else(|| parse_err(1, "empty matrix file"))?;
    let dim: usize = header
        .parse()
        .map_err(|_| parse_err(first, format!("expected dimension, got {header:?}")))?;
    if dim == 0 {
        return Err(parse_err(first, "dimension must be positive"));
    }
    let mut entries = Vec::with_capacity(dim * dim);
    let mut rows = 0;
    for (lineno, line) in lines {
        if rows == dim {
            return Err(parse_err(lineno, format!("more than {dim} rows")));
        }
        let before = entries.len();
        for tok in line.split_whitespace() {
            let x: f64 = tok
                .parse()
                .map_err(|_| parse_err(lineno, format!("not a number: {tok:?}")))?;
            entries.push(x);
        }
        let got = entries.len() - before;
        if got != dim {
            return Err(parse_err(lineno, format!("expected {dim} entries, got {got}")));
        }
        rows += 1;
    }
    if rows != dim {
        return Err(parse_err(first, format!("expected {dim} rows, got {rows}")));
    }
    Ok(SymMatrix::from_rows(dim, &entries)?)
}

pub fn read_matrix(path: &Path) -> Result<SymMatrix> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_matrix(&text).map_err(|e| match e {
        Error::Parse { line, msg, .. } => Error::Parse {
            context: format!("{}: ", path.display()),
            line,
            msg,
        },
        other => other,
    })
}

/// Reads and certifies an SPD matrix.
pub fn read_spd(path: &Path) -> Result<SpdMatrix> {
    Ok(SpdMatrix::new(read_matrix(path)?)?)
}

/// Writes a matrix in the same text format, with round-trip precision.
pub fn format_matrix(m: &SymMatrix) -> String {
    let n = m.dim();
    let mut out = format!("{n}\n");
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| format!("{:e}", m.get(i, j))).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}
