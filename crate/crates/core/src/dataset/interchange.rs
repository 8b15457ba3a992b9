//! Plain-text dataset interchange.
//!
//! ```text
//! rows,cols
//! label,v0,v1,...,v{rows-1}      one line per sample column
//! ```
//!
//! Values are written with 17 significant digits so a write/read cycle is
//! lossless.

use std::io::Write;
use std::path::Path;

use super::LabeledDataset;
use crate::eigencore::Matrix;
use crate::error::{Error, Result};

pub fn write_csv<W: Write>(d: &LabeledDataset, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{},{}", d.dim(), d.len())?;
    for (col, &label) in d.samples().columns().zip(d.labels()) {
        write!(out, "{label}")?;
        for v in col {
            write!(out, ",{v:.16e}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn to_csv(d: &LabeledDataset) -> String {
    let mut buf = Vec::new();
    write_csv(d, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("csv output is ASCII")
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<LabeledDataset> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_csv(&text)
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses the interchange format. Columns may arrive in any label order;
/// they are regrouped stably by label.
pub fn parse_csv(text: &str) -> Result<LabeledDataset> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let (rows, cols) = header
        .split_once(',')
        .and_then(|(r, c)| {
            Some((
                r.trim().parse::<usize>().ok()?,
                c.trim().parse::<usize>().ok()?,
            ))
        })
        .ok_or_else(|| parse_err(1, "header must be `rows,cols`"))?;
    if rows == 0 || cols == 0 {
        return Err(parse_err(1, "rows and cols must be positive"));
    }
    let total = rows
        .checked_mul(cols)
        .ok_or_else(|| parse_err(1, "shape overflows"))?;

    let mut data = Vec::with_capacity(total.min(text.len()));
    let mut labels = Vec::with_capacity(cols.min(text.len()));
    for (line_no, line) in lines.by_ref() {
        if labels.len() == cols {
            if line.trim().is_empty() {
                continue;
            }
            return Err(parse_err(line_no, "more sample lines than declared"));
        }
        let mut fields = line.split(',');
        let label = fields
            .next()
            .and_then(|f| f.trim().parse::<usize>().ok())
            .ok_or_else(|| parse_err(line_no, "bad label"))?;
        let before = data.len();
        for f in fields {
            let v: f64 = f
                .trim()
                .parse()
                .map_err(|_| parse_err(line_no, format!("bad value `{f}`")))?;
            if !v.is_finite() {
                return Err(parse_err(line_no, "non-finite value"));
            }
            if data.len() - before == rows {
                return Err(parse_err(line_no, "too many values"));
            }
            data.push(v);
        }
        if data.len() - before != rows {
            return Err(parse_err(
                line_no,
                format!("expected {rows} values, found {}", data.len() - before),
            ));
        }
        labels.push(label);
    }
    if labels.len() != cols {
        return Err(parse_err(
            labels.len() + 2,
            format!("expected {cols} sample lines, found {}", labels.len()),
        ));
    }
    LabeledDataset::from_unordered(Matrix::new(rows, cols, data)?, labels)
}
