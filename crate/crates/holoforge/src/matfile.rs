//! Plain-text matrices: a header line `p m rows cols`, then `rows` lines of
//! `cols` integers. Entries may be negative and are reduced on read.

use std::path::Path;

use holoforge_core::{Matrix, RingSpec};

use crate::error::{Error, Result};

pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let head: Vec<u64> = header
        .split_whitespace()
        .map(|t| t.parse::<u64>().map_err(|e| Error::parse(hl + 1, format!("header field {t:?}: {e}"))))
        .collect::<Result<_>>()?;
    let [p, m, rows, cols] = head[..] else {
        return Err(Error::parse(hl + 1, "header must be `p m rows cols`"));
    };
    let m = u32::try_from(m).map_err(|_| Error::parse(hl + 1, "exponent too large"))?;
    let ring = RingSpec::new(p, m)?;
    let (rows, cols) = (rows as usize, cols as usize);
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        let (i, line) = lines.next().ok_or_else(|| Error::parse(hl + 1, format!("expected {rows} rows")))?;
        let row: Vec<i64> = line
            .split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|e| Error::parse(i + 1, format!("entry {t:?}: {e}"))))
            .collect::<Result<_>>()?;
        if row.len() != cols {
            return Err(Error::parse(i + 1, format!("expected {cols} entries, found {}", row.len())));
        }
        data.extend(row.into_iter().map(|x| ring.reduce(x)));
    }
    if let Some((i, _)) = lines.next() {
        return Err(Error::parse(i + 1, "trailing content"));
    }
    Ok(Matrix::new(ring, rows, cols, data)?)
}

/// Inverse of [`parse_matrix`] on reduced entries.
pub fn format_matrix(a: &Matrix) -> String {
    let r = a.ring();
    let mut out = format!("{} {} {} {}\n", r.p(), r.m(), a.rows(), a.cols());
    for row in a.to_rows() {
        let cells: Vec<String> = row.iter().map(u64::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_matrix(path: &Path) -> Result<Matrix> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.into(), source })?;
    parse_matrix(&text)
}

/// Re-reads the integer entries of `text` over another ring, so that a
/// matrix written with `±1` entries can be reused for any `p`.
pub fn parse_matrix_over(text: &str, ring: RingSpec) -> Result<Matrix> {
    let m = parse_matrix(text)?;
    let signed: Vec<i64> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .skip(1)
        .flat_map(|l| l.split_whitespace().map(|t| t.parse::<i64>().expect("checked by parse_matrix")).collect::<Vec<_>>())
        .collect();
    Ok(Matrix::from_i64(ring, m.rows(), m.cols(), &signed)?)
}
