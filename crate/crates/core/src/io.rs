//! Plain-text instance files.
//!
//! Whitespace-separated tokens: the order `n`, then `n * n` row-major entries
//! of `A`, optionally followed by `n * n` entries of `B`. Lines whose first
//! non-blank character is `#` are comments. The usual QAP benchmark layout
//! (`n`, blank line, `A`, blank line, `B`) reads as is.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::SquareMatrix;

/// One or two matrices of a common order.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceFile {
    pub a: SquareMatrix,
    pub b: Option<SquareMatrix>,
}

impl InstanceFile {
    pub fn single(a: SquareMatrix) -> Self {
        Self { a, b: None }
    }

    pub fn pair(a: SquareMatrix, b: SquareMatrix) -> Result<Self> {
        b.check_order(a.order())?;
        Ok(Self { a, b: Some(b) })
    }

    pub fn order(&self) -> usize {
        self.a.order()
    }
}

fn tokens(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .filter(|line| !line.trim_start().starts_with('#'))
        .flat_map(str::split_whitespace)
}

/// Reads an order followed by `count` matrices, where `count` must be one of
/// `allowed`. Token positions in errors are 1-based and count the order token.
pub fn parse_matrices(text: &str, allowed: &[usize]) -> Result<Vec<SquareMatrix>> {
    let toks: Vec<&str> = tokens(text).collect();
    let first = toks.first().ok_or_else(|| Error::Parse {
        position: 1,
        message: "missing matrix order".into(),
    })?;
    let n: usize = first.parse().map_err(|_| Error::Parse {
        position: 1,
        message: format!("matrix order must be a positive integer, found {first:?}"),
    })?;
    if n == 0 {
        return Err(Error::Parse {
            position: 1,
            message: "matrix order must be at least 1".into(),
        });
    }
    let entries = &toks[1..];
    let per = n * n;
    let count = entries.len() / per;
    if !entries.len().is_multiple_of(per) || !allowed.contains(&count) {
        let wanted = allowed
            .iter()
            .map(|k| k * per)
            .find(|&w| w >= entries.len())
            .or_else(|| allowed.iter().map(|k| k * per).max())
            .unwrap_or(per);
        let position = if entries.len() < wanted {
            entries.len() + 2
        } else {
            wanted + 2
        };
        return Err(Error::Parse {
            position,
            message: format!(
                "expected {} entries for order {n}, found {}",
                allowed
                    .iter()
                    .map(|k| (k * per).to_string())
                    .collect::<Vec<_>>()
                    .join(" or "),
                entries.len()
            ),
        });
    }
    let mut values = Vec::with_capacity(entries.len());
    for (idx, tok) in entries.iter().enumerate() {
        let value: f64 = tok
            .parse()
            .ok()
            .filter(|v: &f64| v.is_finite())
            .ok_or_else(|| Error::Parse {
                position: idx + 2,
                message: format!("expected a finite number, found {tok:?}"),
            })?;
        values.push(value);
    }
    Ok(values
        .chunks_exact(per)
        .map(|chunk| SquareMatrix::from_parts(n, chunk.to_vec()))
        .collect())
}

pub fn parse_instance(text: &str) -> Result<InstanceFile> {
    let mut mats = parse_matrices(text, &[1, 2])?.into_iter();
    let a = mats.next().expect("at least one matrix");
    Ok(InstanceFile { a, b: mats.next() })
}

pub fn parse_instance_bytes(bytes: &[u8]) -> Result<InstanceFile> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse {
        position: 1,
        message: format!("input is not UTF-8: {e}"),
    })?;
    parse_instance(text)
}

/// Writes the order, a blank line, each matrix, blank-line separated.
/// Values use the shortest representation that parses back to the same
/// `f64`, so integers carry no fractional part.
pub fn emit_matrices(mats: &[&SquareMatrix]) -> String {
    let mut out = String::new();
    if let Some(first) = mats.first() {
        let _ = writeln!(out, "{}", first.order());
    }
    for m in mats {
        out.push('\n');
        out.push_str(&m.to_string());
    }
    out
}

pub fn emit_instance(f: &InstanceFile) -> String {
    match &f.b {
        Some(b) => emit_matrices(&[&f.a, b]),
        None => emit_matrices(&[&f.a]),
    }
}
