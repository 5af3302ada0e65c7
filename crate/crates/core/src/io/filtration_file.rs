use std::fmt::Write;

use super::records::fmt_real;
use crate::complex::{Filtration, Simplex};
use crate::error::{Error, Result};

/// Reads `birth v0 v1 ... vk` lines. `#` starts a comment. Vertex ids may
/// appear in any order within a line and lines may be in any order; the
/// result is validated and normalized.
pub fn parse_filtration_file(text: &str) -> Result<Filtration> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let birth_tok = tokens.next().unwrap_or_default();
        let birth: f64 = birth_tok.parse().map_err(|_| Error::Parse {
            line: line_no,
            message: format!("`{birth_tok}` is not a birth value"),
        })?;
        let vertices = tokens
            .map(|t| {
                t.parse::<usize>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("`{t}` is not a vertex id"),
                })
            })
            .collect::<Result<Vec<usize>>>()?;
        let simplex = Simplex::from_unsorted(vertices).map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        entries.push((simplex, birth));
    }
    Filtration::new(entries)
}

pub fn write_filtration_file(f: &Filtration) -> String {
    let mut out = String::new();
    for (s, b) in f.entries() {
        let _ = write!(out, "{}", fmt_real(*b));
        for v in s.vertices() {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out
}
