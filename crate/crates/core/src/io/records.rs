use std::fmt::Write;

use crate::error::{Error, Result};
use crate::spectra::PslRecord;

pub const RECORDS_HEADER: &str = "q,t,p,n,betti,lambda_min";

/// Formats a real with 17 significant digits in the shortest of fixed or
/// exponent notation (C's `%.17g`), so the printed value parses back to the
/// same `f64`.
pub fn fmt_real(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..17).contains(&exp) {
        let decimals = (16 - exp) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mantissa.to_string()), sign, exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn sorted(records: &[PslRecord]) -> Vec<&PslRecord> {
    let mut rows: Vec<&PslRecord> = records.iter().collect();
    rows.sort_by(|a, b| a.key_cmp(b));
    rows
}

/// Record table with header `q,t,p,n,betti,lambda_min`, rows in `(q, t, p)` order.
pub fn write_records_csv(records: &[PslRecord]) -> String {
    let mut out = String::from(RECORDS_HEADER);
    out.push('\n');
    for r in sorted(records) {
        let lambda = r.lambda_min.map(fmt_real).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.q,
            fmt_real(r.t),
            fmt_real(r.p),
            r.n,
            r.betti,
            lambda
        );
    }
    out
}

/// Long-format spectrum dump: one row per eigenvalue.
pub fn write_spectra_csv(records: &[PslRecord]) -> String {
    let mut out = String::from("q,t,p,index,eigenvalue\n");
    for r in sorted(records) {
        for (i, ev) in r.spectrum.iter().flatten().enumerate() {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                r.q,
                fmt_real(r.t),
                fmt_real(r.p),
                i,
                fmt_real(*ev)
            );
        }
    }
    out
}

pub fn read_records_csv(text: &str) -> Result<Vec<PslRecord>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == RECORDS_HEADER => {}
        _ => {
            return Err(Error::Parse {
                line: 1,
                message: format!("expected header `{RECORDS_HEADER}`"),
            })
        }
    }
    let mut out = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 6 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected 6 fields, found {}", f.len()),
            });
        }
        let bad = |what: &str| Error::Parse {
            line: line_no,
            message: format!("bad {what}"),
        };
        out.push(PslRecord {
            q: f[0].parse().map_err(|_| bad("q"))?,
            t: f[1].parse().map_err(|_| bad("t"))?,
            p: f[2].parse().map_err(|_| bad("p"))?,
            n: f[3].parse().map_err(|_| bad("n"))?,
            betti: f[4].parse().map_err(|_| bad("betti"))?,
            lambda_min: if f[5].is_empty() {
                None
            } else {
                Some(f[5].parse().map_err(|_| bad("lambda_min"))?)
            },
            spectrum: None,
        });
    }
    Ok(out)
}
