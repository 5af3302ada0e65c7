//! PQR reader.
//!
//! Only `ATOM`/`HETATM` records are read. Fields are whitespace separated and
//! read from the right: `x y z charge radius` are the last five fields, so
//! residue naming and a missing chain id do not matter.

use super::points::{LabeledPoint, LabeledPointCloud};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default)]
pub struct PqrOptions {
    /// Skip atoms whose charge is exactly zero instead of failing.
    pub drop_zero_charge: bool,
    /// Skip atoms whose element (first letter of the atom name) is hydrogen.
    pub drop_hydrogens: bool,
}

pub fn parse_pqr(text: &str, opts: PqrOptions) -> Result<LabeledPointCloud> {
    let mut points = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.first() {
            Some(&"ATOM") | Some(&"HETATM") => {}
            _ => continue,
        }
        if fields.len() < 7 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("atom record has {} fields, need at least 7", fields.len()),
            });
        }
        let tail = &fields[fields.len() - 5..];
        let nums = tail
            .iter()
            .map(|f| {
                f.parse::<f64>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("`{f}` is not a number"),
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        let name = fields[2].to_string();
        if opts.drop_hydrogens && name.trim_start_matches(|c: char| c.is_ascii_digit()).starts_with('H') {
            continue;
        }
        let charge = nums[3];
        if charge == 0.0 {
            if opts.drop_zero_charge {
                continue;
            }
            return Err(Error::ZeroLabel { line: line_no });
        }
        points.push(LabeledPoint {
            coords: nums[..3].to_vec(),
            label: charge,
            name: Some(name),
        });
    }
    if points.is_empty() {
        return Err(Error::Parse {
            line: text.lines().count(),
            message: "no ATOM/HETATM records".into(),
        });
    }
    LabeledPointCloud::new(points)
}
