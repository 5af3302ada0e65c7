use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct LabeledPoint {
    pub coords: Vec<f64>,
    pub label: f64,
    pub name: Option<String>,
}

/// Points in 2 or 3 dimensions, each carrying a nonzero scalar label
/// (a partial charge, for molecular input).
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledPointCloud {
    points: Vec<LabeledPoint>,
    dim: usize,
}

impl LabeledPointCloud {
    pub fn new(points: Vec<LabeledPoint>) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::InvalidParameter("point cloud is empty".into()))?;
        let dim = first.coords.len();
        if !(2..=3).contains(&dim) {
            return Err(Error::InvalidParameter(format!(
                "points must be 2- or 3-dimensional, got {dim}"
            )));
        }
        for (i, p) in points.iter().enumerate() {
            if p.coords.len() != dim {
                return Err(Error::MixedDimensions {
                    line: i + 1,
                    expected: dim,
                    found: p.coords.len(),
                });
            }
            if p.label == 0.0 {
                return Err(Error::ZeroLabel { line: i + 1 });
            }
            if p.coords.iter().any(|c| !c.is_finite()) || !p.label.is_finite() {
                return Err(Error::InvalidParameter(format!("point {i} is not finite")));
            }
        }
        Ok(LabeledPointCloud { points, dim })
    }

    pub fn from_coords(coords: Vec<Vec<f64>>, labels: Vec<f64>) -> Result<Self> {
        if coords.len() != labels.len() {
            return Err(Error::InvalidParameter(format!(
                "{} points but {} labels",
                coords.len(),
                labels.len()
            )));
        }
        LabeledPointCloud::new(
            coords
                .into_iter()
                .zip(labels)
                .map(|(coords, label)| LabeledPoint {
                    coords,
                    label,
                    name: None,
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[LabeledPoint] {
        &self.points
    }

    pub fn coords(&self, i: usize) -> &[f64] {
        &self.points[i].coords
    }

    pub fn labels(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.label).collect()
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        euclidean(&self.points[i].coords, &self.points[j].coords)
    }

    pub fn max_distance(&self) -> f64 {
        let n = self.len();
        let mut best = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                best = best.max(self.distance(i, j));
            }
        }
        best
    }

    /// Same points with every label replaced by `f(index, label)`.
    pub fn map_labels(&self, f: impl Fn(usize, f64) -> f64) -> Result<Self> {
        let points = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| LabeledPoint {
                label: f(i, p.label),
                ..p.clone()
            })
            .collect();
        LabeledPointCloud::new(points)
    }
}

pub(crate) fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

fn is_numeric(tok: &str) -> bool {
    tok.trim().parse::<f64>().is_ok()
}

/// Parses `x,y[,z],q` rows. A first line whose leading token is not a number
/// is treated as a header. Blank lines and `#` comments are skipped.
pub fn parse_points_csv(text: &str) -> Result<LabeledPointCloud> {
    let mut points = Vec::new();
    let mut dim: Option<usize> = None;
    let mut seen_content = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if !seen_content {
            seen_content = true;
            if !is_numeric(fields[0]) {
                continue;
            }
        }
        if !(3..=4).contains(&fields.len()) {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected 3 or 4 columns, found {}", fields.len()),
            });
        }
        let values = fields
            .iter()
            .map(|f| {
                f.parse::<f64>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("`{f}` is not a number"),
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        let (coords, label) = values.split_at(values.len() - 1);
        let d = *dim.get_or_insert(coords.len());
        if coords.len() != d {
            return Err(Error::MixedDimensions {
                line: line_no,
                expected: d,
                found: coords.len(),
            });
        }
        if label[0] == 0.0 {
            return Err(Error::ZeroLabel { line: line_no });
        }
        points.push(LabeledPoint {
            coords: coords.to_vec(),
            label: label[0],
            name: None,
        });
    }
    if points.is_empty() {
        return Err(Error::Parse {
            line: text.lines().count(),
            message: "no data rows".into(),
        });
    }
    LabeledPointCloud::new(points)
}

/// Multiplies every label by `mean(labels) / max pairwise distance` and
/// returns the rescaled cloud with that factor.
pub fn scale_charges(cloud: &LabeledPointCloud) -> Result<(LabeledPointCloud, f64)> {
    if cloud.len() < 2 {
        return Err(Error::InvalidParameter(
            "charge scaling needs at least two points".into(),
        ));
    }
    let mean = cloud.points.iter().map(|p| p.label).sum::<f64>() / cloud.len() as f64;
    let factor = mean / cloud.max_distance();
    if factor == 0.0 || !factor.is_finite() {
        return Err(Error::DegenerateScale);
    }
    Ok((cloud.map_labels(|_, q| q * factor)?, factor))
}
