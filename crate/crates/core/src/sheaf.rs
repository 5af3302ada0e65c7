//! Cellular sheaves with one-dimensional stalks on a labeled simplicial complex.
//!
//! For the labeled sheaf, the restriction map of a face relation `σ ≤ τ` is
//! multiplication by
//!
//! ```text
//!     F(σ) · Π_{v ∈ τ \ σ} q_v / F(τ)
//! ```
//!
//! where `q_v` are the vertex labels and `F` is a nowhere-zero weight on
//! simplices. The constant sheaf uses the identity everywhere.

use nalgebra::DMatrix;

use crate::complex::{incidence_sign, ComplexView, Simplex};
use crate::error::{Error, Result};
use crate::io::{euclidean, LabeledPointCloud};

/// Weight function `F` on simplices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum WeightFunction {
    /// vertex → 1, edge → length, triangle → product of its edge lengths
    #[default]
    Default,
    /// vertex → 1, edge → length, triangle → sum of its edge lengths
    Sum,
    /// every simplex → 1
    One,
}

impl WeightFunction {
    pub fn name(self) -> &'static str {
        match self {
            WeightFunction::Default => "default",
            WeightFunction::Sum => "sum",
            WeightFunction::One => "one",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "default" | "product" => Some(WeightFunction::Default),
            "sum" => Some(WeightFunction::Sum),
            "one" => Some(WeightFunction::One),
            _ => None,
        }
    }
}

/// `F(simplex)` for the given weight choice, using `coords` for edge lengths.
pub fn stalk_weight(
    weight: WeightFunction,
    simplex: &Simplex,
    coords: &[Vec<f64>],
) -> Result<f64> {
    if weight == WeightFunction::One {
        return Ok(1.0);
    }
    let v = simplex.vertices();
    let length = |a: usize, b: usize| -> Result<f64> {
        let point = |x: usize| {
            coords.get(x).ok_or(Error::MissingLabel {
                vertex: x,
                available: coords.len(),
            })
        };
        let d = euclidean(point(a)?, point(b)?);
        if d == 0.0 {
            return Err(Error::ZeroWeight(simplex.clone()));
        }
        Ok(d)
    };
    match simplex.dim() {
        0 => Ok(1.0),
        1 => length(v[0], v[1]),
        2 => {
            let (a, b, c) = (length(v[0], v[1])?, length(v[0], v[2])?, length(v[1], v[2])?);
            Ok(match weight {
                WeightFunction::Sum => a + b + c,
                _ => a * b * c,
            })
        }
        dim => Err(Error::UnsupportedDim {
            weight: weight.name(),
            dim,
        }),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SheafKind {
    Constant,
    Labeled {
        labels: Vec<f64>,
        weight: WeightFunction,
        coords: Vec<Vec<f64>>,
    },
}

/// Everything needed to evaluate restriction scalars on any simplex.
#[derive(Clone, Debug, PartialEq)]
pub struct SheafSpec {
    kind: SheafKind,
}

impl SheafSpec {
    pub fn constant() -> Self {
        SheafSpec {
            kind: SheafKind::Constant,
        }
    }

    /// Labeled sheaf on the vertices of `cloud`; vertex `i` is point `i`.
    pub fn labeled(cloud: &LabeledPointCloud, weight: WeightFunction) -> Result<Self> {
        let labels = cloud.labels();
        if let Some(i) = labels.iter().position(|&q| q == 0.0) {
            return Err(Error::ZeroLabel { line: i + 1 });
        }
        Ok(SheafSpec {
            kind: SheafKind::Labeled {
                labels,
                weight,
                coords: cloud.points().iter().map(|p| p.coords.clone()).collect(),
            },
        })
    }

    pub fn kind(&self) -> &SheafKind {
        &self.kind
    }

    pub fn is_constant(&self) -> bool {
        matches!(self.kind, SheafKind::Constant)
    }

    fn label(&self, v: usize) -> Result<f64> {
        match &self.kind {
            SheafKind::Constant => Ok(1.0),
            SheafKind::Labeled { labels, .. } => {
                labels.get(v).copied().ok_or(Error::MissingLabel {
                    vertex: v,
                    available: labels.len(),
                })
            }
        }
    }

    /// `F(simplex)`; 1 for the constant sheaf.
    pub fn weight(&self, simplex: &Simplex) -> Result<f64> {
        match &self.kind {
            SheafKind::Constant => Ok(1.0),
            SheafKind::Labeled { weight, coords, .. } => stalk_weight(*weight, simplex, coords),
        }
    }

    /// Scalar of the restriction map `S(face ≤ coface)`, any codimension.
    pub fn restriction_scalar(&self, face: &Simplex, coface: &Simplex) -> Result<f64> {
        if !face.is_face_of(coface) {
            return Err(Error::NotAFace {
                face: face.clone(),
                coface: coface.clone(),
            });
        }
        if self.is_constant() || face == coface {
            return Ok(1.0);
        }
        let mut num = self.weight(face)?;
        for &v in coface.vertices() {
            if !face.vertices().contains(&v) {
                num *= self.label(v)?;
            }
        }
        Ok(num / self.weight(coface)?)
    }

    /// Vertex part of the global section `v ↦ q_v / F(v)`.
    pub fn global_section(&self, vertices: &[Simplex]) -> Result<Vec<f64>> {
        vertices
            .iter()
            .map(|s| {
                let v = s.vertices()[0];
                Ok(self.label(v)? / self.weight(s)?)
            })
            .collect()
    }
}

/// A dense matrix whose rows and columns are labeled by simplices.
#[derive(Clone, Debug, PartialEq)]
pub struct IndexedMatrix {
    pub matrix: DMatrix<f64>,
    pub rows: Vec<Simplex>,
    pub cols: Vec<Simplex>,
}

impl IndexedMatrix {
    pub fn shape(&self) -> (usize, usize) {
        self.matrix.shape()
    }
}

/// Sparse rows of the coboundary `d_q` on `view`: for each `(q+1)`-simplex
/// (lexicographic order), its `(column, entry)` pairs over the `q`-simplices.
pub(crate) fn coboundary_rows(
    view: &ComplexView,
    sheaf: &SheafSpec,
    q: usize,
) -> Result<Vec<Vec<(usize, f64)>>> {
    view.simplices(q + 1)
        .iter()
        .map(|tau| {
            tau.boundary_faces()
                .map(|(_, sigma)| {
                    let c = view
                        .position(&sigma)
                        .expect("complex views are closed under faces");
                    let sign = f64::from(incidence_sign(&sigma, tau));
                    Ok((c, sign * sheaf.restriction_scalar(&sigma, tau)?))
                })
                .collect()
        })
        .collect()
}

/// Matrix of the coboundary `d_q : C^q → C^{q+1}` on `view`.
///
/// Rows are the `(q+1)`-simplices, columns the `q`-simplices, both in
/// lexicographic order. Entry `(τ, σ)` is `[σ:τ] · S(σ ≤ τ)`.
pub fn coboundary_matrix(view: &ComplexView, sheaf: &SheafSpec, q: usize) -> Result<IndexedMatrix> {
    let rows = view.simplices(q + 1).to_vec();
    let cols = view.simplices(q).to_vec();
    let mut m = DMatrix::zeros(rows.len(), cols.len());
    for (r, entries) in coboundary_rows(view, sheaf, q)?.into_iter().enumerate() {
        for (c, v) in entries {
            m[(r, c)] = v;
        }
    }
    Ok(IndexedMatrix {
        matrix: m,
        rows,
        cols,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_rips, complex_at};

    fn s(v: &[usize]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    fn triangle(labels: [f64; 3], pts: [[f64; 2]; 3]) -> (LabeledPointCloud, SheafSpec) {
        let cloud =
            LabeledPointCloud::from_coords(pts.iter().map(|p| p.to_vec()).collect(), labels.to_vec())
                .unwrap();
        let sheaf = SheafSpec::labeled(&cloud, WeightFunction::Default).unwrap();
        (cloud, sheaf)
    }

    #[test]
    fn default_weights() {
        let (_, sh) = triangle([1.0; 3], [[0.0, 0.0], [1.0, 1.0], [2.0, 0.0]]);
        assert_eq!(sh.weight(&s(&[1])).unwrap(), 1.0);
        assert_eq!(sh.weight(&s(&[0, 1])).unwrap(), 2f64.sqrt());
        let (_, eq) = triangle([1.0; 3], [[0.0, 0.0], [1.0, 0.0], [0.5, 3f64.sqrt() / 2.0]]);
        assert!((eq.weight(&s(&[0, 1, 2])).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn alternative_weights() {
        let coords = vec![vec![0.0, 0.0], vec![3.0, 0.0], vec![0.0, 4.0]];
        let tri = s(&[0, 1, 2]);
        assert_eq!(stalk_weight(WeightFunction::Sum, &tri, &coords).unwrap(), 12.0);
        assert_eq!(stalk_weight(WeightFunction::Default, &tri, &coords).unwrap(), 60.0);
        assert_eq!(stalk_weight(WeightFunction::One, &tri, &coords).unwrap(), 1.0);
        let tet = s(&[0, 1, 2, 3]);
        assert!(matches!(
            stalk_weight(WeightFunction::Default, &tet, &[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]),
            Err(Error::UnsupportedDim { dim: 3, .. })
        ));
        assert!(matches!(
            stalk_weight(WeightFunction::Default, &s(&[0, 1]), &[vec![1.0, 1.0], vec![1.0, 1.0]]),
            Err(Error::ZeroWeight(_))
        ));
    }

    #[test]
    fn edge_restriction_is_label_over_length() {
        let (_, sh) = triangle([0.5, -2.0, 1.5], [[0.0, 0.0], [3.0, 4.0], [0.0, 2.0]]);
        assert_eq!(sh.restriction_scalar(&s(&[0]), &s(&[0, 1])).unwrap(), -2.0 / 5.0);
        assert_eq!(sh.restriction_scalar(&s(&[1]), &s(&[0, 1])).unwrap(), 0.5 / 5.0);
        assert_eq!(sh.restriction_scalar(&s(&[0, 1]), &s(&[0, 1])).unwrap(), 1.0);
        assert!(matches!(
            sh.restriction_scalar(&s(&[2]), &s(&[0, 1])),
            Err(Error::NotAFace { .. })
        ));
        let c = SheafSpec::constant();
        assert_eq!(c.restriction_scalar(&s(&[0]), &s(&[0, 1, 2])).unwrap(), 1.0);
    }

    #[test]
    fn restriction_composes() {
        let (cloud, sh) = triangle([0.7, -1.3, 1.9], [[0.0, 0.0], [1.2, 0.1], [0.3, 0.8]]);
        let (v0, e01, t) = (s(&[0]), s(&[0, 1]), s(&[0, 1, 2]));
        let direct = sh.restriction_scalar(&v0, &t).unwrap();
        let composed =
            sh.restriction_scalar(&e01, &t).unwrap() * sh.restriction_scalar(&v0, &e01).unwrap();
        let (r01, r02, r12) = (cloud.distance(0, 1), cloud.distance(0, 2), cloud.distance(1, 2));
        let expect = -1.3 * 1.9 / (r01 * r02 * r12);
        assert!((direct - expect).abs() <= 1e-12 * expect.abs());
        assert!((direct - composed).abs() <= 1e-12 * expect.abs());
    }

    #[test]
    fn coboundaries_on_constant_triangle() {
        let cloud = LabeledPointCloud::from_coords(
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, 0.8]],
            vec![1.0; 3],
        )
        .unwrap();
        let f = build_rips(&cloud, 2.0, 2).unwrap();
        let view = complex_at(&f, f64::INFINITY);
        let c = SheafSpec::constant();
        let d0 = coboundary_matrix(&view, &c, 0).unwrap();
        assert_eq!(d0.rows, vec![s(&[0, 1]), s(&[0, 2]), s(&[1, 2])]);
        assert_eq!(
            d0.matrix,
            DMatrix::from_row_slice(3, 3, &[-1.0, 1.0, 0.0, -1.0, 0.0, 1.0, 0.0, -1.0, 1.0])
        );
        let d1 = coboundary_matrix(&view, &c, 1).unwrap();
        assert_eq!(d1.matrix, DMatrix::from_row_slice(1, 3, &[1.0, -1.0, 1.0]));
        let d2 = coboundary_matrix(&view, &c, 2).unwrap();
        assert_eq!(d2.shape(), (0, 1));
        let d5 = coboundary_matrix(&view, &c, 5).unwrap();
        assert_eq!(d5.shape(), (0, 0));
    }

    #[test]
    fn global_section_is_in_kernel() {
        let (cloud, sh) = triangle([0.7, -1.3, 1.9], [[0.0, 0.0], [1.2, 0.1], [0.3, 0.8]]);
        let f = build_rips(&cloud, 5.0, 2).unwrap();
        let view = complex_at(&f, f64::INFINITY);
        let d0 = coboundary_matrix(&view, &sh, 0).unwrap();
        let w = nalgebra::DVector::from_vec(sh.global_section(view.simplices(0)).unwrap());
        assert!((&d0.matrix * &w).amax() <= 1e-14);
    }
}
