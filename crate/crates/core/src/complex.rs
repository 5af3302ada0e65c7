//! Simplices, filtrations and the Vietoris–Rips construction.
//!
//! A simplex is stored with its vertices in ascending order; that order is
//! also its orientation. Within a filtration, simplices are sorted by
//! `(birth, dim, vertices)` so every derived matrix has a reproducible layout.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::io::LabeledPointCloud;

/// An oriented simplex: strictly increasing vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Builds a simplex from vertices that are already strictly increasing.
    pub fn new(vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidParameter("a simplex needs at least one vertex".into()));
        }
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(format!(
                "simplex vertices must be strictly increasing, got {vertices:?}"
            )));
        }
        Ok(Simplex(vertices))
    }

    /// Sorts and deduplicates the vertex list before building the simplex.
    pub fn from_unsorted(mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        let len = vertices.len();
        vertices.dedup();
        if vertices.len() != len {
            return Err(Error::InvalidParameter("repeated vertex in simplex".into()));
        }
        Simplex::new(vertices)
    }

    pub fn vertex(v: usize) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// The codimension-1 face obtained by deleting the vertex at position `i`.
    pub fn face_without(&self, i: usize) -> Option<Simplex> {
        if self.0.len() < 2 || i >= self.0.len() {
            return None;
        }
        let mut v = self.0.clone();
        v.remove(i);
        Some(Simplex(v))
    }

    /// Codimension-1 faces paired with the deleted position.
    pub fn boundary_faces(&self) -> impl Iterator<Item = (usize, Simplex)> + '_ {
        (0..self.0.len()).filter_map(move |i| self.face_without(i).map(|f| (i, f)))
    }

    /// True when every vertex of `self` is a vertex of `other`.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        // both sides are sorted
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// `[face : coface]`: `(-1)^i` when `face` is `coface` with its `i`-th vertex
/// removed, 0 otherwise.
pub fn incidence_sign(face: &Simplex, coface: &Simplex) -> i8 {
    if face.0.len() + 1 != coface.0.len() {
        return 0;
    }
    // position of the first mismatch is the deleted vertex
    let i = face
        .0
        .iter()
        .zip(&coface.0)
        .position(|(a, b)| a != b)
        .unwrap_or(face.0.len());
    if face.0[i..] != coface.0[i + 1..] {
        return 0;
    }
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

fn entry_order(a: &(Simplex, f64), b: &(Simplex, f64)) -> Ordering {
    a.1.total_cmp(&b.1)
        .then_with(|| a.0.dim().cmp(&b.0.dim()))
        .then_with(|| a.0.cmp(&b.0))
}

/// A finite filtration: simplices with birth values, closed under faces.
#[derive(Clone, Debug)]
pub struct Filtration {
    entries: Vec<(Simplex, f64)>,
    births: HashMap<Simplex, f64>,
}

impl Filtration {
    /// Validates and normalizes a list of `(simplex, birth)` pairs.
    ///
    /// Entries are re-sorted by `(birth, dim, vertices)`. Every face of a
    /// simplex must be present with a birth no later than the simplex itself.
    pub fn new(mut entries: Vec<(Simplex, f64)>) -> Result<Self> {
        if let Some((s, _)) = entries.iter().find(|(_, b)| b.is_nan()) {
            return Err(Error::InvalidParameter(format!("birth of {s} is NaN")));
        }
        entries.sort_by(entry_order);
        let mut births = HashMap::with_capacity(entries.len());
        for (s, b) in &entries {
            if births.insert(s.clone(), *b).is_some() {
                return Err(Error::DuplicateSimplex(s.clone()));
            }
        }
        for (s, b) in &entries {
            for (_, face) in s.boundary_faces() {
                match births.get(&face) {
                    Some(fb) if fb <= b => {}
                    _ => {
                        return Err(Error::ClosureViolation {
                            simplex: s.clone(),
                            face,
                        })
                    }
                }
            }
        }
        Ok(Filtration { entries, births })
    }

    pub fn entries(&self) -> &[(Simplex, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn birth(&self, s: &Simplex) -> Option<f64> {
        self.births.get(s).copied()
    }

    pub fn max_birth(&self) -> Option<f64> {
        self.entries.last().map(|(_, b)| *b)
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.entries.iter().map(|(s, _)| s.dim()).max()
    }

    /// Largest vertex id used by any simplex.
    pub fn max_vertex(&self) -> Option<usize> {
        self.entries
            .iter()
            .filter_map(|(s, _)| s.vertices().last().copied())
            .max()
    }
}

/// Vietoris–Rips filtration of `cloud` up to `dim_max`, truncated at `r_max`.
///
/// A simplex is born at the largest pairwise distance among its vertices.
pub fn build_rips(cloud: &LabeledPointCloud, r_max: f64, dim_max: usize) -> Result<Filtration> {
    if !(r_max > 0.0) {
        return Err(Error::InvalidParameter(format!("r_max must be positive, got {r_max}")));
    }
    let n = cloud.len();
    let mut dist = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = cloud.distance(i, j);
            if d == 0.0 {
                return Err(Error::DuplicatePoints(i, j));
            }
            dist[i * n + j] = d;
            dist[j * n + i] = d;
        }
    }

    // neighbours with a larger index, within r_max
    let upper: Vec<Vec<usize>> = (0..n)
        .map(|i| ((i + 1)..n).filter(|&j| dist[i * n + j] <= r_max).collect())
        .collect();

    let mut entries: Vec<(Simplex, f64)> = Vec::new();
    let mut stack: Vec<(Vec<usize>, f64, Vec<usize>)> = Vec::new();
    for v in 0..n {
        stack.push((vec![v], 0.0, upper[v].clone()));
        while let Some((verts, birth, candidates)) = stack.pop() {
            let dim = verts.len() - 1;
            if dim < dim_max {
                for (k, &w) in candidates.iter().enumerate() {
                    let b = verts
                        .iter()
                        .map(|&u| dist[u * n + w])
                        .fold(birth, f64::max);
                    let next: Vec<usize> = candidates[k + 1..]
                        .iter()
                        .copied()
                        .filter(|c| upper[w].binary_search(c).is_ok())
                        .collect();
                    let mut nv = verts.clone();
                    nv.push(w);
                    stack.push((nv, b, next));
                }
            }
            entries.push((Simplex(verts), birth));
        }
    }
    Filtration::new(entries)
}

/// The complex `X_t`: simplices born at or before `level`, grouped by
/// dimension in lexicographic order.
#[derive(Clone, Debug)]
pub struct ComplexView {
    level: f64,
    by_dim: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl ComplexView {
    pub fn level(&self) -> f64 {
        self.level
    }

    /// Simplices of dimension `dim`; empty slice beyond the top dimension.
    pub fn simplices(&self, dim: usize) -> &[Simplex] {
        self.by_dim.get(dim).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn count(&self, dim: usize) -> usize {
        self.simplices(dim).len()
    }

    /// Row/column position of `s` among simplices of its dimension.
    pub fn position(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s.dim()).and_then(|m| m.get(s).copied())
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.position(s).is_some()
    }

    /// Top dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    pub fn total(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }
}

/// Subcomplex of `f` made of simplices with birth `<= t`.
pub fn complex_at(f: &Filtration, t: f64) -> ComplexView {
    let cut = f.entries.partition_point(|(_, b)| *b <= t);
    let mut by_dim: Vec<Vec<Simplex>> = Vec::new();
    for (s, _) in &f.entries[..cut] {
        let d = s.dim();
        if by_dim.len() <= d {
            by_dim.resize_with(d + 1, Vec::new);
        }
        by_dim[d].push(s.clone());
    }
    for list in &mut by_dim {
        list.sort();
    }
    let index = by_dim
        .iter()
        .map(|list| list.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
        .collect();
    ComplexView {
        level: t,
        by_dim,
        index,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::LabeledPointCloud;

    fn s(v: &[usize]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    fn square() -> LabeledPointCloud {
        LabeledPointCloud::from_coords(
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]],
            vec![1.0; 4],
        )
        .unwrap()
    }

    #[test]
    fn incidence_signs_follow_deleted_position() {
        assert_eq!(incidence_sign(&s(&[1]), &s(&[0, 1])), 1);
        assert_eq!(incidence_sign(&s(&[0]), &s(&[0, 1])), -1);
        assert_eq!(incidence_sign(&s(&[0, 1]), &s(&[0, 1, 2])), 1);
        assert_eq!(incidence_sign(&s(&[0, 2]), &s(&[0, 1, 2])), -1);
        assert_eq!(incidence_sign(&s(&[1, 2]), &s(&[0, 1, 2])), 1);
        assert_eq!(incidence_sign(&s(&[0]), &s(&[1, 2])), 0);
        assert_eq!(incidence_sign(&s(&[0]), &s(&[0, 1, 2])), 0);
        assert_eq!(incidence_sign(&s(&[0, 1]), &s(&[0, 1])), 0);
    }

    #[test]
    fn simplex_rejects_unsorted() {
        assert!(Simplex::new(vec![2, 1]).is_err());
        assert!(Simplex::new(vec![]).is_err());
        assert_eq!(Simplex::from_unsorted(vec![3, 1]).unwrap(), s(&[1, 3]));
        assert!(Simplex::from_unsorted(vec![1, 1]).is_err());
    }

    #[test]
    fn rips_two_points() {
        let cloud =
            LabeledPointCloud::from_coords(vec![vec![0.0, 0.0], vec![1.0, 0.0]], vec![1.0, 1.0])
                .unwrap();
        let f = build_rips(&cloud, 2.0, 1).unwrap();
        let e: Vec<_> = f.entries().to_vec();
        assert_eq!(e, vec![(s(&[0]), 0.0), (s(&[1]), 0.0), (s(&[0, 1]), 1.0)]);
    }

    #[test]
    fn rips_square_births() {
        let f = build_rips(&square(), 2.0, 2).unwrap();
        let r2 = 2f64.sqrt();
        let count = |d: usize, b: f64| {
            f.entries()
                .iter()
                .filter(|(x, bb)| x.dim() == d && (*bb - b).abs() < 1e-15)
                .count()
        };
        assert_eq!(count(0, 0.0), 4);
        assert_eq!(count(1, 1.0), 4);
        assert_eq!(count(1, r2), 2);
        assert_eq!(count(2, r2), 4);
        assert_eq!(f.len(), 14);
        assert_eq!(f.birth(&s(&[0, 2])), Some(r2));
        assert_eq!(f.birth(&s(&[0, 1])), Some(1.0));
    }

    #[test]
    fn rips_below_min_distance_is_vertices_only() {
        let cloud = LabeledPointCloud::from_coords(
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]],
            vec![1.0; 3],
        )
        .unwrap();
        let f = build_rips(&cloud, 0.5, 2).unwrap();
        assert!(f.entries().iter().all(|(x, _)| x.dim() == 0));
        assert_eq!(f.len(), 3);
    }

    #[test]
    fn rips_errors() {
        let dup = LabeledPointCloud::from_coords(
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 0.0]],
            vec![1.0; 3],
        )
        .unwrap();
        assert!(matches!(build_rips(&dup, 1.0, 1), Err(Error::DuplicatePoints(0, 2))));
        assert!(matches!(build_rips(&square(), 0.0, 1), Err(Error::InvalidParameter(_))));
        assert!(matches!(build_rips(&square(), -1.0, 1), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn views_of_square() {
        let f = build_rips(&square(), 2.0, 2).unwrap();
        let v = complex_at(&f, 0.5);
        assert_eq!(v.count(0), 4);
        assert_eq!(v.count(1), 0);
        assert!(complex_at(&f, -1.0).is_empty());
        let full = complex_at(&f, f64::INFINITY);
        assert_eq!(full.total(), f.len());
        assert_eq!(full.simplices(1)[0], s(&[0, 1]));
        assert_eq!(full.position(&s(&[2, 3])), Some(5));
    }

    #[test]
    fn filtration_validation() {
        let e = vec![(s(&[1, 2]), 1.0), (s(&[1]), 0.0)];
        assert!(matches!(Filtration::new(e), Err(Error::ClosureViolation { .. })));
        let e = vec![(s(&[1]), 0.0), (s(&[2]), 2.0), (s(&[1, 2]), 1.0)];
        assert!(matches!(Filtration::new(e), Err(Error::ClosureViolation { .. })));
        let e = vec![(s(&[1]), 0.0), (s(&[1]), 0.5)];
        assert!(matches!(Filtration::new(e), Err(Error::DuplicateSimplex(_))));
        // ties sorted by (dim, lex)
        let e = vec![(s(&[1, 2]), 1.0), (s(&[2]), 1.0), (s(&[1]), 0.0)];
        let f = Filtration::new(e).unwrap();
        assert_eq!(f.entries()[1].0, s(&[2]));
    }
}
