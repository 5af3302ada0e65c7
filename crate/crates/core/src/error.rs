use thiserror::Error;

use crate::complex::Simplex;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong between reading a point cloud and writing records.
#[derive(Debug, Error)]
pub enum Error {
    #[error("points {0} and {1} coincide")]
    DuplicatePoints(usize, usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("weight function vanishes on simplex {0}")]
    ZeroWeight(Simplex),

    #[error("weight function `{weight}` is not defined on dimension {dim}")]
    UnsupportedDim { weight: &'static str, dim: usize },

    #[error("{face} is not a face of {coface}")]
    NotAFace { face: Simplex, coface: Simplex },

    #[error("vertex {vertex} has no label (only {available} labels given)")]
    MissingLabel { vertex: usize, available: usize },

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NonSymmetric(f64),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: label must be nonzero")]
    ZeroLabel { line: usize },

    #[error("line {line}: expected {expected} coordinates, found {found}")]
    MixedDimensions {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("charge scaling factor is zero (mean label is 0)")]
    DegenerateScale,

    #[error("simplex {simplex} appears before its face {face}")]
    ClosureViolation { simplex: Simplex, face: Simplex },

    #[error("simplex {0} listed twice")]
    DuplicateSimplex(Simplex),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("no records to plot for {0}")]
    NoData(String),
}
