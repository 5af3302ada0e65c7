//! Persistent sheaf Laplacians for labeled point clouds.
//!
//! Pipeline: a [`LabeledPointCloud`] becomes a [`Filtration`] (Rips, or an
//! imported file), a [`SheafSpec`] fixes the restriction maps from the labels,
//! and [`sweep`] evaluates `Δ_q^{t,p}` over a grid, reporting the nullity
//! (persistent sheaf Betti number) and the smallest nonzero eigenvalue.

pub mod complex;
pub mod error;
pub mod io;
pub mod laplacian;
pub mod linalg;
pub mod oracle;
pub mod sheaf;
pub mod spectra;

pub use complex::{build_rips, complex_at, incidence_sign, ComplexView, Filtration, Simplex};
pub use error::{Error, Result};
pub use io::LabeledPointCloud;
pub use laplacian::{persistent_sheaf_laplacian, sheaf_laplacian, SymMatrix};
pub use sheaf::{coboundary_matrix, IndexedMatrix, SheafSpec, WeightFunction};
pub use spectra::{spectrum, summarize, sweep, PslRecord, SweepConfig};
