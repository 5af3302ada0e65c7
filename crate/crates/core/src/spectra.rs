//! Eigenvalues, harmonic/non-harmonic summaries and `(q, t, p)` sweeps.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::complex::{complex_at, Filtration};
use crate::error::{Error, Result};
use crate::laplacian::{persistent_between, LaplacianOptions, SymMatrix, DEFAULT_PIVOT_TOL};
use crate::sheaf::SheafSpec;

/// Default relative cut below which an eigenvalue counts as zero.
pub const DEFAULT_TOL_ZERO: f64 = 1e-8;

/// One sweep sample.
#[derive(Clone, Debug, PartialEq)]
pub struct PslRecord {
    pub q: usize,
    pub t: f64,
    pub p: f64,
    /// Size of the Laplacian, the number of `q`-simplices of `X_t`.
    pub n: usize,
    /// Persistent sheaf Betti number (nullity).
    pub betti: usize,
    /// Smallest nonzero eigenvalue, if any.
    pub lambda_min: Option<f64>,
    pub spectrum: Option<Vec<f64>>,
}

impl PslRecord {
    /// Order by `(q, t, p)`.
    pub fn key_cmp(&self, other: &Self) -> Ordering {
        self.q
            .cmp(&other.q)
            .then_with(|| self.t.total_cmp(&other.t))
            .then_with(|| self.p.total_cmp(&other.p))
    }
}

/// All eigenvalues of `l`, ascending.
pub fn spectrum(l: &SymMatrix) -> Result<Vec<f64>> {
    if l.size() == 0 {
        return Ok(Vec::new());
    }
    let asym = l.asymmetry();
    if asym > 1e-12 * l.matrix.amax().max(1.0) {
        return Err(Error::NonSymmetric(asym));
    }
    let mut eigs: Vec<f64> = l.matrix.symmetric_eigenvalues().iter().copied().collect();
    eigs.sort_by(f64::total_cmp);
    Ok(eigs)
}

/// `(betti, lambda_min)` of an ascending spectrum.
///
/// An eigenvalue is zero when `|λ| <= tol_zero * max(1, max|λ|)`.
pub fn summarize(eigs: &[f64], tol_zero: f64) -> (usize, Option<f64>) {
    let scale = eigs.iter().fold(1.0f64, |m, e| m.max(e.abs()));
    let cut = tol_zero * scale;
    let betti = eigs.iter().filter(|e| e.abs() <= cut).count();
    let lambda_min = eigs.iter().copied().find(|&e| e > cut);
    (betti, lambda_min)
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub qs: Vec<usize>,
    pub t_grid: Vec<f64>,
    pub p_list: Vec<f64>,
    pub tol_zero: f64,
    pub pivot_tol: f64,
    /// Keep full spectra in the records.
    pub keep_spectra: bool,
}

impl SweepConfig {
    pub fn new(qs: Vec<usize>, t_grid: Vec<f64>, p_list: Vec<f64>) -> Self {
        SweepConfig {
            qs,
            t_grid,
            p_list,
            tol_zero: DEFAULT_TOL_ZERO,
            pivot_tol: DEFAULT_PIVOT_TOL,
            keep_spectra: false,
        }
    }
}

/// Evaluates one record per `(q, t, p)`, sorted by `(q, t, p)`.
///
/// `t + p` is clamped to the last birth of `f`; past it the complex no
/// longer changes. Cells are computed in parallel.
pub fn sweep(f: &Filtration, sheaf: &SheafSpec, cfg: &SweepConfig) -> Result<Vec<PslRecord>> {
    if cfg.t_grid.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(Error::InvalidParameter("t grid must be sorted".into()));
    }
    if let Some(p) = cfg.p_list.iter().find(|p| !(**p >= 0.0)) {
        return Err(Error::InvalidParameter(format!("p must be non-negative, got {p}")));
    }
    let last = f.max_birth().unwrap_or(0.0);
    let opts = LaplacianOptions {
        pivot_tol: cfg.pivot_tol,
    };
    let cells: Vec<(usize, f64, f64)> = cfg
        .qs
        .iter()
        .flat_map(|&q| {
            cfg.t_grid
                .iter()
                .flat_map(move |&t| cfg.p_list.iter().map(move |&p| (q, t, p)))
        })
        .collect();
    let mut records = cells
        .par_iter()
        .map(|&(q, t, p)| {
            let upper = (t + p).min(last).max(t);
            let view_t = complex_at(f, t);
            let view_tp = complex_at(f, upper);
            let l = persistent_between(&view_t, &view_tp, sheaf, q, &opts)?;
            let eigs = spectrum(&l)?;
            let (betti, lambda_min) = summarize(&eigs, cfg.tol_zero);
            Ok(PslRecord {
                q,
                t,
                p,
                n: l.size(),
                betti,
                lambda_min,
                spectrum: cfg.keep_spectra.then_some(eigs),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    records.sort_by(|a, b| a.key_cmp(b));
    Ok(records)
}
