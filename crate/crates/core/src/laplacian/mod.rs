//! Sheaf Laplacians and persistent sheaf Laplacians.
//!
//! For a pair `X_t ⊆ X_{t+p}` the persistent Laplacian acts on `C^q(X_t)`:
//!
//! ```text
//!     L = D_{q-1}^t (D_{q-1}^t)^T  +  D* P^{-1} D*^T
//! ```
//!
//! The up part only sees the `(q+1)`-cochains `e` of `X_{t+p}` whose adjoint
//! coboundary `d_q^T e` vanishes on the `q`-simplices that are new in
//! `X_{t+p}`. With `B` a basis of that subspace, `D* = (d_q^T B)` restricted
//! to the rows of `X_t` and `P = B^T B`.
//!
//! The basis is built in two blocks. A `(q+1)`-simplex none of whose faces
//! are new is a basis vector on its own; the remaining ("constrained")
//! coordinates get a null-space basis from pivoted elimination. This keeps
//! the dense work proportional to the number of new simplices.

pub mod exact;

use nalgebra::DMatrix;

use crate::complex::{complex_at, ComplexView, Filtration, Simplex};
use crate::error::{Error, Result};
use crate::linalg::null_space_with_pivots;
use crate::sheaf::{coboundary_rows, IndexedMatrix, SheafSpec};

/// Default relative pivot threshold for the null-space elimination.
pub const DEFAULT_PIVOT_TOL: f64 = 1e-10;

/// A real symmetric matrix acting on the cochains of `index`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    pub matrix: DMatrix<f64>,
    pub index: Vec<Simplex>,
}

impl SymMatrix {
    pub fn size(&self) -> usize {
        self.matrix.nrows()
    }

    /// `max |L - L^T|`.
    pub fn asymmetry(&self) -> f64 {
        if self.matrix.is_empty() {
            return 0.0;
        }
        (&self.matrix - self.matrix.transpose()).amax()
    }
}

/// Basis of the admissible `(q+1)`-cochains of `X_{t+p}`.
///
/// Columns are ordered: unit vectors for `unit` coordinates first, then the
/// columns of `kernel` embedded on the `constrained` coordinates.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    ambient: usize,
    unit: Vec<usize>,
    constrained: Vec<usize>,
    kernel: DMatrix<f64>,
    kernel_gram: DMatrix<f64>,
}

impl SubspaceBasis {
    pub fn dim(&self) -> usize {
        self.unit.len() + self.kernel.ncols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Dense `B`, one basis vector per column.
    pub fn matrix(&self) -> DMatrix<f64> {
        let mut b = DMatrix::zeros(self.ambient, self.dim());
        for (j, &u) in self.unit.iter().enumerate() {
            b[(u, j)] = 1.0;
        }
        let off = self.unit.len();
        for (i, &c) in self.constrained.iter().enumerate() {
            for j in 0..self.kernel.ncols() {
                b[(c, off + j)] = self.kernel[(i, j)];
            }
        }
        b
    }

    /// Gram matrix `P = B^T B`.
    pub fn gram(&self) -> DMatrix<f64> {
        let u = self.unit.len();
        let mut p = DMatrix::zeros(self.dim(), self.dim());
        for i in 0..u {
            p[(i, i)] = 1.0;
        }
        p.view_mut((u, u), self.kernel_gram.shape())
            .copy_from(&self.kernel_gram);
        p
    }
}

fn basis_from_rows(
    rows: &[Vec<(usize, f64)>],
    is_new: &[bool],
    rel_tol: f64,
) -> SubspaceBasis {
    let (constrained, unit): (Vec<usize>, Vec<usize>) = (0..rows.len())
        .partition(|&r| rows[r].iter().any(|&(c, v)| is_new[c] && v != 0.0));
    let new_pos: Vec<Option<usize>> = {
        let mut k = 0;
        is_new
            .iter()
            .map(|&n| {
                n.then(|| {
                    k += 1;
                    k - 1
                })
            })
            .collect()
    };
    let n_new = is_new.iter().filter(|&&n| n).count();
    // constraint system: (d_q^T restricted to new q-simplices) e = 0
    let mut nt = DMatrix::zeros(n_new, constrained.len());
    for (j, &r) in constrained.iter().enumerate() {
        for &(c, v) in &rows[r] {
            if let Some(i) = new_pos[c] {
                nt[(i, j)] = v;
            }
        }
    }
    let (kernel, pivots) = null_space_with_pivots(&nt, rel_tol);
    // free rows of the kernel are an identity block
    let pivot_rows = kernel.select_rows(&pivots);
    let mut kernel_gram = pivot_rows.tr_mul(&pivot_rows);
    for i in 0..kernel.ncols() {
        kernel_gram[(i, i)] += 1.0;
    }
    SubspaceBasis {
        ambient: rows.len(),
        unit,
        constrained,
        kernel,
        kernel_gram,
    }
}

/// Basis of `{ e : d_full^T e vanishes on new_q_simplices }`.
///
/// `d_full` is the degree-`q` coboundary of `X_{t+p}`; `new_q_simplices` are
/// its columns that are absent from `X_t`.
pub fn persistent_basis(
    d_full: &IndexedMatrix,
    new_q_simplices: &[Simplex],
    rel_tol: f64,
) -> SubspaceBasis {
    let is_new: Vec<bool> = d_full
        .cols
        .iter()
        .map(|s| new_q_simplices.contains(s))
        .collect();
    let rows: Vec<Vec<(usize, f64)>> = d_full
        .matrix
        .row_iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, v)| **v != 0.0)
                .map(|(c, v)| (c, *v))
                .collect()
        })
        .collect();
    basis_from_rows(&rows, &is_new, rel_tol)
}

/// Adds `Σ_rows r r^T` into `l`, each sparse row mapped through `target`.
fn add_outer_products<'a>(
    l: &mut DMatrix<f64>,
    rows: impl Iterator<Item = &'a [(usize, f64)]>,
    target: impl Fn(usize) -> Option<usize>,
) {
    let mut mapped: Vec<(usize, f64)> = Vec::new();
    for row in rows {
        mapped.clear();
        mapped.extend(row.iter().filter_map(|&(c, v)| target(c).map(|i| (i, v))));
        for &(a, va) in &mapped {
            for &(b, vb) in &mapped {
                l[(a, b)] += va * vb;
            }
        }
    }
}

/// `D_{q-1} D_{q-1}^T` on `view`, zero for `q = 0`.
pub fn down_term(view: &ComplexView, sheaf: &SheafSpec, q: usize) -> Result<DMatrix<f64>> {
    let n = view.count(q);
    let mut l = DMatrix::zeros(n, n);
    if q == 0 || n == 0 {
        return Ok(l);
    }
    // rows of d_{q-1} are q-simplices; regroup by column to get D D^T
    let rows = coboundary_rows(view, sheaf, q - 1)?;
    let mut by_col: Vec<Vec<(usize, f64)>> = vec![Vec::new(); view.count(q - 1)];
    for (a, row) in rows.iter().enumerate() {
        for &(c, v) in row {
            by_col[c].push((a, v));
        }
    }
    add_outer_products(&mut l, by_col.iter().map(Vec::as_slice), Some);
    Ok(l)
}

/// The sheaf Laplacian `Δ^q = d_q^T d_q + d_{q-1} d_{q-1}^T` on `view`.
pub fn sheaf_laplacian(view: &ComplexView, sheaf: &SheafSpec, q: usize) -> Result<SymMatrix> {
    let mut l = down_term(view, sheaf, q)?;
    let up = coboundary_rows(view, sheaf, q)?;
    add_outer_products(&mut l, up.iter().map(Vec::as_slice), Some);
    Ok(SymMatrix {
        matrix: l,
        index: view.simplices(q).to_vec(),
    })
}

/// `D* P^{-1} D*^T` with `P` applied through its Cholesky factor.
fn projected_up(d_star: &DMatrix<f64>, gram: DMatrix<f64>) -> Result<DMatrix<f64>> {
    let chol = gram
        .cholesky()
        .ok_or_else(|| Error::Numerical("basis Gram matrix is not positive definite".into()))?;
    let z = chol
        .l()
        .solve_lower_triangular(&d_star.transpose())
        .ok_or_else(|| Error::Numerical("singular Cholesky factor".into()))?;
    Ok(z.tr_mul(&z))
}

/// Up term assembled from an arbitrary basis `basis` of the admissible
/// subspace: `D* = (d_full^T basis)[old_cols]`, `P = basis^T basis`.
pub fn up_term_from_basis(
    d_full: &IndexedMatrix,
    old_cols: &[usize],
    basis: &DMatrix<f64>,
) -> Result<DMatrix<f64>> {
    let n = old_cols.len();
    if basis.ncols() == 0 {
        return Ok(DMatrix::zeros(n, n));
    }
    let full = d_full.matrix.tr_mul(basis);
    let d_star = full.select_rows(old_cols);
    projected_up(&d_star, basis.tr_mul(basis))
}

/// Positions of `view_t`'s `q`-simplices among the columns of `d_full`.
pub fn old_columns(view_t: &ComplexView, d_full: &IndexedMatrix, q: usize) -> Vec<usize> {
    let pos: std::collections::HashMap<&Simplex, usize> =
        d_full.cols.iter().enumerate().map(|(i, s)| (s, i)).collect();
    view_t.simplices(q).iter().map(|s| pos[s]).collect()
}

#[derive(Clone, Copy, Debug)]
pub struct LaplacianOptions {
    /// Relative pivot threshold of the null-space elimination.
    pub pivot_tol: f64,
}

impl Default for LaplacianOptions {
    fn default() -> Self {
        LaplacianOptions {
            pivot_tol: DEFAULT_PIVOT_TOL,
        }
    }
}

/// The persistent sheaf Laplacian `Δ_q^{t,p}` as a matrix on `C^q(X_t)`.
pub fn persistent_sheaf_laplacian(
    f: &Filtration,
    sheaf: &SheafSpec,
    q: usize,
    t: f64,
    p: f64,
) -> Result<SymMatrix> {
    persistent_sheaf_laplacian_with(f, sheaf, q, t, p, &LaplacianOptions::default())
}

pub fn persistent_sheaf_laplacian_with(
    f: &Filtration,
    sheaf: &SheafSpec,
    q: usize,
    t: f64,
    p: f64,
    opts: &LaplacianOptions,
) -> Result<SymMatrix> {
    if !(p >= 0.0) {
        return Err(Error::InvalidParameter(format!("p must be non-negative, got {p}")));
    }
    let view_t = complex_at(f, t);
    let view_tp = complex_at(f, t + p);
    persistent_between(&view_t, &view_tp, sheaf, q, opts)
}

/// Persistent Laplacian for an explicit pair of nested views `X_t ⊆ X_{t+p}`.
pub fn persistent_between(
    view_t: &ComplexView,
    view_tp: &ComplexView,
    sheaf: &SheafSpec,
    q: usize,
    opts: &LaplacianOptions,
) -> Result<SymMatrix> {
    let index = view_t.simplices(q).to_vec();
    let n = index.len();
    if n == 0 {
        return Ok(SymMatrix {
            matrix: DMatrix::zeros(0, 0),
            index,
        });
    }
    let mut l = down_term(view_t, sheaf, q)?;

    let rows = coboundary_rows(view_tp, sheaf, q)?;
    let old_of: Vec<Option<usize>> = view_tp
        .simplices(q)
        .iter()
        .map(|s| view_t.position(s))
        .collect();
    let is_new: Vec<bool> = old_of.iter().map(Option::is_none).collect();
    let basis = basis_from_rows(&rows, &is_new, opts.pivot_tol);

    add_outer_products(
        &mut l,
        basis.unit.iter().map(|&r| rows[r].as_slice()),
        |c| old_of[c],
    );

    let k = basis.kernel.ncols();
    if k > 0 {
        let mut d_star = DMatrix::zeros(n, k);
        for (i, &r) in basis.constrained.iter().enumerate() {
            for &(c, v) in &rows[r] {
                if let Some(a) = old_of[c] {
                    for j in 0..k {
                        d_star[(a, j)] += v * basis.kernel[(i, j)];
                    }
                }
            }
        }
        l += projected_up(&d_star, basis.kernel_gram.clone())?;
    }
    Ok(SymMatrix { matrix: l, index })
}
