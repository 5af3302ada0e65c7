//! Dense elimination helpers used by the Laplacian pipeline.

use nalgebra::DMatrix;

/// Basis of the null space of `a`, one vector per column.
///
/// Reduces `a` to row echelon form with partial pivoting, column by column.
/// A column whose best remaining pivot is at most `rel_tol * max|a|` is
/// treated as free. Each free column `f` contributes the vector with a 1 in
/// position `f` and `-R[i, f]` in the pivot positions, so the basis is the
/// usual "free variables" basis of the reduced system.
pub fn null_space(a: &DMatrix<f64>, rel_tol: f64) -> DMatrix<f64> {
    null_space_with_pivots(a, rel_tol).0
}

/// [`null_space`] plus the pivot columns. The basis restricted to the
/// remaining (free) rows is the identity.
pub fn null_space_with_pivots(a: &DMatrix<f64>, rel_tol: f64) -> (DMatrix<f64>, Vec<usize>) {
    let (m, n) = a.shape();
    let scale = a.amax();
    if scale == 0.0 {
        return (DMatrix::identity(n, n), Vec::new());
    }
    let tol = rel_tol * scale;
    let mut r = a.clone();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut free = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == m {
            free.push(col);
            continue;
        }
        let (best, val) = (row..m)
            .map(|i| (i, r[(i, col)].abs()))
            .fold((row, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if val <= tol {
            free.push(col);
            continue;
        }
        r.swap_rows(row, best);
        let p = r[(row, col)];
        for j in 0..n {
            r[(row, j)] /= p;
        }
        r[(row, col)] = 1.0;
        let support: Vec<(usize, f64)> = (0..n)
            .filter(|&j| j != col && r[(row, j)] != 0.0)
            .map(|j| (j, r[(row, j)]))
            .collect();
        for i in 0..m {
            if i == row {
                continue;
            }
            let factor = r[(i, col)];
            if factor != 0.0 {
                for &(j, v) in &support {
                    r[(i, j)] -= factor * v;
                }
                r[(i, col)] = 0.0;
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    let mut basis = DMatrix::zeros(n, free.len());
    for (k, &f) in free.iter().enumerate() {
        basis[(f, k)] = 1.0;
        for &(pr, pc) in &pivots {
            if pc < f {
                basis[(pc, k)] = -r[(pr, f)];
            }
        }
    }
    (basis, pivots.into_iter().map(|(_, c)| c).collect())
}
