//! Exact rational assembly for the constant sheaf.
//!
//! Coboundary entries of the constant sheaf are `-1, 0, 1`, so the whole
//! persistent Laplacian can be formed over the rationals with no rounding.
//! Used to cross-check the floating-point pipeline.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::complex::{complex_at, incidence_sign, ComplexView, Filtration};
use crate::error::{Error, Result};

pub type RationalMatrix = Vec<Vec<BigRational>>;

/// Integer matrix of `d_q` for the constant sheaf (rows: `(q+1)`-simplices).
pub fn constant_coboundary_exact(view: &ComplexView, q: usize) -> Vec<Vec<i64>> {
    let cols = view.count(q);
    view.simplices(q + 1)
        .iter()
        .map(|tau| {
            let mut row = vec![0i64; cols];
            for (_, sigma) in tau.boundary_faces() {
                let c = view.position(&sigma).expect("closed under faces");
                row[c] = i64::from(incidence_sign(&sigma, tau));
            }
            row
        })
        .collect()
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn zeros(r: usize, c: usize) -> RationalMatrix {
    vec![vec![BigRational::zero(); c]; r]
}

fn mul(a: &RationalMatrix, b: &RationalMatrix, inner: usize, cols: usize) -> RationalMatrix {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner)
                        .filter(|&k| !row[k].is_zero() && !b[k][j].is_zero())
                        .fold(BigRational::zero(), |acc, k| acc + &row[k] * &b[k][j])
                })
                .collect()
        })
        .collect()
}

fn transpose(a: &RationalMatrix, cols: usize) -> RationalMatrix {
    (0..cols)
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Exact null-space basis (columns) of `a`, which has `cols` columns.
fn null_space_exact(a: &RationalMatrix, cols: usize) -> RationalMatrix {
    let mut r = a.clone();
    let m = r.len();
    let mut pivots = Vec::new();
    let mut free = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m).find(|&i| !r[i][col].is_zero()) else {
            free.push(col);
            continue;
        };
        r.swap(row, p);
        let inv = r[row][col].recip();
        for x in r[row].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m {
            if i != row && !r[i][col].is_zero() {
                let factor = r[i][col].clone();
                for j in 0..cols {
                    let delta = &factor * &r[row][j];
                    r[i][j] -= delta;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    let mut basis = zeros(cols, free.len());
    for (k, &f) in free.iter().enumerate() {
        basis[f][k] = BigRational::one();
        for &(pr, pc) in &pivots {
            basis[pc][k] = -r[pr][f].clone();
        }
    }
    basis
}

/// Solves `p x = rhs` by Gauss–Jordan elimination (`p` square, invertible).
fn solve_exact(p: &RationalMatrix, rhs: &RationalMatrix) -> Result<RationalMatrix> {
    let n = p.len();
    let w = rhs.first().map_or(0, Vec::len);
    let mut aug: RationalMatrix = p
        .iter()
        .zip(rhs)
        .map(|(a, b)| a.iter().chain(b).cloned().collect())
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&i| !aug[i][col].is_zero())
            .ok_or_else(|| Error::Numerical("singular Gram matrix".into()))?;
        aug.swap(col, piv);
        let inv = aug[col][col].recip();
        for x in aug[col].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != col && !aug[i][col].is_zero() {
                let factor = aug[i][col].clone();
                for j in 0..n + w {
                    let delta = &factor * &aug[col][j];
                    aug[i][j] -= delta;
                }
            }
        }
    }
    Ok(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// `Δ_q^{t,p}` of the constant sheaf, computed exactly over the rationals.
pub fn persistent_laplacian_exact(
    f: &Filtration,
    q: usize,
    t: f64,
    p: f64,
) -> Result<RationalMatrix> {
    if !(p >= 0.0) {
        return Err(Error::InvalidParameter(format!("p must be non-negative, got {p}")));
    }
    let view_t = complex_at(f, t);
    let view_tp = complex_at(f, t + p);
    let n = view_t.count(q);
    let mut l = zeros(n, n);
    if n == 0 {
        return Ok(l);
    }
    if q > 0 {
        let down = constant_coboundary_exact(&view_t, q - 1);
        for a in 0..n {
            for b in 0..n {
                let s: i64 = down[a].iter().zip(&down[b]).map(|(x, y)| x * y).sum();
                l[a][b] = rat(s);
            }
        }
    }

    let d: RationalMatrix = constant_coboundary_exact(&view_tp, q)
        .into_iter()
        .map(|row| row.into_iter().map(rat).collect())
        .collect();
    let up_rows = d.len();
    if up_rows == 0 {
        return Ok(l);
    }
    let tp_q = view_tp.simplices(q);
    let old: Vec<usize> = view_t
        .simplices(q)
        .iter()
        .map(|s| view_tp.position(s).expect("X_t is a subcomplex"))
        .collect();
    let new: Vec<usize> = (0..tp_q.len())
        .filter(|&c| !view_t.contains(&tp_q[c]))
        .collect();

    // constraint rows: one per new q-simplex, over all (q+1)-simplices
    let constraints: RationalMatrix = new
        .iter()
        .map(|&c| d.iter().map(|row| row[c].clone()).collect())
        .collect();
    let basis = null_space_exact(&constraints, up_rows);
    let k = basis.first().map_or(0, Vec::len);
    if k == 0 {
        return Ok(l);
    }
    let d_old_t: RationalMatrix = old
        .iter()
        .map(|&c| d.iter().map(|row| row[c].clone()).collect())
        .collect();
    let d_star = mul(&d_old_t, &basis, up_rows, k);
    let gram = mul(&transpose(&basis, k), &basis, up_rows, k);
    let x = solve_exact(&gram, &transpose(&d_star, k))?;
    let up = mul(&d_star, &x, k, n);
    for a in 0..n {
        for b in 0..n {
            l[a][b] += &up[a][b];
        }
    }
    Ok(l)
}

/// Largest `|exact - approx|` entry, for cross-checks.
pub fn max_deviation(exact: &RationalMatrix, approx: &nalgebra::DMatrix<f64>) -> f64 {
    if exact.len() != approx.nrows() || exact.iter().any(|r| r.len() != approx.ncols()) {
        return f64::INFINITY;
    }
    let mut worst = 0.0f64;
    for (i, row) in exact.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let e = v.to_f64().unwrap_or(f64::NAN);
            worst = worst.max((e - approx[(i, j)]).abs());
        }
    }
    worst
}
