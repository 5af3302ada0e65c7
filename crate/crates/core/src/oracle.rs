//! Brute-force verifiers for the Laplacian pipeline.
//!
//! Nothing here forms a Laplacian or shares the pipeline's elimination code.
//! Ranks come from a dense SVD thresholded at `1e-10 · σ_max`.

use nalgebra::DMatrix;

use crate::complex::{complex_at, ComplexView, Filtration};
use crate::error::{Error, Result};
use crate::sheaf::{coboundary_matrix, SheafSpec};

/// Relative singular-value cutoff for numerical rank.
pub const RANK_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct RankReport {
    pub name: String,
    pub rank: usize,
    pub singular_values: Vec<f64>,
}

pub fn rank_report(name: &str, m: &DMatrix<f64>) -> RankReport {
    if m.is_empty() {
        return RankReport {
            name: name.into(),
            rank: 0,
            singular_values: Vec::new(),
        };
    }
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let cut = RANK_TOL * sv[0];
    let rank = if sv[0] == 0.0 {
        0
    } else {
        sv.iter().filter(|&&s| s > cut).count()
    };
    RankReport {
        name: name.into(),
        rank,
        singular_values: sv,
    }
}

pub fn numerical_rank(m: &DMatrix<f64>) -> usize {
    rank_report("", m).rank
}

fn new_columns(view_t: &ComplexView, view_tp: &ComplexView, q: usize) -> Vec<usize> {
    view_tp
        .simplices(q)
        .iter()
        .enumerate()
        .filter(|(_, s)| !view_t.contains(s))
        .map(|(i, _)| i)
        .collect()
}

/// `dim π•(H^q(X_{t+p}))`, from ranks of coboundary matrices only:
/// `dim ker d_q^{t+p} - dim ker (d_q^{t+p} on new q-simplices) - rank d_{q-1}^t`.
pub fn persistent_betti_oracle(
    f: &Filtration,
    sheaf: &SheafSpec,
    q: usize,
    t: f64,
    p: f64,
) -> Result<usize> {
    let view_t = complex_at(f, t);
    let view_tp = complex_at(f, t + p);
    let d = coboundary_matrix(&view_tp, sheaf, q)?.matrix;
    let new = new_columns(&view_t, &view_tp, q);
    let ker_full = d.ncols() - numerical_rank(&d);
    let d_new = d.select_columns(&new);
    let ker_new = new.len() - numerical_rank(&d_new);
    let rank_down = if q == 0 {
        0
    } else {
        numerical_rank(&coboundary_matrix(&view_t, sheaf, q - 1)?.matrix)
    };
    let betti = ker_full as i64 - ker_new as i64 - rank_down as i64;
    usize::try_from(betti)
        .map_err(|_| Error::Numerical(format!("negative persistent Betti number {betti}")))
}

/// Simplicial boundary `∂_q : C_q → C_{q-1}` with real coefficients,
/// built directly from vertex deletions.
fn boundary(view: &ComplexView, q: usize) -> DMatrix<f64> {
    let cols = view.simplices(q);
    if q == 0 {
        return DMatrix::zeros(0, cols.len());
    }
    let mut m = DMatrix::zeros(view.count(q - 1), cols.len());
    for (j, s) in cols.iter().enumerate() {
        for i in 0..=q {
            let mut face = s.vertices().to_vec();
            face.remove(i);
            let face = crate::complex::Simplex::new(face).expect("sub-list of a simplex");
            let r = view.position(&face).expect("closed under faces");
            m[(r, j)] = if i % 2 == 0 { 1.0 } else { -1.0 };
        }
    }
    m
}

/// Ordinary persistent Betti number `rank(H_q(X_t) → H_q(X_{t+p}))`:
/// `n_q(t) - rank ∂_q^t - rank ∂_{q+1}^{t+p} + rank(∂_{q+1}^{t+p} restricted to new rows)`.
pub fn homology_betti_oracle(f: &Filtration, q: usize, t: f64, p: f64) -> Result<usize> {
    let view_t = complex_at(f, t);
    let view_tp = complex_at(f, t + p);
    let n = view_t.count(q) as i64;
    let rank_q = numerical_rank(&boundary(&view_t, q)) as i64;
    let up = boundary(&view_tp, q + 1);
    let rank_up = numerical_rank(&up) as i64;
    let rank_up_new = numerical_rank(&up.select_rows(&new_columns(&view_t, &view_tp, q))) as i64;
    let betti = n - rank_q - rank_up + rank_up_new;
    usize::try_from(betti)
        .map_err(|_| Error::Numerical(format!("negative persistent Betti number {betti}")))
}

/// `max |π ∘ d_q^{t+p} - d_q^t ∘ π|` over canonical bases, where `π`
/// forgets the coordinates of simplices born after `t`.
pub fn cochain_map_check(
    f: &Filtration,
    sheaf: &SheafSpec,
    q: usize,
    t: f64,
    p: f64,
) -> Result<f64> {
    let view_t = complex_at(f, t);
    let view_tp = complex_at(f, t + p);
    let big = coboundary_matrix(&view_tp, sheaf, q)?;
    let small = coboundary_matrix(&view_t, sheaf, q)?;
    let mut worst = 0.0f64;
    for (r, tau) in small.rows.iter().enumerate() {
        let big_r = view_tp.position(tau).expect("subcomplex");
        for (c, sigma) in big.cols.iter().enumerate() {
            let lhs = big.matrix[(big_r, c)];
            let rhs = view_t
                .position(sigma)
                .map_or(0.0, |small_c| small.matrix[(r, small_c)]);
            worst = worst.max((lhs - rhs).abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_rips;
    use crate::io::{parse_filtration_file, LabeledPointCloud};

    const PATH: &str = "0 1\n0 2\n1 3\n1 4\n1 1 3\n1 3 4\n1 4 2\n";

    fn square() -> Filtration {
        let cloud = LabeledPointCloud::from_coords(
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]],
            vec![1.0; 4],
        )
        .unwrap();
        build_rips(&cloud, 2.0, 2).unwrap()
    }

    #[test]
    fn path_graph_one_class() {
        let f = parse_filtration_file(PATH).unwrap();
        let c = SheafSpec::constant();
        assert_eq!(persistent_betti_oracle(&f, &c, 0, 0.0, 1.0).unwrap(), 1);
        assert_eq!(homology_betti_oracle(&f, 0, 0.0, 1.0).unwrap(), 1);
        assert_eq!(cochain_map_check(&f, &c, 0, 0.0, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn components_at_zero_persistence() {
        let f = square();
        let c = SheafSpec::constant();
        assert_eq!(persistent_betti_oracle(&f, &c, 0, 0.5, 0.0).unwrap(), 4);
        assert_eq!(persistent_betti_oracle(&f, &c, 0, 1.0, 0.0).unwrap(), 1);
        assert_eq!(homology_betti_oracle(&f, 0, 0.5, 0.0).unwrap(), 4);
        assert_eq!(homology_betti_oracle(&f, 0, 0.5, 1.0).unwrap(), 1);
    }

    #[test]
    fn square_cycle() {
        let f = square();
        let c = SheafSpec::constant();
        assert_eq!(persistent_betti_oracle(&f, &c, 1, 1.2, 0.0).unwrap(), 1);
        assert_eq!(homology_betti_oracle(&f, 1, 1.0, 0.3).unwrap(), 1);
        assert_eq!(homology_betti_oracle(&f, 1, 1.2, 0.3).unwrap(), 0);
        assert_eq!(persistent_betti_oracle(&f, &c, 1, 1.3, 0.2).unwrap(), 0);
        // no edges yet
        assert_eq!(homology_betti_oracle(&f, 1, 0.5, 2.0).unwrap(), 0);
    }

    #[test]
    fn cochain_map_identity_at_zero_persistence() {
        let f = square();
        assert_eq!(cochain_map_check(&f, &SheafSpec::constant(), 1, 1.2, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn rank_of_empty_and_zero() {
        assert_eq!(numerical_rank(&DMatrix::zeros(0, 3)), 0);
        assert_eq!(numerical_rank(&DMatrix::zeros(2, 2)), 0);
        let r = rank_report("id", &DMatrix::identity(3, 3));
        assert_eq!(r.rank, 3);
        assert_eq!(r.singular_values, vec![1.0; 3]);
    }
}
