#![allow(dead_code)]

use psl_core::io::LabeledPointCloud;
use psl_core::{build_rips, Filtration};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform in `[-2, -0.1] ∪ [0.1, 2]`.
pub fn random_label(rng: &mut impl Rng) -> f64 {
    let mag = rng.gen_range(0.1..=2.0);
    if rng.gen_bool(0.5) {
        mag
    } else {
        -mag
    }
}

/// Random labeled cloud in the unit square/cube with no two points closer
/// than `min_sep`.
pub fn random_cloud(rng: &mut impl Rng, n: usize, dim: usize, min_sep: f64) -> LabeledPointCloud {
    let mut coords: Vec<Vec<f64>> = Vec::with_capacity(n);
    while coords.len() < n {
        let p: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.0..1.0)).collect();
        let ok = coords.iter().all(|c| {
            c.iter()
                .zip(&p)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
                >= min_sep
        });
        if ok {
            coords.push(p);
        }
    }
    let labels = (0..n).map(|_| random_label(rng)).collect();
    LabeledPointCloud::from_coords(coords, labels).unwrap()
}

pub struct Instance {
    pub cloud: LabeledPointCloud,
    pub filtration: Filtration,
    pub r_max: f64,
    pub q: usize,
    pub t: f64,
    pub p: f64,
}

/// A random labeled Rips instance: 3–10 points, 2D or 3D, dim ≤ 2, with a
/// random `(q, t, p)` query inside the filtration range.
pub fn random_instance(rng: &mut impl Rng) -> Instance {
    let n = rng.gen_range(3..=10);
    let dim = rng.gen_range(2..=3);
    let cloud = random_cloud(rng, n, dim, 0.1);
    let r_max = rng.gen_range(0.5..1.2);
    let filtration = build_rips(&cloud, r_max, 2).unwrap();
    let q = rng.gen_range(0..=1);
    let t = rng.gen_range(0.0..r_max);
    let p = if rng.gen_bool(0.2) {
        0.0
    } else {
        rng.gen_range(0.0..0.5)
    };
    Instance {
        cloud,
        filtration,
        r_max,
        q,
        t,
        p,
    }
}

/// Copy of `cloud` with points reordered: new point `i` is old point `perm[i]`.
pub fn permute(cloud: &LabeledPointCloud, perm: &[usize]) -> LabeledPointCloud {
    let coords = perm.iter().map(|&i| cloud.coords(i).to_vec()).collect();
    let labels = perm.iter().map(|&i| cloud.points()[i].label).collect();
    LabeledPointCloud::from_coords(coords, labels).unwrap()
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v
}
