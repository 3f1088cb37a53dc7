//! Seeded synthetic datasets for benchmarks and demos. Same seed, same
//! dataset, on every platform (ChaCha8 keyed by the seed).

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::point::Point;

/// `n` points uniform over `[0, side)^dims`. Uniform occupancy is the worst
/// case for a grid, which makes it the honest scaling baseline.
pub fn uniform_points(n: usize, dims: usize, side: f64, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let coords = (0..dims).map(|_| rng.random_range(0.0..side)).collect();
            Point::new(i, coords)
        })
        .collect()
}

/// `n` points drawn from `k` isotropic Gaussian blobs with centers uniform
/// over `[margin, side - margin]^2`; each point is labeled with its blob
/// index. Intended for demos and labeled smoke tests.
pub fn gaussian_blobs(n: usize, k: usize, side: f64, spread: f64, seed: u64) -> Vec<Point> {
    let k = k.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let margin = side * 0.15;
    let centers: Vec<[f64; 2]> = (0..k)
        .map(|_| {
            [
                rng.random_range(margin..side - margin),
                rng.random_range(margin..side - margin),
            ]
        })
        .collect();
    let normal = Normal::new(0.0, spread).expect("finite spread");
    (0..n)
        .map(|i| {
            let blob = i % k;
            let coords = vec![
                centers[blob][0] + normal.sample(&mut rng),
                centers[blob][1] + normal.sample(&mut rng),
            ];
            Point::with_label(i, coords, blob.to_string())
        })
        .collect()
}
