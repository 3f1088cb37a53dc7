use std::time::Instant;

use indexmap::IndexMap;
use lin_dbscan::{uniform_points, Grid};
use rustc_hash::FxBuildHasher;

fn main() {
    for &n in &[100_000usize, 200_000, 400_000, 800_000] {
        let side = (n as f64 / 16.0).sqrt();
        let points = uniform_points(n, 2, side, 4242);
        for round in 0..3 {
            let t0 = Instant::now();
            let grid = Grid::build(&points, 1.0).unwrap();
            let t_current = t0.elapsed();
            let c1 = grid.n_cells();
            drop(grid);

            // Flat-buffer variant: copy coords once, bin from the flat array.
            let t1 = Instant::now();
            let dims = 2usize;
            let mut flat: Vec<f64> = Vec::with_capacity(n * dims);
            for p in &points {
                flat.extend_from_slice(&p.coords);
            }
            let mut cells: IndexMap<[i64; 2], Vec<u32>, FxBuildHasher> = IndexMap::default();
            for (i, chunk) in flat.chunks_exact(dims).enumerate() {
                let key = [
                    (chunk[0] / 1.0f64).floor() as i64,
                    (chunk[1] / 1.0f64).floor() as i64,
                ];
                match cells.get_index_of(&key) {
                    Some(idx) => cells[idx].push(i as u32),
                    None => {
                        cells.insert(key, vec![i as u32]);
                    }
                }
            }
            let t_flat = t1.elapsed();
            let c2 = cells.len();
            println!(
                "n={n:>7} round={round} current={t_current:>8.1?} ({c1} cells)  flat={t_flat:>8.1?} ({c2} cells)"
            );
        }
    }
}
