//! Property tests for the spec-level invariants.

mod common;

use lin_dbscan::{
    cell_coords, contingency, dbscan, gamma_from_eps, indices, k_dist, lin_dbscan, truth_labels,
    Cluster, Clustering, DbscanParams, Grid, LinDbscanParams, NoisePolicy, Point,
};
use proptest::prelude::*;

fn small_dataset() -> impl Strategy<Value = Vec<Point>> {
    (1usize..=3).prop_flat_map(|dims| {
        prop::collection::vec(
            prop::collection::vec(-50.0..50.0f64, dims..=dims),
            1..60,
        )
        .prop_map(|rows| {
            rows.into_iter()
                .enumerate()
                .map(|(i, coords)| Point::new(i, coords))
                .collect()
        })
    })
}

fn gamma() -> impl Strategy<Value = f64> {
    0.2..8.0f64
}

proptest! {
    #[test]
    fn grid_partitions_points(points in small_dataset(), g in gamma()) {
        let grid = Grid::build(&points, g).unwrap();
        let total: usize = grid.iter_cells().map(|c| c.cardinality()).sum();
        prop_assert_eq!(total, points.len());
        prop_assert!(grid.n_cells() <= points.len());
        // Every stored point sits in the cell its floors say.
        for cell in grid.iter_cells() {
            for &pos in cell.point_indices() {
                let expected = cell_coords(&points[pos], g).unwrap();
                prop_assert_eq!(&expected, cell.coords());
            }
        }
    }

    #[test]
    fn neighborhood_symmetric_and_chebyshev(points in small_dataset(), g in gamma()) {
        let grid = Grid::build(&points, g).unwrap();
        let coords: Vec<_> = grid.scan_order();
        for a in &coords {
            let neighbors_a: Vec<_> = grid.find_neighbors(a).iter().map(|c| c.coords().clone()).collect();
            for b in &coords {
                let chebyshev = a
                    .indices()
                    .iter()
                    .zip(b.indices())
                    .map(|(x, y)| (x - y).abs())
                    .max()
                    .unwrap();
                let a_sees_b = neighbors_a.contains(b);
                prop_assert_eq!(a_sees_b, chebyshev <= 1);
                let b_sees_a = grid
                    .find_neighbors(b)
                    .iter()
                    .any(|c| c.coords() == a);
                prop_assert_eq!(a_sees_b, b_sees_a);
            }
        }
    }

    #[test]
    fn same_cell_distance_bound(points in small_dataset(), g in gamma()) {
        let grid = Grid::build(&points, g).unwrap();
        let dims = points[0].dims() as f64;
        let bound = g * dims.sqrt() + 1e-9;
        for cell in grid.iter_cells() {
            let members = cell.point_indices();
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i + 1..] {
                    let d2: f64 = points[a]
                        .coords
                        .iter()
                        .zip(&points[b].coords)
                        .map(|(x, y)| (x - y) * (x - y))
                        .sum();
                    prop_assert!(d2.sqrt() <= bound);
                }
            }
        }
    }

    #[test]
    fn scale_covariance_power_of_two(points in small_dataset(), g in gamma(), exp in -3i32..4) {
        // Power-of-two scaling is exact in binary floating point, so the
        // mathematical covariance statement survives rounding.
        let factor = 2.0f64.powi(exp);
        for p in &points {
            let scaled = Point::new(p.row_index, p.coords.iter().map(|c| c * factor).collect());
            prop_assert_eq!(
                cell_coords(p, g).unwrap(),
                cell_coords(&scaled, g * factor).unwrap()
            );
        }
    }

    #[test]
    fn lin_runs_deterministically(points in small_dataset(), g in gamma(), min_pts in 1usize..4) {
        let params = LinDbscanParams::new(g, min_pts).unwrap();
        let a = lin_dbscan(&points, &params).unwrap();
        let b = lin_dbscan(&points, &params).unwrap();
        prop_assert_eq!(a.partition(), b.partition());
        prop_assert_eq!(a.labels(points.len()), b.labels(points.len()));
    }

    #[test]
    fn lin_cluster_sizes_and_noise_soundness(points in small_dataset(), g in gamma(), min_pts in 1usize..4) {
        let params = LinDbscanParams::new(g, min_pts).unwrap();
        let result = lin_dbscan(&points, &params).unwrap();
        // Every cluster is at least min_pts; the engine evaluated each stored
        // cell exactly once.
        for cluster in &result.clusters {
            prop_assert!(cluster.len() >= min_pts);
        }
        prop_assert_eq!(result.stats.cells_evaluated, result.stats.n_cells);
        // Disjoint cover.
        let mut seen = vec![0usize; points.len()];
        for cluster in &result.clusters {
            for &row in &cluster.point_indices {
                seen[row] += 1;
            }
        }
        for &row in &result.noise {
            seen[row] += 1;
        }
        prop_assert!(seen.iter().all(|&c| c == 1));
        // Each noise point sits in a sub-threshold cell (independent count).
        let grid = Grid::build(&points, g).unwrap();
        for &row in &result.noise {
            let coords = cell_coords(&points[row], g).unwrap();
            prop_assert!(grid.get(&coords).unwrap().cardinality() < min_pts);
        }
        if min_pts == 1 {
            prop_assert!(result.noise.is_empty());
        }
    }

    #[test]
    fn dbscan_core_and_noise_invariant_under_permutation(
        points in small_dataset(),
        eps in 0.3..5.0f64,
        min_pts in 1usize..5,
        seed in 0u64..1000,
    ) {
        use rand::prelude::*;
        let params = DbscanParams::new(eps, min_pts).unwrap();
        let base = dbscan(&points, &params).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let shuffled = common::shuffled(&points, &mut rng);
        let moved = dbscan(&shuffled, &params).unwrap();
        prop_assert_eq!(base.noise.clone(), moved.noise.clone());
        // Core rows are order-free; recompute via the oracle on both orders.
        let a = common::oracle_dbscan(&points, eps, min_pts);
        let b = common::oracle_dbscan(&shuffled, eps, min_pts);
        let mut cores_a: Vec<usize> = points.iter().zip(&a.core).filter(|(_, &c)| c).map(|(p, _)| p.row_index).collect();
        let mut cores_b: Vec<usize> = shuffled.iter().zip(&b.core).filter(|(_, &c)| c).map(|(p, _)| p.row_index).collect();
        cores_a.sort_unstable();
        cores_b.sort_unstable();
        prop_assert_eq!(cores_a, cores_b);
    }

    #[test]
    fn gamma_from_eps_strictly_increasing(a in 0.001..100.0f64, b in 0.001..100.0f64) {
        prop_assume!(a < b);
        prop_assert!(gamma_from_eps(a).unwrap() < gamma_from_eps(b).unwrap());
    }

    #[test]
    fn k_dist_non_increasing(points in small_dataset(), k in 1usize..5) {
        prop_assume!(k < points.len());
        let s = k_dist(&points, k).unwrap();
        prop_assert_eq!(s.values.len(), points.len());
        prop_assert!(s.values.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(s.values.iter().all(|&v| v >= 0.0));
    }
}

fn clustering_from_groups(groups: &[usize]) -> Clustering {
    let k = groups.iter().max().map_or(0, |&m| m + 1);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (row, &g) in groups.iter().enumerate() {
        members[g].push(row);
    }
    let clusters = members
        .into_iter()
        .filter(|m| !m.is_empty())
        .enumerate()
        .map(|(id, point_indices)| Cluster { id, point_indices })
        .collect::<Vec<_>>();
    let pts: Vec<Point> = groups
        .iter()
        .enumerate()
        .map(|(i, _)| Point::new(i, vec![i as f64]))
        .collect();
    let base = lin_dbscan(&pts, &LinDbscanParams::new(1.0, 1).unwrap()).unwrap();
    Clustering { clusters, ..base }
}

fn group_labels(groups: &[usize]) -> Vec<Option<String>> {
    groups.iter().map(|g| Some(g.to_string())).collect()
}

proptest! {
    #[test]
    fn indices_symmetric_and_bounded(
        assignment in prop::collection::vec((0usize..4, 0usize..4), 2..40)
    ) {
        let pred: Vec<usize> = assignment.iter().map(|&(p, _)| p).collect();
        let truth: Vec<usize> = assignment.iter().map(|&(_, t)| t).collect();

        let forward = indices(
            &contingency(&clustering_from_groups(&pred), &group_labels(&truth), NoisePolicy::NoiseAsSingletons).unwrap()
        ).unwrap();
        let backward = indices(
            &contingency(&clustering_from_groups(&truth), &group_labels(&pred), NoisePolicy::NoiseAsSingletons).unwrap()
        ).unwrap();

        for v in [
            forward.precision, forward.recall, forward.f_measure, forward.rand,
            forward.jaccard, forward.fowlkes_mallows, forward.nmi,
        ] {
            prop_assert!((0.0..=1.0).contains(&v));
        }
        // Swapping prediction and truth swaps precision/recall and fixes the
        // symmetric four.
        prop_assert!((forward.rand - backward.rand).abs() < 1e-12);
        prop_assert!((forward.jaccard - backward.jaccard).abs() < 1e-12);
        prop_assert!((forward.fowlkes_mallows - backward.fowlkes_mallows).abs() < 1e-12);
        prop_assert!((forward.nmi - backward.nmi).abs() < 1e-12);
        prop_assert!((forward.precision - backward.recall).abs() < 1e-12);
        prop_assert!((forward.recall - backward.precision).abs() < 1e-12);
        prop_assert!((forward.fowlkes_mallows.powi(2) - forward.precision * forward.recall).abs() < 1e-12);
    }

    #[test]
    fn indices_invariant_under_relabeling(
        assignment in prop::collection::vec((0usize..4, 0usize..3), 2..30)
    ) {
        let groups: Vec<usize> = assignment.iter().map(|&(p, _)| p).collect();
        let truth: Vec<usize> = assignment.iter().map(|&(_, t)| t).collect();
        let relabeled: Vec<usize> = groups.iter().map(|&g| 3 - g).collect();
        let a = indices(&contingency(&clustering_from_groups(&groups), &group_labels(&truth), NoisePolicy::NoiseAsSingletons).unwrap()).unwrap();
        let b = indices(&contingency(&clustering_from_groups(&relabeled), &group_labels(&truth), NoisePolicy::NoiseAsSingletons).unwrap()).unwrap();
        prop_assert!((a.precision - b.precision).abs() < 1e-12);
        prop_assert!((a.recall - b.recall).abs() < 1e-12);
        prop_assert!((a.rand - b.rand).abs() < 1e-12);
        prop_assert!((a.nmi - b.nmi).abs() < 1e-12);
    }
}

#[test]
fn truth_labels_roundtrip_through_points() {
    let pts = vec![
        Point::with_label(0, vec![0.0], "a"),
        Point::with_label(1, vec![1.0], "b"),
    ];
    let labels = truth_labels(&pts).unwrap();
    assert_eq!(labels.len(), 2);
    assert_eq!(labels[1].as_deref(), Some("b"));
}
