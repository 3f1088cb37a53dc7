//! Independent oracles for the integration suites. Everything here is
//! written from the definitions (floors, exhaustive adjacency, exhaustive
//! pair counting, textbook DBSCAN) without touching the library's engine, so
//! comparisons are genuine dual routes.

#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use lin_dbscan::Point;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// A canonical partition: member sets sorted internally and between each
/// other, so two partitions compare with `==`.
pub fn canonical(mut sets: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for s in &mut sets {
        s.sort_unstable();
    }
    sets.sort();
    sets
}

/// Brute-force grid clustering: bin by floors, keep cells with at least
/// `min_pts` points, connect dense cells by exhaustive pairwise Chebyshev
/// tests, take connected components.
pub fn oracle_grid_clustering(
    points: &[Point],
    gamma: f64,
    min_pts: usize,
) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut cells: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    for (i, p) in points.iter().enumerate() {
        let key: Vec<i64> = p.coords.iter().map(|&c| (c / gamma).floor() as i64).collect();
        cells.entry(key).or_default().push(i);
    }
    let dense: Vec<(&Vec<i64>, &Vec<usize>)> = cells
        .iter()
        .filter(|(_, members)| members.len() >= min_pts)
        .collect();

    let chebyshev_adjacent = |a: &[i64], b: &[i64]| {
        a.iter()
            .zip(b.iter())
            .map(|(x, y)| (x - y).abs())
            .max()
            .unwrap_or(0)
            <= 1
    };
    let mut component = vec![usize::MAX; dense.len()];
    let mut next = 0;
    for start in 0..dense.len() {
        if component[start] != usize::MAX {
            continue;
        }
        let mut queue = VecDeque::from([start]);
        component[start] = next;
        while let Some(u) = queue.pop_front() {
            for v in 0..dense.len() {
                if component[v] == usize::MAX && chebyshev_adjacent(dense[u].0, dense[v].0) {
                    component[v] = next;
                    queue.push_back(v);
                }
            }
        }
        next += 1;
    }

    let mut clusters: Vec<Vec<usize>> = vec![Vec::new(); next];
    for (idx, (_, members)) in dense.iter().enumerate() {
        let rows = members.iter().map(|&pos| points[pos].row_index);
        clusters[component[idx]].extend(rows);
    }
    let clustered: std::collections::HashSet<usize> =
        clusters.iter().flatten().copied().collect();
    let mut noise: Vec<usize> = points
        .iter()
        .map(|p| p.row_index)
        .filter(|r| !clustered.contains(r))
        .collect();
    noise.sort_unstable();
    (canonical(clusters), noise)
}

pub struct OracleDbscan {
    /// Cluster id per position; -1 noise.
    pub labels: Vec<i64>,
    pub core: Vec<bool>,
    pub noise_rows: Vec<usize>,
    pub partition: Vec<Vec<usize>>,
}

/// Textbook O(n²) DBSCAN: scan in input order, inclusive <= eps
/// neighborhoods counting the center, border points claimed by the first
/// cluster that reaches them.
pub fn oracle_dbscan(points: &[Point], eps: f64, min_pts: usize) -> OracleDbscan {
    const UNDEFINED: i64 = -2;
    const NOISE: i64 = -1;
    let n = points.len();
    let eps2 = eps * eps;
    let d2 = |a: usize, b: usize| -> f64 {
        points[a]
            .coords
            .iter()
            .zip(&points[b].coords)
            .map(|(x, y)| (x - y) * (x - y))
            .sum()
    };
    let neighbors = |i: usize| -> Vec<usize> { (0..n).filter(|&j| d2(i, j) <= eps2).collect() };

    let core: Vec<bool> = (0..n).map(|i| neighbors(i).len() >= min_pts).collect();
    let mut labels = vec![UNDEFINED; n];
    let mut cid = 0i64;
    for i in 0..n {
        if labels[i] != UNDEFINED {
            continue;
        }
        if !core[i] {
            labels[i] = NOISE;
            continue;
        }
        labels[i] = cid;
        let mut seeds: VecDeque<usize> = neighbors(i).into();
        while let Some(q) = seeds.pop_front() {
            if labels[q] == NOISE {
                labels[q] = cid; // border point claimed
            }
            if labels[q] != UNDEFINED {
                continue;
            }
            labels[q] = cid;
            if core[q] {
                seeds.extend(neighbors(q));
            }
        }
        cid += 1;
    }

    let mut clusters: Vec<Vec<usize>> = vec![Vec::new(); cid as usize];
    let mut noise_rows = Vec::new();
    for (pos, &label) in labels.iter().enumerate() {
        if label >= 0 {
            clusters[label as usize].push(points[pos].row_index);
        } else {
            noise_rows.push(points[pos].row_index);
        }
    }
    noise_rows.sort_unstable();
    OracleDbscan {
        labels,
        core,
        noise_rows,
        partition: canonical(clusters),
    }
}

/// All seven indices by exhaustive pair enumeration plus a from-scratch NMI
/// (natural log, arithmetic-mean normalizer). `pred`/`truth` are per-point
/// group labels over the same index range.
pub struct OracleIndices {
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    pub rand: f64,
    pub jaccard: f64,
    pub fowlkes_mallows: f64,
    pub nmi: f64,
}

pub fn oracle_indices(pred: &[usize], truth: &[usize]) -> OracleIndices {
    assert_eq!(pred.len(), truth.len());
    let n = pred.len();
    let (mut tp, mut fp, mut fne, mut tn) = (0u64, 0u64, 0u64, 0u64);
    for i in 0..n {
        for j in i + 1..n {
            let same_pred = pred[i] == pred[j];
            let same_truth = truth[i] == truth[j];
            match (same_pred, same_truth) {
                (true, true) => tp += 1,
                (true, false) => fp += 1,
                (false, true) => fne += 1,
                (false, false) => tn += 1,
            }
        }
    }
    let div = |a: u64, b: u64| if b == 0 { 0.0 } else { a as f64 / b as f64 };
    let precision = div(tp, tp + fp);
    let recall = div(tp, tp + fne);
    let f_measure = if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    let rand = div(tp + tn, tp + fp + fne + tn);
    let jaccard = div(tp, tp + fp + fne);
    let fowlkes_mallows = (precision * recall).sqrt();

    let nf = n as f64;
    let count = |labels: &[usize]| -> HashMap<usize, u64> {
        let mut m = HashMap::new();
        for &l in labels {
            *m.entry(l).or_insert(0u64) += 1;
        }
        m
    };
    let pred_sizes = count(pred);
    let truth_sizes = count(truth);
    let mut joint: HashMap<(usize, usize), u64> = HashMap::new();
    for i in 0..n {
        *joint.entry((pred[i], truth[i])).or_insert(0) += 1;
    }
    let entropy = |sizes: &HashMap<usize, u64>| -> f64 {
        sizes
            .values()
            .map(|&c| {
                let p = c as f64 / nf;
                -p * p.ln()
            })
            .sum()
    };
    let h_pred = entropy(&pred_sizes);
    let h_truth = entropy(&truth_sizes);
    let nmi = if h_pred == 0.0 && h_truth == 0.0 {
        1.0
    } else {
        let mut mi = 0.0;
        for (&(a, b), &c) in &joint {
            let pij = c as f64 / nf;
            let pa = pred_sizes[&a] as f64 / nf;
            let pb = truth_sizes[&b] as f64 / nf;
            mi += pij * (pij / (pa * pb)).ln();
        }
        let norm = (h_pred + h_truth) / 2.0;
        if norm == 0.0 {
            0.0
        } else {
            mi / norm
        }
    };
    OracleIndices {
        precision,
        recall,
        f_measure,
        rand,
        jaccard,
        fowlkes_mallows,
        nmi,
    }
}

/// k-dist by the full-sort route: per point, sort all other distances and
/// take the k-th.
pub fn oracle_k_dist(points: &[Point], k: usize) -> Vec<f64> {
    let n = points.len();
    let mut values: Vec<f64> = (0..n)
        .map(|i| {
            let mut dists: Vec<f64> = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    points[i]
                        .coords
                        .iter()
                        .zip(&points[j].coords)
                        .map(|(x, y)| (x - y) * (x - y))
                        .sum::<f64>()
                        .sqrt()
                })
                .collect();
            dists.sort_by(f64::total_cmp);
            dists[k - 1]
        })
        .collect();
    values.sort_unstable_by(|a, b| b.total_cmp(a));
    values
}

/// Seeded random dataset: n points, d dims, coordinates in [-span, span).
pub fn random_points(rng: &mut ChaCha8Rng, n: usize, dims: usize, span: f64) -> Vec<Point> {
    (0..n)
        .map(|i| {
            let coords = (0..dims).map(|_| rng.random_range(-span..span)).collect();
            Point::new(i, coords)
        })
        .collect()
}

pub fn shuffled(points: &[Point], rng: &mut ChaCha8Rng) -> Vec<Point> {
    let mut v = points.to_vec();
    v.shuffle(rng);
    v
}
