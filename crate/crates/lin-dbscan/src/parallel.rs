//! Sub-grid parallel variant.
//!
//! The cell-coordinate space is split along axis 0 into contiguous stripes,
//! one worker clusters each stripe independently, and a merge pass unions
//! local clusters that own Moore-adjacent dense cells on opposite sides of a
//! stripe boundary. The result is the same partition the sequential engine
//! produces, for any number of partitions.

use std::collections::HashMap;
use std::thread;

use crate::cluster::{assemble, fill_inner, row_map, Clustering, LinDbscanParams, ParamsUsed};
use crate::error::Result;
use crate::grid::{Cell, CellCoords, Grid};
use crate::point::Point;
use crate::timing::Stopwatch;

/// Clusters `points` on `n_partitions` sub-grids and merges across stripe
/// boundaries. Output ids are normalized by smallest contained row index, so
/// they coincide with the sequential ids for datasets in row order.
pub fn parallel_lin_dbscan(
    points: &[Point],
    params: &LinDbscanParams,
    n_partitions: usize,
) -> Result<Clustering> {
    params.validate()?;
    if n_partitions == 0 {
        return Err(crate::error::Error::invalid(
            "n_partitions must be at least 1",
        ));
    }
    let watch = Stopwatch::start();
    let grid = Grid::build(points, params.gamma)?;
    let n_cells = grid.n_cells();
    let dims = grid.dims();
    let gamma = grid.gamma();

    // Stripe cut values along axis 0, strictly increasing; stripe i covers
    // cells with axis-0 index in [cuts[i], cuts[i+1]).
    let cuts = stripe_cuts(&grid, n_partitions);
    let n_stripes = cuts.len() + 1;

    let mut stripe_parts: Vec<Vec<(CellCoords, Cell)>> = vec![Vec::new(); n_stripes];
    let mut stripe_points = vec![0usize; n_stripes];
    for (coords, cell) in grid.into_cells() {
        let s = stripe_of(&cuts, coords.indices()[0]);
        stripe_points[s] += cell.cardinality();
        stripe_parts[s].push((coords, cell));
    }

    let locals: Vec<LocalResult> = if n_stripes == 1 {
        let parts = stripe_parts.into_iter().next().unwrap();
        vec![cluster_stripe(
            Grid::from_parts(gamma, dims, parts, stripe_points[0]),
            params.min_pts,
        )]
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = stripe_parts
                .into_iter()
                .zip(stripe_points.iter())
                .map(|(parts, &np)| {
                    let local = Grid::from_parts(gamma, dims, parts, np);
                    scope.spawn(move || cluster_stripe(local, params.min_pts))
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        })
    };

    // Global ids for local clusters, then union across each boundary: a dense
    // cell in the top layer of stripe s can only touch dense cells in the
    // bottom layer of stripe s+1 (axis-0 difference is at most 1).
    let offsets: Vec<usize> = locals
        .iter()
        .scan(0usize, |acc, l| {
            let o = *acc;
            *acc += l.clusters.len();
            Some(o)
        })
        .collect();
    let total: usize = locals.iter().map(|l| l.clusters.len()).sum();
    let mut uf = UnionFind::new(total);
    for (s, cut) in cuts.iter().enumerate() {
        let upper = &locals[s + 1].dense_cells;
        for (coords, &local_id) in locals[s].dense_cells_in_order() {
            if coords.indices()[0] != cut - 1 {
                continue;
            }
            let mut probe: Vec<i64> = coords.indices().to_vec();
            probe[0] = *cut;
            for_each_cross_offset(&mut probe, 1, |candidate| {
                if let Some(&other) = upper.get(candidate) {
                    uf.union(offsets[s] + local_id, offsets[s + 1] + other);
                }
            });
        }
    }

    // Concatenate member lists per union-find root, then normalize ids by
    // smallest contained row index.
    let mut merged: HashMap<usize, Vec<usize>> = HashMap::new();
    for (s, local) in locals.iter().enumerate() {
        for (local_id, members) in local.clusters.iter().enumerate() {
            let root = uf.find(offsets[s] + local_id);
            merged.entry(root).or_default().extend_from_slice(members);
        }
    }
    let rows = row_map(points);
    let mut clusters: Vec<Vec<usize>> = merged.into_values().collect();
    clusters.sort_by_key(|members| members.iter().map(|&pos| rows[pos]).min());

    Ok(assemble(
        &rows,
        clusters,
        ParamsUsed::Lin(*params),
        n_cells,
        n_cells,
        watch.elapsed(),
        None,
    ))
}

struct LocalResult {
    /// Member positions per local cluster, in local discovery order.
    clusters: Vec<Vec<usize>>,
    /// Dense cell -> owning local cluster id.
    dense_cells: HashMap<CellCoords, usize>,
    /// Dense cells in discovery order, for deterministic merge iteration.
    dense_order: Vec<CellCoords>,
}

impl LocalResult {
    fn dense_cells_in_order(&self) -> impl Iterator<Item = (&CellCoords, &usize)> {
        self.dense_order
            .iter()
            .map(move |c| (c, &self.dense_cells[c]))
    }
}

fn cluster_stripe(mut grid: Grid, min_pts: usize) -> LocalResult {
    let scan = grid.scan_order();
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut dense_cells = HashMap::new();
    let mut dense_order = Vec::new();
    let mut worklist = Vec::new();
    for coords in scan {
        if !grid.contains(&coords) {
            continue;
        }
        let id = clusters.len();
        let mut members = Vec::new();
        fill_inner(&mut grid, &mut members, &coords, min_pts, &mut worklist, |c| {
            dense_cells.insert(c.clone(), id);
            dense_order.push(c.clone());
        });
        if !members.is_empty() {
            clusters.push(members);
        }
    }
    LocalResult {
        clusters,
        dense_cells,
        dense_order,
    }
}

/// Enumerates candidates varying dimensions `from..` of `probe` by -1/0/+1
/// while keeping dimensions `..from` fixed.
fn for_each_cross_offset(probe: &mut Vec<i64>, from: usize, mut f: impl FnMut(&[i64])) {
    let dims = probe.len();
    let free = dims - from;
    let base: Vec<i64> = probe[from..].to_vec();
    let count = 3usize.pow(free as u32);
    for k in 0..count {
        let mut rem = k;
        for d in 0..free {
            probe[from + d] = base[d] + (rem % 3) as i64 - 1;
            rem /= 3;
        }
        f(probe);
    }
    probe[from..].copy_from_slice(&base);
}

fn stripe_cuts(grid: &Grid, n_partitions: usize) -> Vec<i64> {
    if n_partitions <= 1 || grid.n_cells() == 0 {
        return Vec::new();
    }
    let mut axis0: Vec<i64> = grid.iter_cells().map(|c| c.coords().indices()[0]).collect();
    axis0.sort_unstable();
    let mut cuts = Vec::new();
    for i in 1..n_partitions {
        let cut = axis0[i * axis0.len() / n_partitions];
        if cuts.last() != Some(&cut) && cut > axis0[0] {
            cuts.push(cut);
        }
    }
    cuts
}

fn stripe_of(cuts: &[i64], axis0: i64) -> usize {
    cuts.partition_point(|&c| c <= axis0)
}

/// Disjoint-set forest with path halving and union by size.
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }
}
