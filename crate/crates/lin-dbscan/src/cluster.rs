//! The grid flood-fill clustering engine.
//!
//! Two steps: bin all points into a grid of cell size `gamma`, then grow
//! clusters over connected cells whose cardinality is at least `min_pts`.
//! Cells below the threshold contribute their points to noise and do not
//! propagate connectivity. Each stored cell is evaluated exactly once; the
//! expansion uses an explicit worklist, so arbitrarily large connected
//! regions cannot overflow the call stack.

use std::time::Duration;

use crate::dbscan::DbscanParams;
use crate::error::{Error, Result};
use crate::grid::{for_each_moore_neighbor, CellCoords, Grid};
use crate::point::Point;
use crate::timing::Stopwatch;

/// Cell size and per-cell density threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinDbscanParams {
    pub gamma: f64,
    pub min_pts: usize,
}

impl LinDbscanParams {
    pub fn new(gamma: f64, min_pts: usize) -> Result<Self> {
        let params = LinDbscanParams { gamma, min_pts };
        params.validate()?;
        Ok(params)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if !(self.gamma.is_finite() && self.gamma > 0.0) {
            return Err(Error::invalid(format!(
                "gamma must be a positive finite number, got {}",
                self.gamma
            )));
        }
        if self.min_pts < 1 {
            return Err(Error::invalid("min_pts must be at least 1"));
        }
        Ok(())
    }
}

/// One cluster: contiguous id and the row indices of its members, in
/// discovery order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    pub id: usize,
    pub point_indices: Vec<usize>,
}

impl Cluster {
    pub fn len(&self) -> usize {
        self.point_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.point_indices.is_empty()
    }
}

/// Which algorithm and parameters produced a `Clustering`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamsUsed {
    Lin(LinDbscanParams),
    Dbscan(DbscanParams),
}

/// Run statistics attached to every clustering result.
#[derive(Debug, Clone)]
pub struct RunStats {
    pub n_points: usize,
    /// Non-empty cells in the grid the run built (for the baseline this is
    /// the accelerator's cell count; 0 under the linear-scan backend).
    pub n_cells: usize,
    pub elapsed: Duration,
    /// How many stored cells the flood fill evaluated; equals `n_cells` for
    /// every grid-based run.
    pub cells_evaluated: usize,
    /// Neighbor-search backend, where more than one exists.
    pub backend: Option<&'static str>,
}

/// A partition of the input: disjoint clusters plus a noise set covering
/// every input point exactly once. Cluster ids are `0..k` with no gaps.
#[derive(Debug, Clone)]
pub struct Clustering {
    pub clusters: Vec<Cluster>,
    /// Row indices of points in no cluster, ascending.
    pub noise: Vec<usize>,
    pub params_used: ParamsUsed,
    pub stats: RunStats,
}

impl Clustering {
    pub fn n_clusters(&self) -> usize {
        self.clusters.len()
    }

    /// Per-row labels: cluster id, or -1 for noise. `n_points` must cover
    /// every row index in the clustering.
    pub fn labels(&self, n_points: usize) -> Vec<i64> {
        let mut labels = vec![-1i64; n_points];
        for cluster in &self.clusters {
            for &row in &cluster.point_indices {
                labels[row] = cluster.id as i64;
            }
        }
        labels
    }

    /// The partition as a canonical set of sets (each sorted), for
    /// label-insensitive comparisons.
    pub fn partition(&self) -> Vec<Vec<usize>> {
        let mut sets: Vec<Vec<usize>> = self
            .clusters
            .iter()
            .map(|c| {
                let mut v = c.point_indices.clone();
                v.sort_unstable();
                v
            })
            .collect();
        sets.sort();
        sets
    }
}

/// Clusters `points` with the discrete density model: one cluster per
/// maximal connected component of cells holding at least `min_pts` points.
///
/// The partition is invariant under input permutation and starting cell;
/// cluster ids ascend with the smallest row index contained in each cluster.
pub fn lin_dbscan(points: &[Point], params: &LinDbscanParams) -> Result<Clustering> {
    params.validate()?;
    let watch = Stopwatch::start();
    let mut grid = Grid::build(points, params.gamma)?;
    let n_cells = grid.n_cells();

    let scan = grid.scan_order();
    let mut clusters = Vec::new();
    let mut cells_evaluated = 0usize;
    let mut worklist = Vec::new();
    for coords in scan {
        if !grid.contains(&coords) {
            continue;
        }
        let mut members = Vec::new();
        cells_evaluated += fill_inner(
            &mut grid,
            &mut members,
            &coords,
            params.min_pts,
            &mut worklist,
            |_| {},
        );
        if !members.is_empty() {
            clusters.push(members);
        }
    }
    debug_assert!(grid.is_empty());
    debug_assert_eq!(cells_evaluated, n_cells);

    Ok(assemble(
        &row_map(points),
        clusters,
        ParamsUsed::Lin(*params),
        n_cells,
        cells_evaluated,
        watch.elapsed(),
        None,
    ))
}

/// Expands one cluster from `start`: removes every visited cell from the
/// grid, adds the points of every dense cell reachable from `start` through
/// dense cells to `cluster`. A sub-threshold cell is consumed but contributes
/// no points and is not expanded through. Point indices refer to the slice
/// the grid was built from.
pub fn fill(grid: &mut Grid, cluster: &mut Vec<usize>, start: &CellCoords, min_pts: usize) {
    let mut worklist = Vec::new();
    fill_inner(grid, cluster, start, min_pts, &mut worklist, |_| {});
}

/// `fill`, returning how many stored cells were evaluated (removed and
/// threshold-tested) and reporting each consumed dense cell. `worklist` is
/// scratch space reused across calls.
pub(crate) fn fill_inner(
    grid: &mut Grid,
    cluster: &mut Vec<usize>,
    start: &CellCoords,
    min_pts: usize,
    worklist: &mut Vec<CellCoords>,
    mut on_dense_cell: impl FnMut(&CellCoords),
) -> usize {
    debug_assert!(worklist.is_empty());
    let mut evaluated = 0usize;
    worklist.push(start.clone());
    while let Some(coords) = worklist.pop() {
        // A cell can be queued more than once; only its first visit finds it
        // still stored.
        let Some(cell) = grid.remove(&coords) else {
            continue;
        };
        evaluated += 1;
        if cell.cardinality() < min_pts {
            continue;
        }
        on_dense_cell(&coords);
        cluster.extend(cell.point_indices().iter().map(|&i| i as usize));
        for_each_moore_neighbor(&coords, |candidate| {
            if grid.contains_indices(candidate) {
                worklist.push(CellCoords::from(candidate));
            }
        });
    }
    evaluated
}

/// Deletes clusters smaller than `min_cluster_size`, moving their points to
/// noise; survivors keep their relative order and are renumbered from 0.
pub fn filter_min_size(clustering: Clustering, min_cluster_size: usize) -> Clustering {
    let Clustering {
        clusters,
        noise,
        params_used,
        stats,
    } = clustering;
    let mut kept = Vec::with_capacity(clusters.len());
    let mut noise = noise;
    for cluster in clusters {
        if cluster.len() >= min_cluster_size {
            let id = kept.len();
            kept.push(Cluster { id, ..cluster });
        } else {
            noise.extend_from_slice(&cluster.point_indices);
        }
    }
    noise.sort_unstable();
    Clustering {
        clusters: kept,
        noise,
        params_used,
        stats,
    }
}

/// Turns raw member lists (slice positions) into a `Clustering` keyed by row
/// index, with noise as the complement. `rows` maps position -> row_index;
/// a flat copy keeps the position-ordered lookups off the point structs.
pub(crate) fn assemble(
    rows: &[usize],
    member_positions: Vec<Vec<usize>>,
    params_used: ParamsUsed,
    n_cells: usize,
    cells_evaluated: usize,
    elapsed: Duration,
    backend: Option<&'static str>,
) -> Clustering {
    let mut clustered = vec![false; rows.len()];
    let clusters: Vec<Cluster> = member_positions
        .into_iter()
        .enumerate()
        .map(|(id, positions)| {
            let point_indices = positions
                .into_iter()
                .map(|pos| {
                    clustered[pos] = true;
                    rows[pos]
                })
                .collect();
            Cluster { id, point_indices }
        })
        .collect();
    let mut noise: Vec<usize> = clustered
        .iter()
        .enumerate()
        .filter(|(_, &c)| !c)
        .map(|(pos, _)| rows[pos])
        .collect();
    noise.sort_unstable();
    Clustering {
        clusters,
        noise,
        params_used,
        stats: RunStats {
            n_points: rows.len(),
            n_cells,
            elapsed,
            cells_evaluated,
            backend,
        },
    }
}

/// Position -> row_index, gathered once in input order.
pub(crate) fn row_map(points: &[Point]) -> Vec<usize> {
    points.iter().map(|p| p.row_index).collect()
}
