//! Classic DBSCAN baseline: Eps-neighborhood density, core-point expansion.
//!
//! Points are scanned in input order, so border points that fall in range of
//! two clusters join the one discovered first — runs are reproducible. The
//! default neighbor search buckets points into a uniform grid of cell side
//! `eps` (any point within `eps` of a query lies in a Moore-adjacent cell);
//! a plain O(n²) scan backend is also available. Both produce identical
//! output for identical input order.

use std::collections::VecDeque;

use crate::cluster::{assemble, Clustering, ParamsUsed};
use crate::error::{Error, Result};
use crate::grid::{cell_coords_unchecked, flatten_coords, for_each_moore_neighbor, Grid};
use crate::point::{dist2, Point};
use crate::timing::Stopwatch;

/// Neighborhood radius and minimum neighborhood population (the center
/// counts toward its own neighborhood).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DbscanParams {
    pub eps: f64,
    pub min_pts: usize,
}

impl DbscanParams {
    pub fn new(eps: f64, min_pts: usize) -> Result<Self> {
        let params = DbscanParams { eps, min_pts };
        params.validate()?;
        Ok(params)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if !(self.eps.is_finite() && self.eps > 0.0) {
            return Err(Error::invalid(format!(
                "eps must be a positive finite number, got {}",
                self.eps
            )));
        }
        if self.min_pts < 1 {
            return Err(Error::invalid("min_pts must be at least 1"));
        }
        Ok(())
    }
}

/// All points (the center included) at Euclidean distance <= eps from
/// `points[center_index]`, in input order.
pub fn region_query(points: &[Point], center_index: usize, eps: f64) -> Result<Vec<usize>> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::invalid(format!(
            "eps must be a positive finite number, got {eps}"
        )));
    }
    let Some(center) = points.get(center_index) else {
        return Err(Error::invalid(format!(
            "center index {center_index} out of range for {} points",
            points.len()
        )));
    };
    let eps2 = eps * eps;
    Ok(points
        .iter()
        .enumerate()
        .filter(|(_, p)| dist2(&center.coords, &p.coords) <= eps2)
        .map(|(i, _)| i)
        .collect())
}

/// DBSCAN with the grid-bucketed neighbor search.
pub fn dbscan(points: &[Point], params: &DbscanParams) -> Result<Clustering> {
    params.validate()?;
    let watch = Stopwatch::start();
    let flat = flatten_coords(points)?;
    let dims = points.first().map_or(0, Point::dims);
    let grid = Grid::build_flat(&flat, dims, params.eps, points.len())?;
    let n_cells = grid.n_cells();
    let eps2 = params.eps * params.eps;
    let row = |i: usize| &flat[i * dims..(i + 1) * dims];
    let clustering = run(points, params, |i| {
        let center = row(i);
        let coords = cell_coords_unchecked(center, params.eps);
        let mut out = Vec::new();
        for_each_moore_neighbor(&coords, |candidate| {
            if let Some(cell) = grid.get_by_indices(candidate) {
                for &j in cell.point_indices() {
                    let j = j as usize;
                    if dist2(center, row(j)) <= eps2 {
                        out.push(j);
                    }
                }
            }
        });
        out
    });
    Ok(finish(points, clustering, *params, n_cells, watch, "grid"))
}

/// DBSCAN with the exhaustive O(n²) neighbor scan.
pub fn dbscan_linear(points: &[Point], params: &DbscanParams) -> Result<Clustering> {
    params.validate()?;
    let watch = Stopwatch::start();
    let flat = flatten_coords(points)?;
    let dims = points.first().map_or(0, Point::dims);
    let eps2 = params.eps * params.eps;
    let clustering = run(points, params, |i| {
        let center = &flat[i * dims..(i + 1) * dims];
        flat.chunks_exact(dims)
            .enumerate()
            .filter(|(_, p)| dist2(center, p) <= eps2)
            .map(|(j, _)| j)
            .collect()
    });
    Ok(finish(
        points,
        clustering,
        *params,
        0,
        watch,
        "linear-scan",
    ))
}

fn run(
    points: &[Point],
    params: &DbscanParams,
    mut neighbors: impl FnMut(usize) -> Vec<usize>,
) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut assigned: Vec<Option<usize>> = vec![None; n];
    let mut visited = vec![false; n];
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        if visited[i] {
            continue;
        }
        visited[i] = true;
        let seeds = neighbors(i);
        if seeds.len() < params.min_pts {
            continue; // noise unless a later cluster reaches it as a border
        }
        let cid = clusters.len();
        clusters.push(vec![i]);
        assigned[i] = Some(cid);
        queue.extend(seeds);
        while let Some(j) = queue.pop_front() {
            if assigned[j].is_none() {
                assigned[j] = Some(cid);
                clusters[cid].push(j);
            }
            if visited[j] {
                continue;
            }
            visited[j] = true;
            let reach = neighbors(j);
            if reach.len() >= params.min_pts {
                queue.extend(reach);
            }
        }
    }
    clusters
}

fn finish(
    points: &[Point],
    clusters: Vec<Vec<usize>>,
    params: DbscanParams,
    n_cells: usize,
    watch: Stopwatch,
    backend: &'static str,
) -> Clustering {
    assemble(
        &crate::cluster::row_map(points),
        clusters,
        ParamsUsed::Dbscan(params),
        n_cells,
        0,
        watch.elapsed(),
        Some(backend),
    )
}
