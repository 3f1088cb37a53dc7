//! Density-based clustering on a uniform grid.
//!
//! The core engine bins points into hypercube cells of edge `gamma` and
//! flood-fills clusters over Moore-connected cells holding at least
//! `min_pts` points, in time linear in the point count plus `3^d` times the
//! occupied-cell count. Around it: a classic DBSCAN baseline for quality and
//! speed comparisons, a sorted k-dist heuristic that maps an Eps estimate to
//! a cell size, external validation indices, convex hulls for visualization,
//! dataset I/O and seeded synthetic generators.
//!
//! ```
//! use lin_dbscan::{lin_dbscan, LinDbscanParams, points_from_rows};
//!
//! let points = points_from_rows(&[[0.0, 0.0], [0.1, 0.1], [9.0, 9.0]]);
//! let result = lin_dbscan(&points, &LinDbscanParams::new(1.0, 1).unwrap()).unwrap();
//! assert_eq!(result.n_clusters(), 2);
//! ```

mod cluster;
mod dataset;
mod dbscan;
mod error;
mod grid;
mod heuristic;
mod hull;
mod parallel;
mod point;
mod synth;
mod timing;
mod validation;

pub use cluster::{
    fill, filter_min_size, lin_dbscan, Cluster, Clustering, LinDbscanParams, ParamsUsed, RunStats,
};
pub use dataset::{
    format_dataset, load_dataset, parse_dataset, write_dataset, DatasetSpec, Delimiter,
};
pub use dbscan::{dbscan, dbscan_linear, region_query, DbscanParams};
pub use error::{Error, Result};
pub use grid::{cell_coords, Cell, CellCoords, Grid};
pub use heuristic::{
    gamma_from_eps, k_dist, suggest_params, HeuristicResult, KDistSeries, SMOOTHING_WINDOW,
};
pub use hull::{convex_hull_2d, hull_of_points};
pub use parallel::parallel_lin_dbscan;
pub use point::{points_from_rows, truth_labels, Point};
pub use synth::{gaussian_blobs, uniform_points};
pub use validation::{
    contingency, indices, indices_with_normalizer, ContingencyStats, IndexReport, NmiNormalizer,
    NoisePolicy,
};
