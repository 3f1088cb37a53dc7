//! Sorted k-dist analysis and the Eps -> gamma translation.
//!
//! The sorted k-dist plot is the classic tool for eyeballing an Eps value;
//! here the knee is also picked automatically (maximum second difference of
//! the smoothed descending series) so the CLI can run unattended. Automated
//! output is a suggestion: the full series is always returned so a human can
//! read the plot and override.

use crate::error::{Error, Result};
use crate::point::{dist2, Point};

/// Window of the moving average applied before knee detection, and how many
/// positions above the knee the relaxed Eps is read.
pub const SMOOTHING_WINDOW: usize = 5;

/// Distances from each point to its k-th nearest other point, sorted
/// descending.
#[derive(Debug, Clone, PartialEq)]
pub struct KDistSeries {
    pub k: usize,
    pub values: Vec<f64>,
}

impl KDistSeries {
    /// Two-column delimited text (rank, distance), one row per point.
    pub fn to_delimited(&self) -> String {
        let mut out = String::new();
        for (rank, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{rank},{v}\n"));
        }
        out
    }
}

/// Automated suggestion derived from the k-dist series.
#[derive(Debug, Clone, PartialEq)]
pub struct HeuristicResult {
    /// The k-dist value at the detected knee (the Eps a DBSCAN user would
    /// read off the plot).
    pub eps_estimate: f64,
    /// Cell size derived from a value at or above the knee; always at least
    /// `eps_estimate / (2 * sqrt(2))`.
    pub gamma_suggested: f64,
    pub min_pts_suggested: usize,
    /// Position of the knee in the descending series, when one was found.
    pub knee_index: Option<usize>,
    /// Set when the series carries no usable knee (constant or too short).
    pub degenerate_knee: bool,
    /// Set when the dimensionality is not 2, where the min_pts default has
    /// no experimental backing.
    pub min_pts_low_confidence: bool,
}

/// Cell size from a neighborhood radius: `eps / (2 * sqrt(2))`. With this
/// size, any two points sharing a 2-D cell are within eps/2 of each other.
pub fn gamma_from_eps(eps: f64) -> Result<f64> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::invalid(format!(
            "eps must be a positive finite number, got {eps}"
        )));
    }
    Ok(eps / (2.0 * std::f64::consts::SQRT_2))
}

/// Distance from every point to its k-th nearest other point (self
/// excluded), sorted descending. Requires `1 <= k < points.len()`.
pub fn k_dist(points: &[Point], k: usize) -> Result<KDistSeries> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if k >= points.len() {
        return Err(Error::invalid(format!(
            "k = {k} must be smaller than the number of points ({})",
            points.len()
        )));
    }
    let flat = crate::grid::flatten_coords(points)?;
    let dims = points[0].dims();
    let mut values = Vec::with_capacity(points.len());
    let mut scratch = Vec::with_capacity(points.len() - 1);
    for i in 0..points.len() {
        let center = &flat[i * dims..(i + 1) * dims];
        scratch.clear();
        scratch.extend(
            flat.chunks_exact(dims)
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, q)| dist2(center, q)),
        );
        let (_, kth, _) = scratch.select_nth_unstable_by(k - 1, f64::total_cmp);
        values.push(kth.sqrt());
    }
    values.sort_unstable_by(|a, b| b.total_cmp(a));
    Ok(KDistSeries { k, values })
}

/// Runs the k-dist analysis and suggests (eps, gamma, min_pts).
///
/// The knee is the index with the largest second difference of the smoothed
/// series; gamma is derived from the series value one smoothing window above
/// the knee, relaxing the estimate to absorb discretization error. min_pts
/// is 1, flagged low-confidence away from d = 2.
pub fn suggest_params(points: &[Point], k: usize) -> Result<HeuristicResult> {
    let series = k_dist(points, k)?;
    let dims = points.first().map_or(0, Point::dims);
    Ok(suggest_from_series(&series, dims))
}

pub(crate) fn suggest_from_series(series: &KDistSeries, dims: usize) -> HeuristicResult {
    let values = &series.values;
    let min_pts_low_confidence = dims != 2;
    let constant = values.windows(2).all(|w| w[0] == w[1]);
    if values.len() < 3 || constant {
        let eps_estimate = values[values.len() / 2];
        return HeuristicResult {
            eps_estimate,
            gamma_suggested: eps_estimate / (2.0 * std::f64::consts::SQRT_2),
            min_pts_suggested: 1,
            knee_index: None,
            degenerate_knee: true,
            min_pts_low_confidence,
        };
    }

    let smoothed = moving_average(values, SMOOTHING_WINDOW);
    let mut knee = 1;
    let mut best = f64::NEG_INFINITY;
    for i in 1..smoothed.len() - 1 {
        let curvature = smoothed[i - 1] - 2.0 * smoothed[i] + smoothed[i + 1];
        if curvature > best {
            best = curvature;
            knee = i;
        }
    }
    let eps_estimate = values[knee];
    // The series is descending, so reading one window above the knee can
    // only relax the estimate upward.
    let relaxed = values[knee.saturating_sub(SMOOTHING_WINDOW)];
    HeuristicResult {
        eps_estimate,
        gamma_suggested: relaxed / (2.0 * std::f64::consts::SQRT_2),
        min_pts_suggested: 1,
        knee_index: Some(knee),
        degenerate_knee: false,
        min_pts_low_confidence,
    }
}

/// Centered moving average with a window shrinking at the edges.
fn moving_average(values: &[f64], window: usize) -> Vec<f64> {
    let half = window / 2;
    (0..values.len())
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half + 1).min(values.len());
            values[lo..hi].iter().sum::<f64>() / (hi - lo) as f64
        })
        .collect()
}
