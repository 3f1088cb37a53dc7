//! 2-D convex hulls (Andrew's monotone chain), used to outline clusters in
//! plots and the browser demo.

use crate::error::{Error, Result};
use crate::point::Point;

/// Counter-clockwise hull vertices of a 2-D point set. Collinear interior
/// points are excluded; one point yields itself, two distinct points the
/// segment endpoints.
pub fn convex_hull_2d(coords: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut pts: Vec<[f64; 2]> = coords.to_vec();
    pts.sort_unstable_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }

    let cross = |o: &[f64; 2], a: &[f64; 2], b: &[f64; 2]| {
        (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    };
    let mut hull: Vec<[f64; 2]> = Vec::with_capacity(pts.len() + 1);
    for half in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &[f64; 2]>> = if half == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for p in iter {
            while hull.len() >= start + 2
                && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= 0.0
            {
                hull.pop();
            }
            hull.push(*p);
        }
        hull.pop();
    }
    hull
}

/// Hull of selected rows of a point set; errors unless the points are 2-D.
pub fn hull_of_points(points: &[Point], rows: &[usize]) -> Result<Vec<[f64; 2]>> {
    // Datasets in row order resolve rows by direct indexing.
    let lookup = |row: usize| match points.get(row) {
        Some(p) if p.row_index == row => Some(p),
        _ => points.iter().find(|p| p.row_index == row),
    };
    let mut coords = Vec::with_capacity(rows.len());
    for &row in rows {
        let p = lookup(row)
            .ok_or_else(|| Error::invalid(format!("row {row} not present in point set")))?;
        if p.dims() != 2 {
            return Err(Error::invalid(format!(
                "convex hulls require 2-D points, got {} dims",
                p.dims()
            )));
        }
        coords.push([p.coords[0], p.coords[1]]);
    }
    Ok(convex_hull_2d(&coords))
}
