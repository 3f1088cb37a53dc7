/// A d-dimensional input point.
///
/// `row_index` is the point's position among the data rows of the file it was
/// loaded from; it is the identifier used in clustering output, assignment
/// files and validation. Loaders produce points in row order, so for loaded
/// datasets `row_index` equals the position in the slice.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub coords: Vec<f64>,
    pub row_index: usize,
    /// Ground-truth class label, when the dataset carries one.
    pub label: Option<String>,
}

impl Point {
    pub fn new(row_index: usize, coords: Vec<f64>) -> Self {
        Point {
            coords,
            row_index,
            label: None,
        }
    }

    pub fn with_label(row_index: usize, coords: Vec<f64>, label: impl Into<String>) -> Self {
        Point {
            coords,
            row_index,
            label: Some(label.into()),
        }
    }

    pub fn dims(&self) -> usize {
        self.coords.len()
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }
}

/// Squared Euclidean distance between two coordinate slices.
pub(crate) fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y) * (x - y))
        .sum()
}

/// Convenience constructor for tests and embedding callers: one `Point` per
/// row, `row_index` = position.
pub fn points_from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Vec<Point> {
    rows.iter()
        .enumerate()
        .map(|(i, r)| Point::new(i, r.as_ref().to_vec()))
        .collect()
}

/// Extracts per-row truth labels, indexed by `row_index`.
///
/// Returns `None` when no point carries a label. Rows above the maximum
/// `row_index` are absent; rows without a label are `None`.
pub fn truth_labels(points: &[Point]) -> Option<Vec<Option<String>>> {
    if points.iter().all(|p| p.label.is_none()) {
        return None;
    }
    let n = points.iter().map(|p| p.row_index + 1).max().unwrap_or(0);
    let mut labels = vec![None; n];
    for p in points {
        labels[p.row_index] = p.label.clone();
    }
    Some(labels)
}
