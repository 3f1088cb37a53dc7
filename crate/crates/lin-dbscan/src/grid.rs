//! Uniform discretization of the dataset's bounding hyperrectangle.
//!
//! Every point is binned into the hypercube of edge `gamma` given by the
//! componentwise floor of `coords / gamma`. Only occupied cells are stored,
//! in an insertion-ordered map keyed by the full integer coordinate vector,
//! so lookups never suffer folded-key collisions and the scan order of a
//! freshly built grid is deterministic for a given input order.

use indexmap::IndexMap;
use rustc_hash::FxBuildHasher;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::point::Point;

/// Insertion-ordered map with a fast deterministic hasher.
type FxIndexMap<K, V> = IndexMap<K, V, FxBuildHasher>;

/// Integer coordinates identifying one grid cell; length = dataset dims.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellCoords(SmallVec<[i64; 4]>);

impl CellCoords {
    pub fn new(indices: impl IntoIterator<Item = i64>) -> Self {
        CellCoords(indices.into_iter().collect())
    }

    pub fn indices(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<&[i64]> for CellCoords {
    fn from(s: &[i64]) -> Self {
        CellCoords(SmallVec::from_slice(s))
    }
}

impl<const N: usize> From<[i64; N]> for CellCoords {
    fn from(a: [i64; N]) -> Self {
        CellCoords(SmallVec::from_slice(&a))
    }
}

// Lets the map be probed with a plain index slice, so neighbor enumeration
// does not allocate a key per candidate.
impl std::borrow::Borrow<[i64]> for CellCoords {
    fn borrow(&self) -> &[i64] {
        &self.0
    }
}

/// One occupied cell: its coordinates and the points it contains, as indices
/// into the point slice the grid was built from. Never empty.
///
/// Indices are u32: a grid holds at most u32::MAX points, which keeps cell
/// member lists at half the memory traffic on large runs.
#[derive(Debug, Clone)]
pub struct Cell {
    coords: CellCoords,
    point_indices: Vec<u32>,
}

impl Cell {
    pub fn coords(&self) -> &CellCoords {
        &self.coords
    }

    pub fn point_indices(&self) -> &[u32] {
        &self.point_indices
    }

    /// Cell cardinality |c|: duplicates count with multiplicity.
    pub fn cardinality(&self) -> usize {
        self.point_indices.len()
    }
}

/// Computes the cell coordinates of a point: mathematical floor (toward
/// negative infinity, not truncation) of each coordinate divided by `gamma`.
pub fn cell_coords(point: &Point, gamma: f64) -> Result<CellCoords> {
    check_gamma(gamma)?;
    if !point.is_finite() {
        return Err(Error::invalid(format!(
            "non-finite coordinate in point at row {}",
            point.row_index
        )));
    }
    Ok(cell_coords_unchecked(&point.coords, gamma))
}

#[inline]
pub(crate) fn cell_coords_unchecked(coords: &[f64], gamma: f64) -> CellCoords {
    CellCoords(coords.iter().map(|&c| (c / gamma).floor() as i64).collect())
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::invalid(format!(
            "cell size gamma must be a positive finite number, got {gamma}"
        )));
    }
    Ok(())
}

/// Copies point coordinates into one contiguous row-major buffer, validating
/// dimensionality and finiteness along the way. Distance-heavy passes walk
/// this buffer instead of chasing one heap block per point.
pub(crate) fn flatten_coords(points: &[Point]) -> Result<Vec<f64>> {
    let dims = points.first().map_or(0, Point::dims);
    if dims == 0 && !points.is_empty() {
        return Err(Error::invalid("points must have at least one dimension"));
    }
    let mut flat = Vec::with_capacity(points.len() * dims);
    for (i, p) in points.iter().enumerate() {
        if p.dims() != dims {
            return Err(Error::invalid(format!(
                "mixed dimensionalities: point at position {i} has {} coords, expected {dims}",
                p.dims()
            )));
        }
        if !p.is_finite() {
            return Err(Error::invalid(format!(
                "non-finite coordinate in point at position {i}"
            )));
        }
        flat.extend_from_slice(&p.coords);
    }
    Ok(flat)
}

/// The sparse uniform grid over a point set.
#[derive(Debug, Clone)]
pub struct Grid {
    gamma: f64,
    dims: usize,
    cells: FxIndexMap<CellCoords, Cell>,
    n_points: usize,
}

impl Grid {
    /// Bins every point into its cell. All points must share one
    /// dimensionality; an empty input yields a valid empty grid.
    pub fn build(points: &[Point], gamma: f64) -> Result<Grid> {
        let flat = flatten_coords(points)?;
        Self::build_flat(&flat, points.first().map_or(0, Point::dims), gamma, points.len())
    }

    /// Bins from a flat row-major coordinate buffer (`n * dims` values).
    pub(crate) fn build_flat(flat: &[f64], dims: usize, gamma: f64, n: usize) -> Result<Grid> {
        check_gamma(gamma)?;
        if n > u32::MAX as usize {
            return Err(Error::invalid("at most u32::MAX points are supported"));
        }
        let mut cells: FxIndexMap<CellCoords, Cell> = FxIndexMap::default();
        let mut scratch: SmallVec<[i64; 4]> = SmallVec::new();
        if dims > 0 {
            for (i, row) in flat.chunks_exact(dims).enumerate() {
                scratch.clear();
                scratch.extend(row.iter().map(|&c| (c / gamma).floor() as i64));
                // Probe by slice; the key is only materialized for a new cell.
                match cells.get_index_of(scratch.as_slice()) {
                    Some(idx) => cells[idx].point_indices.push(i as u32),
                    None => {
                        let coords = CellCoords(scratch.clone());
                        cells.insert(
                            coords.clone(),
                            Cell {
                                coords,
                                point_indices: vec![i as u32],
                            },
                        );
                    }
                }
            }
        }
        Ok(Grid {
            gamma,
            dims,
            cells,
            n_points: n,
        })
    }

    pub(crate) fn from_parts(
        gamma: f64,
        dims: usize,
        parts: Vec<(CellCoords, Cell)>,
        n_points: usize,
    ) -> Grid {
        let mut cells = FxIndexMap::default();
        cells.extend(parts);
        Grid {
            gamma,
            dims,
            cells,
            n_points,
        }
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    /// Total number of points binned at build time (removal does not shrink it).
    pub fn n_points(&self) -> usize {
        self.n_points
    }

    /// Number of currently stored (non-empty) cells.
    pub fn n_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn get(&self, coords: &CellCoords) -> Option<&Cell> {
        self.cells.get(coords)
    }

    pub fn contains(&self, coords: &CellCoords) -> bool {
        self.cells.contains_key(coords)
    }

    /// Removes and returns a cell. O(1); insertion order of the remaining
    /// cells is not preserved, so snapshot `scan_order` first if you need it.
    pub fn remove(&mut self, coords: &CellCoords) -> Option<Cell> {
        self.cells.swap_remove(coords)
    }

    /// The stored cell coordinates in insertion order (the order in which
    /// cells were first occupied). Only meaningful before any removal.
    pub fn scan_order(&self) -> Vec<CellCoords> {
        self.cells.keys().cloned().collect()
    }

    pub fn iter_cells(&self) -> impl Iterator<Item = &Cell> {
        self.cells.values()
    }

    pub(crate) fn into_cells(self) -> FxIndexMap<CellCoords, Cell> {
        self.cells
    }

    pub(crate) fn get_by_indices(&self, indices: &[i64]) -> Option<&Cell> {
        self.cells.get(indices)
    }

    pub(crate) fn contains_indices(&self, indices: &[i64]) -> bool {
        self.cells.contains_key(indices)
    }

    /// Returns every stored cell whose coordinates differ from `coords` by at
    /// most 1 in every dimension (Moore neighborhood, range 1). All 3^d
    /// offsets are probed, including the zero offset, so a still-stored query
    /// cell appears in its own neighborhood.
    pub fn find_neighbors(&self, coords: &CellCoords) -> Vec<&Cell> {
        let mut out = Vec::new();
        for_each_moore_neighbor(coords, |candidate| {
            if let Some(cell) = self.cells.get(candidate) {
                out.push(cell);
            }
        });
        out
    }
}

/// Enumerates the 3^d Moore-neighborhood candidates of `coords` (zero offset
/// included) in linear-index order: candidate k has offset
/// `(k / 3^dim) mod 3 - 1` in each dimension. The slice passed to the
/// callback is a reused scratch buffer.
pub(crate) fn for_each_moore_neighbor(coords: &CellCoords, mut f: impl FnMut(&[i64])) {
    let dims = coords.len();
    let count = 3usize.pow(dims as u32);
    let mut candidate: SmallVec<[i64; 4]> = coords.0.clone();
    for k in 0..count {
        let mut rem = k;
        for d in 0..dims {
            let offset = (rem % 3) as i64 - 1;
            candidate[d] = coords.0[d] + offset;
            rem /= 3;
        }
        f(&candidate);
    }
}
