//! Torus metric and square cell grids.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the unit torus `[0,1)²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorusPoint {
    pub x: f64,
    pub y: f64,
}

impl TorusPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&x) || !(0.0..1.0).contains(&y) {
            return Err(Error::InvalidParameter(format!(
                "torus coordinates must lie in [0,1), got ({x}, {y})"
            )));
        }
        Ok(TorusPoint { x, y })
    }
}

#[inline]
fn wrap_delta(a: f64, b: f64) -> f64 {
    let d = (a - b).abs();
    d.min(1.0 - d)
}

/// Euclidean distance on the unit torus.
#[inline]
pub fn torus_distance(a: TorusPoint, b: TorusPoint) -> f64 {
    let dx = wrap_delta(a.x, b.x);
    let dy = wrap_delta(a.y, b.y);
    (dx * dx + dy * dy).sqrt()
}

/// Adjacency predicate of `G(n, r)`: inclusive at distance exactly `r`.
#[inline]
pub fn within(a: TorusPoint, b: TorusPoint, r: f64) -> bool {
    torus_distance(a, b) <= r
}

/// How a grid resolves a target side that does not divide 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GridMode {
    /// Side `1/m <= target` (`m = ceil(1/target)`).
    AtMost,
    /// Side `1/m >= target` (`m = floor(1/target)`).
    AtLeast,
}

/// Partition of the torus into `m × m` half-open square cells of side `1/m`.
///
/// Cell `(i, j)` is `[i/m, (i+1)/m) × [j/m, (j+1)/m)`; `i` indexes x.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellGrid {
    target_side: f64,
    cells_per_axis: usize,
}

pub fn build_grid(target_side: f64, mode: GridMode) -> Result<CellGrid> {
    if !(target_side > 0.0 && target_side <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "cell side must lie in (0, 1], got {target_side}"
        )));
    }
    let inv = 1.0 / target_side;
    // guard against 1/0.25 = 3.9999999 style rounding
    let near = inv.round();
    let m = if (inv - near).abs() < 1e-9 {
        near
    } else {
        match mode {
            GridMode::AtMost => inv.ceil(),
            GridMode::AtLeast => inv.floor(),
        }
    };
    let m = (m as usize).max(1);
    Ok(CellGrid {
        target_side,
        cells_per_axis: m,
    })
}

impl CellGrid {
    /// Grid with exactly `m` cells per axis.
    pub fn with_cells(m: usize) -> Result<CellGrid> {
        if m == 0 {
            return Err(Error::InvalidParameter("grid needs at least one cell".into()));
        }
        Ok(CellGrid {
            target_side: 1.0 / m as f64,
            cells_per_axis: m,
        })
    }

    /// `AtLeast` grid with the cell count rounded down to an even number, so
    /// that cells of equal (row, column) parity are never adjacent across
    /// the wraparound.
    pub fn even_at_least(target_side: f64) -> Result<CellGrid> {
        let g = build_grid(target_side, GridMode::AtLeast)?;
        if g.cells_per_axis < 2 {
            return Err(Error::InvalidParameter(format!(
                "side {target_side} leaves fewer than two cells per axis"
            )));
        }
        Ok(CellGrid {
            target_side,
            cells_per_axis: g.cells_per_axis & !1,
        })
    }

    pub fn cells_per_axis(&self) -> usize {
        self.cells_per_axis
    }

    pub fn target_side(&self) -> f64 {
        self.target_side
    }

    pub fn side(&self) -> f64 {
        1.0 / self.cells_per_axis as f64
    }

    pub fn cell_count(&self) -> usize {
        self.cells_per_axis * self.cells_per_axis
    }

    /// Row-major linear index of cell `(i, j)`.
    #[inline]
    pub fn index(&self, (i, j): (usize, usize)) -> usize {
        j * self.cells_per_axis + i
    }

    #[inline]
    pub fn coords(&self, index: usize) -> (usize, usize) {
        (index % self.cells_per_axis, index / self.cells_per_axis)
    }

    #[inline]
    pub fn cell_of(&self, p: TorusPoint) -> (usize, usize) {
        let m = self.cells_per_axis;
        let f = |c: f64| ((c * m as f64).floor() as usize).min(m - 1);
        (f(p.x), f(p.y))
    }

    /// Distinct cells of the 3×3 block centred on `(i, j)`, with wraparound.
    pub fn neighborhood(&self, (i, j): (usize, usize)) -> Vec<usize> {
        let m = self.cells_per_axis;
        let mut out = Vec::with_capacity(9);
        for dj in [m - 1, 0, 1] {
            for di in [m - 1, 0, 1] {
                out.push(self.index(((i + di) % m, (j + dj) % m)));
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Whether two cells share a full side (wraparound included).
    pub fn share_side(&self, a: (usize, usize), b: (usize, usize)) -> bool {
        let m = self.cells_per_axis;
        let step = |u: usize, v: usize| u != v && ((u + 1) % m == v || (v + 1) % m == u);
        (a.1 == b.1 && step(a.0, b.0)) || (a.0 == b.0 && step(a.1, b.1))
    }

    pub fn bucket(&self, points: &[TorusPoint]) -> CellBuckets {
        CellBuckets::new(self, points)
    }
}

/// Vertices grouped by cell, each group in increasing vertex order.
#[derive(Debug, Clone)]
pub struct CellBuckets {
    starts: Vec<usize>,
    members: Vec<u32>,
}

impl CellBuckets {
    fn new(grid: &CellGrid, points: &[TorusPoint]) -> Self {
        let cells = grid.cell_count();
        let index: Vec<usize> = points.iter().map(|&p| grid.index(grid.cell_of(p))).collect();
        let mut starts = vec![0usize; cells + 1];
        for &c in &index {
            starts[c + 1] += 1;
        }
        for c in 0..cells {
            starts[c + 1] += starts[c];
        }
        let mut fill = starts.clone();
        let mut members = vec![0u32; points.len()];
        for (v, &c) in index.iter().enumerate() {
            members[fill[c]] = v as u32;
            fill[c] += 1;
        }
        CellBuckets { starts, members }
    }

    pub fn cell(&self, index: usize) -> &[u32] {
        &self.members[self.starts[index]..self.starts[index + 1]]
    }

    pub fn count(&self, index: usize) -> usize {
        self.starts[index + 1] - self.starts[index]
    }

    pub fn cell_count(&self) -> usize {
        self.starts.len() - 1
    }
}

/// Boustrophedon order: row 0 left to right, row 1 right to left, and so on.
pub fn snake_order(grid: &CellGrid) -> Vec<(usize, usize)> {
    let m = grid.cells_per_axis();
    let mut out = Vec::with_capacity(m * m);
    for j in 0..m {
        if j % 2 == 0 {
            out.extend((0..m).map(|i| (i, j)));
        } else {
            out.extend((0..m).rev().map(|i| (i, j)));
        }
    }
    out
}
