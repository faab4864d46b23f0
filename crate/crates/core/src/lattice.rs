//! Triangular-lattice geometry: cells, perimeter, column/row decomposition and
//! the class predicates used throughout the crate.
//!
//! A cell is addressed as `(x, y, s)`. The two orientations are named after the
//! side that carries the horizontal edge:
//!
//! * [`Orientation::D`] ("down-cell") has its horizontal edge at the **base**;
//!   plane vertices `(x, y)`, `(x+1, y)`, `(x, y+1)`.
//! * [`Orientation::U`] ("up-cell") has its horizontal edge on **top**;
//!   plane vertices `(x+1, y)`, `(x, y+1)`, `(x+1, y+1)`.
//!
//! The names look inverted when drawn (a D cell points up), but they are the
//! ones used by every formula in [`crate::gf`].
//!
//! Columns are the index sets `{x = j}` ordered by `2y + s`; rows are the sets
//! `{y = j}` ordered by `2x + s` (with `D = 0`, `U = 1`). Consecutive cells in
//! either order share an edge.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("empty polyiamond")]
    Empty,
    #[error("not edge-connected")]
    Disconnected,
    #[error("column not convex")]
    ColumnNotConvex,
    #[error("column cells do not share one x coordinate")]
    MixedColumn,
}

/// Cell orientation. `D` sorts before `U`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Orientation {
    D,
    U,
}

impl Orientation {
    #[inline]
    pub fn bit(self) -> i32 {
        match self {
            Orientation::D => 0,
            Orientation::U => 1,
        }
    }

    #[inline]
    pub fn from_bit(b: i32) -> Self {
        if b & 1 == 0 {
            Orientation::D
        } else {
            Orientation::U
        }
    }
}

/// One triangular cell. Serializes as the JSON triple `[x, y, "D"|"U"]`.
///
/// The derived ordering is `(x, y, s)`, i.e. column-major with cells of a
/// column in bottom-to-top order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(i32, i32, Orientation)", into = "(i32, i32, Orientation)")]
pub struct Cell {
    pub x: i32,
    pub y: i32,
    pub s: Orientation,
}

impl From<(i32, i32, Orientation)> for Cell {
    fn from((x, y, s): (i32, i32, Orientation)) -> Self {
        Cell { x, y, s }
    }
}

impl From<Cell> for (i32, i32, Orientation) {
    fn from(c: Cell) -> Self {
        (c.x, c.y, c.s)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{:?})", self.x, self.y, self.s)
    }
}

impl Cell {
    pub const fn new(x: i32, y: i32, s: Orientation) -> Self {
        Cell { x, y, s }
    }

    pub const fn d(x: i32, y: i32) -> Self {
        Cell::new(x, y, Orientation::D)
    }

    pub const fn u(x: i32, y: i32) -> Self {
        Cell::new(x, y, Orientation::U)
    }

    /// Position along the cell's column: `2y + s`.
    #[inline]
    pub fn column_level(&self) -> i32 {
        2 * self.y + self.s.bit()
    }

    /// Position along the cell's row: `2x + s`.
    #[inline]
    pub fn row_level(&self) -> i32 {
        2 * self.x + self.s.bit()
    }

    pub fn translate(&self, dx: i32, dy: i32) -> Cell {
        Cell::new(self.x + dx, self.y + dy, self.s)
    }
}

/// The three edge-sharing cells of `cell`.
pub fn neighbors(cell: Cell) -> [Cell; 3] {
    let Cell { x, y, s } = cell;
    match s {
        Orientation::D => [Cell::u(x, y), Cell::u(x - 1, y), Cell::u(x, y - 1)],
        Orientation::U => [Cell::d(x, y), Cell::d(x + 1, y), Cell::d(x, y + 1)],
    }
}

/// Number of unordered adjacent pairs inside `cells` (duplicates ignored).
pub fn internal_edges(cells: &[Cell]) -> usize {
    let set: HashSet<Cell> = cells.iter().copied().collect();
    set.iter()
        .filter(|c| c.s == Orientation::D)
        .map(|&c| neighbors(c).iter().filter(|n| set.contains(n)).count())
        .sum()
}

/// `3c - 2i` for a nonempty cell set.
pub fn perimeter(cells: &[Cell]) -> Result<usize, LatticeError> {
    let set: HashSet<Cell> = cells.iter().copied().collect();
    if set.is_empty() {
        return Err(LatticeError::Empty);
    }
    let v: Vec<Cell> = set.into_iter().collect();
    Ok(3 * v.len() - 2 * internal_edges(&v))
}

fn is_connected(set: &HashSet<Cell>) -> bool {
    let Some(&start) = set.iter().next() else {
        return false;
    };
    let mut seen = HashSet::with_capacity(set.len());
    let mut queue = VecDeque::from([start]);
    seen.insert(start);
    while let Some(c) = queue.pop_front() {
        for n in neighbors(c) {
            if set.contains(&n) && seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    seen.len() == set.len()
}

/// A translation-normalized, edge-connected cell set with cached counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Cell>", into = "Vec<Cell>")]
pub struct Polyiamond {
    cells: Vec<Cell>,
    internal: usize,
}

impl TryFrom<Vec<Cell>> for Polyiamond {
    type Error = LatticeError;
    fn try_from(v: Vec<Cell>) -> Result<Self, Self::Error> {
        canonicalize(&v)
    }
}

impl From<Polyiamond> for Vec<Cell> {
    fn from(p: Polyiamond) -> Self {
        p.cells
    }
}

impl Polyiamond {
    /// Sorted cells (column-major, bottom to top).
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn internal_edge_count(&self) -> usize {
        self.internal
    }

    pub fn perimeter(&self) -> usize {
        3 * self.cells.len() - 2 * self.internal
    }

    pub fn contains(&self, c: &Cell) -> bool {
        self.cells.binary_search(c).is_ok()
    }

    /// Builds from cells already known to be connected, deduplicated and
    /// canonical. Used by the enumerators on their hot path.
    pub(crate) fn from_canonical_unchecked(mut cells: Vec<Cell>) -> Self {
        cells.sort_unstable();
        let internal = internal_edges(&cells);
        Polyiamond { cells, internal }
    }
}

/// Translates so that `min x = 0` and `min y = 0`.
pub fn canonicalize(cells: &[Cell]) -> Result<Polyiamond, LatticeError> {
    let set: HashSet<Cell> = cells.iter().copied().collect();
    if set.is_empty() {
        return Err(LatticeError::Empty);
    }
    if !is_connected(&set) {
        return Err(LatticeError::Disconnected);
    }
    let mx = set.iter().map(|c| c.x).min().unwrap();
    let my = set.iter().map(|c| c.y).min().unwrap();
    let mut v: Vec<Cell> = set.into_iter().map(|c| c.translate(-mx, -my)).collect();
    v.sort_unstable();
    let internal = internal_edges(&v);
    Ok(Polyiamond { cells: v, internal })
}

/// Cells sharing one lattice strip, in strip order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Line {
    pub index: i32,
    pub cells: Vec<Cell>,
}

/// Groups cells into columns (by `x`, ordered by `(y, s)`) and rows (by `y`,
/// ordered by `(x, s)`).
pub fn columns_and_rows(poly: &Polyiamond) -> (Vec<Line>, Vec<Line>) {
    let mut cols: Vec<Line> = Vec::new();
    for &c in poly.cells() {
        match cols.last_mut() {
            Some(l) if l.index == c.x => l.cells.push(c),
            _ => cols.push(Line {
                index: c.x,
                cells: vec![c],
            }),
        }
    }
    let mut by_row: Vec<Cell> = poly.cells().to_vec();
    by_row.sort_unstable_by_key(|c| (c.y, c.x, c.s));
    let mut rows: Vec<Line> = Vec::new();
    for c in by_row {
        match rows.last_mut() {
            Some(l) if l.index == c.y => l.cells.push(c),
            _ => rows.push(Line {
                index: c.y,
                cells: vec![c],
            }),
        }
    }
    (cols, rows)
}

/// Summary of one contiguous column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColumnRun {
    pub x: i32,
    /// 1: (D bottom, U top), 2: (D, D), 3: (U, U), 4: (U, D).
    pub column_type: u8,
    /// Number of U cells.
    pub k: u32,
    /// Lowest horizontal line touched.
    pub b: i32,
    /// Highest horizontal line touched.
    pub u: i32,
    pub cell_count: u32,
    /// Lowest column level `2y + s`.
    pub lo: i32,
    /// Highest column level `2y + s`.
    pub hi: i32,
}

impl ColumnRun {
    /// Run covering column levels `lo..=hi` of column `x`.
    pub fn from_span(x: i32, lo: i32, hi: i32) -> Self {
        debug_assert!(lo <= hi);
        let bottom = lo.rem_euclid(2);
        let top = hi.rem_euclid(2);
        let column_type = match (bottom, top) {
            (0, 1) => 1,
            (0, 0) => 2,
            (1, 1) => 3,
            _ => 4,
        };
        ColumnRun {
            x,
            column_type,
            k: u_cells_in_span(lo, hi),
            b: lo.div_euclid(2),
            u: hi.div_euclid(2) + 1,
            cell_count: (hi - lo + 1) as u32,
            lo,
            hi,
        }
    }

    /// Perimeter of the column on its own.
    pub fn standalone_perimeter(&self) -> u32 {
        self.cell_count + 2
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (self.lo..=self.hi).map(move |t| Cell::new(self.x, t.div_euclid(2), Orientation::from_bit(t)))
    }
}

/// Number of odd integers in `lo..=hi`.
#[inline]
pub fn u_cells_in_span(lo: i32, hi: i32) -> u32 {
    if hi < lo {
        return 0;
    }
    ((hi + 1).div_euclid(2) - lo.div_euclid(2)) as u32
}

/// Profile of one column; fails unless the cells are contiguous.
pub fn column_profile(cells: &[Cell]) -> Result<ColumnRun, LatticeError> {
    let first = cells.first().ok_or(LatticeError::Empty)?;
    if cells.iter().any(|c| c.x != first.x) {
        return Err(LatticeError::MixedColumn);
    }
    let mut levels: Vec<i32> = cells.iter().map(Cell::column_level).collect();
    levels.sort_unstable();
    levels.dedup();
    let (lo, hi) = (levels[0], *levels.last().unwrap());
    if (hi - lo + 1) as usize != levels.len() {
        return Err(LatticeError::ColumnNotConvex);
    }
    Ok(ColumnRun::from_span(first.x, lo, hi))
}

/// Class membership of a polyiamond.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassFlags {
    pub connected: bool,
    pub column_convex: bool,
    pub row_convex: bool,
    pub convex: bool,
    pub baryiamond: bool,
    pub u_monotone: bool,
    pub b_monotone: bool,
    pub bu_monotone: bool,
    /// `None` when the leftmost column is not contiguous.
    pub first_column_type: Option<u8>,
    pub first_column_k: Option<u32>,
}

fn contiguous(levels: impl Iterator<Item = i32>) -> bool {
    let mut v: Vec<i32> = levels.collect();
    v.sort_unstable();
    v.windows(2).all(|w| w[1] == w[0] + 1)
}

pub fn classify(poly: &Polyiamond) -> ClassFlags {
    let (cols, rows) = columns_and_rows(poly);
    let runs: Vec<Option<ColumnRun>> = cols.iter().map(|l| column_profile(&l.cells).ok()).collect();
    let column_convex = runs.iter().all(Option::is_some);
    let row_convex = rows.iter().all(|l| contiguous(l.cells.iter().map(Cell::row_level)));
    let convex = column_convex && row_convex;

    let (mut baryiamond, mut u_mono, mut b_mono) = (false, false, false);
    if column_convex {
        let runs: Vec<ColumnRun> = runs.iter().map(|r| r.unwrap()).collect();
        baryiamond = runs.iter().all(|r| r.b == runs[0].b) && runs.iter().skip(1).all(|r| r.lo.rem_euclid(2) == 0);
        u_mono = convex && runs.windows(2).all(|w| w[1].u <= w[0].u);
        b_mono = convex && runs.windows(2).all(|w| w[1].b >= w[0].b);
    }
    let first = runs.first().copied().flatten();
    ClassFlags {
        connected: true,
        column_convex,
        row_convex,
        convex,
        baryiamond,
        u_monotone: u_mono,
        b_monotone: b_mono,
        bu_monotone: u_mono && b_mono,
        first_column_type: first.map(|r| r.column_type),
        first_column_k: first.map(|r| r.k),
    }
}

/// Yang–Wilson lower bound `ceil(sqrt(6c))` on the perimeter of `c` cells.
pub fn min_perimeter_bound(c: usize) -> usize {
    let t = 6 * c;
    let mut r = (t as f64).sqrt() as usize;
    while r * r < t {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= t {
        r -= 1;
    }
    r
}
