//! Brute-force oracles.
//!
//! Two independent generators:
//!
//! * a Redelmeier-style fixed-animal generator ([`enumerate_fixed`],
//!   [`for_each_fixed`]) used for the class `all` and for geometry checks;
//! * a column-by-column depth-first search ([`count_by_perimeter`],
//!   [`for_each_in_class`]) for the classes with column structure.
//!
//! The column search appends one contiguous column at a time. The only
//! adjacencies between columns `x` and `x+1` are the pairs `(x,y,U) ~
//! (x+1,y,D)`, so with `ov` such pairs a new column of `L` cells changes the
//! perimeter by `L + 2 - 2ov`. Since `ov` cannot exceed the number of D cells
//! of the new column, `ov <= (L+1)/2` and every appended column raises the
//! perimeter by at least one. The perimeter of a partial configuration is
//! therefore an admissible lower bound for all of its extensions, and a branch
//! is cut as soon as it exceeds `p_max`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::lattice::{Cell, ColumnRun, Orientation, Polyiamond};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("cell budget exceeded: requested {requested}, limit {limit}")]
    CellBudgetExceeded { requested: usize, limit: usize },
    #[error("perimeter limit exceeded: requested {requested}, limit {limit}")]
    PerimeterLimitExceeded { requested: usize, limit: usize },
    #[error("unknown class {0:?}")]
    UnknownClass(String),
    #[error("first-column filters are not available for class {0}")]
    FilterUnsupported(Class),
    #[error("no generating-function counterpart for class {0}")]
    NoCounterpart(Class),
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Gf(#[from] crate::gf::GfError),
}

/// Counting classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Class {
    All,
    Baryiamond,
    ColumnConvex,
    Convex,
    /// Convex, bottoms non-decreasing and tops non-increasing.
    CpBu,
    /// Convex, tops non-increasing.
    CpU,
    /// Convex, bottoms non-decreasing.
    CpB,
}

impl Class {
    pub const ALL: [Class; 7] = [
        Class::All,
        Class::Baryiamond,
        Class::ColumnConvex,
        Class::Convex,
        Class::CpBu,
        Class::CpU,
        Class::CpB,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Class::All => "all",
            Class::Baryiamond => "baryiamond",
            Class::ColumnConvex => "column-convex",
            Class::Convex => "convex",
            Class::CpBu => "cp-bu",
            Class::CpU => "cp-u",
            Class::CpB => "cp-b",
        }
    }

    fn row_convex(self) -> bool {
        matches!(self, Class::Convex | Class::CpBu | Class::CpU | Class::CpB)
    }

    fn bottoms_monotone(self) -> bool {
        matches!(self, Class::CpBu | Class::CpB)
    }

    fn tops_monotone(self) -> bool {
        matches!(self, Class::CpBu | Class::CpU)
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Class {
    type Err = EnumError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        Ok(match norm.as_str() {
            "all" => Class::All,
            "baryiamond" | "bary" => Class::Baryiamond,
            "column-convex" | "ccp" => Class::ColumnConvex,
            "convex" | "cp" => Class::Convex,
            "cp-bu" => Class::CpBu,
            "cp-u" => Class::CpU,
            "cp-b" => Class::CpB,
            _ => return Err(EnumError::UnknownClass(s.to_string())),
        })
    }
}

impl Serialize for Class {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

/// Configurable budgets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Cell cap for the fixed-animal generator.
    pub max_cells: usize,
    /// Perimeter cap for the column search.
    pub max_perimeter: usize,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_cells: 12,
            max_perimeter: 16,
            threads: None,
        }
    }
}

impl Limits {
    fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> Result<R, EnumError> {
        match self.threads {
            None => Ok(f()),
            Some(n) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| EnumError::ThreadPool(e.to_string()))?;
                Ok(pool.install(f))
            }
        }
    }
}

/// A perimeter-bounded counting request.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Query {
    pub class: Class,
    pub p_max: usize,
    pub first_type: Option<u8>,
    pub first_k: Option<u32>,
}

impl Query {
    pub fn new(class: Class, p_max: usize) -> Self {
        Query {
            class,
            p_max,
            first_type: None,
            first_k: None,
        }
    }

    pub fn first_type(mut self, t: u8) -> Self {
        self.first_type = Some(t);
        self
    }

    pub fn first_k(mut self, k: u32) -> Self {
        self.first_k = Some(k);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableMeta {
    pub p_max: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_type: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_k: Option<u32>,
    /// Cell budget used by the fixed-animal generator (class `all` only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cell_budget: Option<usize>,
    /// True when the cell budget was capped, so large-perimeter counts may be
    /// incomplete.
    pub partial: bool,
    pub elapsed_ms: u128,
}

/// Exact counts per perimeter for one class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub class: Class,
    pub counts: BTreeMap<usize, BigUint>,
    pub meta: TableMeta,
}

impl CountTable {
    fn from_counts(class: Class, counts: &[u64], meta: TableMeta) -> Self {
        let counts = (3..=meta.p_max)
            .map(|n| (n, BigUint::from(counts.get(n).copied().unwrap_or(0))))
            .collect();
        CountTable { class, counts, meta }
    }

    /// Count at perimeter `n` (zero outside the table).
    pub fn get(&self, n: usize) -> BigUint {
        self.counts.get(&n).cloned().unwrap_or_else(BigUint::zero)
    }

    pub fn get_u64(&self, n: usize) -> u64 {
        self.counts.get(&n).and_then(|c| u64::try_from(c).ok()).unwrap_or(0)
    }

    /// `(class, perimeter, count)` rows in perimeter order.
    pub fn rows(&self) -> impl Iterator<Item = (String, usize, String)> + '_ {
        self.counts
            .iter()
            .map(|(n, c)| (self.class.label().to_string(), *n, c.to_string()))
    }

    /// JSON object with counts keyed by perimeter in increasing order. The
    /// wall time is dropped from `meta` when `with_timing` is false.
    pub fn to_json(&self, with_timing: bool) -> serde_json::Value {
        let counts: serde_json::Map<String, serde_json::Value> = self
            .counts
            .iter()
            .map(|(n, c)| (n.to_string(), serde_json::Value::String(c.to_string())))
            .collect();
        let mut meta = serde_json::to_value(&self.meta).expect("meta serializes");
        if !with_timing {
            meta.as_object_mut().expect("meta is an object").remove("elapsed_ms");
        }
        let mut obj = serde_json::Map::new();
        obj.insert("class".into(), self.class.label().into());
        obj.insert("counts".into(), counts.into());
        obj.insert("meta".into(), meta);
        obj.into()
    }
}

// ---------------------------------------------------------------------------
// Fixed animals
// ---------------------------------------------------------------------------

struct Redelmeier<'f> {
    max: usize,
    off: i32,
    width: i32,
    seen: Vec<bool>,
    current: Vec<Cell>,
    visit: &'f mut dyn FnMut(&[Cell]),
}

impl Redelmeier<'_> {
    fn index(&self, c: Cell) -> usize {
        (((c.y * self.width) + (c.x + self.off)) * 2 + c.s.bit()) as usize
    }

    fn allowed(&self, c: Cell, origin: (i32, i32)) -> bool {
        let key = (c.y, c.row_level());
        key > origin && c.y < self.max as i32 && (c.x + self.off) >= 0 && (c.x + self.off) < self.width
    }

    fn run(&mut self, origin: Cell) {
        let key = (origin.y, origin.row_level());
        self.seen.iter_mut().for_each(|s| *s = false);
        let i = self.index(origin);
        self.seen[i] = true;
        self.grow(vec![origin], key);
    }

    fn grow(&mut self, mut untried: Vec<Cell>, origin: (i32, i32)) {
        while let Some(c) = untried.pop() {
            self.current.push(c);
            (self.visit)(&self.current);
            if self.current.len() < self.max {
                let mut next = untried.clone();
                let mut added = Vec::new();
                for n in crate::lattice::neighbors(c) {
                    if self.allowed(n, origin) {
                        let i = self.index(n);
                        if !self.seen[i] {
                            self.seen[i] = true;
                            added.push(i);
                            next.push(n);
                        }
                    }
                }
                self.grow(next, origin);
                for i in added {
                    self.seen[i] = false;
                }
            }
            self.current.pop();
        }
    }
}

/// Calls `visit` once for every fixed polyiamond with at most `max_cells`
/// cells (cells are not canonicalized; the minimal cell in `(y, 2x+s)` order
/// sits at the origin).
pub fn for_each_fixed(max_cells: usize, limits: &Limits, mut visit: impl FnMut(&[Cell])) -> Result<(), EnumError> {
    if max_cells > limits.max_cells {
        return Err(EnumError::CellBudgetExceeded {
            requested: max_cells,
            limit: limits.max_cells,
        });
    }
    if max_cells == 0 {
        return Ok(());
    }
    let off = max_cells as i32 + 1;
    let width = 2 * off + 1;
    let mut r = Redelmeier {
        max: max_cells,
        off,
        width,
        seen: vec![false; (width * (max_cells as i32 + 1) * 2) as usize],
        current: Vec::with_capacity(max_cells),
        visit: &mut visit,
    };
    r.run(Cell::d(0, 0));
    r.run(Cell::u(0, 0));
    Ok(())
}

fn canonical_from(cells: &[Cell]) -> Polyiamond {
    let mx = cells.iter().map(|c| c.x).min().unwrap();
    let my = cells.iter().map(|c| c.y).min().unwrap();
    Polyiamond::from_canonical_unchecked(cells.iter().map(|c| c.translate(-mx, -my)).collect())
}

/// All fixed polyiamonds with exactly `c` cells, canonicalized, in generation
/// order.
pub fn enumerate_fixed(c: usize, limits: &Limits) -> Result<Vec<Polyiamond>, EnumError> {
    if c == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for_each_fixed(c, limits, |cells| {
        if cells.len() == c {
            out.push(canonical_from(cells));
        }
    })?;
    Ok(out)
}

/// Number of fixed polyiamonds with `1..=max_cells` cells (index = cells).
pub fn fixed_counts(max_cells: usize, limits: &Limits) -> Result<Vec<u64>, EnumError> {
    let mut counts = vec![0u64; max_cells + 1];
    for_each_fixed(max_cells, limits, |cells| counts[cells.len()] += 1)?;
    Ok(counts)
}

// ---------------------------------------------------------------------------
// Column search
// ---------------------------------------------------------------------------

/// Column spans `(lo, hi)` in column levels, first column at `x = 0`.
pub type Spans = [(i32, i32)];

/// Number of pairs `(x,y,U) ~ (x+1,y,D)` between consecutive spans.
#[inline]
fn overlap(prev: (i32, i32), next: (i32, i32)) -> i32 {
    // U at level 2y+1 in prev and D at level 2y in next.
    let y_lo = (prev.0 - 1)
        .div_euclid(2)
        .max(next.0.div_euclid(2) + i32::from(next.0.rem_euclid(2) != 0));
    let y_hi = (prev.1 - 1).div_euclid(2).min(next.1.div_euclid(2));
    // y must satisfy prev.0 <= 2y+1 <= prev.1 and next.0 <= 2y <= next.1
    let lo = y_lo.max((prev.0 - 1 + 1).div_euclid(2));
    (y_hi - lo + 1).max(0)
}

struct Search<'a, F: FnMut(&Spans, usize)> {
    class: Class,
    p_max: i32,
    /// Last row level `2x+s` seen in each row, indexed by `y + row_off`.
    rows: Vec<i32>,
    row_off: i32,
    spans: Vec<(i32, i32)>,
    visit: &'a mut F,
}

const NO_ROW: i32 = i32::MIN;

impl<F: FnMut(&Spans, usize)> Search<'_, F> {
    fn new_rows(p_max: usize) -> (Vec<i32>, i32) {
        let off = p_max as i32 + 2;
        (vec![NO_ROW; (2 * off + 2) as usize], off)
    }

    /// Applies the row-contiguity update for a new column; returns the undo
    /// log or `None` if a row would become non-contiguous.
    fn place_rows(&mut self, x: i32, (lo, hi): (i32, i32)) -> Option<Vec<(usize, i32)>> {
        let mut undo = Vec::new();
        let mut t = lo;
        while t <= hi {
            let y = t.div_euclid(2);
            let first = 2 * x + t.rem_euclid(2);
            let last_t = hi.min(2 * y + 1);
            let last = 2 * x + last_t.rem_euclid(2);
            let idx = (y + self.row_off) as usize;
            let prev = self.rows[idx];
            if prev != NO_ROW && prev != first - 1 {
                for (i, v) in undo.into_iter().rev() {
                    self.rows[i] = v;
                }
                return None;
            }
            undo.push((idx, prev));
            self.rows[idx] = last;
            t = last_t + 1;
        }
        Some(undo)
    }

    fn admissible(&self, prev: (i32, i32), next: (i32, i32)) -> bool {
        match self.class {
            Class::Baryiamond => next.0 == 0,
            _ => {
                (!self.class.bottoms_monotone() || next.0.div_euclid(2) >= prev.0.div_euclid(2))
                    && (!self.class.tops_monotone() || next.1.div_euclid(2) <= prev.1.div_euclid(2))
            }
        }
    }

    fn extend(&mut self, per: i32) {
        (self.visit)(&self.spans, per as usize);
        let prev = *self.spans.last().unwrap();
        let x = self.spans.len() as i32;
        let k_prev = crate::lattice::u_cells_in_span(prev.0, prev.1) as i32;
        let l_max = self.p_max - per - 2 + 2 * k_prev;
        if l_max < 1 {
            return;
        }
        for lo in (prev.0 - l_max - 1)..=(prev.1 - 1) {
            let hi_min = lo.max(prev.0 - 1);
            for hi in hi_min..=(lo + l_max - 1) {
                let next = (lo, hi);
                let ov = overlap(prev, next);
                if ov == 0 {
                    continue;
                }
                let np = per + (hi - lo + 1) + 2 - 2 * ov;
                if np > self.p_max || !self.admissible(prev, next) {
                    continue;
                }
                let undo = if self.class.row_convex() {
                    match self.place_rows(x, next) {
                        Some(u) => Some(u),
                        None => continue,
                    }
                } else {
                    None
                };
                self.spans.push(next);
                self.extend(np);
                self.spans.pop();
                if let Some(u) = undo {
                    for (i, v) in u.into_iter().rev() {
                        self.rows[i] = v;
                    }
                }
            }
        }
    }
}

/// First columns admissible under the query, in a fixed order.
fn roots(q: &Query) -> Vec<(i32, i32)> {
    let mut v = Vec::new();
    for lo in 0..=1 {
        for hi in lo..lo + q.p_max as i32 {
            let r = ColumnRun::from_span(0, lo, hi);
            if r.standalone_perimeter() as usize > q.p_max {
                continue;
            }
            if q.first_type.is_some_and(|t| t != r.column_type) || q.first_k.is_some_and(|k| k != r.k) {
                continue;
            }
            v.push((lo, hi));
        }
    }
    v
}

fn search_root<F: FnMut(&Spans, usize)>(q: &Query, root: (i32, i32), visit: &mut F) {
    let (rows, row_off) = Search::<F>::new_rows(q.p_max);
    let mut s = Search {
        class: q.class,
        p_max: q.p_max as i32,
        rows,
        row_off,
        spans: vec![root],
        visit,
    };
    if q.class.row_convex() {
        s.place_rows(0, root).expect("first column is always row-contiguous");
    }
    let per = ColumnRun::from_span(0, root.0, root.1).standalone_perimeter() as i32;
    s.extend(per);
}

fn check_query(q: &Query, limits: &Limits) -> Result<(), EnumError> {
    if q.p_max > limits.max_perimeter {
        return Err(EnumError::PerimeterLimitExceeded {
            requested: q.p_max,
            limit: limits.max_perimeter,
        });
    }
    if q.class == Class::All && (q.first_type.is_some() || q.first_k.is_some()) {
        return Err(EnumError::FilterUnsupported(q.class));
    }
    Ok(())
}

/// Visits every member of a structured class with perimeter `<= p_max`,
/// sequentially and in a deterministic order, as a list of column spans.
pub fn for_each_in_class(q: &Query, limits: &Limits, mut visit: impl FnMut(&Spans, usize)) -> Result<(), EnumError> {
    check_query(q, limits)?;
    if q.class == Class::All {
        return Err(EnumError::FilterUnsupported(Class::All));
    }
    for root in roots(q) {
        search_root(q, root, &mut visit);
    }
    Ok(())
}

/// Cells of a span list (first column at `x = 0`), canonicalized.
pub fn spans_to_polyiamond(spans: &Spans) -> Polyiamond {
    let cells: Vec<Cell> = spans
        .iter()
        .enumerate()
        .flat_map(|(x, &(lo, hi))| {
            (lo..=hi).map(move |t| Cell::new(x as i32, t.div_euclid(2), Orientation::from_bit(t)))
        })
        .collect();
    canonical_from(&cells)
}

/// Members of a structured class with perimeter exactly `n`.
pub fn collect_class(q: &Query, n: usize, limits: &Limits) -> Result<Vec<Polyiamond>, EnumError> {
    let mut out = Vec::new();
    for_each_in_class(q, limits, |spans, per| {
        if per == n {
            out.push(spans_to_polyiamond(spans));
        }
    })?;
    Ok(out)
}

fn count_root(q: &Query, root: (i32, i32)) -> Vec<u64> {
    let mut counts = vec![0u64; q.p_max + 1];
    search_root(q, root, &mut |_: &Spans, per: usize| counts[per] += 1);
    counts
}

/// Exact counts for perimeters `3..=p_max`.
pub fn count_by_perimeter(q: &Query, limits: &Limits) -> Result<CountTable, EnumError> {
    check_query(q, limits)?;
    let start = Instant::now();
    let mut meta = TableMeta {
        p_max: q.p_max,
        first_type: q.first_type,
        first_k: q.first_k,
        cell_budget: None,
        partial: false,
        elapsed_ms: 0,
    };
    let counts = if q.class == Class::All {
        // Yang–Wilson: perimeter n forces at most n^2/6 cells.
        let needed = (q.p_max * q.p_max) / 6;
        let budget = needed.min(limits.max_cells);
        meta.cell_budget = Some(budget);
        meta.partial = budget < needed;
        let mut counts = vec![0u64; q.p_max + 1];
        for_each_fixed(budget, limits, |cells| {
            let per = 3 * cells.len() - 2 * crate::lattice::internal_edges(cells);
            if per <= q.p_max {
                counts[per] += 1;
            }
        })?;
        counts
    } else {
        let roots = roots(q);
        limits.install(|| {
            roots.par_iter().map(|&r| count_root(q, r)).reduce(
                || vec![0u64; q.p_max + 1],
                |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect(),
            )
        })?
    };
    meta.elapsed_ms = start.elapsed().as_millis();
    Ok(CountTable::from_counts(q.class, &counts, meta))
}

/// Counts split by first-column `(type, k)`: map to per-perimeter vectors
/// (index = perimeter, length `p_max + 1`).
pub fn count_by_first_column(
    class: Class,
    p_max: usize,
    limits: &Limits,
) -> Result<BTreeMap<(u8, u32), Vec<u64>>, EnumError> {
    let q = Query::new(class, p_max);
    check_query(&q, limits)?;
    if class == Class::All {
        return Err(EnumError::FilterUnsupported(class));
    }
    let roots = roots(&q);
    let per_root: Vec<((u8, u32), Vec<u64>)> = limits.install(|| {
        roots
            .par_iter()
            .map(|&r| {
                let run = ColumnRun::from_span(0, r.0, r.1);
                ((run.column_type, run.k), count_root(&q, r))
            })
            .collect()
    })?;
    let mut out: BTreeMap<(u8, u32), Vec<u64>> = BTreeMap::new();
    for (key, v) in per_root {
        let e = out.entry(key).or_insert_with(|| vec![0; p_max + 1]);
        e.iter_mut().zip(v).for_each(|(a, b)| *a += b);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Cross-check against generating functions
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub source: String,
    pub perimeter: usize,
    pub brute_force: String,
    pub series: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub class: Class,
    pub p_max: usize,
    pub sources: Vec<String>,
    pub mismatches: Vec<Mismatch>,
}

impl CrossCheckReport {
    pub fn all_equal(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for CrossCheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.mismatches.first() {
            None => write!(f, "all equal"),
            Some(m) => write!(
                f,
                "first mismatch at perimeter {}: brute force {} vs {} {} ({} mismatches)",
                m.perimeter,
                m.brute_force,
                m.source,
                m.series,
                self.mismatches.len()
            ),
        }
    }
}

/// Compares brute-force counts with every generating-function counterpart of
/// the class, coefficient by coefficient for perimeters `3..=p_max`.
pub fn cross_check(class: Class, p_max: usize, limits: &Limits) -> Result<CrossCheckReport, EnumError> {
    use crate::gf;
    let order = (p_max + 1).max(16);
    let sources: Vec<(&str, crate::series::PowerSeries)> = match class {
        Class::Baryiamond => {
            vec![
                ("baryiamond_B", gf::gf_baryiamond(order)?),
                ("recursion", gf::gf_baryiamond_recursive(order)?),
            ]
        }
        Class::ColumnConvex => vec![("ccp_C", gf::gf_ccp(order)?)],
        Class::Convex => vec![("convex_F", gf::gf_F1_convex(order)?.1)],
        Class::CpBu => vec![("Fbu_sum", gf::catalog::evaluate("Fbu_sum", order)?)],
        Class::CpU => vec![("Fu_sum", gf::catalog::evaluate("Fu_sum", order)?)],
        Class::CpB => vec![("Fb_sum", gf::catalog::evaluate("Fb_sum", order)?)],
        Class::All => return Err(EnumError::NoCounterpart(class)),
    };
    let table = count_by_perimeter(&Query::new(class, p_max), limits)?;
    let mut mismatches = Vec::new();
    for (name, s) in &sources {
        for n in 3..=p_max {
            let brute = table.get(n).to_string();
            let c = s.coeff(n);
            let series = if c.is_integer() {
                c.to_integer().to_string()
            } else {
                c.to_string()
            };
            if brute != series {
                mismatches.push(Mismatch {
                    source: name.to_string(),
                    perimeter: n,
                    brute_force: brute,
                    series,
                });
            }
        }
    }
    mismatches.sort_by_key(|m| m.perimeter);
    Ok(CrossCheckReport {
        class,
        p_max,
        sources: sources.iter().map(|s| s.0.to_string()).collect(),
        mismatches,
    })
}
