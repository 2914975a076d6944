//! Ladders, their borders, minor supports and t-components.

mod corners;
mod decompose;

pub use corners::{
    assumption_d, classify_corners, construct_z, corner_profile, AssumptionD, CornerProfile,
    CornerType, CornerTypes, LowerCornerInfo, UpperCornerInfo,
};
pub use decompose::{decompose, verify_decomposition_invariants, Decomposition, IdentificationPair, Piece, Side};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};

/// A matrix position; rows grow downward, columns to the right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub row: i32,
    pub col: i32,
}

impl Cell {
    pub const fn new(row: i32, col: i32) -> Self {
        Cell { row, col }
    }

    pub fn offset(self, dr: i32, dc: i32) -> Cell {
        Cell::new(self.row + dr, self.col + dc)
    }

    /// Componentwise `self <= other`.
    pub fn northwest_of(self, other: Cell) -> bool {
        self.row <= other.row && self.col <= other.col
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

impl From<(i32, i32)> for Cell {
    fn from((row, col): (i32, i32)) -> Self {
        Cell::new(row, col)
    }
}

/// A validated ladder. Coordinates are kept as given; [`validate_ladder`]
/// shifts its input so the bounding box starts at (1,1).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ladder {
    cells: BTreeSet<Cell>,
    row_min: i32,
    row_max: i32,
    col_min: i32,
    col_max: i32,
}

/// One row of a ladder as a closed column interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowInterval {
    pub row: i32,
    pub col_start: i32,
    pub col_end: i32,
}

pub fn validate_ladder<I, P>(points: I) -> Result<Ladder>
where
    I: IntoIterator<Item = P>,
    P: Into<Cell>,
{
    let raw: BTreeSet<Cell> = points.into_iter().map(Into::into).collect();
    if raw.is_empty() {
        return Err(Error::Empty);
    }
    let bad: Vec<Violation> = raw
        .iter()
        .filter(|c| c.row < 1 || c.col < 1)
        .map(|&cell| Violation::NonPositive { cell })
        .collect();
    if !bad.is_empty() {
        return Err(Error::InvalidLadder(bad));
    }
    let r0 = raw.iter().map(|c| c.row).min().unwrap_or(1);
    let c0 = raw.iter().map(|c| c.col).min().unwrap_or(1);
    Ladder::from_cells(raw.into_iter().map(|c| c.offset(1 - r0, 1 - c0))).map_err(|e| match e {
        Error::InvalidLadder(v) => Error::InvalidLadder(v),
        other => other,
    })
}

fn ladder_violations(cells: &BTreeSet<Cell>) -> Vec<Violation> {
    let mut out = Vec::new();
    let (rmin, rmax) = cells.iter().map(|c| c.row).minmax().into_option().unwrap_or((0, -1));
    let (cmin, cmax) = cells.iter().map(|c| c.col).minmax().into_option().unwrap_or((0, -1));
    let rows: BTreeSet<i32> = cells.iter().map(|c| c.row).collect();
    let cols: BTreeSet<i32> = cells.iter().map(|c| c.col).collect();
    for r in rmin..=rmax {
        if !rows.contains(&r) {
            out.push(Violation::EmptyRow { row: r });
        }
    }
    for c in cmin..=cmax {
        if !cols.contains(&c) {
            out.push(Violation::EmptyColumn { col: c });
        }
    }
    let v: Vec<Cell> = cells.iter().copied().collect();
    for (x, &a) in v.iter().enumerate() {
        for &b in &v[x + 1..] {
            if a.row <= b.row && a.col <= b.col {
                let missing: Vec<Cell> = [Cell::new(a.row, b.col), Cell::new(b.row, a.col)]
                    .into_iter()
                    .filter(|m| !cells.contains(m))
                    .unique()
                    .collect();
                if !missing.is_empty() {
                    out.push(Violation::Closure { first: a, second: b, missing });
                }
            }
        }
    }
    out
}

impl Ladder {
    /// Validates without relabelling coordinates.
    pub fn from_cells<I: IntoIterator<Item = Cell>>(cells: I) -> Result<Ladder> {
        let cells: BTreeSet<Cell> = cells.into_iter().collect();
        if cells.is_empty() {
            return Err(Error::Empty);
        }
        let violations = ladder_violations(&cells);
        if !violations.is_empty() {
            return Err(Error::InvalidLadder(violations));
        }
        let row_min = cells.iter().map(|c| c.row).min().unwrap_or(0);
        let row_max = cells.iter().map(|c| c.row).max().unwrap_or(0);
        let col_min = cells.iter().map(|c| c.col).min().unwrap_or(0);
        let col_max = cells.iter().map(|c| c.col).max().unwrap_or(0);
        let y = Ladder { cells, row_min, row_max, col_min, col_max };
        y.assert_rectangle_fullness();
        Ok(y)
    }

    /// Full `m x n` rectangle with corner (1,1).
    pub fn rectangle(m: i32, n: i32) -> Ladder {
        Ladder::from_cells((1..=m).flat_map(|r| (1..=n).map(move |c| Cell::new(r, c))))
            .expect("rectangle is a ladder")
    }

    /// Closure together with interval rows and columns puts the whole
    /// rectangle between two comparable cells inside the ladder.
    fn assert_rectangle_fullness(&self) {
        for r in self.row_min..=self.row_max {
            let (lo, hi) = self.row_span(r).expect("nonempty row");
            assert_eq!((hi - lo + 1) as usize, self.cells.range(Cell::new(r, lo)..=Cell::new(r, hi)).count());
        }
        for c in self.col_min..=self.col_max {
            let (lo, hi) = self.col_span(c).expect("nonempty column");
            assert!((lo..=hi).all(|r| self.contains(r, c)));
        }
    }

    pub fn cells(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, row: i32, col: i32) -> bool {
        self.cells.contains(&Cell::new(row, col))
    }

    pub fn has(&self, c: Cell) -> bool {
        self.cells.contains(&c)
    }

    pub fn row_range(&self) -> (i32, i32) {
        (self.row_min, self.row_max)
    }

    pub fn col_range(&self) -> (i32, i32) {
        (self.col_min, self.col_max)
    }

    /// Number of rows of the bounding box.
    pub fn m(&self) -> usize {
        (self.row_max - self.row_min + 1) as usize
    }

    /// Number of columns of the bounding box.
    pub fn n(&self) -> usize {
        (self.col_max - self.col_min + 1) as usize
    }

    pub fn row_span(&self, row: i32) -> Option<(i32, i32)> {
        let mut it = self.cells.range(Cell::new(row, i32::MIN)..=Cell::new(row, i32::MAX));
        let first = it.next()?;
        let last = it.next_back().unwrap_or(first);
        Some((first.col, last.col))
    }

    pub fn col_span(&self, col: i32) -> Option<(i32, i32)> {
        let rows: Vec<i32> = self.cells.iter().filter(|c| c.col == col).map(|c| c.row).collect();
        Some((*rows.first()?, *rows.last()?))
    }

    pub fn is_rectangle(&self) -> bool {
        self.len() == self.m() * self.n()
    }

    pub fn intervals(&self) -> Vec<RowInterval> {
        (self.row_min..=self.row_max)
            .filter_map(|r| self.row_span(r).map(|(a, b)| RowInterval { row: r, col_start: a, col_end: b }))
            .collect()
    }

    /// Cells of `self` inside the given closed row and column ranges.
    pub fn restrict(&self, rows: (i32, i32), cols: (i32, i32)) -> BTreeSet<Cell> {
        self.cells
            .iter()
            .filter(|c| c.row >= rows.0 && c.row <= rows.1 && c.col >= cols.0 && c.col <= cols.1)
            .copied()
            .collect()
    }

    /// Maximal 4-adjacency connected pieces, ordered by first cell.
    pub fn path_components(&self) -> Vec<Ladder> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &self.cells {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(c) = stack.pop() {
                comp.insert(c);
                for nb in [c.offset(-1, 0), c.offset(1, 0), c.offset(0, -1), c.offset(0, 1)] {
                    if self.cells.contains(&nb) && seen.insert(nb) {
                        stack.push(nb);
                    }
                }
            }
            out.push(Ladder::from_cells(comp).expect("path component of a ladder is a ladder"));
        }
        out
    }

    pub fn is_path_connected(&self) -> bool {
        self.path_components().len() == 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BorderSide {
    /// Northwest staircase: `(p-s, q-s)` not in the ladder.
    Lower,
    /// Southeast staircase: `(p+s, q+s)` not in the ladder.
    Upper,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BorderSet {
    pub side: BorderSide,
    pub thickness: usize,
    pub cells: BTreeSet<Cell>,
}

pub fn border(y: &Ladder, side: BorderSide, s: usize) -> BorderSet {
    let s = s as i32;
    let cells = y
        .cells
        .iter()
        .filter(|c| match side {
            BorderSide::Lower => !y.has(c.offset(-s, -s)),
            BorderSide::Upper => !y.has(c.offset(s, s)),
        })
        .copied()
        .collect();
    BorderSet { side, thickness: s as usize, cells }
}

/// Row and column index sets of a square submatrix.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MinorSupport {
    pub rows: Vec<i32>,
    pub cols: Vec<i32>,
}

impl MinorSupport {
    pub fn new(rows: Vec<i32>, cols: Vec<i32>) -> Self {
        debug_assert_eq!(rows.len(), cols.len());
        MinorSupport { rows, cols }
    }

    /// Contiguous block with northwest corner `nw`.
    pub fn block(nw: Cell, size: usize) -> Self {
        let s = size as i32;
        MinorSupport::new((nw.row..nw.row + s).collect(), (nw.col..nw.col + s).collect())
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.rows.iter().flat_map(move |&r| self.cols.iter().map(move |&c| Cell::new(r, c)))
    }

    pub fn nw(&self) -> Cell {
        Cell::new(self.rows[0], self.cols[0])
    }

    pub fn se(&self) -> Cell {
        Cell::new(*self.rows.last().unwrap(), *self.cols.last().unwrap())
    }
}

impl fmt::Display for MinorSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}|{}]", self.rows.iter().join(","), self.cols.iter().join(","))
    }
}

/// All t-minor supports of `y`, capped at `cap` supports.
pub fn minor_supports(y: &Ladder, t: usize, cap: usize) -> Result<Vec<MinorSupport>> {
    if t == 0 {
        return Err(Error::InvalidT { t, need: "t >= 1" });
    }
    let mut out = Vec::new();
    let rows: Vec<i32> = (y.row_min..=y.row_max).collect();
    let cols: Vec<i32> = (y.col_min..=y.col_max).collect();
    for rs in rows.iter().copied().combinations(t) {
        let (top, bottom) = (rs[0], rs[t - 1]);
        let (Some(top_span), Some(bot_span)) = (y.row_span(top), y.row_span(bottom)) else { continue };
        for cs in cols.iter().copied().combinations(t) {
            if cs[0] < top_span.0 || cs[t - 1] > bot_span.1 {
                continue;
            }
            if y.contains(top, cs[0]) && y.contains(bottom, cs[t - 1]) {
                if out.len() == cap {
                    return Err(Error::CapExceeded { what: "minor supports", cap });
                }
                out.push(MinorSupport::new(rs.clone(), cs));
            }
        }
    }
    Ok(out)
}

/// Supports whose every cell lies in `region`; used for ragged regions.
pub fn supports_within(region: &BTreeSet<Cell>, size: usize) -> Vec<MinorSupport> {
    if size == 0 || region.is_empty() {
        return Vec::new();
    }
    let rows: Vec<i32> = region.iter().map(|c| c.row).unique().sorted().collect();
    let cols: Vec<i32> = region.iter().map(|c| c.col).unique().sorted().collect();
    let mut out = Vec::new();
    for rs in rows.iter().copied().combinations(size) {
        for cs in cols.iter().copied().combinations(size) {
            let s = MinorSupport::new(rs.clone(), cs);
            if s.cells().all(|c| region.contains(&c)) {
                out.push(s);
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    Connected,
    /// A single cell lying in no t-minor.
    Free,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TComponent {
    pub ladder: Ladder,
    pub kind: ComponentKind,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Classes of cells linked by shared t-minors. Every support spans a full
/// rectangle, which is covered by overlapping contiguous t-blocks, so
/// linking contiguous blocks yields the same partition.
pub fn t_components(y: &Ladder, t: usize) -> Result<Vec<TComponent>> {
    if t == 0 {
        return Err(Error::InvalidT { t, need: "t >= 1" });
    }
    let index: BTreeMap<Cell, usize> = y.cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let cells: Vec<Cell> = y.cells.iter().copied().collect();
    let mut uf = UnionFind::new(cells.len());
    let mut covered = vec![false; cells.len()];
    let ti = t as i32;
    for &nw in &cells {
        let block = MinorSupport::block(nw, t);
        if !y.has(nw.offset(ti - 1, ti - 1)) {
            continue;
        }
        let first = index[&nw];
        for c in block.cells() {
            let k = index[&c];
            covered[k] = true;
            uf.union(first, k);
        }
    }
    let mut classes: BTreeMap<usize, Vec<Cell>> = BTreeMap::new();
    for (i, &c) in cells.iter().enumerate() {
        if covered[i] {
            classes.entry(uf.find(i)).or_default().push(c);
        }
    }
    let mut out: Vec<TComponent> = Vec::new();
    for (_, class) in classes {
        let ladder = Ladder::from_cells(class).map_err(|e| match e {
            Error::InvalidLadder(v) => Error::ComponentNotLadder(v),
            other => other,
        })?;
        out.push(TComponent { ladder, kind: ComponentKind::Connected });
    }
    for (i, &c) in cells.iter().enumerate() {
        if !covered[i] {
            out.push(TComponent { ladder: Ladder::from_cells([c])?, kind: ComponentKind::Free });
        }
    }
    out.sort_by_key(|tc| *tc.ladder.cells.iter().next().unwrap());
    Ok(out)
}

/// True when `y` forms a single t-component with no free cells.
pub fn is_t_connected(y: &Ladder, t: usize) -> Result<bool> {
    let comps = t_components(y, t)?;
    Ok(comps.len() == 1 && comps[0].kind == ComponentKind::Connected)
}
