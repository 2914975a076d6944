use std::collections::BTreeSet;

use serde::Serialize;

use super::{border, is_t_connected, BorderSide, Cell, Ladder};
use crate::error::{Error, Result};

/// Corner chains of a path-connected ladder.
///
/// `lower_chain[i] = (a_i, b_i)` for `i = 0..=h+1`, where the interior
/// entries are the inside lower corners sorted by row and the two ends are
/// `(min row, max col)` and `(max row, min col)`. The upper chain is built the
/// same way from inside upper corners.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CornerProfile {
    pub lower_chain: Vec<Cell>,
    pub upper_chain: Vec<Cell>,
    /// `S_i = (a_{i-1}, b_i)`, `i = 1..=h+1`.
    pub outside_lower: Vec<Cell>,
    /// `T_j = (c_j, d_{j-1})`, `j = 1..=k+1`.
    pub outside_upper: Vec<Cell>,
    pub h: usize,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub types: Option<CornerTypes>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CornerType {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerCornerInfo {
    pub cell: Cell,
    pub kind: CornerType,
    pub block_contained: bool,
    /// Block cells on the upper border of thickness one.
    pub border_hits: Vec<Cell>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UpperCornerInfo {
    pub cell: Cell,
    pub kind: CornerType,
    pub type_1_1: bool,
    pub block_contained: bool,
    /// Block cells on the lower border of thickness one.
    pub border_hits: Vec<Cell>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CornerTypes {
    pub t: usize,
    pub lower: Vec<LowerCornerInfo>,
    pub upper: Vec<UpperCornerInfo>,
    pub h_star: usize,
    pub k_star: usize,
    pub k_bullet: usize,
}

impl CornerProfile {
    pub fn inside_lower(&self) -> &[Cell] {
        &self.lower_chain[1..=self.h]
    }

    pub fn inside_upper(&self) -> &[Cell] {
        &self.upper_chain[1..=self.k]
    }

    /// Lower chain of `Y \ B_1` as predicted from this one.
    pub fn shifted_lower_chain(&self) -> Vec<Cell> {
        let last = self.h + 1;
        self.lower_chain
            .iter()
            .enumerate()
            .map(|(i, c)| match i {
                0 => c.offset(1, 0),
                i if i == last => c.offset(0, 1),
                _ => c.offset(1, 1),
            })
            .collect()
    }

    pub fn types(&self) -> Result<&CornerTypes> {
        self.types.as_ref().ok_or_else(|| Error::Internal("corner types requested before classification".into()))
    }
}

pub fn corner_profile(y: &Ladder) -> Result<CornerProfile> {
    if !y.is_path_connected() {
        return Err(Error::NotPathConnected);
    }
    let has = |c: Cell| y.has(c);
    let (rmin, rmax) = y.row_range();
    let (cmin, cmax) = y.col_range();

    let inside_lower: Vec<Cell> = y
        .cells()
        .iter()
        .filter(|&&c| !has(c.offset(-1, -1)) && has(c.offset(-1, 0)) && has(c.offset(0, -1)))
        .copied()
        .collect();
    let inside_upper: Vec<Cell> = y
        .cells()
        .iter()
        .filter(|&&c| !has(c.offset(1, 1)) && has(c.offset(1, 0)) && has(c.offset(0, 1)))
        .copied()
        .collect();
    let outside_lower: Vec<Cell> =
        y.cells().iter().filter(|&&c| !has(c.offset(-1, 0)) && !has(c.offset(0, -1))).copied().collect();
    let outside_upper: Vec<Cell> =
        y.cells().iter().filter(|&&c| !has(c.offset(1, 0)) && !has(c.offset(0, 1))).copied().collect();

    let mut lower_chain = vec![Cell::new(rmin, cmax)];
    lower_chain.extend(inside_lower.iter().copied());
    lower_chain.push(Cell::new(rmax, cmin));
    let mut upper_chain = vec![Cell::new(rmin, cmax)];
    upper_chain.extend(inside_upper.iter().copied());
    upper_chain.push(Cell::new(rmax, cmin));

    let h = inside_lower.len();
    let k = inside_upper.len();
    let predicted_s: Vec<Cell> = (1..=h + 1).map(|i| Cell::new(lower_chain[i - 1].row, lower_chain[i].col)).collect();
    let predicted_t: Vec<Cell> = (1..=k + 1).map(|j| Cell::new(upper_chain[j].row, upper_chain[j - 1].col)).collect();
    for w in lower_chain.windows(2).chain(upper_chain.windows(2)) {
        if w[0].row > w[1].row || w[0].col < w[1].col {
            return Err(Error::Internal(format!("corner chain not monotone at {} {}", w[0], w[1])));
        }
    }
    if predicted_s != outside_lower || predicted_t != outside_upper {
        return Err(Error::Internal("outside corners disagree with corner chains".into()));
    }
    Ok(CornerProfile { lower_chain, upper_chain, outside_lower, outside_upper, h, k, types: None })
}

fn square(nw: Cell, size: i32) -> impl Iterator<Item = Cell> {
    (0..size).flat_map(move |dr| (0..size).map(move |dc| nw.offset(dr, dc)))
}

pub fn classify_corners(y: &Ladder, t: usize, profile: &CornerProfile) -> Result<CornerProfile> {
    if t < 2 {
        return Err(Error::InvalidT { t, need: "t >= 2" });
    }
    let s = t as i32 - 1;
    let b1 = border(y, BorderSide::Lower, 1).cells;
    let c1 = border(y, BorderSide::Upper, 1).cells;

    let mut lower = Vec::with_capacity(profile.h);
    for &cell in profile.inside_lower() {
        let block: Vec<Cell> = square(cell, s).collect();
        let contained = block.iter().all(|&c| y.has(c));
        let hits: Vec<Cell> = block.iter().filter(|c| c1.contains(c)).copied().collect();
        let kind = if contained && hits.len() <= 1 { CornerType::One } else { CornerType::Two };
        if kind == CornerType::One && hits.len() == 1 && hits[0] != cell.offset(s - 1, s - 1) {
            return Err(Error::Internal(format!("type 1 lower corner {cell} meets the upper border at {}", hits[0])));
        }
        lower.push(LowerCornerInfo { cell, kind, block_contained: contained, border_hits: hits });
    }

    let mut upper = Vec::with_capacity(profile.k);
    for &cell in profile.inside_upper() {
        let nw = cell.offset(1 - s, 1 - s);
        let block: Vec<Cell> = square(nw, s).collect();
        let contained = block.iter().all(|&c| y.has(c));
        let hits: Vec<Cell> = block.iter().filter(|c| b1.contains(c)).copied().collect();
        let kind = if contained && hits.len() <= 1 { CornerType::One } else { CornerType::Two };
        if kind == CornerType::One && hits.len() == 1 && hits[0] != nw {
            return Err(Error::Internal(format!("type 1 upper corner {cell} meets the lower border at {}", hits[0])));
        }
        let type_1_1 = !hits.is_empty();
        upper.push(UpperCornerInfo { cell, kind, type_1_1, block_contained: contained, border_hits: hits });
    }

    let h_star = lower.iter().filter(|c| c.kind == CornerType::One).count();
    let k_star = upper.iter().filter(|c| c.kind == CornerType::One).count();
    let k_bullet = upper.iter().filter(|c| c.type_1_1).count();
    let mut out = profile.clone();
    out.types = Some(CornerTypes { t, lower, upper, h_star, k_star, k_bullet });
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssumptionD {
    pub holds: bool,
    pub violators: Vec<Cell>,
}

/// Every inside lower corner block lies in `y` and misses the upper border.
/// Evaluated on each path component.
pub fn assumption_d(y: &Ladder, t: usize) -> Result<AssumptionD> {
    if t < 2 {
        return Err(Error::InvalidT { t, need: "t >= 2" });
    }
    let s = t as i32 - 1;
    let mut violators = Vec::new();
    for comp in y.path_components() {
        let c1 = border(&comp, BorderSide::Upper, 1).cells;
        let profile = corner_profile(&comp)?;
        for &cell in profile.inside_lower() {
            if !square(cell, s).all(|c| comp.has(c) && !c1.contains(&c)) {
                violators.push(cell);
            }
        }
    }
    Ok(AssumptionD { holds: violators.is_empty(), violators })
}

/// `Y \ B_1` without relabelling coordinates.
pub fn construct_z(y: &Ladder, t: usize) -> Result<Ladder> {
    if t <= 2 {
        return Err(Error::InvalidT { t, need: "t > 2" });
    }
    let b1 = border(y, BorderSide::Lower, 1).cells;
    let rest: BTreeSet<Cell> = y.cells().difference(&b1).copied().collect();
    if rest.is_empty() {
        return Err(Error::InvalidResidualLadder("removing the lower border leaves nothing".into()));
    }
    let z = Ladder::from_cells(rest).map_err(|e| Error::InvalidResidualLadder(e.to_string()))?;
    if is_t_connected(y, t)? && assumption_d(y, t)?.holds {
        let expected = corner_profile(y)?.shifted_lower_chain();
        let actual = corner_profile(&z).map(|p| p.lower_chain);
        if actual.as_ref() != Ok(&expected) {
            return Err(Error::Internal(format!("corners of the residual ladder are not shifted: {actual:?}")));
        }
    }
    Ok(z)
}
