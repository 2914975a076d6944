use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{
    assumption_d, classify_corners, corner_profile, minor_supports, t_components, Cell, ComponentKind, Ladder,
};
use crate::error::{Error, Result};

const SUPPORT_CAP: usize = 500_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Upper,
    Lower,
}

/// One cut taken on the way from a t-component to a piece.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cut {
    pub corner: Cell,
    pub side: Side,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub id: usize,
    pub component: usize,
    #[serde(serialize_with = "crate::io::serialize_ladder")]
    pub ladder: Ladder,
    pub cuts: Vec<Cut>,
}

/// Cell shared by two pieces; the copies carry the piece ids as tags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentificationPair {
    pub cell: Cell,
    pub piece_a: usize,
    pub piece_b: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub t: usize,
    pub pieces: Vec<Piece>,
    pub identifications: Vec<IdentificationPair>,
    /// Connected t-components, indexed by `Piece::component`.
    #[serde(serialize_with = "crate::io::serialize_ladders")]
    pub components: Vec<Ladder>,
    pub k_bullet: Vec<usize>,
    pub free_cells: Vec<Cell>,
}

impl Decomposition {
    pub fn pieces_of(&self, component: usize) -> impl Iterator<Item = &Piece> {
        self.pieces.iter().filter(move |p| p.component == component)
    }
}

fn split(y: &Ladder, t: usize) -> Result<Option<(Cell, Ladder, Ladder)>> {
    let profile = classify_corners(y, t, &corner_profile(y).map_err(|e| failure("piece is path-connected", e))?)?;
    let types = profile.types()?;
    let Some(cut) = types.upper.iter().filter(|u| u.type_1_1).max_by_key(|u| u.cell.col) else {
        return Ok(None);
    };
    let (c, d) = (cut.cell.row, cut.cell.col);
    let r = cut.border_hits.iter().map(|x| x.row).max().expect("type 1.1 has a border hit");
    let s = cut.border_hits.iter().map(|x| x.col).max().expect("type 1.1 has a border hit");
    let upper: Vec<Cell> = y.cells().iter().filter(|x| x.row <= c && x.col >= s).copied().collect();
    let lower: Vec<Cell> = y.cells().iter().filter(|x| x.row >= r && x.col <= d).copied().collect();
    let upper = Ladder::from_cells(upper).map_err(|e| failure("piece is a ladder", e))?;
    let lower = Ladder::from_cells(lower).map_err(|e| failure("piece is a ladder", e))?;
    Ok(Some((cut.cell, upper, lower)))
}

fn failure(invariant: &'static str, e: Error) -> Error {
    Error::DecompositionInvariantFailure { invariant, witness: e.to_string() }
}

/// Splits every connected t-component at its type 1.1 upper inside corners,
/// largest column first, until no piece has one.
pub fn decompose(y: &Ladder, t: usize) -> Result<Decomposition> {
    if t < 2 {
        return Err(Error::InvalidT { t, need: "t >= 2" });
    }
    let mut components = Vec::new();
    let mut k_bullet = Vec::new();
    let mut free_cells = Vec::new();
    let mut pieces = Vec::new();
    for tc in t_components(y, t)? {
        if tc.kind == ComponentKind::Free {
            free_cells.extend(tc.ladder.cells().iter().copied());
            continue;
        }
        let comp_id = components.len();
        let profile = classify_corners(&tc.ladder, t, &corner_profile(&tc.ladder)?)?;
        k_bullet.push(profile.types()?.k_bullet);

        let mut done: Vec<(Ladder, Vec<Cut>)> = Vec::new();
        let mut stack = vec![(tc.ladder.clone(), Vec::new())];
        while let Some((piece, cuts)) = stack.pop() {
            match split(&piece, t)? {
                None => done.push((piece, cuts)),
                Some((corner, upper, lower)) => {
                    let mut cu = cuts.clone();
                    cu.push(Cut { corner, side: Side::Upper });
                    let mut cl = cuts;
                    cl.push(Cut { corner, side: Side::Lower });
                    stack.push((upper, cu));
                    stack.push((lower, cl));
                }
            }
        }
        done.sort_by_key(|(p, _)| (p.col_range().0, std::cmp::Reverse(p.row_range().1)));
        for (ladder, cuts) in done {
            pieces.push(Piece { id: pieces.len(), component: comp_id, ladder, cuts });
        }
        components.push(tc.ladder);
    }

    let mut identifications = Vec::new();
    for comp in 0..components.len() {
        let mut owners: BTreeMap<Cell, Vec<usize>> = BTreeMap::new();
        for p in pieces.iter().filter(|p| p.component == comp) {
            for &c in p.ladder.cells() {
                owners.entry(c).or_default().push(p.id);
            }
        }
        for (cell, ids) in owners {
            for &b in &ids[1..] {
                identifications.push(IdentificationPair { cell, piece_a: ids[0], piece_b: b });
            }
        }
    }
    let d = Decomposition { t, pieces, identifications, components, k_bullet, free_cells };
    verify_decomposition_invariants(&d)?;
    Ok(d)
}

/// Union, exact minor cover, assumption (d) on pieces and piece count.
pub fn verify_decomposition_invariants(d: &Decomposition) -> Result<()> {
    for (ci, comp) in d.components.iter().enumerate() {
        let pieces: Vec<&Piece> = d.pieces_of(ci).collect();
        let union: BTreeSet<Cell> = pieces.iter().flat_map(|p| p.ladder.cells().iter().copied()).collect();
        if &union != comp.cells() {
            return Err(Error::DecompositionInvariantFailure {
                invariant: "union of pieces equals the component",
                witness: format!("component {ci}"),
            });
        }
        for s in minor_supports(comp, d.t, SUPPORT_CAP)? {
            let n = pieces.iter().filter(|p| s.cells().all(|c| p.ladder.has(c))).count();
            if n != 1 {
                return Err(Error::DecompositionInvariantFailure {
                    invariant: "every minor lies in exactly one piece",
                    witness: format!("{s} lies in {n} pieces"),
                });
            }
        }
        for p in &pieces {
            let ad = assumption_d(&p.ladder, d.t)?;
            if !ad.holds {
                return Err(Error::DecompositionInvariantFailure {
                    invariant: "every piece satisfies assumption (d)",
                    witness: format!("piece {} at {:?}", p.id, ad.violators),
                });
            }
        }
        if pieces.len() != d.k_bullet[ci] + 1 {
            return Err(Error::DecompositionInvariantFailure {
                invariant: "piece count is one more than the number of type 1.1 corners",
                witness: format!("component {ci}: {} pieces, {} corners", pieces.len(), d.k_bullet[ci]),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::fixtures;

    fn rect(r0: i32, r1: i32, c0: i32, c1: i32) -> Ladder {
        Ladder::from_cells((r0..=r1).flat_map(|r| (c0..=c1).map(move |c| Cell::new(r, c)))).unwrap()
    }

    #[test]
    fn figure_decompositions() {
        let d = decompose(&fixtures::l1(), 3).unwrap();
        let got: Vec<&Ladder> = d.pieces.iter().map(|p| &p.ladder).collect();
        assert_eq!(got, vec![&rect(3, 5, 1, 4), &rect(1, 4, 3, 5)]);
        assert_eq!(d.identifications.len(), 4);

        let d = decompose(&fixtures::l2(), 3).unwrap();
        let got: Vec<&Ladder> = d.pieces.iter().map(|p| &p.ladder).collect();
        assert_eq!(got, vec![&rect(3, 5, 1, 4), &rect(1, 3, 3, 5)]);
        let shared: Vec<Cell> = d.identifications.iter().map(|i| i.cell).collect();
        assert_eq!(shared, vec![Cell::new(3, 3), Cell::new(3, 4)]);

        let d = decompose(&fixtures::l3(), 3).unwrap();
        assert_eq!(d.pieces.len(), 1);
        assert!(d.identifications.is_empty());

        let d = decompose(&fixtures::l4(), 3).unwrap();
        let got: Vec<&Ladder> = d.pieces.iter().map(|p| &p.ladder).collect();
        assert_eq!(got, vec![&rect(3, 5, 1, 3), &rect(1, 3, 3, 5)]);
        assert_eq!(d.identifications.len(), 1);
    }
}
