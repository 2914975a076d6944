use std::collections::BTreeMap;

use crate::error::Result;
use crate::ladder::{border, corner_profile, decompose, BorderSide, Cell, Ladder};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Overlay {
    None,
    /// `S1`, `S1'`, `T1`, `T1'` at outside and inside corners.
    Corners,
    /// `B` lower border, `C` upper border, `#` both.
    Borders,
    /// `Z` for cells off the lower border, `X` for the border.
    Z,
    /// Piece ids of the gluing decomposition in base 36, `*` where pieces
    /// overlap, `+` for cells in no t-minor.
    Pieces { t: usize },
}

pub fn render(y: &Ladder, overlay: Overlay) -> Result<String> {
    let mut marks: BTreeMap<Cell, Vec<String>> = BTreeMap::new();
    let mut mark = |c: Cell, s: String| marks.entry(c).or_default().push(s);
    match overlay {
        Overlay::None => {}
        Overlay::Corners => {
            for part in y.path_components() {
                let p = corner_profile(&part)?;
                let groups: [(&[Cell], &str, &str); 4] = [
                    (&p.outside_lower, "S", ""),
                    (p.inside_lower(), "S", "'"),
                    (&p.outside_upper, "T", ""),
                    (p.inside_upper(), "T", "'"),
                ];
                for (cells, letter, prime) in groups {
                    for (i, &c) in cells.iter().enumerate() {
                        mark(c, format!("{letter}{}{prime}", i + 1));
                    }
                }
            }
        }
        Overlay::Borders => {
            let b = border(y, BorderSide::Lower, 1).cells;
            let c = border(y, BorderSide::Upper, 1).cells;
            for &x in y.cells() {
                let s = match (b.contains(&x), c.contains(&x)) {
                    (true, true) => "#",
                    (true, false) => "B",
                    (false, true) => "C",
                    (false, false) => continue,
                };
                mark(x, s.into());
            }
        }
        Overlay::Z => {
            let b = border(y, BorderSide::Lower, 1).cells;
            for &x in y.cells() {
                mark(x, if b.contains(&x) { "X" } else { "Z" }.into());
            }
        }
        Overlay::Pieces { t } => {
            let d = decompose(y, t)?;
            for piece in &d.pieces {
                for &x in piece.ladder.cells() {
                    mark(x, piece_token(piece.id));
                }
            }
            for &x in &d.free_cells {
                mark(x, "+".into());
            }
        }
    }
    let token = |c: Cell| -> String {
        match marks.get(&c) {
            Some(v) if matches!(overlay, Overlay::Pieces { .. }) && v.len() > 1 => "*".into(),
            Some(v) => v.join("/"),
            None if y.has(c) => "X".into(),
            None => ".".into(),
        }
    };
    let (r0, r1) = y.row_range();
    let (c0, c1) = y.col_range();
    let width = (r0..=r1)
        .flat_map(|r| (c0..=c1).map(move |c| Cell::new(r, c)))
        .map(|c| token(c).len())
        .max()
        .unwrap_or(1);
    let sep = if width == 1 { "" } else { " " };
    let lines: Vec<String> = (r0..=r1)
        .map(|r| {
            let row: Vec<String> = (c0..=c1).map(|c| format!("{:<width$}", token(Cell::new(r, c)))).collect();
            row.join(sep).trim_end().to_string()
        })
        .collect();
    Ok(lines.join("\n"))
}

fn piece_token(id: usize) -> String {
    char::from_digit(id as u32, 36).map_or_else(|| format!("p{id}"), |c| c.to_string())
}
