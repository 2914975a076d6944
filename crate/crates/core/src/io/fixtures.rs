//! The four worked ladders and full rectangles.

use crate::error::{Error, Result};
use crate::ladder::{validate_ladder, Cell, Ladder};

fn from_bands(bands: &[(i32, i32, i32, i32)]) -> Ladder {
    let cells = bands
        .iter()
        .flat_map(|&(r0, r1, c0, c1)| (r0..=r1).flat_map(move |r| (c0..=c1).map(move |c| Cell::new(r, c))));
    validate_ladder(cells).expect("fixture is a ladder")
}

pub fn l1() -> Ladder {
    from_bands(&[(1, 2, 3, 5), (3, 4, 1, 5), (5, 5, 1, 4)])
}

pub fn l2() -> Ladder {
    from_bands(&[(1, 2, 3, 5), (3, 3, 1, 5), (4, 5, 1, 4)])
}

pub fn l3() -> Ladder {
    from_bands(&[(1, 2, 3, 5), (3, 5, 1, 5), (6, 6, 1, 4)])
}

pub fn l4() -> Ladder {
    from_bands(&[(1, 2, 3, 5), (3, 3, 1, 5), (4, 5, 1, 3)])
}

pub fn figure_ladders() -> [Ladder; 4] {
    [l1(), l2(), l3(), l4()]
}

pub fn full(m: i32, n: i32) -> Ladder {
    Ladder::rectangle(m, n)
}

pub const NAMES: [&str; 4] = ["L1", "L2", "L3", "L4"];

/// `L1`..`L4` or `full:MxN`.
pub fn by_name(name: &str) -> Result<Ladder> {
    match name {
        "L1" => Ok(l1()),
        "L2" => Ok(l2()),
        "L3" => Ok(l3()),
        "L4" => Ok(l4()),
        _ => {
            let bad = || Error::Parse { line: 1, column: 1, message: format!("unknown fixture `{name}`") };
            let dims = name.strip_prefix("full:").ok_or_else(bad)?;
            let (m, n) = dims.split_once(['x', 'X']).ok_or_else(bad)?;
            let m: i32 = m.trim().parse().map_err(|_| bad())?;
            let n: i32 = n.trim().parse().map_err(|_| bad())?;
            if m < 1 || n < 1 {
                return Err(Error::Empty);
            }
            Ok(full(m, n))
        }
    }
}
