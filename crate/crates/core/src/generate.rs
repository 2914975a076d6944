//! Seeded random ladders.

use rand::Rng;

use crate::ladder::{validate_ladder, Cell, Ladder};

pub const DEFAULT_MAX_SIDE: i32 = 8;

/// Row intervals with non-increasing left and right ends, redrawn until
/// the result is a ladder.
pub fn random_ladder<R: Rng>(rng: &mut R, max_m: i32, max_n: i32) -> Ladder {
    loop {
        let m = rng.gen_range(1..=max_m);
        let n = rng.gen_range(1..=max_n);
        if let Some(y) = staircase(rng, m, n, false) {
            return y;
        }
    }
}

/// As [`random_ladder`] but consecutive rows share a column.
pub fn random_connected_ladder<R: Rng>(rng: &mut R, max_m: i32, max_n: i32) -> Ladder {
    loop {
        let m = rng.gen_range(1..=max_m);
        let n = rng.gen_range(1..=max_n);
        if let Some(y) = staircase(rng, m, n, true) {
            return y;
        }
    }
}

fn staircase<R: Rng>(rng: &mut R, m: i32, n: i32, connected: bool) -> Option<Ladder> {
    let mut lo = vec![0; m as usize];
    let mut hi = vec![0; m as usize];
    hi[0] = n;
    for p in 1..m as usize {
        hi[p] = rng.gen_range(1..=hi[p - 1]);
    }
    lo[m as usize - 1] = 1;
    for p in (0..m as usize - 1).rev() {
        lo[p] = rng.gen_range(lo[p + 1]..=hi[p]);
    }
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return None;
    }
    if connected && (1..m as usize).any(|p| hi[p] < lo[p - 1]) {
        return None;
    }
    let cells = (0..m as usize).flat_map(|p| (lo[p]..=hi[p]).map(move |c| Cell::new(p as i32 + 1, c)));
    validate_ladder(cells).ok()
}

/// `a` to the upper right of `b`, with no row or column shared.
pub fn disjoint_union(a: &Ladder, b: &Ladder) -> Ladder {
    let (am, bn) = (a.m() as i32, b.n() as i32);
    let (ar, ac) = (a.row_range().0, a.col_range().0);
    let (br, bc) = (b.row_range().0, b.col_range().0);
    let cells = a
        .cells()
        .iter()
        .map(|c| Cell::new(c.row - ar + 1, c.col - ac + 1 + bn))
        .chain(b.cells().iter().map(|c| Cell::new(c.row - br + 1 + am, c.col - bc + 1)));
    validate_ladder(cells).expect("diagonal union of ladders is a ladder")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_shapes_are_bounded_and_seeded() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let y = random_ladder(&mut a, 8, 8);
            assert!(y.m() <= 8 && y.n() <= 8);
            assert_eq!(y, random_ladder(&mut b, 8, 8));
        }
        for _ in 0..200 {
            assert!(random_connected_ladder(&mut a, 6, 6).is_path_connected());
        }
    }

    #[test]
    fn union_is_split() {
        let u = disjoint_union(&Ladder::rectangle(2, 3), &Ladder::rectangle(3, 2));
        assert_eq!(u.len(), 12);
        assert_eq!(u.path_components().len(), 2);
    }
}
