//! Hilbert series oracle. The initial ideal of the ladder ideal under a
//! diagonal order is generated by the products along strict t-chains, so the
//! h-vector is read off the complex of cell sets without such a chain. These
//! rings are Cohen-Macaulay domains, hence Gorenstein exactly when the
//! h-vector is symmetric.

use laddertool_core::ladder::{Cell, Ladder};

/// `f[k]` counts faces with `k` vertices.
pub fn f_vector(y: &Ladder, t: usize) -> Vec<u128> {
    fn rec(i: usize, cells: &[Cell], t: usize, chosen: &mut Vec<(Cell, usize)>, f: &mut [u128]) {
        if i == cells.len() {
            f[chosen.len()] += 1;
            return;
        }
        rec(i + 1, cells, t, chosen, f);
        let c = cells[i];
        let len = 1 + chosen.iter().filter(|(d, _)| d.row < c.row && d.col < c.col).map(|x| x.1).max().unwrap_or(0);
        if len < t {
            chosen.push((c, len));
            rec(i + 1, cells, t, chosen, f);
            chosen.pop();
        }
    }
    let cells: Vec<Cell> = y.cells().iter().copied().collect();
    let mut f = vec![0u128; cells.len() + 1];
    rec(0, &cells, t, &mut Vec::new(), &mut f);
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn binom(n: i128, k: i128) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |r, i| r * (n - i) / (i + 1))
}

pub fn h_vector(y: &Ladder, t: usize) -> Vec<i128> {
    let f = f_vector(y, t);
    let d = f.len() as i128 - 1;
    let mut h: Vec<i128> = (0..=d)
        .map(|k| {
            (0..=k).map(|i| if (k - i) % 2 == 0 { 1 } else { -1 } * binom(d - i, k - i) * f[i as usize] as i128).sum()
        })
        .collect();
    while h.last() == Some(&0) {
        h.pop();
    }
    h
}

pub fn h_vector_symmetric(y: &Ladder, t: usize) -> bool {
    let h = h_vector(y, t);
    h.iter().eq(h.iter().rev())
}
