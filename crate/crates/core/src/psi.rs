//! The mutually inverse substitutions `psi` and `chi` on the localization of
//! the polynomial ring at the outside lower corner variables.
//!
//! For a cell `(i,j)` let `U(i,j) = { w : i > a_{w-1}, j > b_w }`. Then
//! `psi(X_ij)` is `X_ij` plus, for every nonempty increasing chain
//! `u_1 < ... < u_r` in `U(i,j)`, the term
//! `X_{a_{u_1-1}, j} X_{a_{u_2-1}, b_{u_1}} ... X_{i, b_{u_r}} / (X_{S_{u_1}} ... X_{S_{u_r}})`.
//! `chi` uses the same terms with sign `(-1)^r`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ladder::{corner_profile, is_t_connected, Cell, Ladder};
use crate::poly::{LocalizedElement, Monomial, Polynomial, Rationals, Variable};

pub const DEFAULT_MAX_CELLS: usize = 400;
const MAX_CHAIN_SET: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Psi,
    Chi,
}

/// Precomputed images of every variable of a t-connected ladder.
#[derive(Debug, Clone)]
pub struct PsiChi {
    t: usize,
    chain: Vec<Cell>,
    corners: Vec<Cell>,
    psi: BTreeMap<Cell, LocalizedElement>,
    chi: BTreeMap<Cell, LocalizedElement>,
}

fn var(c: Cell) -> Polynomial {
    Polynomial::var(Rationals, Variable::from(c))
}

impl PsiChi {
    pub fn new(y: &Ladder, t: usize, max_cells: usize) -> Result<Self> {
        if t <= 2 {
            return Err(Error::InvalidT { t, need: "t > 2" });
        }
        if y.len() > max_cells {
            return Err(Error::CapExceeded { what: "ladder cells", cap: max_cells });
        }
        if !is_t_connected(y, t)? {
            return Err(Error::NotTConnected { t });
        }
        let profile = corner_profile(y)?;
        let mut map = PsiChi {
            t,
            chain: profile.lower_chain.clone(),
            corners: profile.outside_lower.clone(),
            psi: BTreeMap::new(),
            chi: BTreeMap::new(),
        };
        for &c in y.cells() {
            let u = map.u_set(c);
            if u.len() > MAX_CHAIN_SET {
                return Err(Error::CapExceeded { what: "corner chain length", cap: MAX_CHAIN_SET });
            }
            for w in &u {
                for needed in [Cell::new(map.chain[w - 1].row, c.col), Cell::new(c.row, map.chain[*w].col)] {
                    if !y.has(needed) {
                        return Err(Error::Internal(format!("psi of {c} needs {needed} outside the ladder")));
                    }
                }
            }
            map.psi.insert(c, map.by_chains(c, Direction::Psi));
            map.chi.insert(c, map.by_chains(c, Direction::Chi));
        }
        for dir in [Direction::Psi, Direction::Chi] {
            for &c in y.cells() {
                if map.by_recursion(c, dir) != map.images(dir)[&c] {
                    return Err(Error::Internal(format!("chain and recursive forms of {dir:?} disagree at {c}")));
                }
            }
        }
        Ok(map)
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Outside lower corners `S_1, ..., S_{h+1}`.
    pub fn corners(&self) -> &[Cell] {
        &self.corners
    }

    /// 1-based indices `w` with `i > a_{w-1}` and `j > b_w`.
    pub fn u_set(&self, c: Cell) -> Vec<usize> {
        (1..self.chain.len()).filter(|&w| c.row > self.chain[w - 1].row && c.col > self.chain[w].col).collect()
    }

    fn corner_var(&self, w: usize) -> Variable {
        Variable::from(self.corners[w - 1])
    }

    fn by_chains(&self, c: Cell, dir: Direction) -> LocalizedElement {
        let u = self.u_set(c);
        let mut acc = LocalizedElement::from_poly(var(c));
        for mask in 1u64..(1u64 << u.len()) {
            let ws: Vec<usize> = (0..u.len()).filter(|b| mask >> b & 1 == 1).map(|b| u[b]).collect();
            let r = ws.len();
            let mut num = Monomial::var(Variable::new(self.chain[ws[0] - 1].row, c.col));
            for k in 1..r {
                num = num.mul(&Monomial::var(Variable::new(self.chain[ws[k] - 1].row, self.chain[ws[k - 1]].col)));
            }
            num = num.mul(&Monomial::var(Variable::new(c.row, self.chain[ws[r - 1]].col)));
            let den = Monomial::from_pairs(ws.iter().map(|&w| (self.corner_var(w), 1)));
            let sign = if dir == Direction::Chi && r % 2 == 1 { -1 } else { 1 };
            let term = LocalizedElement::new(Polynomial::from_i64_terms([(sign, num)]), den);
            acc = acc.add(&term);
        }
        acc
    }

    /// `X_ij +- sum_{w in U} X_{i,b_w} / X_{S_w} * image(X_{a_{w-1}, j})`.
    fn by_recursion(&self, c: Cell, dir: Direction) -> LocalizedElement {
        let mut acc = LocalizedElement::from_poly(var(c));
        for w in self.u_set(c) {
            let above = Cell::new(self.chain[w - 1].row, c.col);
            let inner = self.by_recursion(above, dir);
            let factor =
                LocalizedElement::new(var(Cell::new(c.row, self.chain[w].col)), Monomial::var(self.corner_var(w)));
            let term = factor.mul(&inner);
            acc = match dir {
                Direction::Psi => acc.add(&term),
                Direction::Chi => acc.sub(&term),
            };
        }
        acc
    }

    fn images(&self, dir: Direction) -> &BTreeMap<Cell, LocalizedElement> {
        match dir {
            Direction::Psi => &self.psi,
            Direction::Chi => &self.chi,
        }
    }

    pub fn image(&self, dir: Direction, v: Variable) -> Result<&LocalizedElement> {
        if v.tag.is_some() {
            return Err(Error::UnknownVariable(v.to_string()));
        }
        self.images(dir).get(&v.cell()).ok_or_else(|| Error::UnknownVariable(v.to_string()))
    }

    pub fn apply_poly(&self, dir: Direction, p: &Polynomial) -> Result<LocalizedElement> {
        let mut acc = LocalizedElement::from_poly(Polynomial::zero(Rationals));
        for (m, c) in p.terms() {
            let mut term = LocalizedElement::from_poly(Polynomial::constant(Rationals, c.clone()));
            for &(v, e) in m.pairs() {
                term = term.mul(&self.image(dir, v)?.pow(e));
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Denominators are corner variables, which both maps fix.
    pub fn apply(&self, dir: Direction, e: &LocalizedElement) -> Result<LocalizedElement> {
        for v in e.denominator().variables() {
            if !self.corners.contains(&v.cell()) || v.tag.is_some() {
                return Err(Error::UnknownVariable(format!("{v} is not an outside corner variable")));
            }
        }
        Ok(self.apply_poly(dir, e.numerator())?.div_monomial(e.denominator()))
    }
}

pub fn psi_apply(y: &Ladder, t: usize, target: &LocalizedElement) -> Result<LocalizedElement> {
    PsiChi::new(y, t, DEFAULT_MAX_CELLS)?.apply(Direction::Psi, target)
}

pub fn chi_apply(y: &Ladder, t: usize, target: &LocalizedElement) -> Result<LocalizedElement> {
    PsiChi::new(y, t, DEFAULT_MAX_CELLS)?.apply(Direction::Chi, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::fixtures;

    fn x(r: i32, c: i32) -> Polynomial {
        var(Cell::new(r, c))
    }

    fn frac(num: Polynomial, den: &[(i32, i32)]) -> LocalizedElement {
        LocalizedElement::new(num, Monomial::from_pairs(den.iter().map(|&(r, c)| (Variable::new(r, c), 1))))
    }

    #[test]
    fn worked_images_on_l3() {
        let m = PsiChi::new(&fixtures::l3(), 3, DEFAULT_MAX_CELLS).unwrap();
        let want = LocalizedElement::from_poly(x(2, 4)).add(&frac(&x(1, 4) * &x(2, 3), &[(1, 3)]));
        assert_eq!(m.image(Direction::Psi, Variable::new(2, 4)).unwrap(), &want);

        let want = LocalizedElement::from_poly(x(4, 5))
            .add(&frac(&x(1, 5) * &x(4, 3), &[(1, 3)]))
            .add(&frac(&x(3, 5) * &x(4, 1), &[(3, 1)]))
            .add(&frac(&(&x(1, 5) * &x(3, 3)) * &x(4, 1), &[(1, 3), (3, 1)]));
        assert_eq!(m.image(Direction::Psi, Variable::new(4, 5)).unwrap(), &want);
    }

    #[test]
    fn corners_are_fixed() {
        let m = PsiChi::new(&fixtures::l1(), 3, DEFAULT_MAX_CELLS).unwrap();
        for &c in m.corners() {
            for dir in [Direction::Psi, Direction::Chi] {
                assert_eq!(m.image(dir, Variable::from(c)).unwrap(), &LocalizedElement::from_poly(var(c)));
            }
        }
    }

    #[test]
    fn preconditions() {
        assert!(matches!(PsiChi::new(&fixtures::l1(), 2, 400), Err(Error::InvalidT { .. })));
        assert!(matches!(PsiChi::new(&fixtures::l1(), 3, 10), Err(Error::CapExceeded { .. })));
        let thin = Ladder::rectangle(2, 5);
        assert!(matches!(PsiChi::new(&thin, 3, 400), Err(Error::NotTConnected { .. })));
    }
}
