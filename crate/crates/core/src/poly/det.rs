//! Determinants by fraction-free elimination and by cofactor expansion.

use super::field::{Field, PrimeField, Rationals};
use super::polynomial::Polynomial;

/// Commutative ring with exact division, enough for Bareiss elimination.
pub trait DetRing {
    type Elem: Clone + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `a / b` when `b` divides `a`.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
}

macro_rules! field_det_ring {
    ($t:ty) => {
        impl DetRing for $t {
            type Elem = <$t as Field>::Elem;
            fn zero(&self) -> Self::Elem {
                Field::zero(self)
            }
            fn one(&self) -> Self::Elem {
                Field::one(self)
            }
            fn is_zero(&self, a: &Self::Elem) -> bool {
                Field::is_zero(self, a)
            }
            fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
                Field::add(self, a, b)
            }
            fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
                Field::sub(self, a, b)
            }
            fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
                Field::mul(self, a, b)
            }
            fn neg(&self, a: &Self::Elem) -> Self::Elem {
                Field::neg(self, a)
            }
            fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
                Field::div(self, a, b)
            }
        }
    };
}

field_det_ring!(Rationals);
field_det_ring!(PrimeField);

/// Polynomials over `F` as a determinant ring.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyRing<F: Field>(pub F);

impl<F: Field> DetRing for PolyRing<F> {
    type Elem = Polynomial<F>;
    fn zero(&self) -> Polynomial<F> {
        Polynomial::zero(self.0.clone())
    }
    fn one(&self) -> Polynomial<F> {
        Polynomial::one(self.0.clone())
    }
    fn is_zero(&self, a: &Polynomial<F>) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
        a + b
    }
    fn sub(&self, a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
        a - b
    }
    fn mul(&self, a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
        a * b
    }
    fn neg(&self, a: &Polynomial<F>) -> Polynomial<F> {
        -a
    }
    fn div_exact(&self, a: &Polynomial<F>, b: &Polynomial<F>) -> Option<Polynomial<F>> {
        a.exact_div(b)
    }
}

fn check_square<T>(m: &[Vec<T>]) {
    assert!(m.iter().all(|row| row.len() == m.len()), "matrix must be square");
}

/// Laplace expansion along the first row.
pub fn cofactor_det<R: DetRing>(ring: &R, m: &[Vec<R::Elem>]) -> R::Elem {
    check_square(m);
    match m.len() {
        0 => ring.one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = ring.zero();
            for j in 0..n {
                if ring.is_zero(&m[0][j]) {
                    continue;
                }
                let sub: Vec<Vec<R::Elem>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = ring.mul(&m[0][j], &cofactor_det(ring, &sub));
                acc = if j % 2 == 0 { ring.add(&acc, &term) } else { ring.sub(&acc, &term) };
            }
            acc
        }
    }
}

/// Bareiss elimination with row pivoting. Falls back to cofactor expansion
/// if an exact division fails.
pub fn bareiss_det<R: DetRing>(ring: &R, m: &[Vec<R::Elem>]) -> R::Elem {
    check_square(m);
    let n = m.len();
    if n == 0 {
        return ring.one();
    }
    let mut a: Vec<Vec<R::Elem>> = m.to_vec();
    let mut sign_negative = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        if ring.is_zero(&a[k][k]) {
            match (k + 1..n).find(|&r| !ring.is_zero(&a[r][k])) {
                Some(r) => {
                    a.swap(k, r);
                    sign_negative = !sign_negative;
                }
                None => return ring.zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = ring.sub(&ring.mul(&a[i][j], &a[k][k]), &ring.mul(&a[i][k], &a[k][j]));
                match ring.div_exact(&num, &prev) {
                    Some(q) => a[i][j] = q,
                    None => return cofactor_det(ring, m),
                }
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign_negative {
        ring.neg(&d)
    } else {
        d
    }
}
