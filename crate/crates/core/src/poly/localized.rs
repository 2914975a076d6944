use std::fmt;

use super::field::{Field, Rationals};
use super::monomial::Monomial;
use super::polynomial::{Polynomial, PolynomialRecord};
use serde::Serialize;

/// `numerator / denominator` with a monomial denominator. Kept normalized:
/// no denominator variable divides every numerator term, which makes the
/// representation unique.
#[derive(Clone, PartialEq, Eq)]
pub struct LocalizedElement<F: Field = Rationals> {
    numerator: Polynomial<F>,
    denominator: Monomial,
}

impl<F: Field> fmt::Debug for LocalizedElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocalizedElement({self})")
    }
}

impl<F: Field> LocalizedElement<F> {
    pub fn new(numerator: Polynomial<F>, denominator: Monomial) -> Self {
        let mut e = LocalizedElement { numerator, denominator };
        e.normalize();
        e
    }

    pub fn from_poly(p: Polynomial<F>) -> Self {
        LocalizedElement { numerator: p, denominator: Monomial::one() }
    }

    pub fn numerator(&self) -> &Polynomial<F> {
        &self.numerator
    }

    pub fn denominator(&self) -> &Monomial {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Polynomial value when the denominator is trivial.
    pub fn as_polynomial(&self) -> Option<&Polynomial<F>> {
        self.denominator.is_one().then_some(&self.numerator)
    }

    fn normalize(&mut self) {
        if self.numerator.is_zero() {
            self.denominator = Monomial::one();
            return;
        }
        let mut cancel = Vec::new();
        for &(v, e) in self.denominator.pairs() {
            let k = e.min(self.numerator.min_exponent(v));
            if k > 0 {
                cancel.push((v, k));
            }
        }
        if cancel.is_empty() {
            return;
        }
        let g = Monomial::from_pairs(cancel);
        self.numerator = self.numerator.div_monomial(&g).expect("common factor divides");
        self.denominator = self.denominator.div(&g).expect("common factor divides");
    }

    pub fn add(&self, other: &Self) -> Self {
        let l = self.denominator.lcm(&other.denominator);
        let one = self.numerator.field().one();
        let a = self.numerator.mul_term(&l.div(&self.denominator).unwrap(), &one);
        let b = other.numerator.mul_term(&l.div(&other.denominator).unwrap(), &one);
        LocalizedElement::new(&a + &b, l)
    }

    pub fn neg(&self) -> Self {
        LocalizedElement { numerator: -&self.numerator, denominator: self.denominator.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        LocalizedElement::new(&self.numerator * &other.numerator, self.denominator.mul(&other.denominator))
    }

    pub fn pow(&self, e: u32) -> Self {
        LocalizedElement::new(self.numerator.pow(e), self.denominator.pow(e))
    }

    /// Divides by a monomial unit.
    pub fn div_monomial(&self, m: &Monomial) -> Self {
        LocalizedElement::new(self.numerator.clone(), self.denominator.mul(m))
    }

    /// Value at a point where every denominator variable is nonzero.
    pub fn evaluate(&self, value: impl Fn(super::monomial::Variable) -> F::Elem + Copy) -> Option<F::Elem> {
        let f = self.numerator.field();
        let num = self.numerator.evaluate(value);
        let den = Polynomial::term(f.clone(), self.denominator.clone(), f.one()).evaluate(value);
        f.div(&num, &den)
    }
}

impl<F: Field> fmt::Display for LocalizedElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalizedRecord {
    pub numerator: PolynomialRecord,
    pub denominator: String,
}

impl<F: Field> From<&LocalizedElement<F>> for LocalizedRecord {
    fn from(e: &LocalizedElement<F>) -> Self {
        LocalizedRecord { numerator: (&e.numerator).into(), denominator: e.denominator.to_string() }
    }
}
