use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::field::{Field, PrimeField, Rationals};
use super::monomial::{Monomial, TermOrder, Variable};

/// Sparse polynomial over a coefficient field.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<F: Field = Rationals> {
    field: F,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(field: F) -> Self {
        Polynomial { field, terms: BTreeMap::new() }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        let mut p = Polynomial::zero(field);
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn one(field: F) -> Self {
        let c = field.one();
        Polynomial::constant(field, c)
    }

    pub fn var(field: F, v: Variable) -> Self {
        Polynomial::term(field.clone(), Monomial::var(v), field.one())
    }

    pub fn term(field: F, m: Monomial, c: F::Elem) -> Self {
        let mut p = Polynomial::zero(field);
        p.add_term(m, c);
        p
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, F::Elem> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: F::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.field.add(e.get(), &c);
                if self.field.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn leading(&self, order: TermOrder) -> Option<(&Monomial, &F::Elem)> {
        match order {
            TermOrder::Diagonal => self.terms.last_key_value(),
            TermOrder::Lex => self.terms.iter().max_by(|a, b| a.0.cmp_lex(b.0)),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        self.terms.keys().flat_map(|m| m.variables().collect::<Vec<_>>()).collect()
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Polynomial::zero(self.field.clone());
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), self.field.mul(a, c))).collect();
        Polynomial { field: self.field.clone(), terms }
    }

    /// `self * c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let mut out = Polynomial::zero(self.field.clone());
        if self.field.is_zero(c) {
            return out;
        }
        for (n, a) in &self.terms {
            out.terms.insert(n.mul(m), self.field.mul(a, c));
        }
        out
    }

    /// `self += c * m * other`.
    pub fn add_scaled(&mut self, other: &Self, m: &Monomial, c: &F::Elem) {
        for (n, a) in &other.terms {
            self.add_term(n.mul(m), self.field.mul(a, c));
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Polynomial::one(self.field.clone());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Divides every term by `m`; `None` if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (n, a) in &self.terms {
            terms.insert(n.div(m)?, a.clone());
        }
        Some(Polynomial { field: self.field.clone(), terms })
    }

    /// Smallest exponent of `v` over all terms.
    pub fn min_exponent(&self, v: Variable) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).min().unwrap_or(0)
    }

    /// Quotient when `other` divides `self` exactly.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        let (lm, lc) = other.leading(TermOrder::Diagonal)?;
        let lc_inv = self.field.inv(lc)?;
        let mut q = Polynomial::zero(self.field.clone());
        let mut r = self.clone();
        while let Some((m, c)) = r.leading(TermOrder::Diagonal) {
            let qm = m.div(lm)?;
            let qc = self.field.mul(c, &lc_inv);
            r.add_scaled(other, &qm, &self.field.neg(&qc));
            q.add_term(qm, qc);
        }
        Some(q)
    }

    pub fn evaluate(&self, value: impl Fn(Variable) -> F::Elem) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                let x = value(v);
                for _ in 0..e {
                    t = f.mul(&t, &x);
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Replaces every variable by a polynomial.
    pub fn substitute(&self, image: impl Fn(Variable) -> Self) -> Self {
        let mut cache: BTreeMap<Variable, Self> = BTreeMap::new();
        let mut out = Polynomial::zero(self.field.clone());
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(self.field.clone(), c.clone());
            for &(v, e) in m.pairs() {
                let img = cache.entry(v).or_insert_with(|| image(v)).clone();
                t = &t * &img.pow(e);
            }
            out = &out + &t;
        }
        out
    }
}

impl Polynomial<Rationals> {
    pub fn from_i64_terms<I: IntoIterator<Item = (i64, Monomial)>>(terms: I) -> Self {
        let mut p = Polynomial::zero(Rationals);
        for (c, m) in terms {
            p.add_term(m, Rationals.from_i64(c));
        }
        p
    }

    /// Image modulo a prime; `None` if a denominator vanishes.
    pub fn to_prime_field(&self, fp: &PrimeField) -> Option<Polynomial<PrimeField>> {
        let mut out = Polynomial::zero(*fp);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), rational_mod(c, fp)?);
        }
        Some(out)
    }
}

pub fn rational_mod(c: &BigRational, fp: &PrimeField) -> Option<u64> {
    let p = BigInt::from(fp.modulus());
    let num = c.numer().mod_floor(&p).to_u64()?;
    let den = c.denom().mod_floor(&p).to_u64()?;
    fp.div(&num, &den)
}

impl<'a, F: Field> Add<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        let (mut big, small) = if self.len() >= rhs.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }
}

impl<'a, F: Field> Sub<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), self.field.neg(c));
        }
        out
    }
}

impl<'a, F: Field> Mul<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        let mut out = Polynomial::zero(self.field.clone());
        let (a, b) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        for (m, c) in &a.terms {
            out.add_scaled(b, m, c);
        }
        out
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        self.scale(&self.field.neg(&self.field.one()))
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Serializable view of a polynomial with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolynomialRecord {
    pub text: String,
    pub terms: Vec<TermRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermRecord {
    pub coeff: String,
    pub monomial: Vec<(Variable, u32)>,
}

impl<F: Field> From<&Polynomial<F>> for PolynomialRecord {
    fn from(p: &Polynomial<F>) -> Self {
        PolynomialRecord {
            text: p.to_string(),
            terms: p
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermRecord { coeff: c.to_string(), monomial: m.pairs().to_vec() })
                .collect(),
        }
    }
}
