use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ladder::Cell;

/// Matrix entry `X_{row,col}`, optionally tagged with the piece it was
/// copied into. Smaller variables are more significant in every term order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Variable {
    pub row: i32,
    pub col: i32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tag: Option<u32>,
}

impl Variable {
    pub const fn new(row: i32, col: i32) -> Self {
        Variable { row, col, tag: None }
    }

    pub const fn tagged(row: i32, col: i32, tag: u32) -> Self {
        Variable { row, col, tag: Some(tag) }
    }

    pub fn cell(&self) -> Cell {
        Cell::new(self.row, self.col)
    }
}

impl From<Cell> for Variable {
    fn from(c: Cell) -> Self {
        Variable::new(c.row, c.col)
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if (1..10).contains(&self.row) && (1..10).contains(&self.col) {
            write!(f, "X{}{}", self.row, self.col)?;
        } else {
            write!(f, "X[{},{}]", self.row, self.col)?;
        }
        if let Some(t) = self.tag {
            write!(f, "#{t}")?;
        }
        Ok(())
    }
}

/// Power product stored as `(variable, exponent)` pairs sorted by variable
/// with no zero exponents. `Ord` is the graded lexicographic order with
/// row-major variables, under which every minor leads with its diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Variable, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Variable) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs<I: IntoIterator<Item = (Variable, u32)>>(pairs: I) -> Self {
        let mut m = Monomial::one();
        for (v, e) in pairs {
            m = m.mul(&Monomial(if e == 0 { vec![] } else { vec![(v, e)] }));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Variable) -> u32 {
        self.0.binary_search_by(|(w, _)| w.cmp(&v)).map(|i| self.0[i].1).unwrap_or(0)
    }

    pub fn pairs(&self) -> &[(Variable, u32)] {
        &self.0
    }

    pub fn variables(&self) -> impl Iterator<Item = Variable> + '_ {
        self.0.iter().map(|(v, _)| *v)
    }

    fn merge(&self, other: &Self, f: impl Fn(u32, u32) -> u32) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (v, e) = match (a.get(i), b.get(j)) {
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        i += 1;
                        (va, f(ea, 0))
                    }
                    Ordering::Greater => {
                        j += 1;
                        (vb, f(0, eb))
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (va, f(ea, eb))
                    }
                },
                (Some(&(va, ea)), None) => {
                    i += 1;
                    (va, f(ea, 0))
                }
                (None, Some(&(vb, eb))) => {
                    j += 1;
                    (vb, f(0, eb))
                }
                (None, None) => unreachable!(),
            };
            if e > 0 {
                out.push((v, e));
            }
        }
        Monomial(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.merge(other, |a, b| a + b)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        self.merge(other, u32::max)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        self.merge(other, u32::min)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.divides(self).then(|| self.merge(other, |a, b| a - b))
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.gcd(other).is_one()
    }

    pub fn pow(&self, e: u32) -> Self {
        Monomial(if e == 0 { Vec::new() } else { self.0.iter().map(|&(v, x)| (v, x * e)).collect() })
    }

    pub fn cmp_lex(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let mut i = 0;
        loop {
            match (a.get(i), b.get(i)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va != vb {
                        return if va < vb { Ordering::Greater } else { Ordering::Less };
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                }
            }
            i += 1;
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.cmp_lex(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Term orders available to division and completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TermOrder {
    /// Graded lex, row-major variables: minors lead with their diagonal.
    #[default]
    Diagonal,
    /// Pure lex, row-major variables: also diagonal on minors.
    Lex,
}

impl TermOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Diagonal => a.cmp(b),
            TermOrder::Lex => a.cmp_lex(b),
        }
    }
}
