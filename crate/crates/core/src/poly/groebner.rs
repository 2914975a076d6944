use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::field::Field;
use super::monomial::{Monomial, TermOrder};
use super::polynomial::Polynomial;

/// Division result with `p = sum(cofactors[i] * gens[i]) + remainder` and no
/// remainder term divisible by a leading term.
#[derive(Debug, Clone)]
pub struct NormalForm<F: Field> {
    pub remainder: Polynomial<F>,
    pub cofactors: Vec<Polynomial<F>>,
}

struct Leads<F: Field> {
    monos: Vec<Option<Monomial>>,
    inv: Vec<F::Elem>,
}

fn leads<F: Field>(gens: &[Polynomial<F>], order: TermOrder, field: &F) -> Leads<F> {
    let mut monos = Vec::with_capacity(gens.len());
    let mut inv = Vec::with_capacity(gens.len());
    for g in gens {
        match g.leading(order) {
            Some((m, c)) => {
                monos.push(Some(m.clone()));
                inv.push(field.inv(c).expect("nonzero leading coefficient"));
            }
            None => {
                monos.push(None);
                inv.push(field.zero());
            }
        }
    }
    Leads { monos, inv }
}

fn reduce<F: Field>(
    p: &Polynomial<F>,
    gens: &[Polynomial<F>],
    order: TermOrder,
    mut cofactors: Option<&mut Vec<Polynomial<F>>>,
) -> Polynomial<F> {
    let field = p.field().clone();
    let lt = leads(gens, order, &field);
    let mut f = p.clone();
    let mut rem = Polynomial::zero(field.clone());
    while let Some((m, c)) = f.leading(order).map(|(m, c)| (m.clone(), c.clone())) {
        let hit = lt.monos.iter().enumerate().find_map(|(i, l)| {
            let l = l.as_ref()?;
            m.div(l).map(|q| (i, q))
        });
        match hit {
            Some((i, qm)) => {
                let qc = field.mul(&c, &lt.inv[i]);
                f.add_scaled(&gens[i], &qm, &field.neg(&qc));
                if let Some(cof) = cofactors.as_deref_mut() {
                    cof[i].add_term(qm, qc);
                }
            }
            None => {
                f.add_term(m.clone(), field.neg(&c));
                rem.add_term(m, c);
            }
        }
    }
    rem
}

pub fn normal_form<F: Field>(p: &Polynomial<F>, gens: &[Polynomial<F>], order: TermOrder) -> NormalForm<F> {
    let mut cofactors = vec![Polynomial::zero(p.field().clone()); gens.len()];
    let remainder = reduce(p, gens, order, Some(&mut cofactors));
    let nf = NormalForm { remainder, cofactors };
    assert!(nf.recombines(p, gens), "division identity failed");
    nf
}

/// Remainder only, for completion loops.
pub fn remainder<F: Field>(p: &Polynomial<F>, gens: &[Polynomial<F>], order: TermOrder) -> Polynomial<F> {
    reduce(p, gens, order, None)
}

impl<F: Field> NormalForm<F> {
    pub fn recombines(&self, p: &Polynomial<F>, gens: &[Polynomial<F>]) -> bool {
        let mut acc = self.remainder.clone();
        for (q, g) in self.cofactors.iter().zip(gens) {
            if !q.is_zero() {
                acc = &acc + &(q * g);
            }
        }
        &acc == p
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerCaps {
    /// Critical pairs examined before giving up.
    pub max_pairs: usize,
    /// Largest S-polynomial degree allowed.
    pub max_degree: u32,
}

impl Default for GroebnerCaps {
    fn default() -> Self {
        GroebnerCaps { max_pairs: 200_000, max_degree: 24 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CapHit {
    pub what: &'static str,
    pub pairs_considered: usize,
}

#[derive(Debug, Clone)]
pub struct GroebnerBasis<F: Field> {
    pub order: TermOrder,
    pub basis: Vec<Polynomial<F>>,
    /// Each basis element written over the input generators.
    pub representation: Option<Vec<Vec<Polynomial<F>>>>,
    pub pairs_considered: usize,
}

fn monic<F: Field>(p: &Polynomial<F>, order: TermOrder) -> (Polynomial<F>, F::Elem) {
    let f = p.field();
    let inv = f.inv(p.leading(order).expect("nonzero").1).expect("field");
    (p.scale(&inv), inv)
}

/// Buchberger completion with the product and chain criteria.
pub fn buchberger<F: Field>(
    gens: &[Polynomial<F>],
    order: TermOrder,
    caps: GroebnerCaps,
    track: bool,
) -> Result<GroebnerBasis<F>, CapHit> {
    let mut basis: Vec<Polynomial<F>> = Vec::new();
    let mut lts: Vec<Monomial> = Vec::new();
    let mut reps: Vec<Vec<Polynomial<F>>> = Vec::new();
    let Some(field) = gens.first().map(|g| g.field().clone()) else {
        return Ok(GroebnerBasis { order, basis, representation: track.then(Vec::new), pairs_considered: 0 });
    };
    let zero = Polynomial::zero(field.clone());
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let (m, inv) = monic(g, order);
        lts.push(m.leading(order).unwrap().0.clone());
        basis.push(m);
        if track {
            let mut r = vec![zero.clone(); gens.len()];
            r[i] = Polynomial::constant(field.clone(), inv);
            reps.push(r);
        }
    }

    let mut pending: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((lts[i].lcm(&lts[j]).degree(), j, i));
        }
    }
    let mut considered = 0usize;
    while let Some(&key) = pending.iter().next() {
        pending.remove(&key);
        let (deg, j, i) = key;
        considered += 1;
        if considered > caps.max_pairs {
            return Err(CapHit { what: "critical pairs", pairs_considered: considered - 1 });
        }
        let lcm = lts[i].lcm(&lts[j]);
        if lts[i].is_coprime(&lts[j]) {
            continue;
        }
        let is_pending = |a: usize, b: usize| {
            let (hi, lo) = if a > b { (a, b) } else { (b, a) };
            pending.contains(&(lts[lo].lcm(&lts[hi]).degree(), hi, lo))
        };
        let chain = (0..basis.len())
            .any(|k| k != i && k != j && lts[k].divides(&lcm) && !is_pending(i, k) && !is_pending(j, k));
        if chain {
            continue;
        }
        if deg > caps.max_degree {
            return Err(CapHit { what: "s-polynomial degree", pairs_considered: considered });
        }
        let mi = lcm.div(&lts[i]).unwrap();
        let mj = lcm.div(&lts[j]).unwrap();
        let one = field.one();
        let mut s = basis[i].mul_term(&mi, &one);
        s.add_scaled(&basis[j], &mj, &field.neg(&one));
        let h = if track {
            let mut cof = vec![zero.clone(); basis.len()];
            let h = reduce(&s, &basis, order, Some(&mut cof));
            if !h.is_zero() {
                let mut r: Vec<Polynomial<F>> = (0..gens.len())
                    .map(|g| &reps[i][g].mul_term(&mi, &one) - &reps[j][g].mul_term(&mj, &one))
                    .collect();
                for (k, q) in cof.iter().enumerate() {
                    if q.is_zero() {
                        continue;
                    }
                    for (g, slot) in r.iter_mut().enumerate() {
                        *slot = &*slot - &(q * &reps[k][g]);
                    }
                }
                reps.push(r);
            }
            h
        } else {
            remainder(&s, &basis, order)
        };
        if h.is_zero() {
            continue;
        }
        let (h, inv) = monic(&h, order);
        if track {
            let last = reps.last_mut().unwrap();
            for slot in last.iter_mut() {
                *slot = slot.scale(&inv);
            }
        }
        let n = basis.len();
        lts.push(h.leading(order).unwrap().0.clone());
        basis.push(h);
        for i in 0..n {
            pending.insert((lts[i].lcm(&lts[n]).degree(), n, i));
        }
    }
    Ok(GroebnerBasis {
        order,
        basis,
        representation: track.then_some(reps),
        pairs_considered: considered,
    })
}
