//! Determinantal ideals of a ladder, their residual counterparts, and ideal
//! membership.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ladder::{
    classify_corners, construct_z, corner_profile, minor_supports, supports_within, Cell, CornerProfile, CornerType,
    Ladder, MinorSupport,
};
use crate::poly::{
    bareiss_det, buchberger, normal_form, CapHit, Field, GroebnerCaps, Monomial, PolyRing, Polynomial, Rationals,
    TermOrder, Variable,
};

const SUPPORT_CAP: usize = 200_000;

/// Determinant of the submatrix of generic entries on `support` over `field`.
pub fn minor_over<F: Field>(field: &F, y: &Ladder, support: &MinorSupport) -> Result<Polynomial<F>> {
    if support.cells().any(|c| !y.has(c)) {
        return Err(Error::SupportNotInLadder { rows: support.rows.clone(), cols: support.cols.clone() });
    }
    Ok(generic_minor(field, support))
}

/// Determinant of generic entries on `support`, with no ladder check.
pub fn generic_minor<F: Field>(field: &F, support: &MinorSupport) -> Polynomial<F> {
    let m: Vec<Vec<Polynomial<F>>> = support
        .rows
        .iter()
        .map(|&r| support.cols.iter().map(|&c| Polynomial::var(field.clone(), Variable::new(r, c))).collect())
        .collect();
    bareiss_det(&PolyRing(field.clone()), &m)
}

pub fn minor(y: &Ladder, support: &MinorSupport) -> Result<Polynomial> {
    minor_over(&Rationals, y, support)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum IdealLabel {
    /// The determinantal ideal itself.
    Determinantal,
    Q(usize),
    QPrime(usize),
    P(usize),
}

impl fmt::Display for IdealLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealLabel::Determinantal => write!(f, "I"),
            IdealLabel::Q(i) => write!(f, "q{i}"),
            IdealLabel::QPrime(i) => write!(f, "q'{i}"),
            IdealLabel::P(j) => write!(f, "p{j}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub support: MinorSupport,
    pub poly: Polynomial,
}

/// An ideal given by all minors of one size inside a region. For the
/// primes of the quotient ring the preimage adds the determinantal ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealPresentation {
    pub label: IdealLabel,
    pub minor_size: usize,
    pub region: BTreeSet<Cell>,
    pub generators: Vec<Generator>,
}

impl IdealPresentation {
    fn build(label: IdealLabel, region: BTreeSet<Cell>, size: usize) -> Self {
        let generators = supports_within(&region, size)
            .into_iter()
            .map(|support| {
                let poly = generic_minor(&Rationals, &support);
                Generator { support, poly }
            })
            .collect();
        IdealPresentation { label, minor_size: size, region, generators }
    }

    pub fn polys(&self) -> Vec<Polynomial> {
        self.generators.iter().map(|g| g.poly.clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Determinantal ideal and the height-one primes attached to corners.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderIdeals {
    pub t: usize,
    pub determinantal: IdealPresentation,
    pub q: Vec<IdealPresentation>,
    pub q_prime: Vec<IdealPresentation>,
    pub p: Vec<IdealPresentation>,
}

impl LadderIdeals {
    /// Preimage in the polynomial ring: region minors plus the determinantal ideal.
    pub fn preimage(&self, prime: &IdealPresentation) -> Vec<Polynomial> {
        let mut out = prime.polys();
        if prime.label != IdealLabel::Determinantal {
            out.extend(self.determinantal.polys());
        }
        out
    }

    pub fn all(&self) -> impl Iterator<Item = &IdealPresentation> {
        std::iter::once(&self.determinantal).chain(&self.q).chain(&self.q_prime).chain(&self.p)
    }

    pub fn get(&self, label: IdealLabel) -> Option<&IdealPresentation> {
        self.all().find(|i| i.label == label)
    }
}

struct RegionSpec<'a> {
    cells: &'a BTreeSet<Cell>,
    chain: &'a [Cell],
    upper: &'a [Cell],
    lower_types: Vec<CornerType>,
    upper_types: Vec<CornerType>,
    companions: Vec<Companion>,
    band: i32,
}

/// Upper inside corners sitting in the block of a type 2 lower inside
/// corner. Rows below the corner are cut at the lowest one, columns at the
/// highest one.
#[derive(Debug, Clone, Copy, Default)]
struct Companion {
    for_rows: Option<Cell>,
    for_cols: Option<Cell>,
}

fn companions(profile: &CornerProfile, t: usize) -> Vec<Companion> {
    let s = t as i32 - 2;
    profile
        .inside_lower()
        .iter()
        .map(|&l| {
            let near: Vec<Cell> = profile
                .inside_upper()
                .iter()
                .filter(|u| (l.row..=l.row + s).contains(&u.row) && (l.col..=l.col + s).contains(&u.col))
                .copied()
                .collect();
            Companion { for_rows: near.iter().copied().max_by_key(|u| u.row), for_cols: near.into_iter().min_by_key(|u| u.row) }
        })
        .collect()
}

fn full_band_col_max(cells: &BTreeSet<Cell>, rows: std::ops::RangeInclusive<i32>) -> Option<i32> {
    let cols: BTreeSet<i32> = cells.iter().filter(|c| rows.contains(&c.row)).map(|c| c.col).collect();
    cols.into_iter().rev().find(|&q| rows.clone().all(|p| cells.contains(&Cell::new(p, q))))
}

fn full_band_row_max(cells: &BTreeSet<Cell>, cols: std::ops::RangeInclusive<i32>) -> Option<i32> {
    let rows: BTreeSet<i32> = cells.iter().filter(|c| cols.contains(&c.col)).map(|c| c.row).collect();
    rows.into_iter().rev().find(|&p| cols.clone().all(|q| cells.contains(&Cell::new(p, q))))
}

type Regions = (Vec<IdealPresentation>, Vec<IdealPresentation>, Vec<IdealPresentation>);

fn regions(spec: &RegionSpec<'_>, size: usize) -> Regions {
    let h = spec.chain.len() - 2;
    let band = spec.band;
    let mut q = Vec::new();
    let mut qp = Vec::new();
    for i in 1..=h + 1 {
        let a = spec.chain[i - 1].row;
        let rows = a..=a + band - 1;
        let mut region: BTreeSet<Cell> = spec.cells.iter().filter(|c| rows.contains(&c.row)).copied().collect();
        if i > 1 && spec.lower_types[i - 2] == CornerType::Two {
            let cap = match spec.companions[i - 2].for_rows {
                Some(u) => u.col,
                None => full_band_col_max(spec.cells, rows.clone()).unwrap_or(i32::MIN),
            };
            region.retain(|c| c.col <= cap);
        }
        q.push(IdealPresentation::build(IdealLabel::Q(i), region, size));

        let b = spec.chain[i].col;
        let cols = b..=b + band - 1;
        let mut region: BTreeSet<Cell> = spec.cells.iter().filter(|c| cols.contains(&c.col)).copied().collect();
        if i <= h && spec.lower_types[i - 1] == CornerType::Two {
            let cap = match spec.companions[i - 1].for_cols {
                Some(u) => u.row,
                None => full_band_row_max(spec.cells, cols.clone()).unwrap_or(i32::MIN),
            };
            region.retain(|c| c.row <= cap);
        }
        qp.push(IdealPresentation::build(IdealLabel::QPrime(i), region, size));
    }
    let mut p = Vec::new();
    for (j, (&corner, &ty)) in spec.upper.iter().zip(&spec.upper_types).enumerate() {
        let region = if ty == CornerType::One {
            spec.cells.iter().filter(|c| c.northwest_of(corner)).copied().collect()
        } else {
            BTreeSet::new()
        };
        p.push(IdealPresentation::build(IdealLabel::P(j + 1), region, size));
    }
    (q, qp, p)
}

fn classified(y: &Ladder, t: usize) -> Result<CornerProfile> {
    classify_corners(y, t, &corner_profile(y)?)
}

fn type_lists(profile: &CornerProfile) -> Result<(Vec<CornerType>, Vec<CornerType>)> {
    let types = profile.types()?;
    Ok((types.lower.iter().map(|c| c.kind).collect(), types.upper.iter().map(|c| c.kind).collect()))
}

/// `I_t(Y)` with the primes `q_i`, `q'_i` and `p_j` of a path-connected ladder.
pub fn ladder_ideals(y: &Ladder, t: usize) -> Result<LadderIdeals> {
    let profile = classified(y, t)?;
    let (lower_types, upper_types) = type_lists(&profile)?;
    let spec = RegionSpec {
        cells: y.cells(),
        chain: &profile.lower_chain,
        upper: profile.inside_upper(),
        lower_types,
        upper_types,
        companions: companions(&profile, t),
        band: t as i32 - 1,
    };
    let (q, q_prime, p) = regions(&spec, t - 1);
    let generators = minor_supports(y, t, SUPPORT_CAP)?
        .into_iter()
        .map(|support| {
            let poly = generic_minor(&Rationals, &support);
            Generator { support, poly }
        })
        .collect();
    let determinantal =
        IdealPresentation { label: IdealLabel::Determinantal, minor_size: t, region: y.cells().clone(), generators };
    Ok(LadderIdeals { t, determinantal, q, q_prime, p })
}

/// The same family for `Z = Y \ B_1` with minors of size `t-1`, numbered and
/// typed by the corners of `Y`.
pub fn residual_ideals(y: &Ladder, t: usize) -> Result<LadderIdeals> {
    let z = construct_z(y, t)?;
    let profile = classified(y, t)?;
    let (lower_types, upper_types) = type_lists(&profile)?;
    let chain = profile.shifted_lower_chain();
    let spec = RegionSpec {
        cells: z.cells(),
        chain: &chain,
        upper: profile.inside_upper(),
        lower_types,
        upper_types,
        companions: companions(&profile, t),
        band: t as i32 - 2,
    };
    let (q, q_prime, p) = regions(&spec, t - 2);
    let generators = minor_supports(&z, t - 1, SUPPORT_CAP)?
        .into_iter()
        .map(|support| {
            let poly = generic_minor(&Rationals, &support);
            Generator { support, poly }
        })
        .collect();
    let determinantal = IdealPresentation {
        label: IdealLabel::Determinantal,
        minor_size: t - 1,
        region: z.cells().clone(),
        generators,
    };
    Ok(LadderIdeals { t: t - 1, determinantal, q, q_prime, p })
}

/// The `(t-1)`-minors based at the outside corners and the product of the
/// outside lower corner variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutsideCornerElements {
    /// `F_i`, with `S_i` as northwest corner.
    pub f: Vec<Generator>,
    /// `G_j`, with `T_j` as southeast corner.
    pub g: Vec<Generator>,
    pub f_product: Polynomial,
    pub g_product: Polynomial,
    pub corner_variables: Vec<Variable>,
    pub corner_monomial: Monomial,
}

pub fn outside_corner_elements(y: &Ladder, t: usize) -> Result<OutsideCornerElements> {
    let ideals = ladder_ideals(y, t)?;
    let profile = corner_profile(y)?;
    let s = t - 1;
    let mut f = Vec::new();
    for (i, &corner) in profile.outside_lower.iter().enumerate() {
        let support = MinorSupport::block(corner, s);
        let poly = minor(y, &support)?;
        let in_both = [&ideals.q[i], &ideals.q_prime[i]]
            .iter()
            .all(|ideal| ideal.generators.iter().any(|g| g.support == support));
        if !in_both {
            return Err(Error::Internal(format!("F_{} is not a generator of q_{0} and q'_{0}", i + 1)));
        }
        f.push(Generator { support, poly });
    }
    let mut g = Vec::new();
    for &corner in &profile.outside_upper {
        let off = 1 - s as i32;
        let support = MinorSupport::block(corner.offset(off, off), s);
        let poly = minor(y, &support)?;
        g.push(Generator { support, poly });
    }
    let product = |v: &[Generator]| v.iter().fold(Polynomial::one(Rationals), |acc, x| &acc * &x.poly);
    let corner_variables: Vec<Variable> = profile.outside_lower.iter().map(|&c| Variable::from(c)).collect();
    let corner_monomial = Monomial::from_pairs(corner_variables.iter().map(|&v| (v, 1)));
    Ok(OutsideCornerElements { f_product: product(&f), g_product: product(&g), f, g, corner_variables, corner_monomial })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MembershipMode {
    /// Reduce by the generators as given; sound when they are a Gröbner basis.
    #[default]
    AssumedGb,
    /// Complete to a Gröbner basis first.
    Buchberger,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MembershipVerdict {
    Member,
    NonMember,
    Inconclusive,
}

#[derive(Debug, Clone)]
pub struct MembershipCertificate {
    pub verdict: MembershipVerdict,
    pub mode: MembershipMode,
    pub order: TermOrder,
    pub generator_count: usize,
    pub basis_size: usize,
    pub pairs_considered: usize,
    /// Coefficients over the input generators, when requested.
    pub cofactors: Option<Vec<Polynomial>>,
    pub remainder: Option<Polynomial>,
    pub cap_hit: Option<CapHit>,
}

/// Prepared membership test against one ideal.
pub struct IdealMembership {
    mode: MembershipMode,
    order: TermOrder,
    generators: Vec<Polynomial>,
    basis: std::result::Result<(Vec<Polynomial>, Option<Vec<Vec<Polynomial>>>, usize), CapHit>,
}

impl IdealMembership {
    pub fn new(
        generators: Vec<Polynomial>,
        mode: MembershipMode,
        order: TermOrder,
        caps: GroebnerCaps,
        track_cofactors: bool,
    ) -> Self {
        let basis = match mode {
            MembershipMode::AssumedGb => {
                let reps = track_cofactors.then(|| {
                    (0..generators.len())
                        .map(|i| {
                            (0..generators.len())
                                .map(|j| if i == j { Polynomial::one(Rationals) } else { Polynomial::zero(Rationals) })
                                .collect()
                        })
                        .collect()
                });
                Ok((generators.clone(), reps, 0))
            }
            MembershipMode::Buchberger => buchberger(&generators, order, caps, track_cofactors)
                .map(|gb| (gb.basis, gb.representation, gb.pairs_considered)),
        };
        IdealMembership { mode, order, generators, basis }
    }

    pub fn test(&self, p: &Polynomial) -> MembershipCertificate {
        let (basis, reps, pairs) = match &self.basis {
            Ok(b) => b,
            Err(hit) => {
                return MembershipCertificate {
                    verdict: MembershipVerdict::Inconclusive,
                    mode: self.mode,
                    order: self.order,
                    generator_count: self.generators.len(),
                    basis_size: 0,
                    pairs_considered: hit.pairs_considered,
                    cofactors: None,
                    remainder: None,
                    cap_hit: Some(hit.clone()),
                }
            }
        };
        let nf = normal_form(p, basis, self.order);
        let verdict =
            if nf.remainder.is_zero() { MembershipVerdict::Member } else { MembershipVerdict::NonMember };
        let cofactors = reps.as_ref().filter(|_| verdict == MembershipVerdict::Member).map(|reps| {
            let mut out = vec![Polynomial::zero(Rationals); self.generators.len()];
            for (q, rep) in nf.cofactors.iter().zip(reps) {
                if q.is_zero() {
                    continue;
                }
                for (slot, r) in out.iter_mut().zip(rep) {
                    if !r.is_zero() {
                        *slot = &*slot + &(q * r);
                    }
                }
            }
            let mut acc = Polynomial::zero(Rationals);
            for (c, g) in out.iter().zip(&self.generators) {
                acc = &acc + &(c * g);
            }
            assert_eq!(&acc, p, "membership cofactors do not recombine");
            out
        });
        MembershipCertificate {
            verdict,
            mode: self.mode,
            order: self.order,
            generator_count: self.generators.len(),
            basis_size: basis.len(),
            pairs_considered: *pairs,
            cofactors,
            remainder: (verdict == MembershipVerdict::NonMember).then_some(nf.remainder),
            cap_hit: None,
        }
    }
}

pub fn membership(
    p: &Polynomial,
    generators: &[Polynomial],
    mode: MembershipMode,
    caps: GroebnerCaps,
    want_cofactors: bool,
) -> MembershipCertificate {
    IdealMembership::new(generators.to_vec(), mode, TermOrder::Diagonal, caps, want_cofactors).test(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::fixtures;

    fn region(v: &[(i32, i32, i32)]) -> BTreeSet<Cell> {
        v.iter().flat_map(|&(r, c0, c1)| (c0..=c1).map(move |c| Cell::new(r, c))).collect()
    }

    #[test]
    fn table_of_q_regions() {
        let y = fixtures::l1();
        let ideals = ladder_ideals(&y, 3).unwrap();
        assert_eq!(ideals.q[0].region, region(&[(1, 3, 5), (2, 3, 5)]));
        assert_eq!(ideals.q[1].region, region(&[(3, 1, 5), (4, 1, 5)]));
        let z = residual_ideals(&y, 3).unwrap();
        assert_eq!(z.q[0].region, region(&[(2, 4, 5)]));
        assert_eq!(z.q[1].region, region(&[(4, 2, 5)]));

        let ideals = ladder_ideals(&fixtures::l2(), 3).unwrap();
        assert_eq!(ideals.q[1].region, region(&[(3, 1, 4), (4, 1, 4)]));
        let z = residual_ideals(&fixtures::l2(), 3).unwrap();
        assert_eq!(z.q[1].region, region(&[(4, 2, 4)]));

        let ideals = ladder_ideals(&fixtures::l4(), 3).unwrap();
        assert_eq!(ideals.q[1].region, region(&[(3, 1, 3), (4, 1, 3)]));
        let z = residual_ideals(&fixtures::l4(), 3).unwrap();
        assert_eq!(z.q[1].region, region(&[(4, 2, 3)]));
    }

    #[test]
    fn column_primes_stop_at_the_companion_row() {
        let y = fixtures::l2();
        let ideals = ladder_ideals(&y, 3).unwrap();
        assert_eq!(ideals.q_prime[0].region, region(&[(1, 3, 4), (2, 3, 4), (3, 3, 4)]));
        let below: BTreeSet<Cell> = y.cells().iter().filter(|c| c.northwest_of(Cell::new(3, 4))).copied().collect();
        let supports: Vec<_> = ideals.q_prime[0].generators.iter().map(|g| g.support.clone()).collect();
        assert_eq!(supports, supports_within(&below, 2));
        let z = residual_ideals(&y, 3).unwrap();
        assert_eq!(z.q_prime[0].region, region(&[(2, 4, 4), (3, 4, 4)]));
    }

    #[test]
    fn table_of_p_regions() {
        let ideals = ladder_ideals(&fixtures::l1(), 3).unwrap();
        assert_eq!(ideals.p[0].region, region(&[(1, 3, 4), (2, 3, 4), (3, 1, 4), (4, 1, 4)]));
        let z = residual_ideals(&fixtures::l1(), 3).unwrap();
        assert_eq!(z.p[0].region, region(&[(2, 4, 4), (3, 4, 4), (4, 2, 4)]));
        let z = residual_ideals(&fixtures::l3(), 3).unwrap();
        assert_eq!(z.p[0].region, region(&[(2, 4, 4), (3, 4, 4), (4, 2, 4), (5, 2, 4)]));
        for y in [fixtures::l2(), fixtures::l4()] {
            assert!(ladder_ideals(&y, 3).unwrap().p[0].is_zero());
        }
    }

    #[test]
    fn residual_generators_are_variables_at_three() {
        let z = residual_ideals(&fixtures::l1(), 3).unwrap();
        let vars: Vec<String> = z.q[0].generators.iter().map(|g| g.poly.to_string()).collect();
        assert_eq!(vars, vec!["X24", "X25"]);
    }

    #[test]
    fn minor_rejects_outside_support() {
        let y = fixtures::l1();
        let bad = MinorSupport::new(vec![1, 2], vec![1, 2]);
        assert!(matches!(minor(&y, &bad), Err(Error::SupportNotInLadder { .. })));
        let ok = MinorSupport::new(vec![1, 3], vec![3, 5]);
        assert_eq!(minor(&y, &ok).unwrap().to_string(), "X13*X35 - X15*X33");
    }

    #[test]
    fn outside_corner_minors_of_l1() {
        let e = outside_corner_elements(&fixtures::l1(), 3).unwrap();
        assert_eq!(e.f[0].support, MinorSupport::new(vec![1, 2], vec![3, 4]));
        assert_eq!(e.f[1].support, MinorSupport::new(vec![3, 4], vec![1, 2]));
        assert_eq!(e.g[0].support, MinorSupport::new(vec![3, 4], vec![4, 5]));
        assert_eq!(e.corner_monomial.to_string(), "X13*X31");
    }

    #[test]
    fn membership_modes() {
        let y = Ladder::rectangle(2, 3);
        let gens: Vec<Polynomial> =
            minor_supports(&y, 2, 100).unwrap().iter().map(|s| minor(&y, s).unwrap()).collect();
        let x = |r, c| Polynomial::var(Rationals, Variable::new(r, c));
        let p = &(&x(1, 1) * &gens[2]) - &(&x(2, 3) * &gens[0]);
        for mode in [MembershipMode::AssumedGb, MembershipMode::Buchberger] {
            let cert = membership(&p, &gens, mode, GroebnerCaps::default(), true);
            assert_eq!(cert.verdict, MembershipVerdict::Member);
            assert!(cert.cofactors.is_some());
            let cert = membership(&x(1, 1), &gens, mode, GroebnerCaps::default(), false);
            assert_eq!(cert.verdict, MembershipVerdict::NonMember);
        }
    }
}
