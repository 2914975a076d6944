use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ladder::{
    assumption_d, classify_corners, corner_profile, decompose, t_components, Cell, ComponentKind, CornerProfile,
    CornerType, Decomposition, Ladder,
};

/// What is known about the coefficient ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientDescriptor {
    pub name: String,
    pub cl_free_rank: usize,
    pub cl_invariant_factors: Vec<u64>,
    pub s0_labels: Vec<String>,
}

impl Default for CoefficientDescriptor {
    fn default() -> Self {
        CoefficientDescriptor {
            name: "field".into(),
            cl_free_rank: 0,
            cl_invariant_factors: Vec::new(),
            s0_labels: vec!["R".into()],
        }
    }
}

impl CoefficientDescriptor {
    pub fn from_json(text: &str) -> Result<Self> {
        let d: CoefficientDescriptor =
            serde_json::from_str(text).map_err(|e| Error::InvalidDescriptor(e.to_string()))?;
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(bad) = self.cl_invariant_factors.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidDescriptor(format!("invariant factor {bad} is below 2")));
        }
        if self.s0_labels.is_empty() {
            return Err(Error::InvalidDescriptor("s0_labels must contain at least the ring itself".into()));
        }
        let distinct: BTreeSet<&String> = self.s0_labels.iter().collect();
        if distinct.len() != self.s0_labels.len() {
            return Err(Error::InvalidDescriptor("s0_labels must be distinct".into()));
        }
        Ok(())
    }
}

/// `Z^free_rank` plus cyclic torsion in invariant factor form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub invariant_factors: Vec<u64>,
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl AbelianGroup {
    /// Normalizes any list of cyclic orders so each factor divides the next.
    pub fn new(free_rank: usize, cyclic: &[u64]) -> Self {
        let mut powers: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &d in cyclic {
            for (p, e) in factorize(d) {
                powers.entry(p).or_default().push(e);
            }
        }
        let len = powers.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for (p, mut es) in powers {
            es.sort_unstable();
            let offset = len - es.len();
            for (k, e) in es.into_iter().enumerate() {
                factors[offset + k] *= p.pow(e);
            }
        }
        factors.retain(|&d| d > 1);
        AbelianGroup { free_rank, invariant_factors: factors }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let cyclic: Vec<u64> = self.invariant_factors.iter().chain(&other.invariant_factors).copied().collect();
        AbelianGroup::new(self.free_rank + other.free_rank, &cyclic)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisElement {
    pub label: String,
    pub corner: Cell,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentClassGroup {
    pub component: usize,
    pub first_cell: Cell,
    pub h: usize,
    pub k: usize,
    pub h_star: usize,
    pub k_star: usize,
    pub rank: usize,
    pub basis: Vec<BasisElement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassGroupReport {
    pub t: usize,
    pub components: Vec<ComponentClassGroup>,
    pub free_cells: usize,
    pub ladder_rank: usize,
    pub coefficient_group: AbelianGroup,
    pub total: AbelianGroup,
    pub is_ufd: bool,
}

fn connected_profiles(y: &Ladder, t: usize) -> Result<(Vec<(Ladder, CornerProfile)>, usize)> {
    let mut out = Vec::new();
    let mut free = 0;
    for tc in t_components(y, t)? {
        match tc.kind {
            ComponentKind::Free => free += 1,
            ComponentKind::Connected => {
                let p = classify_corners(&tc.ladder, t, &corner_profile(&tc.ladder)?)?;
                out.push((tc.ladder, p));
            }
        }
    }
    Ok((out, free))
}

pub fn class_group(y: &Ladder, t: usize, coeff: &CoefficientDescriptor) -> Result<ClassGroupReport> {
    coeff.validate()?;
    let (comps, free_cells) = connected_profiles(y, t)?;
    let mut components = Vec::new();
    for (i, (ladder, p)) in comps.iter().enumerate() {
        let types = p.types()?;
        let mut basis: Vec<BasisElement> = p
            .outside_lower
            .iter()
            .enumerate()
            .map(|(k, &c)| BasisElement { label: format!("q{}", k + 1), corner: c })
            .collect();
        for (j, u) in types.upper.iter().enumerate() {
            if u.kind == CornerType::One {
                basis.push(BasisElement { label: format!("p{}", j + 1), corner: u.cell });
            }
        }
        components.push(ComponentClassGroup {
            component: i,
            first_cell: *ladder.cells().iter().next().unwrap(),
            h: p.h,
            k: p.k,
            h_star: types.h_star,
            k_star: types.k_star,
            rank: p.h + types.k_star + 1,
            basis,
        });
    }
    let ladder_rank = components.iter().map(|c| c.rank).sum();
    let coefficient_group = AbelianGroup::new(coeff.cl_free_rank, &coeff.cl_invariant_factors);
    let total = coefficient_group.direct_sum(&AbelianGroup::new(ladder_rank, &[]));
    Ok(ClassGroupReport { t, components, free_cells, ladder_rank, coefficient_group, is_ufd: total.is_trivial(), total })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankCheck {
    pub component: usize,
    pub h: usize,
    pub k: usize,
    pub h_star: usize,
    pub k_star: usize,
    pub holds: bool,
}

/// `h + k* = h* + k` on every connected t-component.
pub fn rank_consistency(y: &Ladder, t: usize) -> Result<Vec<RankCheck>> {
    let (comps, _) = connected_profiles(y, t)?;
    comps
        .iter()
        .enumerate()
        .map(|(i, (_, p))| {
            let ty = p.types()?;
            Ok(RankCheck {
                component: i,
                h: p.h,
                k: p.k,
                h_star: ty.h_star,
                k_star: ty.k_star,
                holds: p.h + ty.k_star == ty.h_star + p.k,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaEntry {
    pub j: usize,
    pub corner: Cell,
    pub i_index: usize,
    pub value: i64,
}

/// Coordinates of the canonical class in the basis `q_1..q_{h+1}` and the
/// `p_j` of type 1 upper inside corners.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalClass {
    pub t: usize,
    pub lambda: Vec<i64>,
    pub delta: Vec<DeltaEntry>,
}

impl CanonicalClass {
    pub fn is_zero(&self) -> bool {
        self.lambda.iter().all(|&l| l == 0) && self.delta.iter().all(|d| d.value == 0)
    }
}

/// Canonical class of a t-connected ladder satisfying assumption (d).
pub fn canonical_class_connected(y: &Ladder, t: usize) -> Result<CanonicalClass> {
    if t < 2 {
        return Err(Error::InvalidT { t, need: "t >= 2" });
    }
    let ad = assumption_d(y, t)?;
    if !ad.holds {
        return Err(Error::AssumptionDViolated(ad.violators));
    }
    let p = classify_corners(y, t, &corner_profile(y)?)?;
    let types = p.types()?;
    let s = |c: Cell| (c.row + c.col) as i64;
    let t2 = t as i64 - 2;
    let ch = &p.lower_chain;
    let h = p.h;
    let lambda: Vec<i64> = if h == 0 {
        vec![s(ch[1]) - s(ch[0])]
    } else {
        (1..=h + 1)
            .map(|i| {
                let base = s(ch[i]) - s(ch[i - 1]);
                match i {
                    1 => base + t2,
                    i if i == h + 1 => base - t2,
                    _ => base,
                }
            })
            .collect()
    };
    let mut delta = Vec::new();
    for (j, u) in types.upper.iter().enumerate() {
        if u.kind != CornerType::One {
            continue;
        }
        let i = (1..=h + 1).find(|&i| ch[i].row as i64 + t2 > u.cell.row as i64).ok_or(Error::NoSuchIndex(u.cell))?;
        // The last chain entry is shifted in one coordinate only under the residual map.
        let tail = if i == h + 1 { t2 } else { 0 };
        delta.push(DeltaEntry { j: j + 1, corner: u.cell, i_index: i, value: s(ch[i]) + 2 * t2 - tail - s(u.cell) });
    }
    Ok(CanonicalClass { t, lambda, delta })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentCanonical {
    pub component: usize,
    pub first_cell: Cell,
    pub class: CanonicalClass,
    pub gorenstein: bool,
}

/// Canonical class of every connected t-component.
pub fn canonical_class(y: &Ladder, t: usize) -> Result<Vec<ComponentCanonical>> {
    let mut out = Vec::new();
    for tc in t_components(y, t)?.into_iter().filter(|c| c.kind == ComponentKind::Connected) {
        let class = canonical_class_connected(&tc.ladder, t)?;
        out.push(ComponentCanonical {
            component: out.len(),
            first_cell: *tc.ladder.cells().iter().next().unwrap(),
            gorenstein: class.is_zero(),
            class,
        });
    }
    Ok(out)
}

/// A piece is Gorenstein when each of its connected t-components has zero
/// canonical class.
pub fn piece_is_gorenstein(piece: &Ladder, t: usize) -> Result<bool> {
    for c in canonical_class(piece, t)? {
        if !c.gorenstein {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PieceSummary {
    pub id: usize,
    pub component: usize,
    pub rows: (i32, i32),
    pub cols: (i32, i32),
    pub cells: usize,
    pub rectangle: bool,
    pub gorenstein: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GorensteinReport {
    pub t: usize,
    pub gorenstein: bool,
    pub pieces: Vec<PieceSummary>,
}

fn summaries(d: &Decomposition) -> Result<Vec<PieceSummary>> {
    d.pieces
        .iter()
        .map(|p| {
            Ok(PieceSummary {
                id: p.id,
                component: p.component,
                rows: p.ladder.row_range(),
                cols: p.ladder.col_range(),
                cells: p.ladder.len(),
                rectangle: p.ladder.is_rectangle(),
                gorenstein: piece_is_gorenstein(&p.ladder, d.t)?,
            })
        })
        .collect()
}

pub fn is_gorenstein(y: &Ladder, t: usize) -> Result<GorensteinReport> {
    let d = decompose(y, t)?;
    let pieces = summaries(&d)?;
    Ok(GorensteinReport { t, gorenstein: pieces.iter().all(|p| p.gorenstein), pieces })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusElement {
    pub label: String,
    /// One entry per non-Gorenstein piece, in piece order.
    pub theta: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemidualizingCensus {
    pub t: usize,
    pub coefficient: String,
    pub pieces: Vec<PieceSummary>,
    pub e: usize,
    pub s0_size: usize,
    pub count: u64,
    pub elements: Vec<CensusElement>,
}

const MAX_CENSUS_EXPONENT: usize = 20;

pub fn semidualizing_census(y: &Ladder, t: usize, coeff: &CoefficientDescriptor) -> Result<SemidualizingCensus> {
    coeff.validate()?;
    let d = decompose(y, t)?;
    let pieces = summaries(&d)?;
    let e = pieces.iter().filter(|p| !p.gorenstein).count();
    if e > MAX_CENSUS_EXPONENT {
        return Err(Error::CapExceeded { what: "non-Gorenstein pieces in census", cap: MAX_CENSUS_EXPONENT });
    }
    let mut elements = Vec::new();
    for label in &coeff.s0_labels {
        for mask in 0u64..(1 << e) {
            elements.push(CensusElement { label: label.clone(), theta: (0..e).map(|b| mask >> b & 1 == 1).collect() });
        }
    }
    let count = coeff.s0_labels.len() as u64 * (1u64 << e);
    debug_assert_eq!(count as usize, elements.len());
    Ok(SemidualizingCensus {
        t,
        coefficient: coeff.name.clone(),
        pieces,
        e,
        s0_size: coeff.s0_labels.len(),
        count,
        elements,
    })
}
