use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{verify_correspondence, verify_decomposition, verify_inverse_seeded, verify_residual_canonical};
use super::{CorrespondenceOptions, Verdict, VerificationReport};
use crate::error::{Error, Result};
use crate::generate::{disjoint_union, random_ladder};
use crate::ideals::{ladder_ideals, residual_ideals, IdealPresentation, MembershipMode};
use crate::invariants::{canonical_class, canonical_class_connected, class_group, is_gorenstein, semidualizing_census, CoefficientDescriptor};
use crate::io::fixtures;
use crate::ladder::{
    assumption_d, classify_corners, construct_z, corner_profile, decompose, is_t_connected, supports_within, t_components,
    Cell, ComponentKind, CornerType, Ladder, MinorSupport,
};
use crate::poly::{bareiss_det, cofactor_det, GroebnerCaps, LocalizedElement, Monomial, Polynomial, PrimeField, Rationals, Variable, DEFAULT_PRIME};
use crate::psi::{Direction, PsiChi, DEFAULT_MAX_CELLS};

#[derive(Debug, Clone, Copy)]
pub struct SuiteCaps {
    pub groebner: GroebnerCaps,
    pub sweep: usize,
    pub random_inverse: usize,
    pub determinants: usize,
    pub max_side: i32,
}

impl Default for SuiteCaps {
    fn default() -> Self {
        SuiteCaps { groebner: GroebnerCaps::default(), sweep: 500, random_inverse: 100, determinants: 200, max_side: 8 }
    }
}

type Check = std::result::Result<Value, Value>;

fn report(id: &str, instance: &str, run: impl FnOnce() -> Result<Check>) -> VerificationReport {
    let start = Instant::now();
    let (verdict, witness) = match run() {
        Ok(Ok(w)) => (Verdict::Pass, w),
        Ok(Err(w)) => (Verdict::Fail, w),
        Err(e @ Error::CapExceeded { .. }) => (Verdict::Inconclusive, json!({ "error": e.to_string() })),
        Err(e) => (Verdict::Fail, json!({ "error": e.to_string() })),
    };
    VerificationReport::new(id, instance.to_string(), verdict, Some(witness), start)
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> std::result::Result<(), Value> {
    if got == want {
        Ok(())
    } else {
        Err(json!({ "check": what, "got": format!("{got:?}"), "want": format!("{want:?}") }))
    }
}

macro_rules! check {
    ($e:expr) => {
        if let Err(w) = $e {
            return Ok(Err(w));
        }
    };
}

/// Runs every fixture criterion; seeded parts are reproducible from `seed`.
pub fn run_fixture_suite(seed: u64, caps: &SuiteCaps) -> Vec<VerificationReport> {
    vec![
        report("AC-1", "corner types of L1-L4 at t=3", corner_types),
        report("AC-2", "class groups of L1-L4 at t=3", class_groups),
        report("AC-3", "q and p generators of L1-L4 and their residual ladders", ideal_tables),
        report("AC-4", "residual ladder of L1", residual_l1),
        report("AC-5", "psi(X24), psi(X45) on L3", psi_values),
        report("AC-6", "inverse law on fixtures and random ladders", || inverse_law(seed, caps)),
        report("AC-7", "correspondence on L1 and full 4x4, completion mode", || correspondence(caps)),
        report("AC-8", "semidualizing census of L1-L4", census),
        report("AC-9", "Gorenstein rectangles up to 8x8", rectangles),
        report("AC-10", "decomposition of L1-L4", decompositions),
        report("AC-11", "property sweep over random ladders", || sweep(seed, caps)),
        report("AC-12", "determinants by elimination and by expansion", || determinants(seed, caps)),
        report("AC-13", "canonical class regression", canonical),
    ]
}

fn corner_types() -> Result<Check> {
    let want_upper = [(CornerType::One, true), (CornerType::Two, true), (CornerType::One, false), (CornerType::Two, true)];
    let mut lower = Vec::new();
    let mut k_star = Vec::new();
    let mut k_bullet = Vec::new();
    for (y, &wu) in fixtures::figure_ladders().iter().zip(&want_upper) {
        let p = classify_corners(y, 3, &corner_profile(y)?)?;
        let ty = p.types()?;
        check!(expect("S1'", ty.lower[0].cell, Cell::new(3, 3)));
        check!(expect("T1' type", (ty.upper[0].kind, ty.upper[0].type_1_1), wu));
        lower.push(ty.lower[0].kind);
        k_star.push(ty.k_star);
        k_bullet.push(ty.k_bullet);
    }
    use CornerType::{One, Two};
    check!(expect("S1' types", lower, vec![One, Two, One, Two]));
    check!(expect("k*", k_star.clone(), vec![1, 0, 1, 0]));
    check!(expect("k bullet", k_bullet.clone(), vec![1, 1, 0, 1]));
    Ok(Ok(json!({ "k_star": k_star, "k_bullet": k_bullet })))
}

fn class_groups() -> Result<Check> {
    let want_labels: [&[&str]; 4] = [&["q1", "q2", "p1"], &["q1", "q2"], &["q1", "q2", "p1"], &["q1", "q2"]];
    let z2 = CoefficientDescriptor {
        name: "Z/2 class group".into(),
        cl_free_rank: 0,
        cl_invariant_factors: vec![2],
        s0_labels: vec!["R".into()],
    };
    let mut totals = Vec::new();
    for (y, labels) in fixtures::figure_ladders().iter().zip(want_labels) {
        let r = class_group(y, 3, &CoefficientDescriptor::default())?;
        check!(expect("components", r.components.len(), 1));
        let got: Vec<&str> = r.components[0].basis.iter().map(|b| b.label.as_str()).collect();
        check!(expect("basis", got, labels.to_vec()));
        check!(expect("rank", r.ladder_rank, labels.len()));
        let r2 = class_group(y, 3, &z2)?;
        check!(expect("rank with torsion coefficients", r2.ladder_rank, r.ladder_rank));
        check!(expect("total", r2.total.to_string(), format!("Z/2 + Z^{}", labels.len())));
        totals.push(r2.total.to_string());
    }
    Ok(Ok(json!({ "totals": totals })))
}

fn band(rows: &[(i32, i32, i32)]) -> BTreeSet<Cell> {
    rows.iter().flat_map(|&(r, c0, c1)| (c0..=c1).map(move |c| Cell::new(r, c))).collect()
}

fn same_supports(what: &str, ideal: &IdealPresentation, region: &BTreeSet<Cell>) -> std::result::Result<(), Value> {
    let got: Vec<MinorSupport> = ideal.generators.iter().map(|g| g.support.clone()).collect();
    expect(what, got, supports_within(region, ideal.minor_size))
}

fn ideal_tables() -> Result<Check> {
    let q2_cols = [5, 4, 5, 3];
    let mut n = 0;
    for (k, y) in fixtures::figure_ladders().iter().enumerate() {
        let yi = ladder_ideals(y, 3)?;
        let zi = residual_ideals(y, 3)?;
        let c = q2_cols[k];
        check!(same_supports("q1", &yi.q[0], &band(&[(1, 3, 5), (2, 3, 5)])));
        check!(same_supports("q2", &yi.q[1], &band(&[(3, 1, c), (4, 1, c)])));
        check!(same_supports("Z q1", &zi.q[0], &band(&[(2, 4, 5)])));
        check!(same_supports("Z q2", &zi.q[1], &band(&[(4, 2, c)])));
        n += 4;
        match k {
            0 | 2 => {
                let last = if k == 0 { 4 } else { 5 };
                let mut py = band(&[(1, 3, 4), (2, 3, 4)]);
                let mut pz = band(&[(2, 4, 4), (3, 4, 4)]);
                for r in 3..=last {
                    py.extend(band(&[(r, 1, 4)]));
                    if r >= 4 {
                        pz.extend(band(&[(r, 2, 4)]));
                    }
                }
                check!(same_supports("p1", &yi.p[0], &py));
                check!(same_supports("Z p1", &zi.p[0], &pz));
            }
            _ => {
                check!(expect("p1 is zero", yi.p[0].is_zero(), true));
                check!(expect("Z p1 is zero", zi.p[0].is_zero(), true));
            }
        }
        n += 2;
    }
    Ok(Ok(json!({ "ideals_checked": n })))
}

fn residual_l1() -> Result<Check> {
    let y = fixtures::l1();
    let z = construct_z(&y, 3)?;
    let want = band(&[(2, 4, 5), (3, 4, 5), (4, 2, 5), (5, 2, 4)]);
    check!(expect("cells", z.cells().clone(), want));
    let chain = corner_profile(&z)?.lower_chain;
    check!(expect("chain", chain, vec![Cell::new(2, 5), Cell::new(4, 4), Cell::new(5, 2)]));
    Ok(Ok(json!({ "cells": z.len() })))
}

fn psi_values() -> Result<Check> {
    let m = PsiChi::new(&fixtures::l3(), 3, DEFAULT_MAX_CELLS)?;
    let x = |r, c| Polynomial::var(Rationals, Variable::new(r, c));
    let over = |num: Polynomial, den: &[(i32, i32)]| {
        LocalizedElement::new(num, Monomial::from_pairs(den.iter().map(|&(r, c)| (Variable::new(r, c), 1))))
    };
    let want24 = LocalizedElement::from_poly(x(2, 4)).add(&over(&x(1, 4) * &x(2, 3), &[(1, 3)]));
    let want45 = LocalizedElement::from_poly(x(4, 5))
        .add(&over(&x(1, 5) * &x(4, 3), &[(1, 3)]))
        .add(&over(&x(3, 5) * &x(4, 1), &[(3, 1)]))
        .add(&over(&(&x(1, 5) * &x(3, 3)) * &x(4, 1), &[(1, 3), (3, 1)]));
    let got24 = m.image(Direction::Psi, Variable::new(2, 4))?.clone();
    let got45 = m.image(Direction::Psi, Variable::new(4, 5))?.clone();
    check!(expect("psi(X24)", got24.to_string(), want24.to_string()));
    check!(expect("psi(X45)", got45.to_string(), want45.to_string()));
    Ok(Ok(json!({ "psi_X24": got24.to_string(), "psi_X45": got45.to_string() })))
}

fn random_t_connected(rng: &mut ChaCha8Rng, t: usize, side: i32) -> Result<Ladder> {
    loop {
        let y = random_ladder(rng, side, side);
        if is_t_connected(&y, t)? {
            return Ok(y);
        }
    }
}

fn inverse_law(seed: u64, caps: &SuiteCaps) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ladders: Vec<Ladder> = fixtures::figure_ladders().into_iter().collect();
    ladders.push(Ladder::rectangle(4, 4));
    for _ in 0..caps.random_inverse {
        ladders.push(random_t_connected(&mut rng, 3, caps.max_side)?);
    }
    for (k, y) in ladders.iter().enumerate() {
        let r = verify_inverse_seeded(y, 3, seed.wrapping_add(k as u64));
        if r.verdict != Verdict::Pass {
            return Ok(Err(json!({ "instance": r.instance, "witness": r.witness })));
        }
    }
    Ok(Ok(json!({ "ladders": ladders.len() })))
}

fn correspondence(caps: &SuiteCaps) -> Result<Check> {
    let opts = CorrespondenceOptions { mode: MembershipMode::Buchberger, caps: caps.groebner, ..Default::default() };
    let start = Instant::now();
    let mut out = Vec::new();
    for y in [fixtures::l1(), Ladder::rectangle(4, 4)] {
        let r = verify_correspondence(&y, 3, &opts);
        match r.verdict {
            Verdict::Pass => out.push(r.witness),
            Verdict::Fail => return Ok(Err(json!({ "instance": r.instance, "witness": r.witness }))),
            Verdict::Inconclusive => return Err(Error::CapExceeded { what: "groebner pairs", cap: caps.groebner.max_pairs }),
        }
    }
    check!(expect("under five minutes", start.elapsed() < Duration::from_secs(300), true));
    Ok(Ok(json!(out)))
}

fn census() -> Result<Check> {
    let three = CoefficientDescriptor {
        name: "three semidualizing modules".into(),
        cl_free_rank: 0,
        cl_invariant_factors: vec![],
        s0_labels: vec!["R".into(), "C".into(), "D".into()],
    };
    let mut counts = Vec::new();
    let mut scaled = Vec::new();
    for y in fixtures::figure_ladders() {
        counts.push(semidualizing_census(&y, 3, &CoefficientDescriptor::default())?.count);
        scaled.push(semidualizing_census(&y, 3, &three)?.count);
    }
    check!(expect("counts", counts.clone(), vec![4, 2, 2, 1]));
    check!(expect("scaled counts", scaled.clone(), vec![12, 6, 6, 3]));
    let flags: Vec<bool> = is_gorenstein(&fixtures::l2(), 3)?.pieces.iter().map(|p| p.gorenstein).collect();
    let mut sorted = flags.clone();
    sorted.sort();
    check!(expect("L2 piece flags", sorted, vec![false, true]));
    Ok(Ok(json!({ "counts": counts, "scaled": scaled, "l2_pieces": flags })))
}

fn rectangles() -> Result<Check> {
    let mut n = 0;
    for m in 2..=8 {
        for k in 2..=8 {
            for t in 2..=m.min(k) as usize {
                let g = is_gorenstein(&Ladder::rectangle(m, k), t)?.gorenstein;
                check!(expect(&format!("{m}x{k} t={t}"), g, m == k));
                n += 1;
            }
        }
    }
    Ok(Ok(json!({ "cases": n })))
}

fn rect(r0: i32, r1: i32, c0: i32, c1: i32) -> BTreeSet<Cell> {
    (r0..=r1).flat_map(|r| (c0..=c1).map(move |c| Cell::new(r, c))).collect()
}

fn decompositions() -> Result<Check> {
    let want: [(Ladder, Vec<BTreeSet<Cell>>, usize); 4] = [
        (fixtures::l1(), vec![rect(3, 5, 1, 4), rect(1, 4, 3, 5)], 4),
        (fixtures::l2(), vec![rect(3, 5, 1, 4), rect(1, 3, 3, 5)], 2),
        (fixtures::l3(), vec![fixtures::l3().cells().clone()], 0),
        (fixtures::l4(), vec![rect(3, 5, 1, 3), rect(1, 3, 3, 5)], 1),
    ];
    for (y, pieces, overlap) in want {
        let d = decompose(&y, 3)?;
        let got: Vec<BTreeSet<Cell>> = d.pieces.iter().map(|p| p.ladder.cells().clone()).collect();
        check!(expect("pieces", got, pieces));
        let r = verify_decomposition(&y, 3);
        if r.verdict != Verdict::Pass {
            return Ok(Err(json!({ "instance": r.instance, "witness": r.witness })));
        }
        check!(expect("overlap", r.witness.as_ref().map(|w| w["overlap_cells"].clone()), Some(json!(overlap))));
    }
    Ok(Ok(json!({ "ladders": 4 })))
}

/// Rank identity, (d) against k_bullet, residual canonical classes,
/// decomposition invariants and multiplicativity of the census.
pub(crate) fn sweep_one(y: &Ladder, t: usize, stats: &mut SweepStats) -> Result<std::result::Result<(), Value>> {
    let witness = |what: &str, extra: Value| {
        Err(json!({ "check": what, "t": t, "ladder": crate::io::serialize(y, crate::io::Format::Grid), "detail": extra }))
    };
    for tc in t_components(y, t)?.into_iter().filter(|c| c.kind == ComponentKind::Connected) {
        let c = &tc.ladder;
        let p = classify_corners(c, t, &corner_profile(c)?)?;
        let ty = p.types()?;
        if p.h + ty.k_star != ty.h_star + p.k {
            return Ok(witness("rank identity", json!([p.h, p.k, ty.h_star, ty.k_star])));
        }
        let d = assumption_d(c, t)?.holds;
        if d != (ty.k_bullet == 0) {
            stats.d_monitor_disagreements += 1;
            return Ok(witness("(d) iff k_bullet = 0", json!({ "d": d, "k_bullet": ty.k_bullet })));
        }
        if d && t == 3 {
            stats.residual_checked += 1;
            let r = verify_residual_canonical(c, t);
            if r.verdict != Verdict::Pass {
                return Ok(witness("residual canonical class", json!(r.witness)));
            }
        }
    }
    let r = verify_decomposition(y, t);
    if r.verdict != Verdict::Pass {
        return Ok(witness("decomposition", json!(r.witness)));
    }
    if canonical_class(y, t).is_ok() {
        stats.canonical_ok += 1;
    }
    Ok(Ok(()))
}

#[derive(Debug, Default)]
pub(crate) struct SweepStats {
    pub d_monitor_disagreements: usize,
    pub residual_checked: usize,
    pub canonical_ok: usize,
    pub unions: usize,
}

fn sweep(seed: u64, caps: &SuiteCaps) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut stats = SweepStats::default();
    let field = CoefficientDescriptor::default();
    let mut previous: Option<Ladder> = None;
    for k in 0..caps.sweep {
        let y = random_ladder(&mut rng, caps.max_side, caps.max_side);
        for t in [2, 3] {
            if let Err(w) = sweep_one(&y, t, &mut stats)? {
                return Ok(Err(json!({ "index": k, "seed": seed, "failure": w })));
            }
        }
        if let Some(x) = previous.take() {
            let u = disjoint_union(&x, &y);
            for t in [2, 3] {
                let a = semidualizing_census(&x, t, &field)?.count;
                let b = semidualizing_census(&y, t, &field)?.count;
                let ab = semidualizing_census(&u, t, &field)?.count;
                if ab != a * b {
                    return Ok(Err(json!({
                        "check": "census is multiplicative",
                        "t": t,
                        "first": crate::io::serialize(&x, crate::io::Format::Grid),
                        "second": crate::io::serialize(&y, crate::io::Format::Grid),
                        "counts": [a, b, ab],
                    })));
                }
            }
            stats.unions += 1;
        } else {
            previous = Some(y);
        }
    }
    Ok(Ok(json!({
        "ladders": caps.sweep,
        "residual_checked": stats.residual_checked,
        "canonical_defined": stats.canonical_ok,
        "unions": stats.unions,
    })))
}

fn determinants(seed: u64, caps: &SuiteCaps) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xde7);
    let fp = PrimeField::new(DEFAULT_PRIME).expect("prime");
    for k in 0..caps.determinants {
        let n = rng.gen_range(1..=6);
        let q: Vec<Vec<BigRational>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| BigRational::new(BigInt::from(rng.gen_range(-9i64..=9)), BigInt::from(rng.gen_range(1i64..=4))))
                    .collect()
            })
            .collect();
        if bareiss_det(&Rationals, &q) != cofactor_det(&Rationals, &q) {
            return Ok(Err(json!({ "field": "Q", "trial": k, "matrix": format!("{q:?}") })));
        }
        let p: Vec<Vec<u64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..fp.modulus())).collect()).collect();
        if bareiss_det(&fp, &p) != cofactor_det(&fp, &p) {
            return Ok(Err(json!({ "field": "F_p", "trial": k, "matrix": p })));
        }
    }
    Ok(Ok(json!({ "trials": caps.determinants })))
}

fn canonical() -> Result<Check> {
    let c = canonical_class_connected(&fixtures::l3(), 3)?;
    check!(expect("L3 lambda", c.lambda.clone(), vec![1, 0]));
    check!(expect("L3 delta", c.delta.iter().map(|d| d.value).collect::<Vec<_>>(), vec![-1]));
    let l1 = canonical_class_connected(&fixtures::l1(), 3);
    check!(expect("L1 violates (d)", matches!(l1, Err(Error::AssumptionDViolated(_))), true));
    for m in 2..=8 {
        for n in 2..=8 {
            for t in 2..=m.min(n) as usize {
                let c = canonical_class_connected(&Ladder::rectangle(m, n), t)?;
                check!(expect(&format!("{m}x{n} t={t}"), c.lambda, vec![(m - n) as i64]));
            }
        }
    }
    Ok(Ok(json!({ "l3_lambda": c.lambda })))
}
