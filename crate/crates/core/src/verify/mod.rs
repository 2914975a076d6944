//! Exact checks of the substitutions, the ideal correspondence and the
//! gluing decomposition, reported as verdicts.

mod suite;

pub use suite::{run_fixture_suite, SuiteCaps};

use std::collections::BTreeMap;
use std::time::Instant;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ideals::{
    generic_minor, ladder_ideals, residual_ideals, IdealLabel, IdealMembership, IdealPresentation, LadderIdeals,
    MembershipMode, MembershipVerdict,
};
use crate::io::serialize;
use crate::io::Format;
use crate::ladder::{assumption_d, construct_z, corner_profile, decompose, verify_decomposition_invariants, Cell, Ladder, MinorSupport};
use crate::poly::{
    GroebnerCaps, LocalizedElement, Monomial, Polynomial, PrimeField, Rationals, TermOrder, Variable, DEFAULT_PRIME,
};
use crate::psi::{Direction, PsiChi, DEFAULT_MAX_CELLS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub instance: String,
    pub verdict: Verdict,
    pub witness: Option<Value>,
    pub wall_time_ms: u64,
}

impl VerificationReport {
    fn new(check_id: &str, instance: String, verdict: Verdict, witness: Option<Value>, start: Instant) -> Self {
        assert!(verdict != Verdict::Fail || witness.is_some(), "a failure needs a witness");
        VerificationReport {
            check_id: check_id.to_string(),
            instance,
            verdict,
            witness,
            wall_time_ms: start.elapsed().as_millis() as u64,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Zeroes the timing so repeated runs compare equal.
    pub fn without_timing(mut self) -> Self {
        self.wall_time_ms = 0;
        self
    }
}

fn ladder_json(y: &Ladder) -> Value {
    json!(serialize(y, Format::Grid).lines().collect::<Vec<_>>())
}

fn instance(y: &Ladder, t: usize) -> String {
    format!("{} cells, t={t}: {}", y.len(), serialize(y, Format::Intervals))
}

fn error_report(check_id: &str, y: &Ladder, t: usize, e: Error, start: Instant) -> VerificationReport {
    let verdict = if matches!(e, Error::CapExceeded { .. }) { Verdict::Inconclusive } else { Verdict::Fail };
    let witness = json!({ "ladder": ladder_json(y), "t": t, "error": e.to_string() });
    VerificationReport::new(check_id, instance(y, t), verdict, Some(witness), start)
}

pub fn verify_inverse(y: &Ladder, t: usize) -> VerificationReport {
    verify_inverse_seeded(y, t, 0)
}

/// Exact check of both compositions on every variable, preceded by a
/// seeded evaluation over a prime field.
pub fn verify_inverse_seeded(y: &Ladder, t: usize, seed: u64) -> VerificationReport {
    let start = Instant::now();
    let maps = match PsiChi::new(y, t, DEFAULT_MAX_CELLS) {
        Ok(m) => m,
        Err(e) => return error_report("inverse", y, t, e, start),
    };
    let screen = prescreen(y, &maps, seed);
    for &c in y.cells() {
        let x = LocalizedElement::from_poly(Polynomial::var(Rationals, Variable::from(c)));
        for (first, second) in [(Direction::Psi, Direction::Chi), (Direction::Chi, Direction::Psi)] {
            let got = maps.apply(first, &x).and_then(|e| maps.apply(second, &e));
            let ok = matches!(&got, Ok(v) if *v == x);
            if !ok {
                let witness = json!({
                    "ladder": ladder_json(y),
                    "t": t,
                    "variable": Variable::from(c).to_string(),
                    "composition": format!("{second:?}({first:?}(x))").to_lowercase(),
                    "got": got.map(|v| v.to_string()).unwrap_or_else(|e| e.to_string()),
                });
                return VerificationReport::new("inverse", instance(y, t), Verdict::Fail, Some(witness), start);
            }
        }
    }
    if let Some(bad) = screen {
        let witness = json!({ "ladder": ladder_json(y), "t": t, "prescreen_disagrees_at": bad, "seed": seed });
        return VerificationReport::new("inverse", instance(y, t), Verdict::Fail, Some(witness), start);
    }
    let witness = json!({ "variables": y.len(), "prescreen_prime": DEFAULT_PRIME, "seed": seed });
    VerificationReport::new("inverse", instance(y, t), Verdict::Pass, Some(witness), start)
}

/// Evaluates `psi(chi(x))` and `chi(psi(x))` at a random point mod p.
/// Returns the first variable where a composition differs from the identity.
fn prescreen(y: &Ladder, maps: &PsiChi, seed: u64) -> Option<String> {
    let fp = PrimeField::new(DEFAULT_PRIME).expect("default modulus is prime");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let point: BTreeMap<Cell, u64> = y.cells().iter().map(|&c| (c, rng.gen_range(1..fp.modulus()))).collect();
    let reduce = |e: &LocalizedElement| -> Option<LocalizedElement<PrimeField>> {
        Some(LocalizedElement::new(e.numerator().to_prime_field(&fp)?, e.denominator().clone()))
    };
    for (first, second) in [(Direction::Psi, Direction::Chi), (Direction::Chi, Direction::Psi)] {
        let mut inner = BTreeMap::new();
        for &c in y.cells() {
            let e = reduce(maps.image(second, Variable::from(c)).ok()?)?;
            inner.insert(c, e.evaluate(|v| point[&v.cell()])?);
        }
        for &c in y.cells() {
            let e = reduce(maps.image(first, Variable::from(c)).ok()?)?;
            if e.evaluate(|v| inner[&v.cell()])? != point[&c] {
                return Some(Variable::from(c).to_string());
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy)]
pub struct CorrespondenceOptions {
    pub mode: MembershipMode,
    pub caps: GroebnerCaps,
    pub order: TermOrder,
    /// Completion is used only up to this many cells and with `t` equal to
    /// `buchberger_t`; larger instances fall back to reduction by the given
    /// generators.
    pub buchberger_max_cells: usize,
    pub buchberger_t: usize,
    pub max_cells: usize,
    /// Index of a generator of the residual determinantal ideal to leave out.
    pub drop_z_generator: Option<usize>,
}

impl Default for CorrespondenceOptions {
    fn default() -> Self {
        CorrespondenceOptions {
            mode: MembershipMode::Buchberger,
            caps: GroebnerCaps::default(),
            order: TermOrder::Diagonal,
            buchberger_max_cells: 25,
            buchberger_t: 3,
            max_cells: DEFAULT_MAX_CELLS,
            drop_z_generator: None,
        }
    }
}

/// Membership in one ideal, by reduction against the completed basis or,
/// in assumed mode, against the generators themselves.
struct Target {
    test: IdealMembership,
}

enum Outcome {
    Member,
    NonMember(Polynomial),
    Capped(String),
}

impl Target {
    fn new(gens: Vec<Polynomial>, mode: MembershipMode, opts: &CorrespondenceOptions, tally: &mut Tally) -> Self {
        let test = IdealMembership::new(gens, mode, opts.order, opts.caps, false);
        tally.bases += 1;
        Target { test }
    }

    fn test(&self, p: &Polynomial, tally: &mut Tally) -> Outcome {
        let cert = self.test.test(p);
        tally.max_basis = tally.max_basis.max(cert.basis_size);
        tally.max_pairs = tally.max_pairs.max(cert.pairs_considered);
        match cert.verdict {
            MembershipVerdict::Member => Outcome::Member,
            MembershipVerdict::NonMember => Outcome::NonMember(cert.remainder.unwrap_or_else(|| p.clone())),
            MembershipVerdict::Inconclusive => {
                let hit = cert.cap_hit.map(|h| h.what).unwrap_or("cap");
                Outcome::Capped(format!("{hit} after {} pairs", cert.pairs_considered))
            }
        }
    }
}

#[derive(Default, Serialize)]
struct Tally {
    bases: usize,
    max_basis: usize,
    max_pairs: usize,
    forward: usize,
    reverse: usize,
    divisibility: usize,
    pairs: Vec<String>,
    inconclusive: Vec<String>,
}

/// Forward images of the ladder side and reverse images of the residual
/// side for `I`, every `Q_i`, `Q'_i` and nonzero `P_j`, plus the corner
/// factorization of minors rooted at outside lower corners.
pub fn verify_correspondence(y: &Ladder, t: usize, opts: &CorrespondenceOptions) -> VerificationReport {
    let start = Instant::now();
    match correspondence(y, t, opts, start) {
        Ok(r) => r,
        Err(e) => error_report("correspondence", y, t, e, start),
    }
}

fn correspondence(y: &Ladder, t: usize, opts: &CorrespondenceOptions, start: Instant) -> Result<VerificationReport> {
    let maps = PsiChi::new(y, t, opts.max_cells)?;
    let mode = if opts.mode == MembershipMode::Buchberger
        && (y.len() > opts.buchberger_max_cells || t != opts.buchberger_t)
    {
        MembershipMode::AssumedGb
    } else {
        opts.mode
    };
    let label = match mode {
        MembershipMode::Buchberger => "buchberger",
        MembershipMode::AssumedGb => "assumed_gb",
    };
    let inst = format!("{} [{label}]", instance(y, t));
    let yi = ladder_ideals(y, t)?;
    let mut zi = residual_ideals(y, t)?;
    if let Some(k) = opts.drop_z_generator {
        if k < zi.determinantal.generators.len() {
            zi.determinantal.generators.remove(k);
        }
    }
    let pairs = paired(&yi, &zi);
    let mut tally = Tally::default();
    let fail = |dir: &str, lab: &IdealLabel, support: &MinorSupport, image: &LocalizedElement, rem: &Polynomial| {
        json!({
            "ladder": ladder_json(y),
            "t": t,
            "mode": label,
            "direction": dir,
            "ideal": lab.to_string(),
            "generator": support.to_string(),
            "image": image.to_string(),
            "remainder": rem.to_string(),
        })
    };
    for (ylab, ys, zs) in &pairs {
        tally.pairs.push(ylab.to_string());
        let z_target = Target::new(zi.preimage(zs), mode, opts, &mut tally);
        for g in &ys.generators {
            let image = maps.apply_poly(Direction::Psi, &g.poly)?;
            match z_target.test(image.numerator(), &mut tally) {
                Outcome::Member => tally.forward += 1,
                Outcome::NonMember(rem) => {
                    let w = fail("forward", ylab, &g.support, &image, &rem);
                    return Ok(VerificationReport::new("correspondence", inst, Verdict::Fail, Some(w), start));
                }
                Outcome::Capped(why) => tally.inconclusive.push(format!("forward {ylab} {}: {why}", g.support)),
            }
        }
        let y_target = Target::new(yi.preimage(ys), mode, opts, &mut tally);
        for g in &zs.generators {
            let image = maps.apply_poly(Direction::Chi, &g.poly)?;
            match y_target.test(image.numerator(), &mut tally) {
                Outcome::Member => tally.reverse += 1,
                Outcome::NonMember(rem) => {
                    let w = fail("reverse", ylab, &g.support, &image, &rem);
                    return Ok(VerificationReport::new("correspondence", inst, Verdict::Fail, Some(w), start));
                }
                Outcome::Capped(why) => tally.inconclusive.push(format!("reverse {ylab} {}: {why}", g.support)),
            }
        }
    }
    if let Some(w) = corner_factorization(y, t, &maps, &yi, mode, opts, &mut tally)? {
        let w = json!({ "ladder": ladder_json(y), "t": t, "mode": label, "divisibility": w });
        return Ok(VerificationReport::new("correspondence", inst, Verdict::Fail, Some(w), start));
    }
    let verdict = if tally.inconclusive.is_empty() { Verdict::Pass } else { Verdict::Inconclusive };
    let witness = serde_json::to_value(&tally).expect("tally serializes");
    Ok(VerificationReport::new("correspondence", inst, verdict, Some(witness), start))
}

fn paired<'a>(yi: &'a LadderIdeals, zi: &'a LadderIdeals) -> Vec<(IdealLabel, &'a IdealPresentation, &'a IdealPresentation)> {
    let mut out = vec![(IdealLabel::Determinantal, &yi.determinantal, &zi.determinantal)];
    for (a, b) in yi.q.iter().zip(&zi.q).chain(yi.q_prime.iter().zip(&zi.q_prime)) {
        out.push((a.label, a, b));
    }
    for (a, b) in yi.p.iter().zip(&zi.p) {
        if !a.is_zero() {
            out.push((a.label, a, b));
        }
    }
    out
}

/// For a t-minor `[a, mu | b, nu]` rooted at an outside lower corner
/// `S = (a, b)`, `psi` of it is `X_S` times `[mu | nu]` plus a combination
/// of the `(t-1)`-minors on rows `rho_i` and columns `sigma_j` with
/// `rho_i` in `{mu_i} + {a_{w-1} : w in U(mu_i, b)}` and `sigma_j` in
/// `{nu_j} + {b_w : w in U(a, nu_j)}`.
fn corner_factorization(
    y: &Ladder,
    t: usize,
    maps: &PsiChi,
    yi: &LadderIdeals,
    mode: MembershipMode,
    opts: &CorrespondenceOptions,
    tally: &mut Tally,
) -> Result<Option<Value>> {
    let chain = corner_profile(y)?.lower_chain;
    for g in &yi.determinantal.generators {
        let nw = g.support.nw();
        let Some(i0) = maps.corners().iter().position(|&s| s == nw) else {
            continue;
        };
        let xs = Variable::from(nw);
        let image = maps.apply_poly(Direction::Psi, &g.poly)?;
        if image.numerator().min_exponent(xs) == 0 || image.denominator().exponent(xs) > 0 {
            return Ok(Some(json!({ "generator": g.support.to_string(), "image": image.to_string(), "corner": xs.to_string() })));
        }
        let mu = &g.support.rows[1..];
        let nu = &g.support.cols[1..];
        let rest = MinorSupport::new(mu.to_vec(), nu.to_vec());
        let e = image.div_monomial(&Monomial::var(xs)).sub(&LocalizedElement::from_poly(generic_minor(&Rationals, &rest)));
        let b = chain[i0 + 1].col;
        let a = chain[i0].row;
        let row_choices: Vec<Vec<i32>> = mu
            .iter()
            .map(|&m| {
                let mut v: Vec<i32> = (1..chain.len()).filter(|&w| m > chain[w - 1].row && b > chain[w].col).map(|w| chain[w - 1].row).collect();
                v.push(m);
                v
            })
            .collect();
        let col_choices: Vec<Vec<i32>> = nu
            .iter()
            .map(|&n| {
                let mut v: Vec<i32> = (1..chain.len()).filter(|&w| a > chain[w - 1].row && n > chain[w].col).map(|w| chain[w].col).collect();
                v.push(n);
                v
            })
            .collect();
        let mut allowed = Vec::new();
        for rho in row_choices.iter().multi_cartesian_product() {
            for sigma in col_choices.iter().multi_cartesian_product() {
                if rho.iter().zip(mu).all(|(r, m)| **r == *m) && sigma.iter().zip(nu).all(|(s, n)| **s == *n) {
                    continue;
                }
                let rows: Vec<i32> = rho.iter().map(|&&r| r).sorted().dedup().collect();
                let cols: Vec<i32> = sigma.iter().map(|&&c| c).sorted().dedup().collect();
                if rows.len() == t - 1 && cols.len() == t - 1 {
                    allowed.push(generic_minor(&Rationals, &MinorSupport::new(rows, cols)));
                }
            }
        }
        tally.divisibility += 1;
        if e.is_zero() {
            continue;
        }
        let target = Target::new(allowed, mode, opts, tally);
        match target.test(e.numerator(), tally) {
            Outcome::Member => {}
            Outcome::NonMember(rem) => {
                return Ok(Some(json!({ "generator": g.support.to_string(), "error_term": e.to_string(), "remainder": rem.to_string() })))
            }
            Outcome::Capped(why) => tally.inconclusive.push(format!("divisibility {}: {why}", g.support)),
        }
    }
    Ok(None)
}

/// Decomposition invariants, piece counts and assumption (d) on every piece.
pub fn verify_decomposition(y: &Ladder, t: usize) -> VerificationReport {
    let start = Instant::now();
    let run = || -> Result<Value> {
        let d = decompose(y, t)?;
        verify_decomposition_invariants(&d)?;
        for (i, &kb) in d.k_bullet.iter().enumerate() {
            let n = d.pieces_of(i).count();
            if n != kb + 1 {
                return Err(Error::DecompositionInvariantFailure {
                    invariant: "piece count is k_bullet + 1",
                    witness: format!("component {i}: {n} pieces, k_bullet {kb}"),
                });
            }
        }
        for p in &d.pieces {
            if !assumption_d(&p.ladder, t)?.holds {
                return Err(Error::DecompositionInvariantFailure {
                    invariant: "pieces satisfy (d)",
                    witness: format!("piece {}", p.id),
                });
            }
        }
        let overlaps: usize = {
            let mut seen: BTreeMap<Cell, usize> = BTreeMap::new();
            for p in &d.pieces {
                for &c in p.ladder.cells() {
                    *seen.entry(c).or_default() += 1;
                }
            }
            seen.values().filter(|&&k| k > 1).count()
        };
        Ok(json!({ "pieces": d.pieces.len(), "overlap_cells": overlaps, "k_bullet": d.k_bullet }))
    };
    match run() {
        Ok(w) => VerificationReport::new("decomposition", instance(y, t), Verdict::Pass, Some(w), start),
        Err(e) => error_report("decomposition", y, t, e, start),
    }
}

/// `canonical_class(Y, t)` against `canonical_class(Z, t-1)`.
pub fn verify_residual_canonical(y: &Ladder, t: usize) -> VerificationReport {
    let start = Instant::now();
    let run = || -> Result<Option<Value>> {
        let cy = crate::invariants::canonical_class_connected(y, t)?;
        let z = construct_z(y, t)?;
        let cz = crate::invariants::canonical_class_connected(&z, t - 1)?;
        let dy: Vec<i64> = cy.delta.iter().map(|d| d.value).collect();
        let dz: Vec<i64> = cz.delta.iter().map(|d| d.value).collect();
        if cy.lambda == cz.lambda && dy == dz {
            Ok(None)
        } else {
            Ok(Some(json!({ "ladder": ladder_json(y), "t": t, "lambda_y": cy.lambda, "lambda_z": cz.lambda, "delta_y": dy, "delta_z": dz })))
        }
    };
    match run() {
        Ok(None) => VerificationReport::new("residual_canonical", instance(y, t), Verdict::Pass, None, start),
        Ok(Some(w)) => VerificationReport::new("residual_canonical", instance(y, t), Verdict::Fail, Some(w), start),
        Err(e) => error_report("residual_canonical", y, t, e, start),
    }
}
