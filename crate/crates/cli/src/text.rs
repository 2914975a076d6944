//! Plain-text renderings of the report sections.

use std::fmt::Write;

use laddertool_core::invariants::{
    ClassGroupReport, ComponentCanonical, GorensteinReport, PieceSummary, SemidualizingCensus,
};
use laddertool_core::io::{input_digest, Analysis};
use laddertool_core::ladder::{CornerType, Decomposition, Ladder};
use laddertool_core::verify::{Verdict, VerificationReport};
use laddertool_core::Cell;

fn cells(v: &[Cell]) -> String {
    v.iter().map(Cell::to_string).collect::<Vec<_>>().join(" ")
}

fn kind(k: CornerType) -> &'static str {
    match k {
        CornerType::One => "1",
        CornerType::Two => "2",
    }
}

pub fn analysis(y: &Ladder, a: &Analysis) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "input {}", input_digest(y));
    let _ = writeln!(s, "cells {}  t {}  path-connected {}  t-connected {}", a.cells, a.t, a.path_connected, a.t_connected);
    for c in &a.components {
        let p = &c.profile;
        let _ = writeln!(s, "component {} ({} cells)", c.index, c.ladder.len());
        let _ = writeln!(s, "  lower chain {}", cells(&p.lower_chain));
        let _ = writeln!(s, "  upper chain {}", cells(&p.upper_chain));
        let _ = writeln!(s, "  h {}  k {}", p.h, p.k);
        if let Some(ty) = &p.types {
            for (i, l) in ty.lower.iter().enumerate() {
                let _ = writeln!(s, "  S{}' {} type {}", i + 1, l.cell, kind(l.kind));
            }
            for (j, u) in ty.upper.iter().enumerate() {
                let extra = if u.type_1_1 { ", 1.1" } else { "" };
                let _ = writeln!(s, "  T{}' {} type {}{extra}", j + 1, u.cell, kind(u.kind));
            }
            let _ = writeln!(s, "  h* {}  k* {}  k. {}", ty.h_star, ty.k_star, ty.k_bullet);
        }
    }
    if !a.free_cells.is_empty() {
        let _ = writeln!(s, "free cells {}", cells(&a.free_cells));
    }
    if a.assumption_d.holds {
        let _ = writeln!(s, "assumption (d) holds");
    } else {
        let _ = writeln!(s, "assumption (d) fails at {}", cells(&a.assumption_d.violators));
    }
    for r in &a.rank_checks {
        let _ = writeln!(s, "rank identity on component {}: h + k* = {}, h* + k = {}", r.component, r.h + r.k_star, r.h_star + r.k);
    }
    s
}

pub fn class_group(r: &ClassGroupReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "class group {}", r.total);
    let _ = writeln!(s, "ladder rank {}", r.ladder_rank);
    for c in &r.components {
        let basis: Vec<String> = c.basis.iter().map(|b| format!("{} at {}", b.label, b.corner)).collect();
        let _ = writeln!(s, "component {}: rank {}  basis {}", c.component, c.rank, basis.join(", "));
    }
    if r.free_cells > 0 {
        let _ = writeln!(s, "free cells {}", r.free_cells);
    }
    let _ = writeln!(s, "ufd {}", r.is_ufd);
    s
}

pub fn canonical(classes: &[ComponentCanonical]) -> String {
    let mut s = String::new();
    for c in classes {
        let l: Vec<String> = c.class.lambda.iter().map(i64::to_string).collect();
        let d: Vec<String> = c.class.delta.iter().map(|d| format!("{} (T{}' {}, i={})", d.value, d.j, d.corner, d.i_index)).collect();
        let _ = writeln!(s, "component {}: lambda ({})  delta ({})  gorenstein {}", c.component, l.join(", "), d.join(", "), c.gorenstein);
    }
    if classes.is_empty() {
        let _ = writeln!(s, "no connected t-components");
    }
    s
}

fn piece_line(p: &PieceSummary) -> String {
    format!(
        "piece {} of component {}: rows {}..{} cols {}..{}  {} cells{}  gorenstein {}",
        p.id,
        p.component,
        p.rows.0,
        p.rows.1,
        p.cols.0,
        p.cols.1,
        p.cells,
        if p.rectangle { " (rectangle)" } else { "" },
        p.gorenstein
    )
}

pub fn census(c: &SemidualizingCensus, g: &GorensteinReport) -> String {
    let mut s = String::new();
    for p in &g.pieces {
        let _ = writeln!(s, "{}", piece_line(p));
    }
    let _ = writeln!(s, "gorenstein {}", g.gorenstein);
    let _ = writeln!(s, "non-gorenstein pieces {}", c.e);
    let _ = writeln!(s, "count {}", c.count);
    s
}

pub fn decomposition(d: &Decomposition, picture: &str) -> String {
    let mut s = String::new();
    for p in &d.pieces {
        let cuts: Vec<String> = p.cuts.iter().map(|c| format!("{:?} of {}", c.side, c.corner)).collect();
        let (r, c) = (p.ladder.row_range(), p.ladder.col_range());
        let _ = writeln!(s, "piece {} of component {}: rows {}..{} cols {}..{}  {} cells  cuts [{}]", p.id, p.component, r.0, r.1, c.0, c.1, p.ladder.len(), cuts.join(", "));
    }
    for i in &d.identifications {
        let _ = writeln!(s, "shared {} between pieces {} and {}", i.cell, i.piece_a, i.piece_b);
    }
    if !d.free_cells.is_empty() {
        let _ = writeln!(s, "free cells {}", cells(&d.free_cells));
    }
    let _ = writeln!(s, "{picture}");
    s
}

pub fn verification(reports: &[VerificationReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let tag = match r.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        };
        let _ = writeln!(s, "[{tag}] {} {}", r.check_id, r.instance);
        if r.verdict != Verdict::Pass {
            if let Some(w) = &r.witness {
                let _ = writeln!(s, "  {w}");
            }
        }
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    let _ = writeln!(s, "{passed}/{} passed", reports.len());
    s
}
