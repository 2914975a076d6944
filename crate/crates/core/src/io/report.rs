use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::invariants::{
    rank_consistency, ClassGroupReport, CoefficientDescriptor, ComponentCanonical, GorensteinReport, RankCheck,
    SemidualizingCensus,
};
use crate::ladder::{
    assumption_d, classify_corners, corner_profile, t_components, AssumptionD, Cell, ComponentKind, CornerProfile,
    Decomposition, Ladder,
};
use crate::verify::VerificationReport;

pub const SCHEMA_VERSION: u32 = 1;

/// Hex SHA-256 of the ladder's cells, one `row,col` line each in sorted order.
pub fn input_digest(y: &Ladder) -> String {
    let mut h = Sha256::new();
    for c in y.cells() {
        h.update(format!("{},{}\n", c.row, c.col));
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentSummary {
    pub index: usize,
    #[serde(serialize_with = "super::serialize_ladder")]
    pub ladder: Ladder,
    pub profile: CornerProfile,
}

/// Corner data of every connected t-component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Analysis {
    pub t: usize,
    pub cells: usize,
    pub path_connected: bool,
    pub t_connected: bool,
    pub components: Vec<ComponentSummary>,
    pub free_cells: Vec<Cell>,
    pub assumption_d: AssumptionD,
    pub rank_checks: Vec<RankCheck>,
}

pub fn analyze(y: &Ladder, t: usize) -> Result<Analysis> {
    let mut components = Vec::new();
    let mut free_cells = Vec::new();
    for tc in t_components(y, t)? {
        match tc.kind {
            ComponentKind::Free => free_cells.extend(tc.ladder.cells().iter().copied()),
            ComponentKind::Connected => {
                let profile = classify_corners(&tc.ladder, t, &corner_profile(&tc.ladder)?)?;
                components.push(ComponentSummary { index: components.len(), ladder: tc.ladder, profile });
            }
        }
    }
    Ok(Analysis {
        t,
        cells: y.len(),
        path_connected: y.is_path_connected(),
        t_connected: components.len() == 1 && free_cells.is_empty(),
        components,
        free_cells,
        assumption_d: assumption_d(y, t)?,
        rank_checks: rank_consistency(y, t)?,
    })
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ReportSections {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<Analysis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class_group: Option<ClassGroupReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canonical: Option<Vec<ComponentCanonical>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gorenstein: Option<GorensteinReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub semidualizing: Option<SemidualizingCensus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Decomposition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<Vec<VerificationReport>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub tool_version: String,
    pub input_digest: String,
    pub t: Option<usize>,
    pub coefficient: CoefficientDescriptor,
    pub sections: ReportSections,
}

impl ReportDocument {
    pub fn new(y: &Ladder, t: Option<usize>, coefficient: CoefficientDescriptor) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            input_digest: input_digest(y),
            t,
            coefficient,
            sections: ReportSections::default(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
