//! Reading, writing and drawing ladders, and the JSON report envelope.

pub mod fixtures;
mod parse;
mod render;
mod report;

pub use parse::{parse, serialize, Format, LadderDocument};
pub use render::{render, Overlay};
pub use report::{analyze, input_digest, Analysis, ComponentSummary, ReportDocument, ReportSections, SCHEMA_VERSION};

use serde::ser::{SerializeSeq, Serializer};

use crate::ladder::Ladder;

/// Serializes a ladder as its row intervals.
pub fn serialize_ladder<S: Serializer>(y: &Ladder, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(y.intervals())
}

pub fn serialize_ladders<S: Serializer>(ys: &[Ladder], s: S) -> Result<S::Ok, S::Error> {
    struct One<'a>(&'a Ladder);
    impl serde::Serialize for One<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            serialize_ladder(self.0, s)
        }
    }
    let mut seq = s.serialize_seq(Some(ys.len()))?;
    for y in ys {
        seq.serialize_element(&One(y))?;
    }
    seq.end()
}
