use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ladder::{validate_ladder, Cell, Ladder, RowInterval};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    /// Lines of `.` and `X`, row 1 first.
    Grid,
    /// JSON list of `{row, col_start, col_end}`.
    Intervals,
    /// JSON list of `[row, col]`.
    Points,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grid" => Ok(Format::Grid),
            "intervals" => Ok(Format::Intervals),
            "points" => Ok(Format::Points),
            _ => Err(Error::Parse { line: 0, column: 0, message: format!("unknown format `{s}`") }),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Grid => "grid",
            Format::Intervals => "intervals",
            Format::Points => "points",
        })
    }
}

/// A ladder in one of the text formats.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderDocument {
    pub format: Format,
    pub payload: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl LadderDocument {
    pub fn from_ladder(y: &Ladder, format: Format, name: Option<String>) -> Self {
        LadderDocument { format, payload: serialize(y, format), name }
    }

    pub fn to_ladder(&self) -> Result<Ladder> {
        parse(self.payload.as_bytes(), self.format)
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse { line: e.line(), column: e.column(), message: e.to_string() }
}

pub fn parse(input: &[u8], format: Format) -> Result<Ladder> {
    let text = std::str::from_utf8(input).map_err(|e| {
        let before = &input[..e.valid_up_to()];
        let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
        let column = before.iter().rev().take_while(|&&b| b != b'\n').count() + 1;
        Error::Parse { line, column, message: "input is not UTF-8".into() }
    })?;
    match format {
        Format::Grid => parse_grid(text),
        Format::Intervals => {
            let rows: Vec<RowInterval> = serde_json::from_str(text).map_err(json_error)?;
            let mut cells = Vec::new();
            for (k, iv) in rows.iter().enumerate() {
                if iv.col_start > iv.col_end {
                    return Err(Error::Parse {
                        line: 1,
                        column: 1,
                        message: format!("interval {k} has col_start > col_end"),
                    });
                }
                cells.extend((iv.col_start..=iv.col_end).map(|c| Cell::new(iv.row, c)));
            }
            validate_ladder(cells)
        }
        Format::Points => {
            let pts: Vec<(i32, i32)> = serde_json::from_str(text).map_err(json_error)?;
            validate_ladder(pts)
        }
    }
}

fn parse_grid(text: &str) -> Result<Ladder> {
    let mut cells = Vec::new();
    for (r, line) in text.lines().enumerate() {
        for (c, ch) in line.trim_end_matches('\r').chars().enumerate() {
            match ch {
                'X' => cells.push(Cell::new(r as i32 + 1, c as i32 + 1)),
                '.' => {}
                _ => {
                    return Err(Error::Parse {
                        line: r + 1,
                        column: c + 1,
                        message: format!("unexpected character {ch:?}"),
                    })
                }
            }
        }
    }
    validate_ladder(cells)
}

pub fn serialize(y: &Ladder, format: Format) -> String {
    match format {
        Format::Grid => {
            let (r0, r1) = y.row_range();
            let (c0, c1) = y.col_range();
            (r0..=r1)
                .map(|r| (c0..=c1).map(|c| if y.contains(r, c) { 'X' } else { '.' }).collect::<String>())
                .collect::<Vec<_>>()
                .join("\n")
        }
        Format::Intervals => serde_json::to_string(&y.intervals()).expect("intervals serialize"),
        Format::Points => {
            let pts: Vec<(i32, i32)> = y.cells().iter().map(|c| (c.row, c.col)).collect();
            serde_json::to_string(&pts).expect("points serialize")
        }
    }
}
