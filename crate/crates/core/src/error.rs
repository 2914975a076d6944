use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::ladder::Cell;

/// A single reason a point set fails to be a ladder.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NonPositive { cell: Cell },
    Closure { first: Cell, second: Cell, missing: Vec<Cell> },
    EmptyRow { row: i32 },
    EmptyColumn { col: i32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonPositive { cell } => write!(f, "non-positive coordinate {cell}"),
            Violation::Closure { first, second, missing } => {
                write!(f, "closure fails for {first} and {second}: missing")?;
                for m in missing {
                    write!(f, " {m}")?;
                }
                Ok(())
            }
            Violation::EmptyRow { row } => write!(f, "row {row} is empty"),
            Violation::EmptyColumn { col } => write!(f, "column {col} is empty"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty point set")]
    Empty,
    #[error("not a ladder: {}", join(.0))]
    InvalidLadder(Vec<Violation>),
    #[error("ladder is not path-connected")]
    NotPathConnected,
    #[error("ladder is not {t}-connected")]
    NotTConnected { t: usize },
    #[error("minor size t = {t} is not allowed here (need {need})")]
    InvalidT { t: usize, need: &'static str },
    #[error("residual ladder is invalid: {0}")]
    InvalidResidualLadder(String),
    #[error("component is not a ladder: {}", join(.0))]
    ComponentNotLadder(Vec<Violation>),
    #[error("support rows {rows:?} cols {cols:?} is not inside the ladder")]
    SupportNotInLadder { rows: Vec<i32>, cols: Vec<i32> },
    #[error("{what} exceeded cap {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("decomposition invariant `{invariant}` failed: {witness}")]
    DecompositionInvariantFailure { invariant: &'static str, witness: String },
    #[error("assumption (d) fails at lower inside corners {}", cells(.0))]
    AssumptionDViolated(Vec<Cell>),
    #[error("no lower chain index exceeds the row of upper inside corner {0}")]
    NoSuchIndex(Cell),
    #[error("variable {0} is not a cell of the ladder")]
    UnknownVariable(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid coefficient descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Empty
            | Error::InvalidLadder(_)
            | Error::InvalidDescriptor(_)
            | Error::Parse { .. }
            | Error::UnknownVariable(_)
            | Error::SupportNotInLadder { .. } => 1,
            Error::NotPathConnected
            | Error::NotTConnected { .. }
            | Error::InvalidT { .. }
            | Error::InvalidResidualLadder(_)
            | Error::AssumptionDViolated(_)
            | Error::NoSuchIndex(_) => 3,
            Error::CapExceeded { .. } => 4,
            Error::ComponentNotLadder(_)
            | Error::DecompositionInvariantFailure { .. }
            | Error::Internal(_) => 2,
        }
    }
}

fn join(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

fn cells(v: &[Cell]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub type Result<T> = std::result::Result<T, Error>;
