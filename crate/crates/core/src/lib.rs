//! Ladder determinantal rings: corner combinatorics, the ideals attached to
//! corners, the substitutions relating a ladder to its residual ladder, and
//! class group, canonical class and semidualizing invariants.

pub mod error;
pub mod generate;
pub mod ideals;
pub mod invariants;
pub mod io;
pub mod ladder;
pub mod poly;
pub mod psi;
pub mod verify;

pub use error::{Error, Result, Violation};
pub use ladder::{Cell, Ladder};
