//! Co-ranking algebra for intransitive preferences.
//!
//! A co-ranking `ρ(A, B)` is an antisymmetric measure of how strongly `A` is
//! preferred to `B`. The [`prefs`] module holds the core algebra; the other
//! modules build multi-criteria aggregation, co-ranking games, rank
//! distributions and a competitive-evolution simulator on top of it.

pub mod aggregation;
pub mod cli;
pub mod error;
pub mod evolve;
pub mod games;
pub mod io;
pub mod prefs;
pub mod report;
pub mod special;
pub mod stochastic;

pub use error::{Error, Result};
