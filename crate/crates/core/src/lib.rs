//! Exhaustive decision procedures for generalized covering and accumulation
//! properties on finite topological spaces.

pub mod checkers;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod fintop;
pub mod harness;
pub mod setfam;

pub use checkers::{Checker, Property, Verdict, Witness};
pub use error::{Error, Result};
pub use fintop::Topology;
pub use setfam::{FamilyCollection, SetFamily, Subset};
