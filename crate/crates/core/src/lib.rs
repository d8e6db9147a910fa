//! Exact computation with additive bases of translatable semigroups inside
//! C ⊕ ℤ.
//!
//! Sets are eventually periodic ([`perset::PeriodicSet`]), subgroups are
//! integer lattices in normal form ([`abgroup::Subgroup`]), and every verdict
//! the engine returns is backed by exact arithmetic rather than a truncated
//! search.

pub mod abgroup;
pub mod basis;
pub mod cli;
pub mod density;
pub mod error;
pub mod fpt;
pub mod perset;
pub mod structure;
pub mod verify;

pub use error::{Error, Result};
pub use perset::{AmbientGroup, GroupElement, PeriodicSet};
