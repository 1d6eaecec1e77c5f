//! Cayley machines of finite semigroups.
//!
//! For a finite semigroup `S` and `s ∈ S`, the map `φ_s` sends a word
//! `[a_1, …, a_n]` over `S¹` to `[s·a_1, s·a_1a_2, …, s·a_1⋯a_n]`. The maps
//! generate a semigroup `Cayley(S)`, which is finite exactly when `S` is
//! aperiodic. This crate represents its elements as minimal transducers,
//! decides their equality, enumerates `Cayley(S)` and its restrictions, and
//! provides the structure theory used to study it.

pub mod catalog;
pub mod classify;
pub mod enumeration;
pub mod error;
pub mod expansions;
pub mod format;
pub mod green;
pub mod harness;
pub mod machine;
pub mod semigroup;
pub mod set;
pub mod tower;

pub use error::{Error, Result};
pub use machine::{Canonical, CayleyMachine, Mode};
pub use semigroup::{ElementId, FiniteSemigroup};
pub use set::ElementSet;
