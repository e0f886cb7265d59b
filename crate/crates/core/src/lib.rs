//! Symmetric chain decompositions of ranked posets and of their quotients by
//! permutation groups.
//!
//! The main entry points are [`pipeline::theorem1_scd`], which decomposes
//! `B_{kt}/(K ≀ T)`, and [`pipeline::theorem2_scd`], which decomposes `P^n/G`
//! for a decomposed base poset `P`. Every construction is checked against
//! [`poset::verify_scd`] on an independently built quotient.

pub mod error;
pub mod group;
pub mod perm;
pub mod pipeline;
pub mod poset;
pub mod quotient;
pub mod scd;

pub use error::{Error, Result};
pub use group::{CyclePower, CycleSpec, GeneratedGroup};
pub use perm::Permutation;
pub use poset::{Chain, ChainDecomposition, RankedPoset};
pub use quotient::QuotientPoset;
