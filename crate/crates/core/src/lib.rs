//! Diagram calculus for the partition monoid `P_n` and its singular ideal,
//! together with the two standard presentations and a certificate-producing
//! rewrite engine.
//!
//! The crate is organised around a handful of value types:
//!
//! - [`PartitionDiagram`]: a canonical set partition of `{1..n, 1'..n'}`,
//!   multiplied by stacking graphs and deleting the middle row.
//! - [`Equivalence`]: equivalence relations on `{1..n}` under join; these
//!   classify the idempotent block bijections.
//! - [`PartialPermutation`]: partial injective maps on `{1..n}`, the
//!   symmetric inverse monoid inside `P_n`.
//! - [`Word`] over one of three alphabets (`E∪T`, `S∪{e,t}`, `F`), with
//!   evaluation homomorphisms onto diagrams.
//! - [`Certificate`]: a replayable sequence of relation applications
//!   witnessing that two words are congruent.
//!
//! The [`engine`] module reduces any word over `E∪T` to the canonical form
//! `t_ε z_α t_η` and decides word equivalence for both presentations,
//! emitting certificates at every step. The [`verify`] module holds
//! brute-force oracles and exhaustive small-degree checks.
//!
//! Everything here is `no_std + alloc`; IO, file formats, and the CLI live
//! in the companion `pmn` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod certificate;
pub mod diagram;
pub mod engine;
pub mod equivalence;
pub mod error;
pub mod eval;
pub mod generators;
pub mod partial_perm;
pub mod relations;
pub mod verify;
pub mod words;

pub use certificate::{Certificate, MacroKind, Step};
pub use diagram::{PartitionDiagram, Point};
pub use engine::{NormalForm, RewriteEngine};
pub use equivalence::Equivalence;
pub use error::Error;
pub use partial_perm::PartialPermutation;
pub use relations::{RelationFamily, RelationId, RelationInstance};
pub use words::{Alphabet, Letter, Word};

/// Default seed for all randomised checks; recorded in verification reports.
pub const DEFAULT_SEED: u64 = 0x5eed_0001;
