//! Workbench for finite additively idempotent semirings and finite groups.
//!
//! Algebras are stored as operation tables over the carrier `0..n`. On top of
//! that representation the crate provides
//!
//! * a small term language for identities, order statements and quasi-identities
//!   ([`term`]),
//! * table-level algebra: validation, products, generated subalgebras,
//!   homomorphisms, isomorphism search, congruences and ideals ([`algebra`]),
//! * constructors for flat extensions, word semirings, the minimal nonabelian
//!   `p`-group families and the Lee-style word patterns ([`constructions`]),
//! * an exhaustive, pruned satisfaction engine with deterministic witnesses
//!   ([`satisfaction`]),
//! * a finite model finder for flat semirings ([`finder`]),
//! * JSON I/O, an on-disk result cache and a registry of verification checks
//!   ([`io`], [`cache`], [`suite`]).

pub mod algebra;
pub mod cache;
pub mod constructions;
pub mod error;
pub mod finder;
pub mod io;
pub mod satisfaction;
pub mod suite;
pub mod term;

pub use algebra::{
    Algebra, Congruence, FiniteGroup, FiniteSemiring, Morphism, Table, ValidationReport,
};
pub use error::{Error, Result};
pub use term::{Statement, Term};

/// Largest carrier size any constructed algebra may have.
pub const ORDER_CAP: usize = 4096;

/// Default number of term evaluations a satisfaction search may spend.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;
