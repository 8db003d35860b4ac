//! Parametrisation pipeline for the irreducible characters of Sylow
//! `p`-subgroups `U` of Chevalley groups.
//!
//! The crate is `no_std` and only needs `alloc`. It covers root posets
//! ([`rootsys`], [`posetkit`]), the core reduction algorithm ([`reducer`]),
//! core graphs and arm/leg selection ([`coregraph`]), isomorphism testing of
//! core groups ([`isoclass`]), explicit arithmetic in quattern groups with
//! small-group character oracles ([`groupcore`]), a Clifford-theoretic
//! resolver for nonabelian cores at fixed `q` ([`resolver`]) and exact
//! polynomial tabulation of character counts ([`tabulate`]).

#![no_std]

extern crate alloc;

pub mod coregraph;
pub mod field;
pub mod groupcore;
pub mod isoclass;
pub mod posetkit;
pub mod reducer;
pub mod resolver;
pub mod rootset;
pub mod rootsys;
pub mod tabulate;

pub use rootset::RootSet;
pub use rootsys::{CartanType, RootSystem};
