//! Exact-arithmetic computations with cluster algebras from quivers.
//!
//! The crate is organised by topic:
//!
//! - [`quiver`]: ice quivers as integer exchange matrices, mutation,
//!   canonical forms, mutation classes and classification, example quivers
//!   and polygon triangulations.
//! - [`laurent`]: sparse Laurent polynomials over arbitrary-precision integers.
//! - [`exchange`]: seeds, exact seed mutation, denominator vectors and
//!   exchange-graph enumeration.
//! - [`knitting`]: Dynkin data, repetition quivers and the knitting
//!   recursion, including valued diagrams.
//! - [`ydyn`]: Y-seeds with their three layers (c-vectors, F-polynomials,
//!   Y-variables).
//! - [`periodicity`]: square and tensor products of alternating Dynkin
//!   quivers, restricted Y-patterns and the automorphisms used to verify
//!   periodicity.
//! - [`cc`]: quiver representations, quiver Grassmannian point counts and the
//!   Caldero-Chapoton map.
//!
//! Vertices are 1-based in every user-facing format and 0-based in the Rust
//! API.

pub mod cc;
pub mod error;
pub mod exchange;
pub mod knitting;
pub mod laurent;
pub mod modular;
mod packing;
pub mod periodicity;
pub mod quiver;
pub mod ydyn;

#[cfg(doctest)]
mod book;

pub use error::{Error, Result};
pub use exchange::{DenominatorVector, ExchangeGraph, Seed};
pub use laurent::LaurentPolynomial;
pub use quiver::{CanonicalKey, ClassReport, IceQuiver};
