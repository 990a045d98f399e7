//! Toolkit for finite two-player nonlocal games.
//!
//! The crate is organized around a chain of constructive transformations:
//!
//! - [`game`] — the core game model: question/answer sets, an exact-rational
//!   question distribution, a Boolean verification predicate, synchronous
//!   validation, and exact classical values by exhaustive enumeration.
//! - [`graph`] — simple undirected graphs, exact independence numbers by
//!   branch and bound, and the correspondence between independent sets of a
//!   game graph and classical strategies.
//! - [`reductions`] — the synchronous extension of an arbitrary game, the
//!   game graph of a synchronous game, the homomorphic product, and strategy
//!   maps into independent-set games.
//! - [`quantum`] — projective strategies on maximally entangled states (PME
//!   strategies), general POVM strategies, numerical evaluation, the
//!   support-projector conversion of perfect strategies to PME form, and
//!   projective packings with certified entangled-value lower bounds.
//! - [`seesaw`] — a deterministic seeded alternating search for high-value
//!   projective packings at a fixed dimension.
//! - [`cli`] — the command front end (`reduce`, `values`, `verify`,
//!   `search`) with machine-readable run reports.
//!
//! Exact quantities (distributions, classical values, guarantees) use
//! arbitrary-precision rationals; floating point enters only in the quantum
//! modules, with explicit tolerances collected in [`quantum::Tolerances`].
//!
//! See the `examples/` directory for one runnable program per capability.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod game;
pub mod graph;
pub mod linalg;
pub mod quantum;
pub mod reductions;
pub mod report;
pub mod seesaw;
pub mod textio;

/// Exact rational scalar used for distributions and classical values.
pub type Rat = num_rational::BigRational;

/// Complex double-precision scalar used by the quantum modules.
pub type C64 = num_complex::Complex64;

/// Convenience constructor for an exact rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    use num_bigint::BigInt;
    Rat::new(BigInt::from(num), BigInt::from(den))
}
