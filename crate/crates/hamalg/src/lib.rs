//! Exact construction of a family of graded Lie algebras obtained by
//! twisting a commutative group-graded algebra along distinguished
//! derivations, together with their multiplicity-free modules and
//! finite-window probes of simplicity and irreducibility.
//!
//! Everything is computed over exact rationals with arbitrary-precision
//! integers; there is no floating point anywhere and all reported results
//! are reproducible bit for bit from a seed.
//!
//! Module map:
//! - [`rational`]: exact scalar type and strict text parsing for it.
//! - [`hermite`]: integer column/row echelon forms, kernels, and exact
//!   linear solving over the integers and rationals.
//! - [`lattice`]: the defining data (skew form, characters, slot masks,
//!   shifts), its validation, and the weight-shift solver.
//! - [`algebra`]: the carrier algebra, derivations, and two independent
//!   bracket constructions plus the central quotient.
//! - [`twist`]: the general twist of a commutative Poisson-style oracle and
//!   the law checker that justifies it.
//! - [`poly`]: a capped polynomial algebra with its contact bracket, the
//!   classical face of the twist.
//! - [`action`]: the weighted module action, representation residuals, and
//!   the shift intertwiner.
//! - [`span`]: exact sparse row reduction with combination tracking.
//! - [`spectral`]: separation of generalized eigencomponents.
//! - [`closure`]: windowed ideal and submodule closure probes and the
//!   pairwise derived-span computation.
//! - [`sample`]: seeded, deterministic element sampling.
//! - [`instances`]: the frozen example signatures used across the suites.
//! - [`text`]: canonical element rendering and parsing.
//! - [`par`]: batch mapping with a parallel default and sequential fallback.

pub mod action;
pub mod algebra;
pub mod closure;
pub mod hermite;
pub mod instances;
pub mod lattice;
pub mod par;
pub mod poly;
pub mod rational;
pub mod sample;
pub mod span;
pub mod spectral;
pub mod text;
pub mod twist;
