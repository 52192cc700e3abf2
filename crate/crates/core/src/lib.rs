//! Exact enumeration and generating-series toolkit for subdigons and
//! tubdigons: roofed polygons subdivided into faces of prescribed
//! gonality, with and without 2-gons.
//!
//! The crate is organised bottom-up:
//!
//! - [`types`]: type vectors `[m1; m2, m3, ...]` and their vertex, edge and
//!   face counts.
//! - [`combinatorics`]: binomials, multinomials, hyper-Catalan and tubdigon
//!   counts, integer partitions and both sides of Fine's identity.
//! - [`shapes`]: explicit plane-tree shapes and exhaustive enumeration, used
//!   as the brute-force oracle for every closed form.
//! - [`series`]: truncated multivariate series graded by edge count, the
//!   fixed-point solvers for the subdigon and tubdigon equations, Fine's
//!   lemma and the edge-layered monomial series.
//! - [`solver`]: the hyper-Catalan series root of `c0 - c1 x + c2 x^2 + ...`.
//!
//! All counts are exact (`BigUint` / `BigRational`).

pub mod combinatorics;
mod error;
pub mod series;
pub mod shapes;
pub mod solver;
pub mod types;

pub use error::{Error, Result};
pub use types::{ParseTypeError, TubType, TypeVector};
