//! Exact toolkit for mass-action reaction networks embedded in Euclidean space.
//!
//! A reaction network is modeled as a directed graph whose vertices (complexes)
//! are lattice points in the nonnegative orthant and whose edges are reactions.
//! Together with positive rate constants it generates a polynomial vector field
//!
//! ```text
//! dx/dt = sum over edges y -> y' of  k * x^y * (y' - y)
//! ```
//!
//! The crate keeps everything structural exact: coefficients and rates are
//! arbitrary-precision rationals, convex hulls and hyperplane sweeps use integer
//! arithmetic, and realizability questions are decided with an exact rational
//! simplex. Floating point appears only in [`dynamics`] (trajectories, fixed
//! points, steady-curve sampling).
//!
//! Module map:
//! - [`algebra`]: sparse multivariate polynomials over the rationals.
//! - [`network`]: the embedded-graph data model and the mass-action field.
//! - [`geometry`]: exact convex hulls and the finite direction sweep.
//! - [`classify`]: weak reversibility, deficiency, endotactic tests, siphons.
//! - [`transform`]: translation, scaling, addition, simplification, and the
//!   scalar-polynomial construction pipeline.
//! - [`realize`]: dynamical equivalence, canonical realizations, and the
//!   weakly-reversible realizability decision on a bounded complex set.
//! - [`dynamics`]: ODE integration, Newton refinement, steady-curve sampling.
//! - [`examples`]: bundled example systems with curves of positive steady states.

pub mod algebra;
pub mod classify;
pub mod dynamics;
pub mod error;
pub mod examples;
pub mod geometry;
pub mod lp;
pub mod network;
pub mod realize;
pub mod transform;

pub use error::{CrnError, Result};
