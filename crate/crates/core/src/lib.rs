//! Geometry kernel for the three simply connected space forms.
//!
//! The sphere `S^n` lives in `R^{n+1}` with the Euclidean inner product, the
//! hyperbolic space `H^n` is the upper sheet `{<x,x> = 1, x_0 > 0}` of the
//! hyperboloid in `R^{1,n}` with the form `x_0 y_0 - x_1 y_1 - ... - x_n y_n`,
//! and Euclidean space `E^n` is represented affinely. Totally geodesic
//! p-spaces are the intersections of the model with linear subspaces (or
//! affine subspaces in the Euclidean case).
//!
//! Modules, bottom-up:
//!
//! - [`ambient`]: pseudo-Euclidean linear algebra (forms, indefinite
//!   Gram-Schmidt, complements, intersections, orthogonal projection).
//! - [`geometry`]: model points, distances, geodesics, tangent vectors,
//!   angles, point reflection, 2-space intersection and dihedral angles.
//! - [`projections`]: metrical and orthogonal projections onto p-spaces.
//! - [`harness`]: seeded sampling of three-perpendiculars configurations,
//!   their verification, and brute-force oracles.
//!
//! The crate is `no_std` (it needs `alloc`); IO and file formats live in the
//! `spaceform` crate.
#![cfg_attr(not(test), no_std)]
#![deny(missing_docs)]

extern crate alloc;

pub mod ambient;
mod error;
pub mod geometry;
pub mod harness;
pub mod projections;
pub mod tol;

pub use error::{Error, Result};
