//! Solvers for the p-centdian facility-location problem and its converse.
//!
//! The centdian-distance of a vertex set `H` is the sum of its eccentricity
//! (the largest distance from any vertex to `H`) and its median-distance (the
//! total distance from all vertices to `H`). This crate provides:
//!
//! * [`graph`]: weighted graphs, metric closure and evaluation of candidate sets,
//! * [`simplex`]: a dense two-phase primal simplex solver,
//! * [`models`]: the integer programs, their LP relaxation and LP-format export,
//! * [`exact`]: exact optima by exhaustive subset enumeration,
//! * [`approx`]: LP rounding through greedy set cover, with bicriteria guarantees,
//! * [`reduction`]: the dominating-set to p-centdian reduction.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod approx;
pub mod error;
pub mod exact;
pub mod graph;
pub mod models;
pub mod reduction;
pub mod simplex;
pub mod tol;

pub use error::{Error, Result};
pub use graph::{CentdianEvaluation, DistanceMatrix, Edge, Graph};
