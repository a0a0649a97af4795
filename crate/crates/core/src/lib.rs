//! Spanning trees of planar point sets that minimize the Wiener index (the
//! sum of pairwise tree distances), also known as optimum communication
//! spanning trees.
//!
//! The crate provides:
//!
//! - exact minimum-Wiener spanning trees for points in strictly convex
//!   position, via an interval dynamic program with tree reconstruction
//!   ([`dp_convex`]);
//! - the Wiener index computed two independent ways, the crossing-removal
//!   improvement step, and related tree measures ([`tree`]);
//! - exhaustive brute-force oracles over all labeled trees and all
//!   Hamiltonian paths, used to validate everything else ([`oracle`]);
//! - generators for convex, grid, Partition-reduction, and clustered path
//!   instances ([`instances`]);
//! - Hamiltonian-path Wiener tooling, including the four-super-node
//!   configuration sweep and grid lower-bound checks ([`paths`]).
//!
//! All numeric code is generic over the scalar type via [`scalar::Scalar`]
//! (`f32` or `f64`); the aliases below fix `f64`, which the CLI and the
//! JSON formats use.

pub mod dp_convex;
pub mod error;
pub mod geometry;
pub mod instances;
pub mod oracle;
pub mod paths;
pub mod scalar;
pub mod tree;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// `f64` instantiations of the generic types.
pub type Point = geometry::Point<f64>;
pub type PointSet = geometry::PointSet<f64>;
pub type WienerReport = tree::WienerReport<f64>;
pub type DpTables = dp_convex::DpTables<f64>;
pub type ConvexSolution = dp_convex::ConvexSolution<f64>;
pub type OracleResult = oracle::OracleResult<f64>;
pub type PartitionInstance = instances::PartitionInstance<f64>;
pub type PathCounterexampleInstance = instances::PathCounterexampleInstance<f64>;
pub type SuperNodeConfig = paths::SuperNodeConfig<f64>;
pub type GridBoundReport = paths::GridBoundReport<f64>;

pub use paths::HamiltonianPath;
pub use tree::SpanningTree;
