//! Triangulated 3-manifolds, widths of their dual graphs and Heegaard
//! splitting genus accounting.
//!
//! ```
//! use pathvol::trikernel::{analyze_skeleton, Triangulation};
//!
//! let t = Triangulation::parse("tets 2\n0 0 -> 1 0 0123\n").unwrap();
//! assert_eq!(analyze_skeleton(&t).euler_characteristic, 1);
//! ```

pub mod bounds;
pub mod graph;
pub mod heegaard;
pub mod trikernel;
mod unionfind;
pub mod widths;

pub use bounds::{bound_chain, BoundChainReport, BoundInputs};
pub use graph::Multigraph;
pub use heegaard::{ForkComplex, GeneralizedSplitting, GenusLedger};
pub use trikernel::{SkeletonReport, Triangulation};
pub use widths::{NiceTreeDecomposition, PathDecomposition, TreeDecomposition, WidthCertificate};

/// Bound inputs in double precision.
pub type BoundInputs64 = BoundInputs<f64>;
/// Bound inputs in single precision.
pub type BoundInputs32 = BoundInputs<f32>;
