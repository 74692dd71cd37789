//! Exact Lie algebra cohomology, relative cohomology of reductive pairs,
//! and fibration verdicts for transversely homogeneous foliations.
//!
//! All arithmetic is over exact rationals. Per-degree and per-row work runs
//! on rayon when the `parallel` feature is enabled (the default); see
//! [`exec::Execution`].

pub mod algebra;
pub mod catalog;
pub mod ce;
pub mod cli;
pub mod exec;
pub mod exterior;
pub mod format;
pub mod group;
pub mod linalg;
pub mod relative;
pub mod scalar;
pub mod tischler;

pub use algebra::{AlgebraError, LieAlgebra, ReductivePair};
pub use ce::{BettiTable, CochainComplex, CoefficientModule, CohomologyError};
pub use exec::Execution;
pub use linalg::Matrix;
pub use relative::GkModule;
pub use scalar::Scalar;
