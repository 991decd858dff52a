//! Finite groupoids, Haar systems, and step subgroup bundles.
//!
//! Everything is exact: weights, measures, and piecewise functions are
//! rational-valued, so equalities like invariance and continuity are decided
//! without tolerances.

pub mod action;
pub mod construct;
pub mod convolution;
pub mod decompose;
pub mod generate;
pub mod group;
pub mod groupoid;
pub mod haar;
pub mod linalg;
pub mod manifest;
pub mod measures;
pub mod piecewise;
pub mod rat;
pub mod registry;
pub mod rng;
pub mod stepbundle;
pub mod unionfind;

pub use groupoid::{Arrow, ArrowId, FiniteGroupoid, ObjectId};
pub use rat::Rat;
