//! Exact cohomology computations for generalized Bott towers.
//!
//! A generalized Bott tower is a sequence of iterated projectivizations
//! `B_m -> B_{m-1} -> ... -> B_1 -> point`, where each stage is the
//! projectivization of a Whitney sum of line bundles over the previous one.
//! Everything here is combinatorial: a tower is described by fiber dimensions
//! and integer exponent matrices, its integral cohomology ring is a truncated
//! polynomial algebra with a triangular rewriting system, and the
//! classification questions (product detection, two- and three-stage
//! classification, triviality of sums of line bundles) are decided from
//! exact ring arithmetic.
//!
//! The modules mirror that layering:
//!
//! * [`tower`] – tower and bundle data, stage normalization and duality.
//! * [`ring`] – the cohomology ring engine, ring maps and isomorphism witnesses.
//! * [`charclass`] – Chern, Pontrjagin, Wu and Stiefel–Whitney classes.
//! * [`bundle`] – triviality and isomorphism of sums of line bundles over
//!   products of projective spaces.
//! * [`classify`] – the decision procedures.
//! * [`check`] – seeded randomized checks of the ring engine.

pub mod bundle;
pub mod charclass;
pub mod check;
pub mod classify;
mod error;
pub mod json;
pub mod linalg;
pub mod ring;
mod scalar;
pub mod tower;

pub use error::{Error, Result};
pub use scalar::{Domain, Scalar};

pub use bundle::{LineBundleSum, ZeroColumnReduction};
pub use charclass::CharClassReport;
pub use classify::{Verdict, Witness};
pub use ring::{BottRing, CohomologyClass, ExponentVector, IsoWitness, Polynomial, RingMap};
pub use tower::{StageSpec, TowerSpec};

/// Arbitrary precision integers used for every exponent and coefficient.
pub use num_bigint::BigInt;
