//! Finite matrix groups over Z/nZ and the degree, level and sporadic-point
//! bookkeeping for the modular curves X_1(n).
//!
//! The matrix and group types are generic over the residue word (`u16`,
//! `u32`, `u64`); the aliases below fix `u32`, which covers every modulus a
//! closure can realistically materialize.

pub mod classify;
pub mod curveinv;
pub mod error;
pub mod levels;
pub mod matgroup;
pub mod modarith;
pub mod orbits;
pub mod rational;
pub mod sporadic;

pub use error::{Error, Result};
pub use modarith::Residue;

pub type Mat2 = modarith::Mat2ModN<u32>;
pub type Vec2 = modarith::Vec2ModN<u32>;
pub type Group = matgroup::MatGroup<u32>;

pub type Mat2U16 = modarith::Mat2ModN<u16>;
pub type GroupU16 = matgroup::MatGroup<u16>;
pub type Mat2U64 = modarith::Mat2ModN<u64>;
pub type GroupU64 = matgroup::MatGroup<u64>;

/// Exact rationals used for thresholds and degrees.
pub type Rational = num_rational::Ratio<i128>;
