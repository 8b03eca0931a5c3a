//! Exact invariants of finite groups.
//!
//! Groups are dense multiplication tables with elements numbered
//! `0..order` (identity is `0`). On top of that sit finitely presented
//! groups with Todd-Coxeter coset enumeration, the nonabelian tensor and
//! exterior squares built from pair presentations, exact-rational
//! commutativity and exterior degrees, and an independent bar-complex
//! homology oracle for the Schur multiplier.

pub mod bitset;
pub mod degrees;
pub mod error;
pub mod group;
pub mod homology;
pub mod presentation;
pub mod wedge;

pub use error::{Error, Result};
