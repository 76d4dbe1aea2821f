//! Modular invariant rings of finite matrix groups over prime fields.
//!
//! The crate builds `F_p[V]^G` as a quotient `S'/I` of a weighted polynomial
//! ring on fundamental invariants and computes its homological scorecard:
//! depth, Krull dimension, Serre conditions, the local-cohomology table
//! (through graded duality with `Ext_{S'}(R, S')`), grade and height of
//! homogeneous ideals, Cohen–Macaulay defect loci and the height of the
//! transfer ideal.
//!
//! Layout:
//!
//! * [`algebra`]: prime fields, monomials, polynomials, dense matrices.
//! * [`groebner`]: Buchberger over free modules, ideals, elimination,
//!   Hilbert series and Krull dimension.
//! * [`action`]: matrix groups, transfer, norm, Reynolds operator,
//!   invariant slices, cyclic group cohomology.
//! * [`invariants`]: fundamental invariants and presentations.
//! * [`homology`]: resolutions, Ext, and the diagnostics built on them.

pub mod action;
pub mod algebra;
mod error;
pub mod groebner;
pub mod homology;
pub mod invariants;
mod limits;
pub mod par;

pub use error::{Error, Result};
pub use limits::Limits;
