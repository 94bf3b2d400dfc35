//! Exact connectedness analysis for planar self-affine fractals built from
//! collinear digit sets with a single jump.
//!
//! A pair of integers (p, q) fixes an expanding 2x2 integer matrix through
//! its characteristic polynomial x^2 + px + q, and a jump offset m >= -1
//! fixes the digit set {0, 1, ..., |q|-2, |q|+m} v. The attractor T of
//! A T = T + D is connected or not depending only on (p, q, m), and this
//! crate decides the question twice, by two routes that share no code
//! path:
//!
//! - [`classify::classify_theorem`] evaluates the closed-form answer.
//! - [`classify::classify_search`] runs an exact decision procedure: it
//!   builds the certified coefficient box for lattice points of T - T
//!   ([`sequences`]), prunes the box to the greatest fixed point of the
//!   digit-shift successor relation ([`neighbors`]), and checks the
//!   piecewise connectedness criterion, extracting eventually periodic
//!   expansion words as machine-checkable certificates.
//!
//! Everything decision-relevant runs in exact rational arithmetic;
//! rendering ([`render`]) is the only floating-point consumer.

pub mod classify;
pub mod error;
pub mod neighbors;
pub mod params;
pub mod ratio;
pub mod render;
pub mod sequences;

pub use classify::{
    classify_search, classify_search_with, classify_theorem, sweep, sweep_csv, sweep_with,
    Classification, Evidence, Method, SweepRow, Verdict,
};
pub use error::{Error, Result};
pub use neighbors::{
    is_member, is_member_with, membership_table, membership_table_with, step, verify_expansion,
    ExpansionWord, LatticePoint, MembershipTable, SweepOrder, DEFAULT_STATE_CAP,
};
pub use params::{expanding_crosscheck, CompanionRealization, DigitSet, FractalParams};
pub use render::{
    attractor_points, render_attractor, render_parameter_map, RasterImage, DEFAULT_POINT_BUDGET,
};
pub use sequences::{alpha_beta, coefficient_box, tilde_bounds, AlphaBetaSequence, BoundsBox};
