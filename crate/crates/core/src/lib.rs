//! Affine winding numbers of piecewise-linear closed curves on surfaces.
//!
//! The crate counts signed passages of a PL homotopy through a point
//! ([`winding::delta_awin`]), reduces them into the indeterminacy quotient of
//! the curve's component ([`groups`]), handles moving observation points
//! ([`moving`]), checks the generalized Cauchy formula numerically
//! ([`cauchy`]) and turns the counts into passage lower bounds for
//! propagating fronts ([`wavefront`]).
//!
//! All counting is exact: coordinates are arbitrary-precision rationals and
//! every sign comes from [`geom::orient`]. Floating point appears only in the
//! contour-integration module.
//!
//! # Orientation contract
//!
//! A track with frames `v^0, ..., v^S` (each a closed polygon with `K`
//! vertices) is triangulated slab by slab: edge `i` of slab `s` yields
//!
//! ```text
//! (v_i^s, v_{i+1}^s, v_{i+1}^{s+1})   and   (v_i^s, v_{i+1}^{s+1}, v_i^{s+1})
//! ```
//!
//! Both are counterclockwise in (curve parameter, time) coordinates. The
//! domain `N x I` is oriented by (time, curve parameter), so a preimage in one
//! of these triangles counts with the opposite of its image orientation. With
//! this convention a counterclockwise loop growing around a point contributes
//! `+1`, passage counts on the plane equal differences of classical winding
//! numbers, and sweeping a loop of torus class `(m, n)` once along the class
//! `(a, b)` has degree `a n - b m`.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod cauchy;
pub mod curve;
pub mod error;
pub mod geom;
pub mod groups;
pub mod moving;
pub mod surface;
pub mod wavefront;
pub mod winding;

pub use cauchy::{CauchyReport, Complex64, Pole, QuadParams, RationalFn};
pub use curve::{HomotopyTrack, PLCurve, PLPath};
pub use error::{Error, Violation};
pub use geom::{Pt, Rat, TriangleClass};
pub use groups::{ConditionReport, ManifoldMeta, Subgroup, Verdict};
pub use surface::{ComponentDesc, Surface};
pub use wavefront::FrontSnapshot;
pub use winding::QuotientInt;

pub type Result<T, E = Error> = core::result::Result<T, E>;
