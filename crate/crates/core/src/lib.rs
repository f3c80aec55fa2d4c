//! Signed counts of real rational curves (lines and conics) through fixed
//! points and tangent to an oriented immersed plane curve, computed two ways:
//! by direct enumeration of the tangent curves, and by an index formula in
//! terms of the Whitney index of the curve and its winding numbers around a
//! finite set of weighted points.
//!
//! Modules, bottom up:
//!
//! - [`kernel`]: points, tolerances, periodic root finding, small dense solves.
//! - [`curve`]: closed immersed curves, Whitney index, winding numbers,
//!   double points.
//! - [`conic`]: lines and conics, point configurations, pencils of conics,
//!   stratum sets and the enumerative constants.
//! - [`tangency`]: tangency enumeration with signs and the general-position audit.
//! - [`invariant`]: the index formula, the two-sided check, homotopy scans.
//! - [`fti`]: singular curves with disk resolutions and alternating sums.
//! - [`io`]: scenario files, SVG scenes and the CLI.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod conic;
pub mod curve;
pub mod error;
pub mod fti;
pub mod invariant;
pub mod io;
pub mod kernel;
pub mod tangency;

pub use error::{Error, Result};
