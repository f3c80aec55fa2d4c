//! Planar primitives, tolerance policy, small dense solves and periodic root
//! isolation shared by every other module.

mod linalg;
mod point;
mod roots;
mod tol;

pub use linalg::{solve_dense, DenseSolution};
pub use point::{orient2d, Pt};
pub use roots::{roots_periodic, PeriodicRoot, SignChange};
pub use tol::Tol;
