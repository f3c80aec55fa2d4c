use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical tolerances used throughout the engine.
///
/// `grid_n` must be a power of two no smaller than 64 so that root scans can
/// refine by doubling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tol {
    pub eps_abs: f64,
    pub eps_root: f64,
    pub eps_cond: f64,
    pub grid_n: usize,
}

impl Default for Tol {
    fn default() -> Self {
        Tol {
            eps_abs: 1e-9,
            eps_root: 1e-12,
            eps_cond: 1e10,
            grid_n: 4096,
        }
    }
}

impl Tol {
    pub fn validate(&self) -> Result<()> {
        let positive = [self.eps_abs, self.eps_root, self.eps_cond]
            .iter()
            .all(|v| v.is_finite() && *v > 0.0);
        if !positive {
            return Err(Error::InvalidInput(
                "tolerances must be finite and strictly positive".into(),
            ));
        }
        if self.grid_n < 64 || !self.grid_n.is_power_of_two() {
            return Err(Error::InvalidInput(format!(
                "grid_n = {} must be a power of two >= 64",
                self.grid_n
            )));
        }
        Ok(())
    }

    pub fn with_grid(mut self, grid_n: usize) -> Self {
        self.grid_n = grid_n;
        self
    }

    pub fn with_root_tol(mut self, eps_root: f64) -> Self {
        self.eps_root = eps_root;
        self
    }
}
