use crate::error::{Error, Result};

use super::Tol;

const MAX_DIM: usize = 6;

#[derive(Debug, Clone)]
pub struct DenseSolution {
    pub x: Vec<f64>,
    /// 1-norm condition estimate `‖A‖₁·‖A⁻¹‖₁`.
    pub cond: f64,
}

/// LU factorization with partial pivoting, stored in place.
struct Lu {
    n: usize,
    a: [[f64; MAX_DIM]; MAX_DIM],
    perm: [usize; MAX_DIM],
}

impl Lu {
    fn factor(rows: &[Vec<f64>]) -> Option<Lu> {
        let n = rows.len();
        let mut a = [[0.0; MAX_DIM]; MAX_DIM];
        for (i, row) in rows.iter().enumerate() {
            a[i][..n].copy_from_slice(row);
        }
        let mut perm = [0usize; MAX_DIM];
        for (i, p) in perm.iter_mut().enumerate() {
            *p = i;
        }
        for k in 0..n {
            let (piv, best) = (k..n)
                .map(|i| (i, a[i][k].abs()))
                .fold((k, -1.0), |acc, v| if v.1 > acc.1 { v } else { acc });
            if best == 0.0 || !best.is_finite() {
                return None;
            }
            a.swap(k, piv);
            perm.swap(k, piv);
            for i in k + 1..n {
                let f = a[i][k] / a[k][k];
                a[i][k] = f;
                let (top, bottom) = a.split_at_mut(i);
                for (x, y) in bottom[0][k + 1..n].iter_mut().zip(&top[k][k + 1..n]) {
                    *x -= f * y;
                }
            }
        }
        Some(Lu { n, a, perm })
    }

    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut y: Vec<f64> = (0..n).map(|i| b[self.perm[i]]).collect();
        for i in 0..n {
            for j in 0..i {
                y[i] -= self.a[i][j] * y[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                y[i] -= self.a[i][j] * y[j];
            }
            y[i] /= self.a[i][i];
        }
        y
    }
}

fn norm1(rows: &[Vec<f64>]) -> f64 {
    let n = rows.len();
    (0..n)
        .map(|j| rows.iter().map(|r| r[j].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Solve `A x = b` for `n <= 6` by Gaussian elimination with partial pivoting.
///
/// The condition number is estimated exactly in the 1-norm by forming the
/// inverse column by column; systems beyond `tol.eps_cond` are rejected.
pub fn solve_dense(a: &[Vec<f64>], b: &[f64], tol: &Tol) -> Result<DenseSolution> {
    let n = a.len();
    if n == 0 || n > MAX_DIM || b.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput(format!(
            "solve_dense expects a square system with 1 <= n <= {MAX_DIM}"
        )));
    }
    let lu = Lu::factor(a).ok_or(Error::IllConditioned {
        cond: f64::INFINITY,
    })?;
    let mut inv_norm1: f64 = 0.0;
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        let col = lu.solve(&e);
        inv_norm1 = inv_norm1.max(col.iter().map(|v| v.abs()).sum());
    }
    let cond = norm1(a) * inv_norm1;
    if !cond.is_finite() || cond > tol.eps_cond {
        return Err(Error::IllConditioned { cond });
    }
    let x = lu.solve(b);
    Ok(DenseSolution { x, cond })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(a: &[Vec<f64>], x: &[f64], b: &[f64]) -> f64 {
        a.iter()
            .zip(b)
            .map(|(row, bi)| {
                let ax: f64 = row.iter().zip(x).map(|(u, v)| u * v).sum();
                (ax - bi).powi(2)
            })
            .sum::<f64>()
            .sqrt()
    }

    #[test]
    fn identity_returns_rhs() {
        let a: Vec<Vec<f64>> = (0..4)
            .map(|i| (0..4).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        let b = vec![1.0, -2.0, 3.5, 0.25];
        let s = solve_dense(&a, &b, &Tol::default()).unwrap();
        assert_eq!(s.x, b);
        assert!((s.cond - 1.0).abs() < 1e-15);
    }

    #[test]
    fn singular_rows_rejected() {
        let a = vec![vec![1.0, 2.0], vec![1.0, 2.0]];
        let err = solve_dense(&a, &[1.0, 1.0], &Tol::default()).unwrap_err();
        assert!(matches!(err, Error::IllConditioned { .. }));
    }

    #[test]
    fn nearly_singular_rejected_by_condition() {
        let a = vec![vec![1.0, 1.0], vec![1.0, 1.0 + 1e-13]];
        let err = solve_dense(&a, &[1.0, 1.0], &Tol::default()).unwrap_err();
        assert!(matches!(err, Error::IllConditioned { .. }));
    }

    #[test]
    fn five_by_five_residual() {
        // Diagonally dominant, hence well conditioned.
        let a: Vec<Vec<f64>> = (0..5)
            .map(|i| {
                (0..5)
                    .map(|j| {
                        if i == j {
                            6.0 + i as f64
                        } else {
                            ((i * 7 + j * 3) % 5) as f64 * 0.3 - 0.6
                        }
                    })
                    .collect()
            })
            .collect();
        let b = vec![1.0, 2.0, -1.0, 0.5, 3.0];
        let s = solve_dense(&a, &b, &Tol::default()).unwrap();
        assert!(residual(&a, &s.x, &b) <= 1e-10);
    }

    #[test]
    fn rejects_oversized() {
        let a = vec![vec![1.0; 7]; 7];
        assert!(solve_dense(&a, &[0.0; 7], &Tol::default()).is_err());
    }
}
