use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::Tol;

/// Direction in which a function crosses zero at a simple root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignChange {
    NegToPos,
    PosToNeg,
}

impl SignChange {
    /// `+1` for an increasing crossing, `-1` for a decreasing one.
    pub fn sign(self) -> i64 {
        match self {
            SignChange::NegToPos => 1,
            SignChange::PosToNeg => -1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            SignChange::NegToPos => SignChange::PosToNeg,
            SignChange::PosToNeg => SignChange::NegToPos,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodicRoot {
    pub t: f64,
    pub change: SignChange,
}

const MAX_DOUBLINGS: usize = 4;
const DEGENERATE_STREAK: usize = 3;
/// Local minima of |f| below this fraction of the sample scale are probed for
/// hidden root pairs and double roots.
const PROBE_FRACTION: f64 = 0.05;
const NEWTON_SWITCH_WIDTH: f64 = 1e-9;
const DIFF_STEP: f64 = 1e-7;

struct Scan {
    roots: Vec<PeriodicRoot>,
    degenerate_at: Option<f64>,
}

fn wrap(t: f64, eps_root: f64) -> f64 {
    let mut t = t.rem_euclid(1.0);
    if t >= 1.0 - 0.5 * eps_root {
        t = 0.0;
    }
    t
}

/// Sorted simple zeros of a 1-periodic function on `[0, 1)`.
///
/// The function is sampled on a uniform grid of `tol.grid_n` points; every sign
/// change is bracketed, bisected and polished by Newton iterations with a
/// central-difference derivative. The grid is doubled until two consecutive
/// densities agree on the number of roots.
///
/// Zeros that are not bracketed by a sign change (double roots, or samples
/// numerically indistinguishable from zero with equal-signed neighbours) that
/// persist through two refinements produce [`Error::DegenerateZero`]. The
/// zero threshold is `tol.eps_abs` relative to the largest sampled `|f|`.
pub fn roots_periodic<F>(f: F, tol: &Tol) -> Result<Vec<PeriodicRoot>>
where
    F: Fn(f64) -> f64,
{
    let g = |t: f64| f(t.rem_euclid(1.0));
    let mut n = tol.grid_n.max(64);
    let mut prev = scan(&g, n, tol)?;
    let mut streak = usize::from(prev.degenerate_at.is_some());
    for _ in 0..MAX_DOUBLINGS {
        n *= 2;
        let cur = scan(&g, n, tol)?;
        if let Some(t) = cur.degenerate_at {
            streak += 1;
            if streak >= DEGENERATE_STREAK {
                return Err(Error::DegenerateZero { t });
            }
        } else {
            streak = 0;
        }
        if prev.degenerate_at.is_none()
            && cur.degenerate_at.is_none()
            && prev.roots.len() == cur.roots.len()
        {
            return Ok(cur.roots);
        }
        prev = cur;
    }
    let t = prev
        .degenerate_at
        .or_else(|| prev.roots.first().map(|r| r.t))
        .unwrap_or(0.0);
    Err(Error::DegenerateZero { t })
}

fn scan<F: Fn(f64) -> f64>(f: &F, n: usize, tol: &Tol) -> Result<Scan> {
    let h = 1.0 / n as f64;
    let vals: Vec<f64> = (0..n).map(|i| f(i as f64 * h)).collect();
    if vals.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput(
            "function is not finite on the sampling grid".into(),
        ));
    }
    let scale = vals.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let thr = tol.eps_abs * scale;
    if scale == 0.0 {
        return Ok(Scan {
            roots: Vec::new(),
            degenerate_at: Some(0.0),
        });
    }
    let sign = |v: f64| -> i8 {
        if v.abs() <= thr {
            0
        } else if v > 0.0 {
            1
        } else {
            -1
        }
    };
    let signs: Vec<i8> = vals.iter().map(|&v| sign(v)).collect();
    let start = signs.iter().position(|&s| s != 0).expect("scale > 0");

    let mut roots = Vec::new();
    let mut degenerate_at = None;

    // Walk once around the circle starting from a nonzero sample.
    let mut last = start;
    for k in 1..=n {
        let j = start + k;
        let s = signs[j % n];
        if s == 0 {
            continue;
        }
        let ls = signs[last % n];
        if s != ls {
            let a = last as f64 * h;
            let b = j as f64 * h;
            let (fa, fb) = (vals[last % n], vals[j % n]);
            let t = refine(f, a, b, fa, fb, tol);
            let change = if ls < 0 {
                SignChange::NegToPos
            } else {
                SignChange::PosToNeg
            };
            roots.push(PeriodicRoot {
                t: wrap(t, tol.eps_root),
                change,
            });
        } else if j - last > 1 {
            degenerate_at = Some(wrap(((last + j) / 2) as f64 * h, tol.eps_root));
        }
        last = j;
    }

    // Probe shallow local minima of |f| for root pairs hidden between samples
    // and for double roots.
    for i in 0..n {
        let (im, ip) = ((i + n - 1) % n, (i + 1) % n);
        let s = signs[i];
        if s == 0 || signs[im] != s || signs[ip] != s {
            continue;
        }
        let (vm, v, vp) = (vals[im].abs(), vals[i].abs(), vals[ip].abs());
        if !(v <= vm && v < vp) || v > PROBE_FRACTION * scale {
            continue;
        }
        let a = (i as f64 - 1.0) * h;
        let b = (i as f64 + 1.0) * h;
        let sf = f64::from(s);
        let (tm, fm) = golden_min(|t| sf * f(t), a, b, 60);
        if fm < -thr {
            // Two simple roots straddle the dip.
            let fa = f(a);
            let fb = f(b);
            let fmid = f(tm);
            let t1 = refine(f, a, tm, fa, fmid, tol);
            let t2 = refine(f, tm, b, fmid, fb, tol);
            let (c1, c2) = if s > 0 {
                (SignChange::PosToNeg, SignChange::NegToPos)
            } else {
                (SignChange::NegToPos, SignChange::PosToNeg)
            };
            roots.push(PeriodicRoot {
                t: wrap(t1, tol.eps_root),
                change: c1,
            });
            roots.push(PeriodicRoot {
                t: wrap(t2, tol.eps_root),
                change: c2,
            });
        } else if fm <= thr {
            degenerate_at = Some(wrap(tm, tol.eps_root));
        }
    }

    roots.sort_by(|a, b| a.t.total_cmp(&b.t));
    Ok(Scan {
        roots,
        degenerate_at,
    })
}

/// Bisection on a sign-changing bracket followed by a safeguarded Newton polish.
fn refine<F: Fn(f64) -> f64>(
    f: &F,
    mut a: f64,
    mut b: f64,
    mut fa: f64,
    fb: f64,
    tol: &Tol,
) -> f64 {
    debug_assert!(fa * fb <= 0.0);
    if fa == 0.0 {
        return a;
    }
    if fb == 0.0 {
        return b;
    }
    let bisect_to = |a: &mut f64, b: &mut f64, fa: &mut f64, width: f64| {
        while *b - *a > width {
            let m = 0.5 * (*a + *b);
            let fm = f(m);
            if fm == 0.0 {
                *a = m;
                *b = m;
                break;
            }
            if (fm > 0.0) == (*fa > 0.0) {
                *a = m;
                *fa = fm;
            } else {
                *b = m;
            }
        }
    };
    bisect_to(
        &mut a,
        &mut b,
        &mut fa,
        NEWTON_SWITCH_WIDTH.max(tol.eps_root),
    );
    if a == b {
        return a;
    }
    let mut t = 0.5 * (a + b);
    for _ in 0..12 {
        let ft = f(t);
        let d = (f(t + DIFF_STEP) - f(t - DIFF_STEP)) / (2.0 * DIFF_STEP);
        if d == 0.0 || !d.is_finite() {
            break;
        }
        let next = t - ft / d;
        if !(a..=b).contains(&next) {
            break;
        }
        let step = (next - t).abs();
        t = next;
        if step <= tol.eps_root {
            return t;
        }
    }
    // Newton did not settle; finish by bisection.
    bisect_to(&mut a, &mut b, &mut fa, tol.eps_root);
    0.5 * (a + b)
}

/// Golden-section minimization on `[a, b]`; returns the best point seen.
fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut best = if fc < fd { (c, fc) } else { (d, fd) };
    for _ in 0..iters {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
            if fc < best.1 {
                best = (c, fc);
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
            if fd < best.1 {
                best = (d, fd);
            }
        }
        if best.1 < 0.0 {
            break;
        }
    }
    best
}
