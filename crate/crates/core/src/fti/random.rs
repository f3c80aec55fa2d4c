use std::f64::consts::TAU;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{functional_sum, AlternatingSum, ArcShape, DiskSpec, Functional, SingularCurveSpec};
use crate::conic::{Pencil, PointConfig};
use crate::curve::{distance_to_point, ClosedCurve, CurveSpec, ImmersedCurve};
use crate::error::{Error, Result};
use crate::invariant::strata_for_d2;
use crate::kernel::{Pt, Tol};

const MAX_ATTEMPTS: usize = 200;

/// Which functional a random suite exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FunctionalKind {
    LineCount,
    ConicCount,
    ToyFormula,
    Whitney,
}

impl FromStr for FunctionalKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "line-count" => Ok(FunctionalKind::LineCount),
            "conic-count" => Ok(FunctionalKind::ConicCount),
            "toy-formula" => Ok(FunctionalKind::ToyFormula),
            "whitney" => Ok(FunctionalKind::Whitney),
            _ => Err(Error::InvalidInput(format!(
                "unknown functional '{s}' (line-count, conic-count, toy-formula, whitney)"
            ))),
        }
    }
}

/// A random singular curve, the functional it is tested with, and the sum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomCase {
    pub spec: SingularCurveSpec,
    pub functional: Functional,
    pub result: AlternatingSum,
}

/// Star-shaped base curve with a few random harmonics.
fn random_base(rng: &mut ChaCha8Rng) -> Result<ImmersedCurve> {
    let center = Pt::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
    let r0 = rng.gen_range(1.0..1.5);
    let harmonics: Vec<(f64, f64, f64)> = (2..=4)
        .map(|k| {
            (
                f64::from(k),
                rng.gen_range(-0.1..0.1),
                rng.gen_range(0.0..TAU),
            )
        })
        .collect();
    let n = 96;
    let samples = (0..n)
        .map(|i| {
            let th = TAU * i as f64 / n as f64;
            let r = r0
                * (1.0
                    + harmonics
                        .iter()
                        .map(|(k, a, ph)| a * (k * th + ph).cos())
                        .sum::<f64>());
            center + Pt::polar(r, th)
        })
        .collect();
    let c = ImmersedCurve::spline(samples)?;
    Ok(if rng.gen_bool(0.5) { c.reversed() } else { c })
}

fn random_pair(rng: &mut ChaCha8Rng, allow_base: bool) -> [ArcShape; 2] {
    let s = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.5) { 1 } else { -1 };
    let mut choices: Vec<u8> = vec![0, 1, 2];
    if allow_base {
        choices.extend([3, 4]);
    }
    let mut pair = match *choices.choose(rng).expect("nonempty") {
        0 => [ArcShape::Bump { sign: 1 }, ArcShape::Bump { sign: -1 }],
        1 => [ArcShape::Loop { sign: 1 }, ArcShape::Loop { sign: -1 }],
        2 => [
            ArcShape::Bump { sign: s(rng) },
            ArcShape::Loop { sign: s(rng) },
        ],
        3 => [ArcShape::Base, ArcShape::Loop { sign: s(rng) }],
        _ => [ArcShape::Base, ArcShape::Bump { sign: s(rng) }],
    };
    if rng.gen_bool(0.5) {
        pair.swap(0, 1);
    }
    pair
}

/// A point at least `gap` away from the curve, inside a box around it.
fn random_point_off<C: ClosedCurve + ?Sized>(
    rng: &mut ChaCha8Rng,
    c: &C,
    center: Pt,
    half: f64,
    gap: f64,
) -> Pt {
    loop {
        let p = center + Pt::new(rng.gen_range(-half..half), rng.gen_range(-half..half));
        if distance_to_point(c, p).0 >= gap {
            return p;
        }
    }
}

fn try_case(kind: FunctionalKind, n: usize, rng: &mut ChaCha8Rng, tol: &Tol) -> Result<RandomCase> {
    let base = random_base(rng)?;
    let scale = base.diameter();
    let center = base.polyline(64).iter().fold(Pt::ORIGIN, |s, p| s + *p) / 64.0;
    let marked_at_disk = n > 0 && kind != FunctionalKind::Whitney && rng.gen_bool(0.5);

    let t0: f64 = rng.gen_range(0.0..1.0);
    let mut disks = Vec::with_capacity(n);
    for i in 0..n {
        let t_c = t0 + i as f64 / n as f64 + rng.gen_range(-0.08..0.08);
        let radius = rng.gen_range(0.06..0.1) * scale;
        let pair = random_pair(rng, !(marked_at_disk && i == 0));
        disks.push(DiskSpec::on_curve(
            &base,
            t_c.rem_euclid(1.0),
            radius,
            pair,
        )?);
    }

    let gap = 0.02 * scale;
    let functional = match kind {
        FunctionalKind::Whitney => Functional::Whitney,
        FunctionalKind::LineCount | FunctionalKind::ToyFormula => {
            let p = if marked_at_disk {
                disks[0].center
            } else {
                random_point_off(rng, &base, center, 0.6 * scale, gap)
            };
            if kind == FunctionalKind::LineCount {
                Functional::LineCount { p }
            } else {
                Functional::ToyFormula { p }
            }
        }
        FunctionalKind::ConicCount => {
            let mut pts = Vec::with_capacity(4);
            if marked_at_disk {
                pts.push(disks[0].center);
            }
            while pts.len() < 4 {
                pts.push(random_point_off(rng, &base, center, 0.7 * scale, gap));
            }
            let points = [pts[0], pts[1], pts[2], pts[3]];
            let cfg = PointConfig::new(2, pts);
            cfg.validate(tol)?;
            well_spread(&points, scale)?;
            Pencil::new(points, tol)?;
            // Diagonal points must keep clear of the base curve as well,
            // except the one deliberately placed at a disk center.
            let (strata, _) = strata_for_d2(&cfg, tol)?;
            for e in &strata.entries {
                let on_purpose = marked_at_disk && e.point == disks[0].center;
                if !on_purpose && distance_to_point(&base, e.point).0 < gap {
                    return Err(Error::DegenerateConfig(
                        "stratum point near the curve".into(),
                    ));
                }
            }
            Functional::ConicCount { points }
        }
    };

    let spec = SingularCurveSpec {
        base: CurveSpec::from(&base),
        disks,
    };
    let prepared = spec.prepare(tol)?;
    let result = functional_sum(&prepared, &functional, tol)?;
    Ok(RandomCase {
        spec,
        functional,
        result,
    })
}

/// Rejects quadrilaterals with nearly collinear triples or very close points,
/// which produce badly conditioned pencils.
fn well_spread(points: &[Pt; 4], scale: f64) -> Result<()> {
    for i in 0..4 {
        for j in i + 1..4 {
            if points[i].dist(points[j]) < 0.15 * scale {
                return Err(Error::DegenerateConfig("points too close".into()));
            }
            for k in j + 1..4 {
                let (a, b, c) = (points[i], points[j], points[k]);
                let area = (b - a).cross(c - a).abs();
                if area < 0.02 * scale * scale {
                    return Err(Error::DegenerateConfig("points nearly collinear".into()));
                }
            }
        }
    }
    Ok(())
}

/// Draws random cases until one has all `2ⁿ` resolutions generic.
pub fn random_case(
    kind: FunctionalKind,
    n: usize,
    rng: &mut ChaCha8Rng,
    tol: &Tol,
) -> Result<RandomCase> {
    let mut last = None;
    for _ in 0..MAX_ATTEMPTS {
        match try_case(kind, n, rng, tol) {
            Ok(c) => return Ok(c),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteCase {
    pub index: usize,
    pub sum: i64,
    pub values: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub functional: FunctionalKind,
    pub d: u32,
    pub k: u32,
    /// Number of disks per case, one more than the degree bound.
    pub n: usize,
    pub seed: u64,
    pub cases: Vec<SuiteCase>,
    /// Cases whose resolutions did not all give the same value.
    pub nontrivial: usize,
    pub all_zero: bool,
}

/// Alternating sums over `count` random specs with `3d − k` disks each.
///
/// A nonzero sum is returned as [`Error::CounterexampleFound`] carrying the
/// offending case as JSON.
pub fn degree_bound_suite(
    kind: FunctionalKind,
    d: u32,
    k: u32,
    count: usize,
    seed: u64,
    tol: &Tol,
) -> Result<SuiteReport> {
    if 3 * d <= k {
        return Err(Error::InvalidInput(format!(
            "3d - k must be positive (d = {d}, k = {k})"
        )));
    }
    let n = (3 * d - k) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::with_capacity(count);
    let mut nontrivial = 0;
    for index in 0..count {
        let case = random_case(kind, n, &mut rng, tol)?;
        let values: Vec<i64> = case.result.terms.iter().map(|t| t.value).collect();
        if values.iter().any(|v| *v != values[0]) {
            nontrivial += 1;
        }
        if case.result.sum != 0 {
            return Err(Error::CounterexampleFound {
                sum: case.result.sum,
                spec: serde_json::to_string(&case)?,
            });
        }
        cases.push(SuiteCase {
            index,
            sum: case.result.sum,
            values,
        });
    }
    Ok(SuiteReport {
        schema: 1,
        functional: kind,
        d,
        k,
        n,
        seed,
        cases,
        nontrivial,
        all_zero: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_count_suite_small() {
        let r = degree_bound_suite(FunctionalKind::LineCount, 1, 1, 3, 7, &Tol::default()).unwrap();
        assert_eq!(r.n, 2);
        assert!(r.all_zero);
        assert_eq!(r.cases.len(), 3);
    }

    #[test]
    fn deterministic_for_seed() {
        let tol = Tol::default();
        let a = random_case(
            FunctionalKind::Whitney,
            2,
            &mut ChaCha8Rng::seed_from_u64(3),
            &tol,
        )
        .unwrap();
        let b = random_case(
            FunctionalKind::Whitney,
            2,
            &mut ChaCha8Rng::seed_from_u64(3),
            &tol,
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn functional_names_parse() {
        assert_eq!(
            "conic-count".parse::<FunctionalKind>().unwrap(),
            FunctionalKind::ConicCount
        );
        assert!("bogus".parse::<FunctionalKind>().is_err());
    }
}
