//! Translate a small circle across the diagonal point of the unit square and
//! watch the count jump by `2 ι Δind`.

use tangent_count::conic::PointConfig;
use tangent_count::curve::CurveSpec;
use tangent_count::invariant::{homotopy_scan, HomotopyPath};
use tangent_count::kernel::{Pt, Tol};

fn main() -> tangent_count::Result<()> {
    let square = PointConfig::new(
        2,
        vec![
            Pt::new(0.0, 0.0),
            Pt::new(1.0, 0.0),
            Pt::new(1.0, 1.0),
            Pt::new(0.0, 1.0),
        ],
    );
    let start = Pt::new(0.3, 0.15);
    let path = HomotopyPath {
        curve: CurveSpec::Circle {
            center: start,
            radius: 0.1,
            turns: 1,
            phase: 0.0,
        },
        centers: vec![start, Pt::new(0.54, 0.47)],
        samples: 200,
    };
    let r = homotopy_scan(&path, &square, None, &Tol::default())?;
    let first = r.samples.first().and_then(|s| s.n_enum);
    let last = r.samples.last().and_then(|s| s.n_enum);
    println!("N at start {first:?}, at end {last:?}");
    for c in &r.crossings {
        println!(
            "crossing stratum {} at s = {:.6}: iota {:+}, delta ind {:+}, predicted jump {:+}",
            c.stratum, c.s, c.iota, c.delta_ind, c.predicted
        );
    }
    for j in &r.jumps {
        println!(
            "observed jump {:+} between s = {:.4} and {:.4}",
            j.delta_n, j.s_lo, j.s_hi
        );
    }
    println!("consistent: {}", r.consistent);
    Ok(())
}
