//! Conics through the corners of the unit square tangent to a curve: both
//! sides of the count for a far circle, far curves of every Whitney index
//! from -3 to 3, and circles around a diagonal point and a corner.

use tangent_count::conic::PointConfig;
use tangent_count::curve::{k_fold_circle, ImmersedCurve};
use tangent_count::invariant::verify_theorem;
use tangent_count::kernel::{Pt, Tol};

fn main() -> tangent_count::Result<()> {
    let tol = Tol::default();
    let square = PointConfig::new(
        2,
        vec![
            Pt::new(0.0, 0.0),
            Pt::new(1.0, 0.0),
            Pt::new(1.0, 1.0),
            Pt::new(0.0, 1.0),
        ],
    );
    let far = Pt::new(10.0, 10.0);
    let mut scenes = vec![(
        "far circle".to_string(),
        ImmersedCurve::circle(far, 0.1, 1)?,
    )];
    for k in -3..=3 {
        scenes.push((format!("far curve, index {k}"), k_fold_circle(k, far, 0.1)?));
    }
    scenes.push((
        "around diagonal point".into(),
        ImmersedCurve::circle(Pt::new(0.52, 0.47), 0.1, 1)?,
    ));
    scenes.push((
        "around corner".into(),
        ImmersedCurve::circle(Pt::ORIGIN, 0.1, 1)?,
    ));

    for (name, c) in &scenes {
        let r = verify_theorem(&square, c, &tol)?;
        println!(
            "{name:<24} N_enum = {:>3}  N_formula = {:>3}  ({} tangent conics)",
            r.n_enum.unwrap_or_default(),
            r.n_formula,
            r.events.len()
        );
    }
    Ok(())
}
