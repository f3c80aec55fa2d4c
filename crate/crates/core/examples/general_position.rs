//! The audit rejects inputs where the count is not defined; an off-centre
//! circle around the same diagonal point passes.

use tangent_count::conic::PointConfig;
use tangent_count::curve::ImmersedCurve;
use tangent_count::invariant::verify_theorem;
use tangent_count::kernel::{Pt, Tol};
use tangent_count::Error;

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
    let scenes = [
        (
            "centred on (0.5, 0.5)",
            ImmersedCurve::circle(Pt::new(0.5, 0.5), 0.1, 1)?,
        ),
        (
            "through a corner",
            ImmersedCurve::circle(Pt::new(0.1, 0.0), 0.1, 1)?,
        ),
        (
            "off centre",
            ImmersedCurve::circle(Pt::new(0.52, 0.47), 0.1, 1)?,
        ),
    ];
    for (name, c) in &scenes {
        match verify_theorem(&square, c, &tol) {
            Ok(r) => println!("{name}: generic, N = {}", r.n_formula),
            Err(Error::Audit(violations)) => {
                println!("{name}: rejected");
                for v in violations {
                    println!("  {v}");
                }
            }
            Err(e) => return Err(e),
        }
    }
    Ok(())
}
