//! Lines through a point tangent to a curve, with their signs, against
//! `2 ind(Γ) − 2 ind_p(Γ)`.

use tangent_count::conic::{PointConfig, StrataSet};
use tangent_count::curve::{figure_eight, ImmersedCurve};
use tangent_count::invariant::toy_n1;
use tangent_count::kernel::{Pt, Tol};
use tangent_count::tangency::{audit_general_position, line_tangencies, signed_count};

fn main() -> tangent_count::Result<()> {
    let tol = Tol::default();
    let cases = [
        (
            "circle, p outside",
            ImmersedCurve::circle(Pt::ORIGIN, 1.0, 1)?,
            Pt::new(2.0, 0.5),
        ),
        (
            "circle, p inside",
            ImmersedCurve::circle(Pt::ORIGIN, 1.0, 1)?,
            Pt::new(0.2, 0.1),
        ),
        (
            "reversed circle",
            ImmersedCurve::circle(Pt::ORIGIN, 1.0, -1)?,
            Pt::new(2.0, 0.5),
        ),
        (
            "figure eight",
            figure_eight(Pt::ORIGIN, 1.0)?,
            Pt::new(0.5, 0.05),
        ),
    ];
    for (name, c, p) in &cases {
        audit_general_position(&PointConfig::new(1, vec![*p]), &StrataSet::toy(*p), c, &tol)
            .into_result()?;
        let events = line_tangencies(*p, c, &tol)?;
        println!("{name}:");
        for e in &events {
            println!(
                "  t = {:.6} at ({:.4}, {:.4}) tau = {:+}",
                e.t, e.point.x, e.point.y, e.tau
            );
        }
        println!(
            "  enumerated {}, formula {}",
            signed_count(&events),
            toy_n1(*p, c, &tol)?
        );
    }
    Ok(())
}
