//! Whitney index, winding numbers and double points of a few closed curves.

use tangent_count::curve::{
    figure_eight, index_report, k_fold_circle, lissajous, self_intersections,
};
use tangent_count::kernel::{Pt, Tol};

fn main() -> tangent_count::Result<()> {
    let tol = Tol::default();
    let probes = [Pt::new(0.5, 0.05), Pt::new(-0.5, 0.05), Pt::new(3.0, 3.0)];
    let curves = [
        ("figure eight", figure_eight(Pt::ORIGIN, 1.0)?),
        ("3-fold circle", k_fold_circle(3, Pt::ORIGIN, 1.0)?),
        ("-2-fold circle", k_fold_circle(-2, Pt::ORIGIN, 1.0)?),
        ("lissajous 3:2", lissajous(3, 2, 0.4, Pt::ORIGIN, 1.0)?),
    ];
    for (name, c) in &curves {
        let r = index_report(c, &probes, &tol)?;
        let doubles = self_intersections(c, &tol)?;
        println!(
            "{name}: whitney {}, double points {}",
            r.whitney,
            doubles.len()
        );
        for (i, p) in probes.iter().enumerate() {
            match r.windings.get(&i) {
                Some(w) => println!("  winding around ({}, {}) = {w}", p.x, p.y),
                None => println!("  ({}, {}) lies on the curve", p.x, p.y),
            }
        }
    }
    Ok(())
}
