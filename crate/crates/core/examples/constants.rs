//! Tabulated enumerative constants and stratum weights.

use tangent_count::conic::{iota, kontsevich_nd, welschinger_wd, StratumKind};

fn main() -> tangent_count::Result<()> {
    for d in 1..=5 {
        println!("N_{d} = {}", kontsevich_nd(d)?);
    }
    for d in 1..=3 {
        println!("W_{d} = {}", welschinger_wd(d)?);
    }
    let wd = welschinger_wd(3)?;
    for m in 0..=3 {
        let kind = StratumKind::BasePoint {
            node_signs: vec![1; m],
        };
        println!(
            "cubic base point, {m} positive nodal curves: iota = {}",
            iota(&kind, wd)
        );
    }
    println!(
        "cusp, w = +1: iota = {}",
        iota(&StratumKind::Cusp { w: 1 }, wd)
    );
    println!(
        "reducible, w = +1: iota = {}",
        iota(&StratumKind::Reducible { w: 1 }, wd)
    );
    Ok(())
}
