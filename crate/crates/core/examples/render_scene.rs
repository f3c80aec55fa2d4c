//! Writes an SVG of the tangent conics for a scenario file.
//!
//! `cargo run --example render_scene -- presets/diagonal_circle_d2.json out.svg`

use std::path::PathBuf;

use tangent_count::invariant::evaluate;
use tangent_count::io::svg::{count_markers, render, Scene};
use tangent_count::io::Scenario;
use tangent_count::Error;

fn main() -> tangent_count::Result<()> {
    let mut args = std::env::args().skip(1);
    let input = args.next().map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("presets/diagonal_circle_d2.json")
    });
    let output = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("scene.svg"));

    let scenario = Scenario::load(&input)?;
    let cfg = scenario.config()?;
    let curve = scenario.curve()?;
    let report = evaluate(
        cfg,
        scenario.strata_override()?.as_ref(),
        &curve,
        &scenario.tol(),
    )?;
    let strata = scenario.strata_override()?;
    let title = scenario.name.clone().unwrap_or_default();
    let svg = render(&Scene {
        curve: &curve,
        points: &cfg.points,
        strata: strata.as_ref(),
        events: &report.events,
        title: &title,
    });
    std::fs::write(&output, &svg).map_err(Error::Io)?;
    println!(
        "{} tangency markers written to {}",
        count_markers(&svg),
        output.display()
    );
    Ok(())
}
