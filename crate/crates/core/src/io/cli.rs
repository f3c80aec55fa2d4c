//! Command-line front end. Every subcommand reads a scenario file, writes a
//! JSON report to stdout (and to `--out DIR` when given), and maps failures
//! to exit codes with a JSON error on stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use super::scenario::{Scenario, SCHEMA};
use super::svg::{render, Scene};
use crate::conic::{kontsevich_nd, welschinger_wd, PointConfig, StrataSet};
use crate::curve::{index_report, self_intersections, ImmersedCurve, SelfIntersection};
use crate::error::{Error, Result};
use crate::fti::{degree_bound_suite, functional_sum, Functional};
use crate::invariant::{default_strata, evaluate, evaluate_formula, homotopy_scan, StratumTerm};
use crate::kernel::{Pt, Tol};
use crate::tangency::{audit_and_enumerate, signed_count, TangencyEvent};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_AUDIT: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "tangent-count",
    version,
    about = "Signed counts of lines and conics tangent to plane curves"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Clone, Args)]
struct Common {
    /// Scenario JSON file.
    #[arg(long)]
    scenario: PathBuf,
    /// Override the root-polishing tolerance.
    #[arg(long)]
    tol_root: Option<f64>,
    /// Override the initial root-scan grid size (power of two, >= 64).
    #[arg(long)]
    grid: Option<usize>,
    /// Override the random seed of FTI suites.
    #[arg(long)]
    seed: Option<u64>,
    /// Also write reports (and SVG files) into this directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Whitney index and winding numbers around the fixed and stratum points.
    Index(Common),
    /// Lines through the point of a d = 1 scenario tangent to the curve.
    CountLines(Common),
    /// Conics through the four points of a d = 2 scenario tangent to the curve.
    CountConics(Common),
    /// Evaluate the index formula only.
    Formula(Common),
    /// Enumerate and evaluate the formula, and compare.
    Verify(Common),
    /// Homotopy scan along the scenario path.
    Scan(Common),
    /// Alternating sums over disk resolutions, or a random degree-bound suite.
    Fti(Common),
    /// Tabulated constants.
    Constants {
        /// Number of complex rational curves of degree D through 3D - 1 points.
        #[arg(long, value_name = "D")]
        nd: Option<u32>,
        /// Welschinger invariant of degree D.
        #[arg(long, value_name = "D")]
        wd: Option<u32>,
    },
    /// SVG scene (one per sample for a path scenario).
    Render(Common),
}

/// A report tagged with the schema version.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Versioned<T> {
    pub schema: u32,
    #[serde(flatten)]
    pub body: T,
}

fn versioned<T>(body: T) -> Versioned<T> {
    Versioned {
        schema: SCHEMA,
        body,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointWinding {
    pub point: Pt,
    pub winding: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexOutput {
    pub whitney: i64,
    pub points: Vec<PointWinding>,
    pub self_intersections: Vec<SelfIntersection>,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountOutput {
    pub d: u32,
    #[serde(rename = "N")]
    pub n: i64,
    pub events: Vec<TangencyEvent>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormulaOutput {
    pub wd: i64,
    pub whitney: i64,
    pub strata: Vec<StratumTerm>,
    #[serde(rename = "N_formula")]
    pub n_formula: i64,
    pub excluded: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantsOutput {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub nd: Option<ConstantValue>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wd: Option<ConstantValue>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantValue {
    pub d: u32,
    pub value: i128,
}

/// Exit code for an engine error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CounterexampleFound { .. } => EXIT_COUNTEREXAMPLE,
        Error::DegenerateConfig(_) => EXIT_AUDIT,
        e if e.is_general_position_failure() => EXIT_AUDIT,
        Error::InvalidInput(_) | Error::Io(_) | Error::Json(_) | Error::Unsupported { .. } => {
            EXIT_USAGE
        }
        _ => EXIT_NUMERIC,
    }
}

/// Machine-readable error document written to stderr.
pub fn error_json(e: &Error) -> serde_json::Value {
    let mut v = serde_json::json!({
        "error": e.kind(),
        "message": e.to_string(),
        "exit_code": exit_code(e),
    });
    if let Error::Audit(violations) = e {
        v["violations"] = serde_json::to_value(violations).unwrap_or_default();
    }
    v
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

struct Ctx {
    scenario: Scenario,
    tol: Tol,
    seed: Option<u64>,
    out: Option<PathBuf>,
}

impl Ctx {
    fn new(c: &Common) -> Result<Ctx> {
        let scenario = Scenario::load(&c.scenario)?;
        let mut tol = scenario.tol();
        if let Some(r) = c.tol_root {
            tol.eps_root = r;
        }
        if let Some(g) = c.grid {
            tol.grid_n = g;
        }
        tol.validate()?;
        Ok(Ctx {
            scenario,
            tol,
            seed: c.seed,
            out: c.out.clone(),
        })
    }

    fn write(&self, name: &str, text: &str) -> Result<()> {
        if let Some(dir) = &self.out {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join(name), text)?;
        }
        Ok(())
    }

    fn strata(&self, cfg: &PointConfig) -> Result<(StrataSet, Vec<String>)> {
        match self.scenario.strata_override()? {
            Some(s) => Ok((s, Vec::new())),
            None => default_strata(cfg, &self.tol),
        }
    }
}

fn cmd_index(ctx: &Ctx) -> Result<String> {
    let c = ctx.scenario.curve()?;
    let mut points = Vec::new();
    if let Some(cfg) = &ctx.scenario.config {
        points.extend(&cfg.points);
        if let Ok((s, _)) = ctx.strata(cfg) {
            for p in s.points() {
                if !points.contains(&p) {
                    points.push(p);
                }
            }
        }
    }
    let r = index_report(&c, &points, &ctx.tol)?;
    let out = IndexOutput {
        whitney: r.whitney,
        points: points
            .iter()
            .enumerate()
            .map(|(i, p)| PointWinding {
                point: *p,
                winding: r.windings[&i],
            })
            .collect(),
        self_intersections: self_intersections(&c, &ctx.tol)?,
        residual: r.residual,
    };
    to_json(&versioned(out))
}

fn cmd_count(ctx: &Ctx, d: u32) -> Result<String> {
    let cfg = ctx.scenario.config()?;
    if cfg.d != d {
        return Err(Error::InvalidInput(format!(
            "scenario has d = {}, this command needs d = {d}",
            cfg.d
        )));
    }
    cfg.validate(&ctx.tol)?;
    let c = ctx.scenario.curve()?;
    let (strata, _) = ctx.strata(cfg)?;
    let (audit, events) = audit_and_enumerate(cfg, &strata, &c, &ctx.tol);
    if !audit.ok {
        return Err(Error::Audit(audit.violations));
    }
    let events = events.unwrap_or_default();
    to_json(&versioned(CountOutput {
        d,
        n: signed_count(&events),
        events,
    }))
}

fn cmd_formula(ctx: &Ctx) -> Result<String> {
    let cfg = ctx.scenario.config()?;
    let c = ctx.scenario.curve()?;
    let (strata, excluded) = ctx.strata(cfg)?;
    let f = evaluate_formula(&strata, &c, &ctx.tol)?;
    to_json(&versioned(FormulaOutput {
        wd: strata.wd,
        whitney: f.whitney,
        strata: f.terms,
        n_formula: f.value,
        excluded,
    }))
}

fn cmd_verify(ctx: &Ctx) -> Result<String> {
    let cfg = ctx.scenario.config()?;
    let c = ctx.scenario.curve()?;
    let strata = ctx.scenario.strata_override()?;
    let r = evaluate(cfg, strata.as_ref(), &c, &ctx.tol)?;
    to_json(&versioned(r))
}

fn cmd_scan(ctx: &Ctx) -> Result<String> {
    let cfg = ctx.scenario.config()?;
    let strata = ctx.scenario.strata_override()?;
    let r = homotopy_scan(ctx.scenario.path()?, cfg, strata.as_ref(), &ctx.tol)?;
    to_json(&r)
}

fn cmd_fti(ctx: &Ctx) -> Result<String> {
    let fti = ctx
        .scenario
        .fti
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("scenario has no fti section".into()))?;
    if let Some(s) = &fti.suite {
        let seed = ctx.seed.unwrap_or(s.seed);
        let r = degree_bound_suite(s.functional, s.d, s.k, s.count, seed, &ctx.tol)?;
        return to_json(&r);
    }
    let spec = fti.singular_spec()?.prepare(&ctx.tol)?;
    let f = fti.functional.clone().unwrap_or(Functional::Whitney);
    let r = functional_sum(&spec, &f, &ctx.tol)?;
    to_json(&versioned(r))
}

fn cmd_constants(nd: Option<u32>, wd: Option<u32>) -> Result<String> {
    if nd.is_none() && wd.is_none() {
        return Err(Error::InvalidInput("give --nd D and/or --wd D".into()));
    }
    let out = ConstantsOutput {
        nd: nd
            .map(|d| kontsevich_nd(d).map(|value| ConstantValue { d, value }))
            .transpose()?,
        wd: wd
            .map(|d| {
                welschinger_wd(d).map(|v| ConstantValue {
                    d,
                    value: i128::from(v),
                })
            })
            .transpose()?,
    };
    to_json(&versioned(out))
}

fn scene_svg(
    ctx: &Ctx,
    c: &ImmersedCurve,
    cfg: Option<&PointConfig>,
    title: &str,
) -> Result<String> {
    let (strata, events) = match cfg {
        Some(cfg) => {
            let strata = ctx.strata(cfg).ok().map(|s| s.0);
            let events = if cfg.d <= 2 {
                evaluate(cfg, strata.as_ref(), c, &ctx.tol)?.events
            } else {
                Vec::new()
            };
            (strata, events)
        }
        None => (None, Vec::new()),
    };
    let points = cfg.map(|c| c.points.clone()).unwrap_or_default();
    Ok(render(&Scene {
        curve: c,
        points: &points,
        strata: strata.as_ref(),
        events: &events,
        title,
    }))
}

fn cmd_render(ctx: &Ctx) -> Result<String> {
    let title = ctx.scenario.name.clone().unwrap_or_else(|| "scene".into());
    if let Some(path) = &ctx.scenario.path {
        let cfg = ctx.scenario.config()?;
        let strata = ctx.scenario.strata_override()?;
        let report = homotopy_scan(path, cfg, strata.as_ref(), &ctx.tol)?;
        let base = path.curve.build()?;
        let mut files = Vec::new();
        for (i, s) in report.samples.iter().enumerate() {
            let c = path.curve_at(&base, s.s);
            let svg = if s.ok {
                scene_svg(ctx, &c, Some(cfg), &format!("{title} s={:.6}", s.s))?
            } else {
                scene_svg(
                    ctx,
                    &c,
                    None,
                    &format!("{title} s={:.6} (not generic)", s.s),
                )?
            };
            let name = format!("sample_{i:04}.svg");
            ctx.write(&name, &svg)?;
            files.push(name);
        }
        let timeline = serde_json::json!({
            "schema": SCHEMA,
            "files": files,
            "timeline": report.samples.iter().map(|s| serde_json::json!({
                "s": s.s, "ok": s.ok, "N_enum": s.n_enum, "N_formula": s.n_formula,
            })).collect::<Vec<_>>(),
            "crossings": report.crossings,
            "consistent": report.consistent,
        });
        let text = to_json(&timeline)?;
        ctx.write("timeline.json", &text)?;
        return Ok(text);
    }
    let c = ctx.scenario.curve()?;
    let svg = scene_svg(ctx, &c, ctx.scenario.config.as_ref(), &title)?;
    ctx.write("scene.svg", &svg)?;
    Ok(svg)
}

fn dispatch(cmd: &Cmd) -> Result<(String, &'static str, Option<String>)> {
    let run = |c: &Common, name: &'static str, f: fn(&Ctx) -> Result<String>| {
        let ctx = Ctx::new(c)?;
        let text = f(&ctx)?;
        Ok((
            text,
            name,
            ctx.out.as_ref().map(|p| p.display().to_string()),
        ))
    };
    match cmd {
        Cmd::Index(c) => run(c, "index", cmd_index),
        Cmd::CountLines(c) => run(c, "count-lines", |x| cmd_count(x, 1)),
        Cmd::CountConics(c) => run(c, "count-conics", |x| cmd_count(x, 2)),
        Cmd::Formula(c) => run(c, "formula", cmd_formula),
        Cmd::Verify(c) => run(c, "verify", cmd_verify),
        Cmd::Scan(c) => run(c, "scan", cmd_scan),
        Cmd::Fti(c) => run(c, "fti", cmd_fti),
        Cmd::Render(c) => run(c, "render", cmd_render),
        Cmd::Constants { nd, wd } => Ok((cmd_constants(*nd, *wd)?, "constants", None)),
    }
}

/// Runs the CLI with explicit output streams; returns the exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(&cli.cmd) {
        Ok((text, name, out)) => {
            if let Some(dir) = out {
                // Render writes its own files; everything else is one report.
                if name != "render" {
                    let path = Path::new(&dir).join(format!("{name}.json"));
                    if let Err(e) =
                        std::fs::create_dir_all(&dir).and_then(|_| std::fs::write(&path, &text))
                    {
                        let e = Error::Io(e);
                        let _ = writeln!(stderr, "{}", error_json(&e));
                        return exit_code(&e);
                    }
                }
            }
            let _ = write!(stdout, "{text}");
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(stderr, "{}", error_json(&e));
            exit_code(&e)
        }
    }
}

/// Runs the CLI on the process streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
