//! Alternating sums over resolutions of two singular disks. Functionals of
//! degree at most one give zero.

use tangent_count::fti::{
    degree_bound_suite, functional_sum, preset_spec, Functional, FunctionalKind,
};
use tangent_count::kernel::{Pt, Tol};

fn main() -> tangent_count::Result<()> {
    let tol = Tol::default();
    let kink = preset_spec("two-kink")?.prepare(&tol)?;
    let s = functional_sum(&kink, &Functional::Whitney, &tol)?;
    println!("two-kink, whitney index:");
    for t in &s.terms {
        println!("  eps {:?}: value {:+}, sign {:+}", t.eps, t.value, t.sign);
    }
    println!("  sum {}", s.sum);

    let slide = preset_spec("two-slide")?;
    let p: Pt = slide.disks[0].center;
    let s = functional_sum(&slide.prepare(&tol)?, &Functional::LineCount { p }, &tol)?;
    let values: Vec<i64> = s.terms.iter().map(|t| t.value).collect();
    println!(
        "two-slide, tangent lines through the first disk centre: values {values:?}, sum {}",
        s.sum
    );

    for (kind, d, k) in [
        (FunctionalKind::LineCount, 1, 1),
        (FunctionalKind::ConicCount, 2, 4),
    ] {
        let r = degree_bound_suite(kind, d, k, 5, 42, &tol)?;
        println!(
            "{kind:?}: {} random cases, {} nontrivial, all sums zero: {}",
            r.cases.len(),
            r.nontrivial,
            r.all_zero
        );
    }
    Ok(())
}
