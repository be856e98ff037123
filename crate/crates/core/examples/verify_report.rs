//! Runs a verification suite and prints its summary, arbitration notes and worst case.
//!
//! `cargo run --release --example verify_report -- haberland small [report.json]`

use mmv::hp::Engine;
use mmv::verify::{emit, run_suite, Format, Grid};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let suite = args.next().unwrap_or_else(|| "haberland".into());
    let grid: Grid = args.next().unwrap_or_else(|| "small".into()).parse()?;
    let out = args.next();
    let t = std::time::Instant::now();
    let report = run_suite(&suite, grid, &Engine::default())?;
    println!(
        "{} ({:?}): {} cases, {} passed, {} failed, {} singular, worst err/tol {:.3e} [{:.1?}]",
        report.suite,
        report.grid,
        report.summary.total,
        report.summary.passed,
        report.summary.failed,
        report.summary.skipped_singular,
        report.worst_ratio(),
        t.elapsed()
    );
    for n in &report.notes {
        println!("  note: {}", n);
    }
    for c in report.cases.iter().filter(|c| !c.pass).take(5) {
        println!("  FAIL {} err={:.3e} tol={:.1e} {}", c.id, c.abs_err, c.tol, c.notes);
    }
    if let Some(path) = out {
        emit(&report, Format::Json, std::path::Path::new(&path))?;
        println!("report written to {}", path);
    }
    Ok(())
}
