//! Runs the full consistency bundle at a few operating points and prints a
//! compact table of worst deviations.
//!
//!     cargo run --example consistency_checks

use sixstate::verify;

fn main() -> sixstate::Result<()> {
    for (p, q) in [(0.0, 0.15637), (0.05, 0.15), (0.2, 0.3), (0.9, 0.46)] {
        let report = verify::run_checks(p, q)?;
        println!(
            "p = {p}, Q = {q}: {}",
            if report.all_passed() {
                "all pass"
            } else {
                "FAILURES"
            }
        );
        for c in &report.checks {
            println!("  {:<24} {:.1e}", c.name, c.deviation);
        }
        println!("  I_AB - I_AE = {:+.3e}", report.key_margin);
    }
    Ok(())
}
