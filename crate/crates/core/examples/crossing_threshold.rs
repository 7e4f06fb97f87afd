//! Where Alice–Bob and Alice–Eve information cross, as a function of noise,
//! against the straight line obtained by ignoring Eve's loss to noise.
//!
//!     cargo run --example crossing_threshold

use sixstate::analysis;

fn main() -> sixstate::Result<()> {
    let rows = analysis::crossing_sweep(0.0, 0.2, 21, 1e-9)?;
    println!(
        "{:>6} {:>12} {:>12} {:>12} {:>6}",
        "p", "Q_cross", "Q_line", "margin", "iters"
    );
    for r in &rows {
        println!(
            "{:>6.3} {:>12.9} {:>12.9} {:>12.3e} {:>6}",
            r.p, r.q_cross, r.q_line, r.margin, r.iterations
        );
    }

    let q0 = rows[0].q_cross;
    println!("\nnoiseless threshold {q0:.9}");
    for q in [0.10, 0.15, 0.16, 0.20] {
        println!(
            "  key possible at p = 0, Q = {q}: {}",
            analysis::key_feasible(0.0, q)?
        );
    }
    Ok(())
}
