//! Eve's information along the two fixed-phase families of feasible attacks.
//! The in-phase family peaks twice, at the two symmetric roots; the
//! anti-phase family has a single interior stationary point.
//!
//!     cargo run --release --example root_pair -- 0.1 0.3

use sixstate::info::{self, RootBranch};
use sixstate::optimize::{self, ExtremumKind, PhaseBranch};

fn main() -> sixstate::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<f64>());
    let p = args.next().and_then(Result::ok).unwrap_or(0.1);
    let q = args.next().and_then(Result::ok).unwrap_or(0.3);

    println!("p = {p}, Q = {q}");
    println!(
        "roots: beta^2 = {:.6} and {:.6}",
        info::beta_sq_optimal(p, q, RootBranch::Plus)?,
        info::beta_sq_optimal(p, q, RootBranch::Minus)?
    );

    for branch in [PhaseBranch::Zero, PhaseBranch::Pi] {
        println!("\ncos dPhi = {:+}", branch.cos());
        for e in optimize::branch_extrema(p, q, branch, 20_001)? {
            let kind = match e.kind {
                ExtremumKind::Maximum => "max",
                ExtremumKind::Minimum => "min",
            };
            println!(
                "  {kind} at beta_A^2 = {:.6}, beta_C^2 = {:.6}: I_AE = {:.10}",
                e.point.beta_a_sq, e.point.beta_c_sq, e.point.value
            );
        }
        let best = optimize::branch_profile(p, q, branch, 2001)?
            .into_iter()
            .map(|s| s.value)
            .fold(f64::NEG_INFINITY, f64::max);
        println!("  largest sampled value {best:.10}");
    }

    println!("\nclosed-form optimum  {:.10}", info::i_ae_optimal(p, q)?);
    println!("anti-phase value     {:.10}", info::i_ae_antiphase(p, q)?);
    println!(
        "two symmetric maxima confirmed: {}",
        optimize::verify_root_pair(p, q)
    );
    Ok(())
}
