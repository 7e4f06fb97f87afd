//! Searches the whole feasible attack family on a grid and compares the
//! best point with the closed-form optimum.
//!
//!     cargo run --release --example brute_force_optimum -- 0.05 0.1

use sixstate::info::{self, RootBranch};
use sixstate::optimize;

fn main() -> sixstate::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<f64>());
    let p = args.next().and_then(Result::ok).unwrap_or(0.05);
    let q = args.next().and_then(Result::ok).unwrap_or(0.1);

    let exact = info::i_ae_optimal(p, q)?;
    let plus = info::beta_sq_optimal(p, q, RootBranch::Plus)?;
    let minus = info::beta_sq_optimal(p, q, RootBranch::Minus)?;
    println!("p = {p}, Q = {q}");
    println!("closed form: I_AE = {exact:.12}, beta^2 = {plus:.9} or {minus:.9}");
    println!("anti-phase:  I_AE = {:.12}\n", info::i_ae_antiphase(p, q)?);

    println!("refine  best I_AE        |diff|     beta_A^2     beta_C^2     cos dPhi  evals");
    for refine in 0..=6 {
        let r = optimize::grid_refine_maximize(p, q, 201, refine)?;
        println!(
            "{refine:>6}  {:.12}  {:.2e}  {:.9}  {:.9}  {:+.6}  {}",
            r.best_value,
            (r.best_value - exact).abs(),
            r.best_params.beta_a_sq(),
            r.best_params.beta_c_sq(),
            r.best_params.cos_delta_phi(),
            r.evaluations
        );
    }
    Ok(())
}
