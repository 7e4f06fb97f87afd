//! Fits Lagrange multipliers to the stationarity conditions and shows that
//! the residual vanishes only at the closed-form optimum.
//!
//!     cargo run --example lagrange_stationarity -- 0.05 0.15

use sixstate::attack::AttackParameters;
use sixstate::info::RootBranch;
use sixstate::optimize;

fn main() -> sixstate::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<f64>());
    let p = args.next().and_then(Result::ok).unwrap_or(0.05);
    let q = args.next().and_then(Result::ok).unwrap_or(0.15);

    let opt = AttackParameters::optimal(p, q, RootBranch::Plus)?;
    let at = optimize::lagrange_residual(&opt)?;
    println!("p = {p}, Q = {q}");
    println!(
        "optimum    beta_A^2 = {:.6}  residual {:.2e}  lambda = ({:.6}, {:.6}, {:.6})",
        opt.beta_a_sq(),
        at.residual_norm,
        at.lambda1,
        at.lambda2,
        at.lambda3
    );

    for shift in [0.001, 0.01, 0.05, 0.1] {
        match optimize::perturb_feasible(&opt, shift) {
            Ok(moved) => {
                let r = optimize::lagrange_residual(&moved)?;
                println!(
                    "shift {shift:<5} beta_A^2 = {:.6}  residual {:.2e}",
                    moved.beta_a_sq(),
                    r.residual_norm
                );
            }
            Err(e) => println!("shift {shift:<5} {e}"),
        }
    }

    let flat = AttackParameters::optimal(p, p / 2.0, RootBranch::Plus)?;
    let r = optimize::lagrange_residual(&flat)?;
    println!(
        "\nat Q = p/2 the system is rank deficient: degenerate = {}",
        r.degenerate
    );
    Ok(())
}
