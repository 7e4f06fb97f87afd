//! Builds Eve's optimal interaction as an explicit 8x2 isometry, pushes the
//! noisy signals through it, and compares what comes out with the closed
//! forms: Eve's outcome probabilities and Bob's error rate in every basis.
//!
//!     cargo run --example simulation_oracle -- 0.05 0.15

use sixstate::attack::{self, AttackParameters, EveIsometry};
use sixstate::info::{self, JointDistribution, RootBranch};
use sixstate::protocol::{self, Basis};

fn main() -> sixstate::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<f64>());
    let p = args.next().and_then(Result::ok).unwrap_or(0.05);
    let q = args.next().and_then(Result::ok).unwrap_or(0.15);

    let params = AttackParameters::optimal(p, q, RootBranch::Plus)?;
    let iso = EveIsometry::for_params(&params)?;
    println!("p = {p}, Q = {q}, D = {:.6}", params.disturbance());
    println!("radii (bA, bC, gA, gC) = {:.6?}", params.radii());

    let closed = attack::eve_distribution_closed_form(&params);
    let simulated = attack::simulate_eve_distribution(&iso, p)?;
    println!("\n  i   closed form    simulated");
    for i in 1..=8 {
        println!("  M{i}  {:.12}  {:.12}", closed.m(i), simulated.m(i));
    }
    println!("max |difference| = {:.2e}", closed.max_abs_diff(&simulated));

    let expected = protocol::qber_from_d(params.disturbance(), p)?;
    println!("\nQ from D(1-p)+p/2 = {expected:.12}");
    for basis in Basis::ALL {
        println!(
            "  {basis:?}: simulated Q = {:.12}, Bob symmetry residual {:.1e}",
            attack::simulate_qber(&iso, p, basis)?,
            attack::bob_symmetry_residual(&iso, p, basis)?,
        );
    }

    let mi = info::mutual_information(&JointDistribution::from_outcomes(&simulated));
    println!("\nI(A;E) from simulated outcomes = {mi:.12}");
    println!(
        "I(A;E) closed form             = {:.12}",
        info::i_ae_optimal(p, q)?
    );
    Ok(())
}
