//! The six signal states after white noise, and the error rate Bob sees
//! when nobody is listening.
//!
//!     cargo run --example noisy_signals -- 0.1

use sixstate::protocol::{self, Basis, Bit, SignalSpec};

fn main() -> sixstate::Result<()> {
    let p: f64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0.05);
    println!("noise p = {p}\n");

    for basis in Basis::ALL {
        for bit in Bit::ALL {
            let rho = protocol::noisy_signal(&SignalSpec::new(basis, bit, p)?);
            let m = rho.matrix();
            let ev = rho.eigenvalues();
            println!(
                "{basis:?}{}  rho = [[{:.4}, {:.4}], [{:.4}, {:.4}]]  spectrum ({:.4}, {:.4})",
                if bit == Bit::Zero { 0 } else { 1 },
                m.get(0, 0),
                m.get(0, 1),
                m.get(1, 0),
                m.get(1, 1),
                ev[0],
                ev[1],
            );
        }
    }

    println!();
    for basis in Basis::ALL {
        let r0 = protocol::noisy_signal(&SignalSpec::new(basis, Bit::Zero, p)?);
        let r1 = protocol::noisy_signal(&SignalSpec::new(basis, Bit::One, p)?);
        let q = protocol::qber_from_bob_states(&r0, &r1, basis);
        println!(
            "{basis:?} basis, no eavesdropper: Q = {q:.6} (p/2 = {:.6})",
            p / 2.0
        );
    }
    Ok(())
}
