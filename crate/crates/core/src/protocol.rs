//! Six-state signals under white noise and the error rate Bob observes.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::qmath::{ComplexScalar, DensityOperator, StateVector};

/// Slack allowed on the boundaries of the `(p, q)` domain.
pub const DOMAIN_SLACK: f64 = 1e-12;

/// Pauli eigenbasis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    X,
    Y,
    Z,
}

impl Basis {
    pub const ALL: [Basis; 3] = [Basis::X, Basis::Y, Basis::Z];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bit {
    Zero,
    One,
}

impl Bit {
    pub const ALL: [Bit; 2] = [Bit::Zero, Bit::One];

    pub fn flipped(self) -> Bit {
        match self {
            Bit::Zero => Bit::One,
            Bit::One => Bit::Zero,
        }
    }
}

/// Which signal Alice prepares and how much white noise it carries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignalSpec {
    basis: Basis,
    bit: Bit,
    p: f64,
}

impl SignalSpec {
    pub fn new(basis: Basis, bit: Bit, p: f64) -> Result<Self> {
        check_noise(p)?;
        Ok(Self { basis, bit, p })
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn bit(&self) -> Bit {
        self.bit
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

pub fn check_noise(p: f64) -> Result<()> {
    if p.is_finite() && (0.0..1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidNoise(p))
    }
}

/// Checks `p ∈ [0,1)` and `p/2 ≤ q ≤ ½` (with [`DOMAIN_SLACK`]).
pub fn check_domain(p: f64, q: f64) -> Result<()> {
    check_noise(p)?;
    if !q.is_finite() || q < p / 2.0 - DOMAIN_SLACK || q > 0.5 + DOMAIN_SLACK {
        return Err(Error::Domain(format!(
            "q = {q} outside [p/2, 1/2] = [{}, 0.5] for p = {p}",
            p / 2.0
        )));
    }
    Ok(())
}

/// Eigenstate `|bit_basis⟩` with the phase convention `(1, ±1)/√2`, `(1, ±i)/√2`.
pub fn pure_signal(basis: Basis, bit: Bit) -> StateVector {
    let c = |re: f64, im: f64| ComplexScalar::new(re, im);
    let s = FRAC_1_SQRT_2;
    let amps = match (basis, bit) {
        (Basis::Z, Bit::Zero) => [c(1.0, 0.0), c(0.0, 0.0)],
        (Basis::Z, Bit::One) => [c(0.0, 0.0), c(1.0, 0.0)],
        (Basis::X, Bit::Zero) => [c(s, 0.0), c(s, 0.0)],
        (Basis::X, Bit::One) => [c(s, 0.0), c(-s, 0.0)],
        (Basis::Y, Bit::Zero) => [c(s, 0.0), c(0.0, s)],
        (Basis::Y, Bit::One) => [c(s, 0.0), c(0.0, -s)],
    };
    StateVector::new(amps.to_vec()).expect("qubit amplitudes are finite")
}

/// `(1-p)|i⟩⟨i| + (p/2)𝟙`.
pub fn noisy_signal(spec: &SignalSpec) -> DensityOperator {
    let psi = pure_signal(spec.basis, spec.bit);
    let proj = psi.projector();
    let keep = ComplexScalar::new(1.0 - spec.p, 0.0);
    let white = ComplexScalar::new(spec.p / 2.0, 0.0);
    let entries = proj
        .entries()
        .iter()
        .enumerate()
        .map(|(k, &z)| z * keep + if k % 3 == 0 { white } else { 0.0.into() })
        .collect();
    let m = crate::qmath::CMatrix::new(2, 2, entries).expect("2x2 matrix");
    DensityOperator::new(m).expect("noisy signal is a valid density operator")
}

/// Bob's error rate in `basis`, given what he receives for Alice's bit 0 and bit 1.
pub fn qber_from_bob_states(
    rho0_b: &DensityOperator,
    rho1_b: &DensityOperator,
    basis: Basis,
) -> f64 {
    let zero = pure_signal(basis, Bit::Zero);
    let one = pure_signal(basis, Bit::One);
    0.5 * rho1_b.expectation(&zero) + 0.5 * rho0_b.expectation(&one)
}

/// `Q = D(1-p) + p/2`.
pub fn qber_from_d(d: f64, p: f64) -> Result<f64> {
    check_noise(p)?;
    if !(0.0..=0.5).contains(&d) {
        return Err(Error::Domain(format!("disturbance {d} outside [0, 1/2]")));
    }
    Ok(d * (1.0 - p) + p / 2.0)
}

/// `D = (Q - p/2)/(1-p)`.
pub fn d_from_qber(q: f64, p: f64) -> Result<f64> {
    check_domain(p, q)?;
    Ok(((q - p / 2.0) / (1.0 - p)).clamp(0.0, 0.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::CMatrix;
    use approx::assert_abs_diff_eq;

    #[test]
    fn pure_signals() {
        let s = FRAC_1_SQRT_2;
        let z0 = pure_signal(Basis::Z, Bit::Zero);
        assert_eq!(z0.amplitudes(), &[1.0.into(), 0.0.into()]);
        let x1 = pure_signal(Basis::X, Bit::One);
        assert_eq!(x1.amplitudes(), &[s.into(), (-s).into()]);
        let y0 = pure_signal(Basis::Y, Bit::Zero);
        assert_eq!(y0.amplitudes(), &[s.into(), ComplexScalar::new(0.0, s)]);
        for b in Basis::ALL {
            let a = pure_signal(b, Bit::Zero);
            let o = pure_signal(b, Bit::One);
            assert!(a.inner(&o).norm() < 1e-15);
        }
    }

    #[test]
    fn noiseless_z_signal() {
        let rho = noisy_signal(&SignalSpec::new(Basis::Z, Bit::Zero, 0.0).unwrap());
        assert_eq!(rho.matrix(), &StateVector::basis(2, 0).unwrap().projector());
    }

    #[test]
    fn spectrum_near_full_noise() {
        for b in Basis::ALL {
            for bit in Bit::ALL {
                let rho = noisy_signal(&SignalSpec::new(b, bit, 0.999).unwrap());
                let ev = rho.eigenvalues();
                assert_abs_diff_eq!(ev[0], 0.4995, epsilon = 1e-12);
                assert_abs_diff_eq!(ev[1], 0.5005, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn x_one_with_noise() {
        let rho = noisy_signal(&SignalSpec::new(Basis::X, Bit::One, 0.05).unwrap());
        let expected = CMatrix::from_real(2, 2, &[0.5, -0.475, -0.475, 0.5]).unwrap();
        assert!(rho.matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn invalid_noise_rejected() {
        for p in [-0.1, 1.0, 1.5, f64::NAN] {
            assert!(matches!(
                SignalSpec::new(Basis::Z, Bit::Zero, p),
                Err(Error::InvalidNoise(_))
            ));
        }
    }

    #[test]
    fn noisy_signal_valid_on_grid() {
        for k in 0..=999 {
            let p = k as f64 / 1000.0;
            for b in Basis::ALL {
                for bit in Bit::ALL {
                    let rho = noisy_signal(&SignalSpec::new(b, bit, p).unwrap());
                    assert!(rho.matrix().is_hermitian(1e-15));
                    assert_abs_diff_eq!(rho.matrix().trace().re, 1.0, epsilon = 1e-14);
                }
            }
        }
    }

    #[test]
    fn qber_examples() {
        let r0 = DensityOperator::pure(&pure_signal(Basis::Z, Bit::Zero)).unwrap();
        let r1 = DensityOperator::pure(&pure_signal(Basis::Z, Bit::One)).unwrap();
        assert_eq!(qber_from_bob_states(&r0, &r1, Basis::Z), 0.0);
        assert_eq!(qber_from_bob_states(&r1, &r0, Basis::Z), 1.0);
        let mm = DensityOperator::maximally_mixed(2).unwrap();
        for b in Basis::ALL {
            assert_abs_diff_eq!(qber_from_bob_states(&mm, &mm, b), 0.5, epsilon = 1e-15);
        }
    }

    #[test]
    fn no_eavesdropper_gives_half_noise() {
        for p in [0.0, 0.05, 0.3, 0.9] {
            for b in Basis::ALL {
                let r0 = noisy_signal(&SignalSpec::new(b, Bit::Zero, p).unwrap());
                let r1 = noisy_signal(&SignalSpec::new(b, Bit::One, p).unwrap());
                assert_abs_diff_eq!(qber_from_bob_states(&r0, &r1, b), p / 2.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn qber_d_relation() {
        assert_eq!(qber_from_d(0.0, 0.3).unwrap(), 0.15);
        assert_abs_diff_eq!(qber_from_d(0.5, 0.3).unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(qber_from_d(0.2, 0.1).unwrap(), 0.23, epsilon = 1e-15);
        assert!(qber_from_d(0.6, 0.1).is_err());
        assert!(qber_from_d(0.2, 1.0).is_err());
        assert!(d_from_qber(0.01, 0.1).is_err());
        assert!(d_from_qber(0.51, 0.1).is_err());
    }

    #[test]
    fn qber_d_inverse_on_grid() {
        for i in 0..=50 {
            for j in 0..=40 {
                let d = i as f64 / 100.0;
                let p = j as f64 / 41.0;
                let q = qber_from_d(d, p).unwrap();
                assert_abs_diff_eq!(d_from_qber(q, p).unwrap(), d, epsilon = 1e-14);
            }
        }
    }
}
