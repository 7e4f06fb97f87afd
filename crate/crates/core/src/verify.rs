//! Bundled consistency checks at a single `(p, q)`.
//!
//! Each check compares two independent routes to the same quantity (closed
//! form against density-matrix simulation, or a structural identity) and
//! records the worst deviation seen.

use crate::analysis;
use crate::attack::{self, AttackParameters, EveIsometry};
use crate::error::Result;
use crate::info::{self, RootBranch};
use crate::optimize;
use crate::protocol::{self, Basis};

pub const ISOMETRY_CHECK_TOL: f64 = 1e-10;
pub const DISTRIBUTION_TOL: f64 = 1e-12;
pub const QBER_TOL: f64 = 1e-10;
pub const SYMMETRY_TOL: f64 = 1e-10;
pub const BRANCH_SYMMETRY_TOL: f64 = 1e-14;
pub const STATIONARITY_TOL: f64 = 1e-6;
/// Rounding slack for the dominance comparison.
pub const DOMINANCE_SLACK: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// Worst deviation observed; compared against `tolerance`.
    pub deviation: f64,
    pub tolerance: f64,
    pub note: Option<String>,
}

impl Check {
    fn within(name: &'static str, deviation: f64, tolerance: f64) -> Self {
        Check {
            name,
            passed: deviation.is_finite() && deviation <= tolerance,
            deviation,
            tolerance,
            note: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub p: f64,
    pub q: f64,
    pub checks: Vec<Check>,
    /// `I^AB - I^AE_opt`; reported, not checked.
    pub key_margin: f64,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Runs every check at `(p, q)`. Errors only on out-of-domain input.
pub fn run_checks(p: f64, q: f64) -> Result<VerifyReport> {
    protocol::check_domain(p, q)?;
    let plus = AttackParameters::optimal(p, q, RootBranch::Plus)?;
    let minus = AttackParameters::optimal(p, q, RootBranch::Minus)?;
    // Anti-phase attack with equal radii: 2β² - 1 = target overlap.
    let b_anti = (0.5 * (1.0 + attack::target_overlap(p, q))).clamp(0.0, 1.0);
    let anti = AttackParameters::from_squares(p, q, b_anti, b_anti, -1.0)?;
    let attacks = [plus, minus, anti];
    let isos = attacks
        .iter()
        .map(EveIsometry::for_params)
        .collect::<Result<Vec<_>>>()?;

    let mut checks = Vec::new();

    let iso_dev = isos
        .iter()
        .map(|iso| {
            let v = iso.matrix();
            let gram = v.adjoint().matmul(v).expect("8x2 isometry");
            gram.max_abs_diff(&crate::qmath::CMatrix::identity(2).expect("dim 2"))
        })
        .fold(0.0, f64::max);
    checks.push(Check::within("isometry", iso_dev, ISOMETRY_CHECK_TOL));

    let mut m_dev = 0.0_f64;
    for (params, iso) in attacks.iter().zip(&isos) {
        let closed = attack::eve_distribution_closed_form(params);
        let simulated = attack::simulate_eve_distribution(iso, p)?;
        m_dev = m_dev.max(closed.max_abs_diff(&simulated));
    }
    checks.push(Check::within("eve_distribution", m_dev, DISTRIBUTION_TOL));

    let expected_q = protocol::qber_from_d(plus.disturbance(), p)?;
    let mut q_dev = (expected_q - q).abs();
    let mut sym_dev = 0.0_f64;
    for iso in &isos {
        for basis in Basis::ALL {
            q_dev = q_dev.max((attack::simulate_qber(iso, p, basis)? - expected_q).abs());
            sym_dev = sym_dev.max(attack::bob_symmetry_residual(iso, p, basis)?);
        }
    }
    checks.push(Check::within("qber_basis_independence", q_dev, QBER_TOL));
    checks.push(Check::within("bob_symmetry", sym_dev, SYMMETRY_TOL));

    let opt = info::i_ae_optimal(p, q)?;
    let alt = info::i_ae_antiphase(p, q)?;
    let mut dominance = Check::within("dominance", (alt - opt).max(0.0), DOMINANCE_SLACK);
    dominance.note = Some(format!("i_ae_opt={opt:.9} i_ae_alt={alt:.9}"));
    checks.push(dominance);

    let b = info::beta_sq_optimal(p, q, RootBranch::Plus)?;
    let swapped = info::i_ae_at_beta_sq(p, q, 1.0 - b)?;
    let branch_dev = (info::i_ae_at_beta_sq(p, q, b)? - swapped)
        .abs()
        .max((info::i_ae_general(&plus) - info::i_ae_general(&minus)).abs());
    checks.push(Check::within(
        "branch_symmetry",
        branch_dev,
        BRANCH_SYMMETRY_TOL,
    ));

    let lag = optimize::lagrange_residual(&plus)?;
    let mut stationarity = Check::within("stationarity", lag.residual_norm, STATIONARITY_TOL);
    if lag.degenerate {
        stationarity.note = Some("degenerate point, multipliers undetermined".into());
    } else {
        stationarity.note = Some(format!(
            "lambda=({:.6e}, {:.6e}, {:.6e})",
            lag.lambda1, lag.lambda2, lag.lambda3
        ));
    }
    checks.push(stationarity);

    Ok(VerifyReport {
        p,
        q,
        checks,
        key_margin: analysis::key_margin(p, q)?,
    })
}
