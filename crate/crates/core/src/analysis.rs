//! Information curves and the point where `I^AB` and `I^AE` cross.

use crate::error::{Error, Result};
use crate::info;
use crate::protocol;

/// Noiseless crossing disturbance as printed, used for the straight baseline.
pub const BASELINE_DISTURBANCE: f64 = 0.15637;
/// Distance kept from the ends of `[p/2, ½]` when bracketing the crossing.
pub const BRACKET_INSET: f64 = 1e-9;
/// Number of samples used to certify a single sign change.
pub const PRESCAN_POINTS: usize = 1000;
/// Largest `p` accepted by the crossing search.
pub const MAX_CROSSING_NOISE: f64 = 0.5;
const MAX_BISECTIONS: u32 = 200;

/// One sample of the information curves, with and without noise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub q: f64,
    pub i_ab: f64,
    pub i_ae_opt: f64,
    pub i_ae_alt: f64,
    pub i_ab_pure: f64,
    pub i_ae_pure: f64,
    /// Plus-root `|β_A|²` at this `q`.
    pub beta_sq: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingResult {
    pub p: f64,
    pub q_cross: f64,
    /// `0.15637(1-p) + p/2`.
    pub q_line: f64,
    /// `q_cross - q_line`.
    pub margin: f64,
    pub iterations: u32,
}

/// Evenly spaced samples of `[lo, hi]`, both ends included exactly.
fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = if n > 1 {
        (hi - lo) / (n - 1) as f64
    } else {
        0.0
    };
    (0..n).map(move |k| if k + 1 == n { hi } else { lo + step * k as f64 })
}

/// `steps` points on a uniform `q` grid over `[p/2, ½]`.
pub fn curve_sweep(p: f64, steps: usize) -> Result<Vec<CurvePoint>> {
    protocol::check_noise(p)?;
    if steps < 2 {
        return Err(Error::InvalidParameters(format!(
            "curve sweep needs at least 2 steps, got {steps}"
        )));
    }
    linspace(p / 2.0, 0.5, steps)
        .map(|q| {
            let pt = info::info_point(p, q)?;
            Ok(CurvePoint {
                q,
                i_ab: pt.i_ab,
                i_ae_opt: pt.i_ae_opt,
                i_ae_alt: pt.i_ae_alt,
                i_ab_pure: info::i_ab(q)?,
                i_ae_pure: info::i_ae_optimal(0.0, q)?,
                beta_sq: pt.beta_sq,
            })
        })
        .collect()
}

/// `I^AB(q) - I^AE_opt(p, q)`.
pub fn key_margin(p: f64, q: f64) -> Result<f64> {
    Ok(info::i_ab(q)? - info::i_ae_optimal(p, q)?)
}

/// Csiszár–Körner: a key can be distilled one-way iff `I^AB ≥ I^AE`.
pub fn key_feasible(p: f64, q: f64) -> Result<bool> {
    Ok(key_margin(p, q)? >= 0.0)
}

pub fn baseline_qber(p: f64) -> f64 {
    BASELINE_DISTURBANCE * (1.0 - p) + p / 2.0
}

/// Bisects `I^AB - I^AE_opt` in `q` after a pre-scan certifies a single sign change.
pub fn crossing_point(p: f64, tol: f64) -> Result<CrossingResult> {
    if !(p.is_finite() && (0.0..=MAX_CROSSING_NOISE).contains(&p)) {
        return Err(Error::InvalidNoise(p));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidParameters(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let f = |q: f64| key_margin(p, q);
    let mut lo = p / 2.0 + BRACKET_INSET;
    let mut hi = 0.5 - BRACKET_INSET;

    let mut sign_changes = 0;
    let mut prev = f(lo)? > 0.0;
    for q in linspace(lo, hi, PRESCAN_POINTS).skip(1) {
        let cur = f(q)? > 0.0;
        if cur != prev {
            sign_changes += 1;
        }
        prev = cur;
    }
    let (f_lo, f_hi) = (f(lo)?, f(hi)?);
    if !(f_lo > 0.0 && f_hi < 0.0) || sign_changes == 0 {
        return Err(Error::NoCrossing { p });
    }
    if sign_changes > 1 {
        return Err(Error::AmbiguousCrossing { p, sign_changes });
    }

    let mut iterations = 0;
    while hi - lo >= tol && iterations < MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let q_cross = 0.5 * (lo + hi);
    let q_line = baseline_qber(p);
    Ok(CrossingResult {
        p,
        q_cross,
        q_line,
        margin: q_cross - q_line,
        iterations,
    })
}

/// [`crossing_point`] on `steps` uniformly spaced noise levels in `[p_min, p_max]`.
///
/// `steps == 1` evaluates `p_min` only and then allows `p_min == p_max`.
pub fn crossing_sweep(
    p_min: f64,
    p_max: f64,
    steps: usize,
    tol: f64,
) -> Result<Vec<CrossingResult>> {
    let in_range = |x: f64| x.is_finite() && (0.0..=MAX_CROSSING_NOISE).contains(&x);
    if !in_range(p_min) {
        return Err(Error::InvalidNoise(p_min));
    }
    if !in_range(p_max) {
        return Err(Error::InvalidNoise(p_max));
    }
    if steps == 0 {
        return Err(Error::InvalidParameters(
            "crossing sweep needs at least 1 step".into(),
        ));
    }
    if steps > 1 && p_min >= p_max {
        return Err(Error::InvalidParameters(format!(
            "need p_min < p_max for a multi-step sweep, got [{p_min}, {p_max}]"
        )));
    }
    if steps == 1 && p_min > p_max {
        return Err(Error::InvalidParameters(format!(
            "p_min {p_min} exceeds p_max {p_max}"
        )));
    }
    linspace(p_min, p_max, steps)
        .map(|p| crossing_point(p, tol))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn sweep_endpoints() {
        for p in [0.0, 0.05, 0.3] {
            let pts = curve_sweep(p, 101).unwrap();
            assert_eq!(pts.len(), 101);
            assert_eq!(pts[0].q, p / 2.0);
            assert_eq!(pts[0].i_ae_opt, 0.0);
            assert_eq!(pts[100].q, 0.5);
            assert_eq!(pts[100].i_ab, 0.0);
        }
        let two = curve_sweep(0.0, 2).unwrap();
        assert_eq!(two[0].i_ab, 1.0);
        assert_eq!(two[1].i_ab, 0.0);
    }

    #[test]
    fn sweep_rejects_bad_input() {
        assert!(curve_sweep(0.05, 1).is_err());
        assert!(matches!(curve_sweep(1.5, 10), Err(Error::InvalidNoise(_))));
    }

    #[test]
    fn noisy_eve_below_noiseless_eve() {
        for pt in curve_sweep(0.05, 200).unwrap() {
            assert!(pt.i_ae_opt <= pt.i_ae_pure, "{pt:?}");
            assert_eq!(pt.i_ab, pt.i_ab_pure);
        }
    }

    #[test]
    fn noiseless_curves_coincide() {
        for pt in curve_sweep(0.0, 200).unwrap() {
            assert_abs_diff_eq!(pt.i_ae_opt, pt.i_ae_pure, epsilon = 1e-14);
            assert_abs_diff_eq!(pt.i_ab, pt.i_ab_pure, epsilon = 1e-14);
        }
    }

    #[test]
    fn curve_values_in_unit_interval() {
        for p in [0.0, 0.1, 0.5, 0.9] {
            for pt in curve_sweep(p, 64).unwrap() {
                for v in [
                    pt.i_ab,
                    pt.i_ae_opt,
                    pt.i_ae_alt,
                    pt.i_ab_pure,
                    pt.i_ae_pure,
                    pt.beta_sq,
                ] {
                    assert!((0.0..=1.0).contains(&v), "{pt:?}");
                }
            }
        }
    }

    #[test]
    fn noiseless_crossing() {
        let c = crossing_point(0.0, 1e-9).unwrap();
        assert_abs_diff_eq!(c.q_cross, BASELINE_DISTURBANCE, epsilon = 5e-4);
        assert_abs_diff_eq!(c.q_cross, 0.156_373_463_33, epsilon = 1e-9);
        assert_abs_diff_eq!(c.margin, 0.0, epsilon = 5e-4);
        assert!(c.iterations > 20);
    }

    #[test]
    fn noisy_crossing_above_line() {
        let c = crossing_point(0.1, 1e-9).unwrap();
        assert!(c.margin > 0.0);
        assert!(c.q_cross > 0.05 && c.q_cross < 0.5);
    }

    #[test]
    fn crossing_at_max_noise() {
        let c = crossing_point(MAX_CROSSING_NOISE, 1e-9).unwrap();
        assert!(c.q_cross > 0.25 && c.q_cross < 0.5);
    }

    #[test]
    fn crossing_rejects_bad_input() {
        assert!(crossing_point(0.6, 1e-9).is_err());
        assert!(crossing_point(-0.1, 1e-9).is_err());
        assert!(crossing_point(0.1, 0.0).is_err());
    }

    #[test]
    fn sweep_margins_increase() {
        let rows = crossing_sweep(0.0, 0.2, 21, 1e-9).unwrap();
        assert_eq!(rows.len(), 21);
        assert!(rows[0].margin >= -5e-4);
        for w in rows.windows(2) {
            assert!(w[1].margin > w[0].margin, "{w:?}");
            assert!(w[1].q_cross > rows[0].q_cross);
        }
        assert!(rows[1..].iter().all(|r| r.margin > 0.0));
    }

    #[test]
    fn single_step_sweep() {
        let rows = crossing_sweep(0.07, 0.07, 1, 1e-9).unwrap();
        assert_eq!(rows, vec![crossing_point(0.07, 1e-9).unwrap()]);
        assert!(crossing_sweep(0.1, 0.1, 2, 1e-9).is_err());
        assert!(crossing_sweep(0.2, 0.1, 5, 1e-9).is_err());
        assert!(crossing_sweep(0.0, 0.1, 0, 1e-9).is_err());
    }

    #[test]
    fn feasibility_examples() {
        assert!(key_feasible(0.0, 0.10).unwrap());
        assert!(!key_feasible(0.0, 0.20).unwrap());
        for p in [0.0, 0.1, 0.5, 0.9] {
            assert!(key_feasible(p, p / 2.0).unwrap());
        }
        assert!(key_feasible(0.1, 0.01).is_err());
    }

    #[test]
    fn feasibility_matches_crossing() {
        let tol = 1e-9;
        for p in [0.0, 0.05, 0.15] {
            let c = crossing_point(p, tol).unwrap();
            for q in linspace(p / 2.0, 0.5, 401) {
                if (q - c.q_cross).abs() > tol {
                    assert_eq!(key_feasible(p, q).unwrap(), q < c.q_cross, "p={p} q={q}");
                }
            }
        }
    }
}
