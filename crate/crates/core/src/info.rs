//! Mutual information between Alice and Bob or Eve.
//!
//! All logarithms are base 2. `0·log 0` is taken as 0, and probabilities in
//! `[-1e-12, 0)` are treated as round-off and clamped to zero.

use crate::attack::{self, AttackParameters};
use crate::error::{Error, Result};
use crate::protocol;

/// Round-off band below zero accepted as a probability.
pub const NEGATIVE_SLACK: f64 = 1e-12;

/// Which root of the optimal `|β_A|²` equation to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootBranch {
    Plus,
    Minus,
}

/// `x log₂ x` with the `0 log 0 = 0` convention.
#[inline]
pub(crate) fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

#[inline]
pub(crate) fn tau_unchecked(x: f64, y: f64) -> f64 {
    let (x, y) = (x.max(0.0), y.max(0.0));
    xlog2x(x) + xlog2x(y) - xlog2x(x + y)
}

/// `τ[x, y] = x log x + y log y - (x+y) log(x+y)`.
pub fn tau(x: f64, y: f64) -> Result<f64> {
    if x < -NEGATIVE_SLACK || y < -NEGATIVE_SLACK || !x.is_finite() || !y.is_finite() {
        return Err(Error::Domain(format!(
            "tau arguments ({x}, {y}) must be nonnegative"
        )));
    }
    Ok(tau_unchecked(x, y))
}

/// Binary Shannon entropy in bits.
pub fn binary_entropy(x: f64) -> f64 {
    -xlog2x(x) - xlog2x(1.0 - x)
}

fn clamp_unit(x: f64) -> f64 {
    x.clamp(0.0, 1.0)
}

/// A joint probability table `p(x, y)`, rows indexed by `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    rows: usize,
    cols: usize,
    p: Vec<f64>,
}

impl JointDistribution {
    pub fn new(rows: usize, cols: usize, p: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || p.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{rows}x{cols} table"),
                found: format!("{} entries", p.len()),
            });
        }
        if p.iter().any(|&x| x < -NEGATIVE_SLACK || !x.is_finite()) {
            return Err(Error::Domain(
                "joint probabilities must be nonnegative".into(),
            ));
        }
        let p: Vec<f64> = p.into_iter().map(|x| x.max(0.0)).collect();
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::Domain(format!("joint probabilities sum to {total}")));
        }
        Ok(Self { rows, cols, p })
    }

    /// Alice's uniform bit against Eve's outcome: `p(a, e) = ½ M`.
    pub fn from_outcomes(m: &attack::OutcomeDistribution) -> Self {
        let p = m.as_array().iter().map(|x| 0.5 * x.max(0.0)).collect();
        Self::new(2, 4, p).expect("outcome distribution is normalized")
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.p[x * self.cols + y]
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
}

/// `Σ p(x,y) log p(y|x) - Σ p(y) log p(y)`.
pub fn mutual_information(j: &JointDistribution) -> f64 {
    let px: Vec<f64> = (0..j.rows)
        .map(|x| (0..j.cols).map(|y| j.get(x, y)).sum())
        .collect();
    let py: Vec<f64> = (0..j.cols)
        .map(|y| (0..j.rows).map(|x| j.get(x, y)).sum())
        .collect();
    let mut conditional = 0.0;
    for (x, &pxx) in px.iter().enumerate() {
        for y in 0..j.cols {
            let pxy = j.get(x, y);
            if pxy > 0.0 {
                conditional += pxy * (pxy / pxx).log2();
            }
        }
    }
    let marginal: f64 = py.iter().map(|&v| xlog2x(v)).sum();
    (conditional - marginal).max(0.0)
}

/// `I^AB = 1 + Q log Q + (1-Q) log(1-Q)`.
pub fn i_ab(q: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&q) {
        return Err(Error::Domain(format!("q = {q} outside [0, 1/2]")));
    }
    Ok(clamp_unit(1.0 + xlog2x(q) + xlog2x(1.0 - q)))
}

/// Eve's information as a function of the squared radii only.
pub(crate) fn i_ae_from_squares(
    p: f64,
    q: f64,
    beta_a: f64,
    beta_c: f64,
    gamma_a: f64,
    gamma_c: f64,
) -> f64 {
    let h = p / 2.0;
    let keep = (1.0 - h - q) / (1.0 - p);
    let flip = (q - h) / (1.0 - p);
    let beta = tau_unchecked(
        (1.0 - h) * beta_a + h * beta_c,
        h * beta_a + (1.0 - h) * beta_c,
    );
    let gamma = tau_unchecked(
        (1.0 - h) * gamma_a + h * gamma_c,
        h * gamma_a + (1.0 - h) * gamma_c,
    );
    clamp_unit(1.0 + 0.5 * keep * (beta + gamma) + flip * tau_unchecked(1.0 - h, h))
}

/// Eve's information for an arbitrary attack of the parameterized family.
pub fn i_ae_general(params: &AttackParameters) -> f64 {
    i_ae_from_squares(
        params.p(),
        params.q(),
        params.beta_a_sq(),
        params.beta_c_sq(),
        params.gamma_a_sq(),
        params.gamma_c_sq(),
    )
}

/// Optimal `|β_A|² = ½(1 ± √((Q-p/2)(2-3Q-p/2)) / (1-p/2-Q))`.
pub fn beta_sq_optimal(p: f64, q: f64, branch: RootBranch) -> Result<f64> {
    protocol::check_domain(p, q)?;
    let h = p / 2.0;
    let radicand = (q - h) * (2.0 - 3.0 * q - h);
    if radicand < -NEGATIVE_SLACK {
        return Err(Error::Domain(format!("negative radicand {radicand}")));
    }
    let denom = 1.0 - h - q;
    let sign = match branch {
        RootBranch::Plus => 1.0,
        RootBranch::Minus => -1.0,
    };
    let ratio = (radicand.max(0.0).sqrt() / denom).min(1.0);
    Ok((0.5 * (1.0 + sign * ratio)).clamp(0.0, 1.0))
}

/// Eve's information along the optimal family `β_C² = 1 - β_A²` at a given `β_A²`.
pub fn i_ae_at_beta_sq(p: f64, q: f64, beta_sq: f64) -> Result<f64> {
    protocol::check_domain(p, q)?;
    if !(0.0..=1.0).contains(&beta_sq) {
        return Err(Error::Domain(format!("beta_sq = {beta_sq} outside [0, 1]")));
    }
    let h = p / 2.0;
    let keep = (1.0 - h - q) / (1.0 - p);
    let flip = (q - h) / (1.0 - p);
    let x = (1.0 - p) * beta_sq + h;
    let y = 1.0 - h - (1.0 - p) * beta_sq;
    // keep + flip = 1; splitting the leading 1 between them makes each bracket
    // vanish exactly at β² = ½ and at h = ½.
    Ok(clamp_unit(
        keep * (1.0 + xlog2x(x) + xlog2x(y)) + flip * (1.0 + xlog2x(h) + xlog2x(1.0 - h)),
    ))
}

/// Eve's maximal information over the attack family.
pub fn i_ae_optimal(p: f64, q: f64) -> Result<f64> {
    i_ae_at_beta_sq(p, q, beta_sq_optimal(p, q, RootBranch::Plus)?)
}

/// Eve's information at the anti-phase stationary point `cos ΔΦ = -1`, `β_C² = β_A²`.
pub fn i_ae_antiphase(p: f64, q: f64) -> Result<f64> {
    protocol::check_domain(p, q)?;
    let h = p / 2.0;
    let flip = (q - h) / (1.0 - p);
    Ok(clamp_unit(flip * (1.0 + xlog2x(h) + xlog2x(1.0 - h))))
}

/// All per-`(p, q)` information quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfoPoint {
    pub p: f64,
    pub q: f64,
    pub i_ab: f64,
    pub i_ae_opt: f64,
    pub i_ae_alt: f64,
    pub beta_sq: f64,
}

pub fn info_point(p: f64, q: f64) -> Result<InfoPoint> {
    let beta_sq = beta_sq_optimal(p, q, RootBranch::Plus)?;
    Ok(InfoPoint {
        p,
        q,
        i_ab: i_ab(q)?,
        i_ae_opt: i_ae_at_beta_sq(p, q, beta_sq)?,
        i_ae_alt: i_ae_antiphase(p, q)?,
        beta_sq,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attack::{eve_distribution_closed_form, AttackParameters};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn tau_values() {
        assert_eq!(tau(1.0, 1.0).unwrap(), -2.0);
        assert_eq!(tau(0.5, 0.5).unwrap(), -1.0);
        for x in [0.0, 0.3, 1.0, 7.5] {
            assert_eq!(tau(x, 0.0).unwrap(), 0.0);
        }
        assert_eq!(tau(-1e-13, 0.4).unwrap(), 0.0);
        assert!(tau(-1e-6, 0.4).is_err());
    }

    #[test]
    fn mutual_information_examples() {
        let product = JointDistribution::new(2, 4, vec![0.125; 8]).unwrap();
        assert_abs_diff_eq!(mutual_information(&product), 0.0, epsilon = 1e-15);
        let corr = JointDistribution::new(2, 2, vec![0.5, 0.0, 0.0, 0.5]).unwrap();
        assert_abs_diff_eq!(mutual_information(&corr), 1.0, epsilon = 1e-15);
        assert!(JointDistribution::new(2, 2, vec![0.5, 0.5, 0.5, 0.5]).is_err());
        assert!(JointDistribution::new(2, 2, vec![1.1, -0.1, 0.0, 0.0]).is_err());
    }

    #[test]
    fn joint_from_optimum_matches_closed_form() {
        let params = AttackParameters::optimal(0.05, 0.1, RootBranch::Plus).unwrap();
        let joint = JointDistribution::from_outcomes(&eve_distribution_closed_form(&params));
        assert_abs_diff_eq!(
            mutual_information(&joint),
            i_ae_general(&params),
            epsilon = 1e-12
        );
    }

    #[test]
    fn i_ab_values() {
        assert_eq!(i_ab(0.0).unwrap(), 1.0);
        assert_eq!(i_ab(0.5).unwrap(), 0.0);
        // 1 + ¼ log ¼ + ¾ log ¾ = ½ - ¾ log₂(4/3)
        assert_abs_diff_eq!(
            i_ab(0.25).unwrap(),
            0.188_721_875_540_867_1,
            epsilon = 1e-15
        );
        assert!(i_ab(0.6).is_err());
    }

    #[test]
    fn general_information_vanishes_without_disturbance() {
        for (ba, bc) in [(0.3, 0.3), (0.8, 0.8), (0.5, 0.5)] {
            let params = AttackParameters::from_squares(0.1, 0.05, ba, bc, 1.0).unwrap();
            assert_abs_diff_eq!(i_ae_general(&params), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn general_matches_optimal_at_optimum() {
        let params = AttackParameters::optimal(0.0, 0.1, RootBranch::Plus).unwrap();
        assert_abs_diff_eq!(
            i_ae_general(&params),
            i_ae_optimal(0.0, 0.1).unwrap(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn beta_roots() {
        for p in [0.0, 0.1, 0.4] {
            for b in [RootBranch::Plus, RootBranch::Minus] {
                assert_abs_diff_eq!(
                    beta_sq_optimal(p, p / 2.0, b).unwrap(),
                    0.5,
                    epsilon = 1e-15
                );
            }
            assert_abs_diff_eq!(
                beta_sq_optimal(p, 0.5, RootBranch::Plus).unwrap(),
                1.0,
                epsilon = 1e-12
            );
            assert_abs_diff_eq!(
                beta_sq_optimal(p, 0.5, RootBranch::Minus).unwrap(),
                0.0,
                epsilon = 1e-12
            );
        }
        // ½(1 + √0.17/0.9), evaluated at 30 digits
        assert_abs_diff_eq!(
            beta_sq_optimal(0.0, 0.1, RootBranch::Plus).unwrap(),
            0.729_061_423_645_425_6,
            epsilon = 1e-15
        );
        assert!(beta_sq_optimal(0.2, 0.05, RootBranch::Plus).is_err());
    }

    #[test]
    fn optimal_endpoints() {
        for p in [0.0, 0.05, 0.3] {
            assert_eq!(i_ae_optimal(p, p / 2.0).unwrap(), 0.0);
        }
        assert_abs_diff_eq!(i_ae_optimal(0.0, 0.5).unwrap(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn antiphase_values() {
        assert_eq!(i_ae_antiphase(0.2, 0.1).unwrap(), 0.0);
        for q in [0.0, 0.13, 0.5] {
            assert_abs_diff_eq!(i_ae_antiphase(0.0, q).unwrap(), q, epsilon = 1e-15);
        }
        assert!(i_ae_antiphase(0.05, 0.2).unwrap() < i_ae_optimal(0.05, 0.2).unwrap());
    }

    #[test]
    fn root_swap_is_exact_up_to_rounding() {
        for p in [0.0, 0.05, 0.2] {
            for k in 0..=20 {
                let q = p / 2.0 + (0.5 - p / 2.0) * k as f64 / 20.0;
                let b = beta_sq_optimal(p, q, RootBranch::Plus).unwrap();
                let a = i_ae_at_beta_sq(p, q, b).unwrap();
                let c = i_ae_at_beta_sq(p, q, 1.0 - b).unwrap();
                assert!((a - c).abs() <= 1e-14, "p={p} q={q}: {a} vs {c}");
            }
        }
    }

    #[test]
    fn optimal_is_nondecreasing_in_q() {
        for p in [0.0, 0.05, 0.1, 0.2, 0.3] {
            let mut last = -1.0;
            for k in 0..=400 {
                let q = p / 2.0 + (0.5 - p / 2.0) * k as f64 / 400.0;
                let v = i_ae_optimal(p, q).unwrap();
                assert!(v >= last - 1e-15);
                last = v;
            }
        }
    }

    proptest! {
        #[test]
        fn general_equals_joint_mutual_information(
            p in 0.0f64..0.95,
            t in 0.0f64..=1.0,
            ba in 0.0f64..=1.0,
            bc in 0.0f64..=1.0,
            phi in -3.2f64..3.2,
        ) {
            let q = p / 2.0 + t * (0.5 - p / 2.0);
            let params = AttackParameters::from_squares(p, q, ba, bc, phi.cos()).unwrap();
            let joint = JointDistribution::from_outcomes(&eve_distribution_closed_form(&params));
            let v = i_ae_general(&params);
            prop_assert!((mutual_information(&joint) - v).abs() < 1e-12);
            prop_assert!((0.0..=1.0).contains(&v));
        }
    }
}
