//! Brute-force maximization of Eve's information over the attack family, and
//! checks of the Lagrange stationarity conditions at a candidate point.
//!
//! Normalization fixes `r_γ² = 1 - r_β²` for both probes, and the overlap
//! constraint fixes `cos ΔΦ` from the two squared β radii. What remains is a
//! search over `(β_A², β_C²) ∈ [0,1]²`, restricted to the points where the
//! required `cos ΔΦ` lies in `[-1, 1]`.

use std::f64::consts::FRAC_PI_2;

use nalgebra::{Matrix4x3, Vector4};

use crate::attack::{self, AttackParameters};
use crate::error::{Error, Result};
use crate::info::{self, RootBranch};
use crate::protocol;

pub const MIN_GRID: usize = 51;
/// Window shrink factor between refinement rounds.
pub const SHRINK: f64 = 10.0;
/// Slack on `|cos ΔΦ| ≤ 1` before a point counts as infeasible.
pub const PHASE_SLACK: f64 = 1e-12;
/// Objective values closer than this are treated as tied.
pub const TIE_TOL: f64 = 1e-12;
/// Constraint residual accepted by [`lagrange_residual`].
pub const STATIONARITY_PRE_TOL: f64 = 1e-8;

/// Sign of `cos ΔΦ` at the reported point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhaseBranch {
    /// `cos ΔΦ = +1` (reported for any `cos ΔΦ ≥ 0` in a free search).
    Zero,
    /// `cos ΔΦ = -1` (reported for any `cos ΔΦ < 0` in a free search).
    Pi,
}

impl PhaseBranch {
    pub fn cos(self) -> f64 {
        match self {
            PhaseBranch::Zero => 1.0,
            PhaseBranch::Pi => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizationResult {
    pub best_params: AttackParameters,
    pub best_value: f64,
    pub branch: PhaseBranch,
    pub evaluations: u64,
}

/// Solves `r_βA r_βC + r_γA r_γC cos ΔΦ = 2(1-2Q)/(2-p-2Q)` for `cos ΔΦ`.
///
/// Returns `None` when no phase satisfies the overlap constraint. When
/// `r_γA r_γC = 0` the phase is irrelevant and `Some(1.0)` is returned iff the
/// constraint already holds.
pub fn feasible_phase(beta_a_sq: f64, beta_c_sq: f64, p: f64, q: f64) -> Result<Option<f64>> {
    protocol::check_domain(p, q)?;
    for b in [beta_a_sq, beta_c_sq] {
        if !(0.0..=1.0).contains(&b) {
            return Err(Error::Domain(format!("squared radius {b} outside [0, 1]")));
        }
    }
    Ok(solve_phase(
        beta_a_sq,
        beta_c_sq,
        attack::target_overlap(p, q),
    ))
}

#[inline]
fn solve_phase(beta_a_sq: f64, beta_c_sq: f64, target: f64) -> Option<f64> {
    let direct = (beta_a_sq * beta_c_sq).sqrt();
    let cross = ((1.0 - beta_a_sq) * (1.0 - beta_c_sq)).sqrt();
    if cross < 1e-15 {
        return ((direct - target).abs() <= PHASE_SLACK).then_some(1.0);
    }
    let cos = (target - direct) / cross;
    (cos.abs() <= 1.0 + PHASE_SLACK).then(|| cos.clamp(-1.0, 1.0))
}

#[inline]
fn objective(p: f64, q: f64, beta_a_sq: f64, beta_c_sq: f64) -> f64 {
    info::i_ae_from_squares(p, q, beta_a_sq, beta_c_sq, 1.0 - beta_a_sq, 1.0 - beta_c_sq)
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    value: f64,
    beta_a_sq: f64,
    beta_c_sq: f64,
    cos: f64,
}

/// Picks the maximum; among candidates within [`TIE_TOL`] of it, the one with
/// the largest `β_A²` (then `β_C²`) wins. Comparisons are made against the
/// maximum itself, so the choice does not depend on scan order.
fn select_with_tie_break(cands: &[Candidate]) -> Option<Candidate> {
    let vmax = cands
        .iter()
        .map(|c| c.value)
        .fold(f64::NEG_INFINITY, f64::max);
    cands
        .iter()
        .filter(|c| c.value >= vmax - TIE_TOL)
        .max_by(|x, y| {
            (x.beta_a_sq, x.beta_c_sq)
                .partial_cmp(&(y.beta_a_sq, y.beta_c_sq))
                .expect("finite radii")
        })
        .copied()
}

fn lattice(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| {
        if i + 1 == n {
            hi
        } else {
            lo + (hi - lo) * i as f64 / (n - 1) as f64
        }
    })
}

/// Points `(β_C², cos ΔΦ)` with `cos ΔΦ = ±1` that satisfy the overlap
/// constraint for the given `β_A²`, where `theta = arccos(target overlap)`.
fn boundary_partners(beta_a_sq: f64, theta: f64) -> impl Iterator<Item = (f64, f64)> {
    let a = beta_a_sq.sqrt().min(1.0).acos();
    [(a + theta, 1.0), (a - theta, 1.0), (theta - a, -1.0)]
        .into_iter()
        .filter(|(c, _)| (0.0..=FRAC_PI_2).contains(c))
        .map(|(c, cos)| (c.cos().powi(2).min(1.0), cos))
}

fn window(center: f64, width: f64) -> (f64, f64) {
    let lo = (center - width / 2.0).max(0.0);
    let hi = (lo + width).min(1.0);
    ((hi - width).max(0.0), hi)
}

/// Grid sweep over `(β_A², β_C²)` followed by `refine_iters` rounds of
/// zooming into the best cell. Deterministic for fixed inputs.
pub fn grid_refine_maximize(
    p: f64,
    q: f64,
    grid: usize,
    refine_iters: usize,
) -> Result<OptimizationResult> {
    protocol::check_domain(p, q)?;
    if grid < MIN_GRID {
        return Err(Error::InvalidParameters(format!(
            "grid must have at least {MIN_GRID} points per axis, got {grid}"
        )));
    }
    let target = attack::target_overlap(p, q);
    let theta = target.clamp(-1.0, 1.0).acos();
    let mut evaluations = 0u64;

    let mut scan = |(x0, x1): (f64, f64), (y0, y1): (f64, f64)| -> Vec<Candidate> {
        let mut out = Vec::new();
        let mut offer = |ba: f64, bc: f64, cos: f64| {
            out.push(Candidate {
                value: objective(p, q, ba, bc),
                beta_a_sq: ba,
                beta_c_sq: bc,
                cos,
            });
        };
        for ba in lattice(x0, x1, grid) {
            for bc in lattice(y0, y1, grid) {
                if let Some(cos) = solve_phase(ba, bc, target) {
                    offer(ba, bc, cos);
                }
            }
            // The lattice only approaches the |cos ΔΦ| = 1 boundary; sample it exactly.
            for (bc, cos) in boundary_partners(ba, theta) {
                if (y0..=y1).contains(&bc) {
                    offer(ba, bc, cos);
                }
            }
        }
        evaluations += out.len() as u64;
        out
    };

    let mut best = select_with_tie_break(&scan((0.0, 1.0), (0.0, 1.0)));
    let mut width = 1.0;
    for _ in 0..refine_iters {
        let Some(center) = best else { break };
        width /= SHRINK;
        // Within the chosen basin: strict improvement only, first in scan order wins.
        for cand in scan(
            window(center.beta_a_sq, width),
            window(center.beta_c_sq, width),
        ) {
            if best.as_ref().is_none_or(|b| cand.value > b.value) {
                best = Some(cand);
            }
        }
    }

    let best = best.ok_or(Error::Infeasible { p, q })?;
    let best_params =
        AttackParameters::from_squares(p, q, best.beta_a_sq, best.beta_c_sq, best.cos)?;
    Ok(OptimizationResult {
        best_params,
        best_value: best.value,
        branch: if best.cos >= 0.0 {
            PhaseBranch::Zero
        } else {
            PhaseBranch::Pi
        },
        evaluations,
    })
}

/// One point of an objective profile along a fixed-phase constraint curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchSample {
    pub beta_a_sq: f64,
    pub beta_c_sq: f64,
    pub value: f64,
}

/// A piece of the curve `cos(a ∓ c) = target` with `β_A² = cos²a`,
/// `β_C² = cos²c`, parameterized by `a ∈ [lo, hi]` with `c = slope·a + offset`.
#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    slope: f64,
    offset: f64,
}

impl Segment {
    fn point(&self, p: f64, q: f64, a: f64) -> BranchSample {
        let c = (self.slope * a + self.offset).clamp(0.0, FRAC_PI_2);
        let (ba, bc) = (a.cos().powi(2), c.cos().powi(2));
        BranchSample {
            beta_a_sq: ba,
            beta_c_sq: bc,
            value: info::i_ae_from_squares(p, q, ba, bc, a.sin().powi(2), c.sin().powi(2)),
        }
    }

    fn samples(&self, p: f64, q: f64, n: usize) -> Vec<(f64, BranchSample)> {
        lattice(self.lo, self.hi, n)
            .map(|a| (a, self.point(p, q, a)))
            .collect()
    }
}

fn segments(p: f64, q: f64, branch: PhaseBranch) -> Vec<Segment> {
    let theta = attack::target_overlap(p, q).clamp(-1.0, 1.0).acos();
    match branch {
        // r_βA r_βC + r_γA r_γC = cos(a - c)
        PhaseBranch::Zero => vec![
            Segment {
                lo: 0.0,
                hi: FRAC_PI_2 - theta,
                slope: 1.0,
                offset: theta,
            },
            Segment {
                lo: theta,
                hi: FRAC_PI_2,
                slope: 1.0,
                offset: -theta,
            },
        ],
        // r_βA r_βC - r_γA r_γC = cos(a + c)
        PhaseBranch::Pi => vec![Segment {
            lo: 0.0,
            hi: theta,
            slope: -1.0,
            offset: theta,
        }],
    }
}

/// Samples Eve's information along the feasible curve of a fixed phase
/// branch (`cos ΔΦ = ±1`), `samples` points per curve piece.
pub fn branch_profile(
    p: f64,
    q: f64,
    branch: PhaseBranch,
    samples: usize,
) -> Result<Vec<BranchSample>> {
    protocol::check_domain(p, q)?;
    let n = samples.max(2);
    Ok(segments(p, q, branch)
        .iter()
        .flat_map(|s| s.samples(p, q, n).into_iter().map(|(_, b)| b))
        .collect())
}

/// Golden-section search for an extremum of `f` on `[lo, hi]`.
fn golden_section(mut lo: f64, mut hi: f64, maximize: bool, f: impl Fn(f64) -> f64) -> f64 {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let sign = if maximize { 1.0 } else { -1.0 };
    let g = |x: f64| sign * f(x);
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (g(x1), g(x2));
    while hi - lo > 1e-13 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = g(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = g(x1);
        }
    }
    0.5 * (lo + hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Maximum,
    Minimum,
}

/// A refined local extremum along a fixed-phase curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchExtremum {
    pub point: BranchSample,
    pub kind: ExtremumKind,
}

fn segment_extrema(p: f64, q: f64, seg: &Segment, n: usize) -> Vec<BranchExtremum> {
    if seg.hi - seg.lo < 1e-12 {
        return Vec::new();
    }
    let pts = seg.samples(p, q, n);
    let v: Vec<f64> = pts.iter().map(|(_, s)| s.value).collect();
    let mut out = Vec::new();
    for i in 1..pts.len() - 1 {
        let kind = if v[i] > v[i - 1] && v[i] >= v[i + 1] {
            ExtremumKind::Maximum
        } else if v[i] < v[i - 1] && v[i] <= v[i + 1] {
            ExtremumKind::Minimum
        } else {
            continue;
        };
        let a = golden_section(
            pts[i - 1].0,
            pts[i + 1].0,
            kind == ExtremumKind::Maximum,
            |a| seg.point(p, q, a).value,
        );
        out.push(BranchExtremum {
            point: seg.point(p, q, a),
            kind,
        });
    }
    out
}

/// Interior local extrema of Eve's information along a fixed-phase branch.
pub fn branch_extrema(
    p: f64,
    q: f64,
    branch: PhaseBranch,
    samples: usize,
) -> Result<Vec<BranchExtremum>> {
    protocol::check_domain(p, q)?;
    let n = samples.max(3);
    Ok(segments(p, q, branch)
        .iter()
        .flat_map(|s| segment_extrema(p, q, s, n))
        .collect())
}

/// The interior stationary point of the `cos ΔΦ = -1` branch.
pub fn antiphase_stationary_point(p: f64, q: f64) -> Result<(AttackParameters, ExtremumKind)> {
    let ext = branch_extrema(p, q, PhaseBranch::Pi, 20_001)?;
    match ext.as_slice() {
        [only] => Ok((
            AttackParameters::from_squares(p, q, only.point.beta_a_sq, only.point.beta_c_sq, -1.0)?,
            only.kind,
        )),
        _ => Err(Error::Domain(format!(
            "expected one interior stationary point on the anti-phase branch, found {}",
            ext.len()
        ))),
    }
}

/// Checks that the `cos ΔΦ = +1` branch has exactly two local maxima in
/// `β_A²`, at the two closed-form roots, with equal objective values.
///
/// At `q = ½` both pieces of the curve collapse to the points `β_A² ∈ {0, 1}`,
/// which are accepted if they match the two roots. At `q = p/2` the objective
/// is flat and the check fails.
pub fn verify_root_pair(p: f64, q: f64) -> bool {
    if protocol::check_domain(p, q).is_err() {
        return false;
    }
    let (Ok(plus), Ok(minus)) = (
        info::beta_sq_optimal(p, q, RootBranch::Plus),
        info::beta_sq_optimal(p, q, RootBranch::Minus),
    ) else {
        return false;
    };
    if q >= 0.5 - 1e-12 {
        let (Ok(a), Ok(b)) = (
            info::i_ae_at_beta_sq(p, q, 1.0),
            info::i_ae_at_beta_sq(p, q, 0.0),
        ) else {
            return false;
        };
        return (plus - 1.0).abs() <= 1e-3 && minus.abs() <= 1e-3 && (a - b).abs() <= 1e-10;
    }
    if q <= p / 2.0 + 1e-12 {
        return false;
    }
    let Ok(ext) = branch_extrema(p, q, PhaseBranch::Zero, 20_001) else {
        return false;
    };
    let mut maxima: Vec<BranchSample> = ext
        .iter()
        .filter(|e| e.kind == ExtremumKind::Maximum)
        .map(|e| e.point)
        .collect();
    if maxima.len() != 2 {
        return false;
    }
    maxima.sort_by(|a, b| a.beta_a_sq.total_cmp(&b.beta_a_sq));
    (maxima[0].beta_a_sq - minus).abs() <= 1e-3
        && (maxima[1].beta_a_sq - plus).abs() <= 1e-3
        && (maxima[0].value - maxima[1].value).abs() <= 1e-10
}

/// Multipliers fitted to the stationarity equations and the remaining misfit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LagrangeResidual {
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda3: f64,
    pub residual_norm: f64,
    /// The coefficient matrix is rank deficient, so the multipliers are not
    /// determined; `residual_norm` is reported as 0.
    pub degenerate: bool,
}

#[inline]
fn weighted_log(weight: f64, x: f64) -> f64 {
    if weight == 0.0 {
        0.0
    } else {
        weight * x.log2()
    }
}

/// Fits `(λ₁, λ₂, λ₃)` to the four stationarity equations in the radii
/// `r_βA, r_βC, r_γA, r_γC` by least squares and reports the residual 2-norm.
pub fn lagrange_residual(params: &AttackParameters) -> Result<LagrangeResidual> {
    let g = params.constraint_residuals();
    if g.iter().any(|r| r.abs() > STATIONARITY_PRE_TOL) {
        return Err(Error::InvalidParameters(format!(
            "constraints violated beyond {STATIONARITY_PRE_TOL:e}: {g:?}"
        )));
    }
    let (p, q) = (params.p(), params.q());
    let h = p / 2.0;
    let keep = (1.0 - h - q) / (1.0 - p);
    let m = attack::eve_distribution_closed_form(params);
    let (m2, m3, m6, m7) = (m.m(2), m.m(3), m.m(6), m.m(7));
    let gradient = |first: f64, second: f64, w: f64| {
        keep * (weighted_log(w, first) + weighted_log(1.0 - w, second) - (first + second).log2())
    };
    let [rba, rbc, rga, rgc] = params.radii();
    let cos = params.cos_delta_phi();
    let rhs = |r: f64, s: f64| if r == 0.0 { 0.0 } else { -r * s };

    #[rustfmt::skip]
    let a = Matrix4x3::new(
        rbc, 2.0 * rba, 0.0,
        rba, 0.0, 2.0 * rbc,
        rgc * cos, 2.0 * rga, 0.0,
        rga * cos, 0.0, 2.0 * rgc,
    );
    let b = Vector4::new(
        rhs(rba, gradient(m2, m6, 1.0 - h)),
        rhs(rbc, gradient(m2, m6, h)),
        rhs(rga, gradient(m3, m7, 1.0 - h)),
        rhs(rgc, gradient(m3, m7, h)),
    );

    let svd = a.svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let degenerate_out = LagrangeResidual {
        lambda1: 0.0,
        lambda2: 0.0,
        lambda3: 0.0,
        residual_norm: 0.0,
        degenerate: true,
    };
    if smax < 1e-12 || smin < 1e-9 * smax || b.iter().any(|x| !x.is_finite()) {
        return Ok(degenerate_out);
    }
    let lambda = svd
        .solve(&b, 1e-12 * smax)
        .map_err(|e| Error::InconsistentConstraints(e.to_string()))?;
    Ok(LagrangeResidual {
        lambda1: lambda[0],
        lambda2: lambda[1],
        lambda3: lambda[2],
        residual_norm: (a * lambda - b).norm(),
        degenerate: false,
    })
}

/// Shifts `β_A²` by `shift` (or by `-shift` if that leaves the feasible set),
/// keeps `β_C²`, and re-solves the phase.
pub fn perturb_feasible(params: &AttackParameters, shift: f64) -> Result<AttackParameters> {
    let (p, q) = (params.p(), params.q());
    for s in [shift, -shift] {
        let ba = params.beta_a_sq() + s;
        if !(0.0..=1.0).contains(&ba) {
            continue;
        }
        if let Some(cos) = feasible_phase(ba, params.beta_c_sq(), p, q)? {
            return AttackParameters::from_squares(p, q, ba, params.beta_c_sq(), cos);
        }
    }
    Err(Error::Infeasible { p, q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn phase_at_lowest_qber() {
        let c = feasible_phase(0.5, 0.5, 0.1, 0.05).unwrap().unwrap();
        assert_abs_diff_eq!(c, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn phase_at_half_qber() {
        let c = feasible_phase(0.5, 0.5, 0.1, 0.5).unwrap().unwrap();
        assert_abs_diff_eq!(c, -1.0, epsilon = 1e-15);
    }

    #[test]
    fn degenerate_radii_are_infeasible() {
        assert_eq!(feasible_phase(1.0, 0.0, 0.0, 0.1).unwrap(), None);
        assert_eq!(feasible_phase(1.0, 0.0, 0.0, 0.5).unwrap(), Some(1.0));
        assert!(feasible_phase(1.2, 0.0, 0.0, 0.1).is_err());
        assert!(feasible_phase(0.5, 0.5, 0.2, 0.01).is_err());
    }

    #[test]
    fn grid_recovers_noiseless_optimum() {
        let r = grid_refine_maximize(0.0, 0.1, 201, 6).unwrap();
        let exact = info::i_ae_optimal(0.0, 0.1).unwrap();
        assert!((r.best_value - exact).abs() < 1e-6);
        assert!(r.best_value <= exact + 1e-9);
        let plus = info::beta_sq_optimal(0.0, 0.1, RootBranch::Plus).unwrap();
        assert!((r.best_params.beta_a_sq() - plus).abs() < 1e-4);
        assert_eq!(r.branch, PhaseBranch::Zero);
        let g = r.best_params.constraint_residuals();
        assert!(g.iter().all(|x| x.abs() < 1e-10), "{g:?}");
    }

    #[test]
    fn grid_at_lowest_qber_finds_nothing() {
        let r = grid_refine_maximize(0.2, 0.1, 51, 2).unwrap();
        assert!(r.best_value.abs() < 1e-12, "{}", r.best_value);
    }

    #[test]
    fn grid_with_noise_beats_antiphase() {
        let r = grid_refine_maximize(0.05, 0.1, 201, 6).unwrap();
        let exact = info::i_ae_optimal(0.05, 0.1).unwrap();
        assert!((r.best_value - exact).abs() < 1e-6);
        assert!(r.best_value > info::i_ae_antiphase(0.05, 0.1).unwrap());
    }

    #[test]
    fn grid_rejects_small_lattice() {
        assert!(matches!(
            grid_refine_maximize(0.0, 0.1, 50, 1),
            Err(Error::InvalidParameters(_))
        ));
    }

    #[test]
    fn grid_is_deterministic() {
        let a = grid_refine_maximize(0.1, 0.2, 101, 3).unwrap();
        let b = grid_refine_maximize(0.1, 0.2, 101, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn root_pairs() {
        assert!(verify_root_pair(0.0, 0.1));
        assert!(verify_root_pair(0.1, 0.3));
        assert!(verify_root_pair(0.2, 0.5));
        assert!(!verify_root_pair(0.2, 0.1));
        assert!(!verify_root_pair(0.2, 0.05));
    }

    #[test]
    fn exchange_symmetry_on_zero_phase_branch() {
        for (p, q) in [(0.0, 0.1), (0.05, 0.2), (0.3, 0.4)] {
            for s in branch_profile(p, q, PhaseBranch::Zero, 101).unwrap() {
                let swapped = objective(p, q, 1.0 - s.beta_a_sq, 1.0 - s.beta_c_sq);
                assert!((s.value - swapped).abs() <= 1e-14);
            }
        }
    }

    #[test]
    fn antiphase_stationary_point_is_symmetric_minimum() {
        for (p, q) in [(0.0, 0.1), (0.05, 0.2), (0.2, 0.35)] {
            let (params, kind) = antiphase_stationary_point(p, q).unwrap();
            assert!((params.beta_a_sq() - params.beta_c_sq()).abs() < 1e-4);
            assert_abs_diff_eq!(
                info::i_ae_general(&params),
                info::i_ae_antiphase(p, q).unwrap(),
                epsilon = 1e-6
            );
            // Along the curve the symmetric point is where Eve learns least.
            assert_eq!(kind, ExtremumKind::Minimum);
        }
    }

    #[test]
    fn stationarity_at_optimum() {
        let params = AttackParameters::optimal(0.05, 0.15, RootBranch::Plus).unwrap();
        let r = lagrange_residual(&params).unwrap();
        assert!(!r.degenerate);
        assert!(r.residual_norm < 1e-6);
    }

    #[test]
    fn stationarity_fails_off_optimum() {
        let params = AttackParameters::optimal(0.05, 0.15, RootBranch::Plus).unwrap();
        let moved = perturb_feasible(&params, 0.05).unwrap();
        assert!((moved.beta_a_sq() - params.beta_a_sq()).abs() > 0.049);
        let r = lagrange_residual(&moved).unwrap();
        assert!(r.residual_norm > 1e-3);
    }

    #[test]
    fn stationarity_degenerate_without_disturbance() {
        let params = AttackParameters::optimal(0.1, 0.05, RootBranch::Plus).unwrap();
        assert!(lagrange_residual(&params).unwrap().degenerate);
    }

    #[test]
    fn stationarity_requires_feasible_point() {
        let params = AttackParameters::from_squares(0.1, 0.2, 0.3, 0.3, 1.0).unwrap();
        assert!(matches!(
            lagrange_residual(&params),
            Err(Error::InvalidParameters(_))
        ));
    }

    #[test]
    fn optimum_has_smallest_residual_among_perturbations() {
        // splitmix64
        let mut state = 0x9E37_79B9_7F4A_7C15u64;
        let mut next = || {
            state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
            (z ^ (z >> 31)) as f64 / u64::MAX as f64
        };
        let (p, q) = (0.1, 0.2);
        let opt = AttackParameters::optimal(p, q, RootBranch::Plus).unwrap();
        let base = lagrange_residual(&opt).unwrap().residual_norm;
        let mut tried = 0;
        while tried < 100 {
            let shift = 0.001 + 0.1 * next();
            let Ok(moved) = perturb_feasible(&opt, shift) else {
                continue;
            };
            tried += 1;
            assert!(lagrange_residual(&moved).unwrap().residual_norm > base);
        }
    }
}
