//! Eve's probe states and interaction isometry, with her outcome statistics.
//!
//! Probe kets are two-qubit states `|jk⟩` stored at index `2j + k`. Eve's
//! probe after interaction is one of
//!
//! ```text
//! |A⟩ = r_βA |10⟩ + r_γA e^{iΦ_γA} |01⟩      |B⟩ = |00⟩
//! |C⟩ = r_βC |10⟩ + r_γC e^{iΦ_γC} |01⟩      |D⟩ = |11⟩
//! ```
//!
//! and the interaction acts on the signal as
//! `|0⟩ ↦ √(1-D)|0⟩|A⟩ + √D|1⟩|B⟩`, `|1⟩ ↦ √(1-D)|1⟩|C⟩ + √D|0⟩|D⟩`.

use crate::error::{Error, Result};
use crate::protocol::{self, Basis, Bit, SignalSpec};
use crate::qmath::{
    self, CMatrix, ComplexScalar, DensityOperator, StateVector, JOINT_DIM, PROBE_DIM, SIGNAL_DIM,
};

/// Tolerance on `r_β² + r_γ² = 1`.
pub const NORM_TOL: f64 = 1e-10;
/// Tolerance for `V†V = 𝟙`.
pub const ISOMETRY_TOL: f64 = 1e-10;

/// Probe basis index of `|jk⟩`.
pub const fn probe_index(j: usize, k: usize) -> usize {
    2 * j + k
}

/// Eve's measurement outcomes in the order `|00⟩, |10⟩, |01⟩, |11⟩`.
pub const OUTCOME_ORDER: [usize; 4] = [
    probe_index(0, 0),
    probe_index(1, 0),
    probe_index(0, 1),
    probe_index(1, 1),
];

/// Noise, error rate and Eve's polar coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttackParameters {
    p: f64,
    q: f64,
    r_beta_a: f64,
    r_beta_c: f64,
    r_gamma_a: f64,
    r_gamma_c: f64,
    phi_gamma_a: f64,
    phi_gamma_c: f64,
}

impl AttackParameters {
    /// `radii = [r_βA, r_βC, r_γA, r_γC]`, `phases = [Φ_γA, Φ_γC]`.
    pub fn new(p: f64, q: f64, radii: [f64; 4], phases: [f64; 2]) -> Result<Self> {
        protocol::check_domain(p, q)?;
        if radii.iter().any(|r| !r.is_finite() || *r < 0.0) {
            return Err(Error::InvalidParameters(format!(
                "radii must be finite and nonnegative, got {radii:?}"
            )));
        }
        if phases.iter().any(|f| !f.is_finite()) {
            return Err(Error::InvalidParameters("phases must be finite".into()));
        }
        let [r_beta_a, r_beta_c, r_gamma_a, r_gamma_c] = radii;
        let norm_a = r_beta_a * r_beta_a + r_gamma_a * r_gamma_a - 1.0;
        let norm_c = r_beta_c * r_beta_c + r_gamma_c * r_gamma_c - 1.0;
        if norm_a.abs() > NORM_TOL || norm_c.abs() > NORM_TOL {
            return Err(Error::InvalidParameters(format!(
                "probe norms violated by {norm_a:e} (A) and {norm_c:e} (C)"
            )));
        }
        Ok(Self {
            p,
            q,
            r_beta_a,
            r_beta_c,
            r_gamma_a,
            r_gamma_c,
            phi_gamma_a: phases[0],
            phi_gamma_c: phases[1],
        })
    }

    /// Builds parameters from the squared β radii; the γ radii follow from
    /// normalization and `Φ_γA = arccos(cos_delta_phi)`, `Φ_γC = 0`.
    pub fn from_squares(
        p: f64,
        q: f64,
        beta_a_sq: f64,
        beta_c_sq: f64,
        cos_delta_phi: f64,
    ) -> Result<Self> {
        for b in [beta_a_sq, beta_c_sq] {
            if !(0.0..=1.0).contains(&b) {
                return Err(Error::InvalidParameters(format!(
                    "squared radius {b} outside [0, 1]"
                )));
            }
        }
        if !(-1.0..=1.0).contains(&cos_delta_phi) {
            return Err(Error::InvalidParameters(format!(
                "cos ΔΦ = {cos_delta_phi} outside [-1, 1]"
            )));
        }
        Self::new(
            p,
            q,
            [
                beta_a_sq.sqrt(),
                beta_c_sq.sqrt(),
                (1.0 - beta_a_sq).sqrt(),
                (1.0 - beta_c_sq).sqrt(),
            ],
            [cos_delta_phi.acos(), 0.0],
        )
    }

    /// The closed-form optimal attack: `β_A²` from the chosen root,
    /// `β_C² = 1 - β_A²`, equal phases.
    pub fn optimal(p: f64, q: f64, root: crate::info::RootBranch) -> Result<Self> {
        let b = crate::info::beta_sq_optimal(p, q, root)?;
        Self::from_squares(p, q, b, 1.0 - b, 1.0)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn radii(&self) -> [f64; 4] {
        [self.r_beta_a, self.r_beta_c, self.r_gamma_a, self.r_gamma_c]
    }

    pub fn phases(&self) -> [f64; 2] {
        [self.phi_gamma_a, self.phi_gamma_c]
    }

    pub fn beta_a_sq(&self) -> f64 {
        self.r_beta_a * self.r_beta_a
    }

    pub fn beta_c_sq(&self) -> f64 {
        self.r_beta_c * self.r_beta_c
    }

    pub fn gamma_a_sq(&self) -> f64 {
        self.r_gamma_a * self.r_gamma_a
    }

    pub fn gamma_c_sq(&self) -> f64 {
        self.r_gamma_c * self.r_gamma_c
    }

    pub fn delta_phi(&self) -> f64 {
        self.phi_gamma_a - self.phi_gamma_c
    }

    pub fn cos_delta_phi(&self) -> f64 {
        self.delta_phi().cos()
    }

    /// `D = (Q - p/2)/(1-p)`.
    pub fn disturbance(&self) -> f64 {
        ((self.q - self.p / 2.0) / (1.0 - self.p)).clamp(0.0, 0.5)
    }

    /// Residuals `[g₁, g₂, g₃]` of the overlap constraint and the two norms.
    pub fn constraint_residuals(&self) -> [f64; 3] {
        let g1 = self.r_beta_a * self.r_beta_c
            + self.r_gamma_a * self.r_gamma_c * self.cos_delta_phi()
            - target_overlap(self.p, self.q);
        let g2 = self.beta_a_sq() + self.gamma_a_sq() - 1.0;
        let g3 = self.beta_c_sq() + self.gamma_c_sq() - 1.0;
        [g1, g2, g3]
    }
}

/// Required `Re⟨A|C⟩ = 2(1-2Q)/(2-p-2Q)`.
pub fn target_overlap(p: f64, q: f64) -> f64 {
    2.0 * (1.0 - 2.0 * q) / (2.0 - p - 2.0 * q)
}

/// Eve's four normalized post-interaction probe states.
#[derive(Debug, Clone, PartialEq)]
pub struct AncillaSet {
    a: StateVector,
    b: StateVector,
    c: StateVector,
    d: StateVector,
}

impl AncillaSet {
    pub fn new(a: StateVector, b: StateVector, c: StateVector, d: StateVector) -> Result<Self> {
        for (name, v) in [("A", &a), ("B", &b), ("C", &c), ("D", &d)] {
            if v.dim() != PROBE_DIM {
                return Err(Error::DimensionMismatch {
                    expected: format!("probe dimension {PROBE_DIM}"),
                    found: format!("{name} of dimension {}", v.dim()),
                });
            }
            if !v.is_normalized(NORM_TOL) {
                return Err(Error::InvalidParameters(format!(
                    "probe state {name} has squared norm {}",
                    v.norm_sqr()
                )));
            }
        }
        Ok(Self { a, b, c, d })
    }

    pub fn a(&self) -> &StateVector {
        &self.a
    }

    pub fn b(&self) -> &StateVector {
        &self.b
    }

    pub fn c(&self) -> &StateVector {
        &self.c
    }

    pub fn d(&self) -> &StateVector {
        &self.d
    }
}

fn probe_ket(j: usize, k: usize) -> StateVector {
    StateVector::basis(PROBE_DIM, probe_index(j, k)).expect("probe basis index in range")
}

pub fn build_ancillas(params: &AttackParameters) -> Result<AncillaSet> {
    let ket = |r_beta: f64, r_gamma: f64, phi: f64| {
        let mut amps = vec![ComplexScalar::new(0.0, 0.0); PROBE_DIM];
        amps[probe_index(1, 0)] = ComplexScalar::new(r_beta, 0.0);
        amps[probe_index(0, 1)] = ComplexScalar::from_polar(r_gamma, phi);
        StateVector::new(amps)
    };
    AncillaSet::new(
        ket(params.r_beta_a, params.r_gamma_a, params.phi_gamma_a)?,
        probe_ket(0, 0),
        ket(params.r_beta_c, params.r_gamma_c, params.phi_gamma_c)?,
        probe_ket(1, 1),
    )
}

/// Residual magnitudes of `⟨B|D⟩ = 0`, `Re⟨A|C⟩ = 2(1-2Q)/(2-p-2Q)`,
/// `⟨A|B⟩ + ⟨D|C⟩ = 0` and `⟨A|D⟩ + ⟨B|C⟩ = 0`.
pub fn constraint_residuals(set: &AncillaSet, p: f64, q: f64) -> Result<[f64; 4]> {
    protocol::check_domain(p, q)?;
    Ok([
        set.b.inner(&set.d).norm(),
        (set.a.inner(&set.c).re - target_overlap(p, q)).abs(),
        (set.a.inner(&set.b) + set.d.inner(&set.c)).norm(),
        (set.a.inner(&set.d) + set.b.inner(&set.c)).norm(),
    ])
}

/// The 8×2 isometry `V` whose column `k` is `U(|k⟩⊗|X⟩)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EveIsometry {
    v: CMatrix,
}

impl EveIsometry {
    pub fn from_matrix(v: CMatrix) -> Result<Self> {
        if v.rows() != JOINT_DIM || v.cols() != SIGNAL_DIM {
            return Err(Error::DimensionMismatch {
                expected: format!("{JOINT_DIM}x{SIGNAL_DIM}"),
                found: format!("{}x{}", v.rows(), v.cols()),
            });
        }
        if !qmath::is_isometry(&v, ISOMETRY_TOL) {
            return Err(Error::InconsistentConstraints(
                "columns are not orthonormal (V†V ≠ 1)".into(),
            ));
        }
        Ok(Self { v })
    }

    /// Assembles `V` from the images of `|0⟩` and `|1⟩`.
    pub fn from_columns(image0: &StateVector, image1: &StateVector) -> Result<Self> {
        if image0.dim() != JOINT_DIM || image1.dim() != JOINT_DIM {
            return Err(Error::DimensionMismatch {
                expected: format!("columns of dimension {JOINT_DIM}"),
                found: format!("{} and {}", image0.dim(), image1.dim()),
            });
        }
        let entries = (0..JOINT_DIM)
            .flat_map(|r| [image0.amplitudes()[r], image1.amplitudes()[r]])
            .collect();
        Self::from_matrix(CMatrix::new(JOINT_DIM, SIGNAL_DIM, entries)?)
    }

    /// Isometry of the given attack.
    pub fn for_params(params: &AttackParameters) -> Result<Self> {
        build_isometry(params.disturbance(), &build_ancillas(params)?)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.v
    }

    /// `V ρ V†` on the signal⊗probe space.
    pub fn evolve(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        rho.conjugate_by(&self.v)
    }
}

pub fn build_isometry(d: f64, set: &AncillaSet) -> Result<EveIsometry> {
    if !(0.0..=0.5).contains(&d) {
        return Err(Error::Domain(format!("disturbance {d} outside [0, 1/2]")));
    }
    let zero = StateVector::basis(SIGNAL_DIM, 0)?;
    let one = StateVector::basis(SIGNAL_DIM, 1)?;
    let keep = ComplexScalar::new((1.0 - d).sqrt(), 0.0);
    let flip = ComplexScalar::new(d.sqrt(), 0.0);
    let image0 = zero
        .tensor(&set.a)?
        .scale(keep)
        .add(&one.tensor(&set.b)?.scale(flip))?;
    let image1 = one
        .tensor(&set.c)?
        .scale(keep)
        .add(&zero.tensor(&set.d)?.scale(flip))?;
    EveIsometry::from_columns(&image0, &image1)
}

/// Eve's conditional outcome probabilities `M₁…M₈`: `M₁…M₄` for Alice's bit 0,
/// `M₅…M₈` for bit 1, each in the order `|00⟩, |10⟩, |01⟩, |11⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutcomeDistribution {
    m: [f64; 8],
}

impl OutcomeDistribution {
    pub const NORM_TOL: f64 = 1e-12;

    pub fn new(m: [f64; 8]) -> Result<Self> {
        if m.iter()
            .any(|x| !(-Self::NORM_TOL..=1.0 + Self::NORM_TOL).contains(x))
        {
            return Err(Error::Domain(format!(
                "outcome probabilities {m:?} outside [0, 1]"
            )));
        }
        let s0: f64 = m[..4].iter().sum();
        let s1: f64 = m[4..].iter().sum();
        if (s0 - 1.0).abs() > Self::NORM_TOL || (s1 - 1.0).abs() > Self::NORM_TOL {
            return Err(Error::Domain(format!(
                "outcome quadruples sum to {s0} and {s1}"
            )));
        }
        Ok(Self { m })
    }

    pub fn as_array(&self) -> [f64; 8] {
        self.m
    }

    /// `M_i` with 1-based `i`.
    pub fn m(&self, i: usize) -> f64 {
        self.m[i - 1]
    }

    pub fn given(&self, bit: Bit) -> [f64; 4] {
        let off = match bit {
            Bit::Zero => 0,
            Bit::One => 4,
        };
        [
            self.m[off],
            self.m[off + 1],
            self.m[off + 2],
            self.m[off + 3],
        ]
    }

    pub fn max_abs_diff(&self, other: &OutcomeDistribution) -> f64 {
        self.m
            .iter()
            .zip(&other.m)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

pub fn eve_distribution_closed_form(params: &AttackParameters) -> OutcomeDistribution {
    let h = params.p / 2.0;
    let flip = (params.q - h) / (1.0 - params.p);
    let keep = (1.0 - h - params.q) / (1.0 - params.p);
    let (ba, bc, ga, gc) = (
        params.beta_a_sq(),
        params.beta_c_sq(),
        params.gamma_a_sq(),
        params.gamma_c_sq(),
    );
    let m1 = (1.0 - h) * flip;
    let m4 = h * flip;
    let m2 = keep * ((1.0 - h) * ba + h * bc);
    let m3 = keep * ((1.0 - h) * ga + h * gc);
    let m6 = keep * ((1.0 - h) * bc + h * ba);
    let m7 = keep * ((1.0 - h) * gc + h * ga);
    OutcomeDistribution::new([m1, m2, m3, m4, m4, m6, m7, m1])
        .expect("closed-form outcome probabilities are normalized")
}

/// Evolves `noisy_signal(Z, a, p)` through `iso`, traces out the signal and
/// reads the probe populations.
pub fn simulate_eve_distribution(iso: &EveIsometry, p: f64) -> Result<OutcomeDistribution> {
    let mut m = [0.0; 8];
    for (slot, bit) in Bit::ALL.into_iter().enumerate() {
        let rho = protocol::noisy_signal(&SignalSpec::new(Basis::Z, bit, p)?);
        let probe = qmath::partial_trace_signal(&iso.evolve(&rho)?)?;
        let diag = probe.diagonal();
        for (k, &idx) in OUTCOME_ORDER.iter().enumerate() {
            m[4 * slot + k] = diag[idx];
        }
    }
    OutcomeDistribution::new(m)
}

/// Bob's reduced states `(ρ₀ᴮ, ρ₁ᴮ)` when Alice sends the noisy `basis` states.
pub fn bob_states(
    iso: &EveIsometry,
    p: f64,
    basis: Basis,
) -> Result<(DensityOperator, DensityOperator)> {
    let reduce = |bit| -> Result<DensityOperator> {
        let rho = protocol::noisy_signal(&SignalSpec::new(basis, bit, p)?);
        qmath::partial_trace_probe(&iso.evolve(&rho)?, PROBE_DIM)
    };
    Ok((reduce(Bit::Zero)?, reduce(Bit::One)?))
}

pub fn simulate_qber(iso: &EveIsometry, p: f64, basis: Basis) -> Result<f64> {
    let (rho0, rho1) = bob_states(iso, p, basis)?;
    Ok(protocol::qber_from_bob_states(&rho0, &rho1, basis))
}

/// `|⟨0_b|ρ₁ᴮ|0_b⟩ - ⟨1_b|ρ₀ᴮ|1_b⟩|`.
pub fn bob_symmetry_residual(iso: &EveIsometry, p: f64, basis: Basis) -> Result<f64> {
    let (rho0, rho1) = bob_states(iso, p, basis)?;
    let zero = protocol::pure_signal(basis, Bit::Zero);
    let one = protocol::pure_signal(basis, Bit::One);
    Ok((rho1.expectation(&zero) - rho0.expectation(&one)).abs())
}
