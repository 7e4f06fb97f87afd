//! Dense complex linear algebra for the fixed small dimensions used here.
//!
//! Every matrix side is one of 1, 2, 4 or 8: a signal qubit, a two-qubit
//! probe, or the joint signal⊗probe space. Composite spaces are always
//! ordered signal first, probe second, so the joint index is
//! `probe_dim * signal + probe`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexScalar = Complex64;

pub const SIGNAL_DIM: usize = 2;
pub const PROBE_DIM: usize = 4;
pub const JOINT_DIM: usize = SIGNAL_DIM * PROBE_DIM;

const ALLOWED_DIMS: [usize; 4] = [1, 2, 4, 8];

/// Hermiticity and trace tolerance for [`DensityOperator`].
pub const DENSITY_TOL: f64 = 1e-12;
/// Lower bound on eigenvalues accepted by [`DensityOperator::is_positive`].
pub const POSITIVITY_TOL: f64 = 1e-10;

fn check_dims(rows: usize, cols: usize) -> Result<()> {
    if ALLOWED_DIMS.contains(&rows) && ALLOWED_DIMS.contains(&cols) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension { rows, cols })
    }
}

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ComplexScalar>,
}

impl CMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<ComplexScalar>) -> Result<Self> {
        check_dims(rows, cols)?;
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{} entries", rows * cols),
                found: format!("{} entries", entries.len()),
            });
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::Domain("matrix entries must be finite".into()));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            entries
                .iter()
                .map(|&x| ComplexScalar::new(x, 0.0))
                .collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        check_dims(rows, cols)?;
        Ok(Self {
            rows,
            cols,
            entries: vec![ComplexScalar::new(0.0, 0.0); rows * cols],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim, dim)?;
        for k in 0..dim {
            m.entries[k * dim + k] = ComplexScalar::new(1.0, 0.0);
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[ComplexScalar] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> ComplexScalar {
        self.entries[row * self.cols + col]
    }

    pub fn column(&self, col: usize) -> StateVector {
        StateVector {
            amplitudes: (0..self.rows).map(|r| self.get(r, col)).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).conj());
            }
        }
        CMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn matmul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: format!("{} rows", self.cols),
                found: format!("{} rows", other.rows),
            });
        }
        let mut entries = vec![ComplexScalar::new(0.0, 0.0); self.rows * other.cols];
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == ComplexScalar::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..other.cols {
                    entries[r * other.cols + c] += a * other.get(k, c);
                }
            }
        }
        Ok(CMatrix {
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    pub fn scale(&self, factor: ComplexScalar) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{}x{}", self.rows, self.cols),
                found: format!("{}x{}", other.rows, other.cols),
            });
        }
        Ok(CMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn trace(&self) -> ComplexScalar {
        (0..self.rows.min(self.cols)).map(|k| self.get(k, k)).sum()
    }

    /// Largest entrywise modulus of `self - other`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.rows == self.cols && self.max_abs_diff(&self.adjoint()) <= tol
    }

    fn to_nalgebra(&self) -> DMatrix<ComplexScalar> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.entries)
    }
}

/// Kronecker product `a ⊗ b`.
pub fn tensor_product(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    check_dims(rows, cols)?;
    let mut entries = vec![ComplexScalar::new(0.0, 0.0); rows * cols];
    for ar in 0..a.rows {
        for ac in 0..a.cols {
            let x = a.get(ar, ac);
            for br in 0..b.rows {
                for bc in 0..b.cols {
                    let r = ar * b.rows + br;
                    let c = ac * b.cols + bc;
                    entries[r * cols + c] = x * b.get(br, bc);
                }
            }
        }
    }
    Ok(CMatrix {
        rows,
        cols,
        entries,
    })
}

/// True iff `v† v` equals the identity within `tol`, entrywise.
pub fn is_isometry(v: &CMatrix, tol: f64) -> bool {
    if v.rows < v.cols {
        return false;
    }
    let gram = match v.adjoint().matmul(v) {
        Ok(g) => g,
        Err(_) => return false,
    };
    match CMatrix::identity(v.cols) {
        Ok(id) => gram.max_abs_diff(&id) <= tol,
        Err(_) => false,
    }
}

/// A column vector of amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<ComplexScalar>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<ComplexScalar>) -> Result<Self> {
        check_dims(amplitudes.len(), 1)?;
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::Domain("amplitudes must be finite".into()));
        }
        Ok(Self { amplitudes })
    }

    /// Computational basis vector `|index⟩` of dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        check_dims(dim, 1)?;
        if index >= dim {
            return Err(Error::DimensionMismatch {
                expected: format!("index < {dim}"),
                found: index.to_string(),
            });
        }
        let mut amplitudes = vec![ComplexScalar::new(0.0, 0.0); dim];
        amplitudes[index] = ComplexScalar::new(1.0, 0.0);
        Ok(Self { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[ComplexScalar] {
        &self.amplitudes
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &StateVector) -> ComplexScalar {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }

    pub fn scale(&self, factor: ComplexScalar) -> StateVector {
        StateVector {
            amplitudes: self.amplitudes.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &StateVector) -> Result<StateVector> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim().to_string(),
                found: other.dim().to_string(),
            });
        }
        Ok(StateVector {
            amplitudes: self
                .amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        let m = tensor_product(&self.to_column(), &other.to_column())?;
        Ok(m.column(0))
    }

    pub fn to_column(&self) -> CMatrix {
        CMatrix {
            rows: self.dim(),
            cols: 1,
            entries: self.amplitudes.clone(),
        }
    }

    /// `|self⟩⟨self|`.
    pub fn projector(&self) -> CMatrix {
        let col = self.to_column();
        col.matmul(&col.adjoint())
            .expect("column times row is always conformable")
    }
}

/// Hermitian, unit-trace operator on a 2-, 4- or 8-dimensional space.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: CMatrix,
}

impl DensityOperator {
    /// Validates Hermiticity and unit trace. Positivity is checked on demand
    /// with [`DensityOperator::is_positive`].
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if matrix.rows != matrix.cols || matrix.rows < 2 {
            return Err(Error::DimensionMismatch {
                expected: "square matrix of side 2, 4 or 8".into(),
                found: format!("{}x{}", matrix.rows, matrix.cols),
            });
        }
        if !matrix.is_hermitian(DENSITY_TOL) {
            return Err(Error::Domain("density operator is not Hermitian".into()));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
            return Err(Error::Domain(format!(
                "density operator trace {tr} differs from 1"
            )));
        }
        Ok(Self { matrix })
    }

    pub fn pure(state: &StateVector) -> Result<Self> {
        if !state.is_normalized(DENSITY_TOL) {
            return Err(Error::Domain("pure state is not normalized".into()));
        }
        Self::new(state.projector())
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        let id = CMatrix::identity(dim)?;
        Self::new(id.scale(ComplexScalar::new(1.0 / dim as f64, 0.0)))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// `⟨v|ρ|v⟩`, real for Hermitian `ρ`.
    pub fn expectation(&self, v: &StateVector) -> f64 {
        let n = self.dim();
        let mut acc = ComplexScalar::new(0.0, 0.0);
        for r in 0..n {
            let left = v.amplitudes[r].conj();
            for c in 0..n {
                acc += left * self.matrix.get(r, c) * v.amplitudes[c];
            }
        }
        acc.re
    }

    /// Diagonal in the computational basis.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|k| self.matrix.get(k, k).re).collect()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self
            .matrix
            .to_nalgebra()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn is_positive(&self) -> bool {
        self.eigenvalues().iter().all(|&x| x >= -POSITIVITY_TOL)
    }

    /// `V ρ V†` for an isometry `V` mapping this space into a larger one.
    pub fn conjugate_by(&self, v: &CMatrix) -> Result<DensityOperator> {
        let out = v.matmul(&self.matrix)?.matmul(&v.adjoint())?;
        DensityOperator::new(out)
    }
}

enum Keep {
    Signal,
    Probe,
}

fn partial_trace(rho: &DensityOperator, keep: Keep) -> Result<DensityOperator> {
    if rho.dim() != JOINT_DIM {
        return Err(Error::DimensionMismatch {
            expected: format!("{JOINT_DIM}x{JOINT_DIM}"),
            found: format!("{0}x{0}", rho.dim()),
        });
    }
    let m = &rho.matrix;
    let out_dim = match keep {
        Keep::Signal => SIGNAL_DIM,
        Keep::Probe => PROBE_DIM,
    };
    let mut entries = vec![ComplexScalar::new(0.0, 0.0); out_dim * out_dim];
    match keep {
        Keep::Signal => {
            for s in 0..SIGNAL_DIM {
                for t in 0..SIGNAL_DIM {
                    entries[s * SIGNAL_DIM + t] = (0..PROBE_DIM)
                        .map(|k| m.get(PROBE_DIM * s + k, PROBE_DIM * t + k))
                        .sum();
                }
            }
        }
        Keep::Probe => {
            for k in 0..PROBE_DIM {
                for l in 0..PROBE_DIM {
                    entries[k * PROBE_DIM + l] = (0..SIGNAL_DIM)
                        .map(|s| m.get(PROBE_DIM * s + k, PROBE_DIM * s + l))
                        .sum();
                }
            }
        }
    }
    DensityOperator::new(CMatrix::new(out_dim, out_dim, entries)?)
}

/// Traces out the two-qubit probe of a signal⊗probe operator.
pub fn partial_trace_probe(rho: &DensityOperator, probe_dim: usize) -> Result<DensityOperator> {
    if probe_dim != PROBE_DIM {
        return Err(Error::DimensionMismatch {
            expected: format!("probe dimension {PROBE_DIM}"),
            found: probe_dim.to_string(),
        });
    }
    partial_trace(rho, Keep::Signal)
}

/// Traces out the signal qubit of a signal⊗probe operator.
pub fn partial_trace_signal(rho: &DensityOperator) -> Result<DensityOperator> {
    partial_trace(rho, Keep::Probe)
}
