use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, eig_hermitian, ComplexMatrix, HermitianSpectrum, MatrixFile};
use crate::tol;

/// A validated quantum state: Hermitian, unit trace, positive semidefinite,
/// each to the structural tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let deviation = matrix.hermitian_deviation();
        if deviation > tol::STRUCTURAL {
            return Err(Error::NotHermitian { deviation });
        }
        let matrix = matrix.hermitian_part();
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > tol::STRUCTURAL {
            return Err(Error::InvalidState(format!("trace {trace} differs from 1")));
        }
        let min_eig = eig_hermitian(&matrix)?.eigenvalues[0];
        if min_eig < -tol::STRUCTURAL {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min_eig:.3e}"
            )));
        }
        Ok(Self { matrix })
    }

    /// Skips validation; callers guarantee the matrix is a state up to
    /// round-off (unitary images, partial traces, convex mixtures).
    pub(crate) fn from_matrix_unchecked(matrix: ComplexMatrix) -> Self {
        Self {
            matrix: matrix.hermitian_part(),
        }
    }

    /// `|ψ⟩⟨ψ|` for a normalized vector.
    pub fn from_pure(psi: &[Complex64]) -> Result<Self> {
        if psi.is_empty() {
            return Err(Error::BadDimension(0));
        }
        let norm_sqr: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > tol::STRUCTURAL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self::from_matrix_unchecked(ComplexMatrix::projector(psi)))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self::from_matrix_unchecked(ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64))
    }

    /// `|k⟩⟨k|`.
    pub fn basis_state(dim: usize, k: usize) -> Self {
        Self::from_matrix_unchecked(ComplexMatrix::basis_projector(dim, k))
    }

    /// State diagonal in the computational basis.
    pub fn from_populations(populations: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real_diagonal(populations))
    }

    /// `p·a + (1 − p)·b`.
    pub fn mixture(p: f64, a: &Self, b: &Self) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::BadFraction(p));
        }
        if a.dim() != b.dim() {
            return Err(Error::dims(format!("{} vs {}", a.dim(), b.dim())));
        }
        let m = &a.matrix.scale_real(p) + &b.matrix.scale_real(1.0 - p);
        Ok(Self::from_matrix_unchecked(m))
    }

    /// `ρ ⊗ σ`.
    pub fn tensor(&self, other: &Self) -> Self {
        Self::from_matrix_unchecked(linalg::kron(&self.matrix, &other.matrix))
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.dim() != self.dim() {
            return Err(Error::dims(format!(
                "unitary dim {} vs state dim {}",
                u.dim(),
                self.dim()
            )));
        }
        Ok(Self::from_matrix_unchecked(self.matrix.conjugate_by(u)))
    }

    /// Reduced state on `keep` for a state over factors `dims`.
    pub fn partial_trace(&self, dims: &[usize], keep: &[usize]) -> Result<Self> {
        linalg::partial_trace(&self.matrix, dims, keep).map(Self::from_matrix_unchecked)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// `Tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        self.matrix.trace_product(&self.matrix).re
    }

    pub fn populations(&self) -> Vec<f64> {
        self.matrix.real_diagonal()
    }

    pub fn spectrum(&self) -> HermitianSpectrum {
        eig_hermitian(&self.matrix).expect("density matrices are Hermitian")
    }

    pub fn trace_distance(&self, other: &Self) -> Result<f64> {
        linalg::trace_norm_distance(&self.matrix, &other.matrix)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let file = MatrixFile::read(path)?;
        file.expect_kind("density")?;
        Self::new(file.to_matrix()?)
    }

    pub fn to_file(&self) -> MatrixFile {
        MatrixFile::from_matrix(&self.matrix, Some("density"))
    }
}

/// `½‖ρ − σ‖₁`, in `[0, 1]`.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    a.trace_distance(b)
}
