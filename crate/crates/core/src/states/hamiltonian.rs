use std::path::Path;

use crate::error::{Error, Result};
use crate::linalg::{self, eig_hermitian, ComplexMatrix, HermitianSpectrum, MatrixFile};

/// Hermitian observable with its spectral decomposition, energies ascending.
///
/// Eigenvalues are never shifted: the ground energy is whatever the caller
/// supplies.
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian {
    matrix: ComplexMatrix,
    spectrum: HermitianSpectrum,
}

impl Hamiltonian {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let spectrum = eig_hermitian(&matrix)?;
        Ok(Self {
            matrix: matrix.hermitian_part(),
            spectrum,
        })
    }

    /// Diagonal Hamiltonian with the given level energies (any order).
    pub fn from_energies(energies: &[f64]) -> Result<Self> {
        if energies.is_empty() {
            return Err(Error::BadDimension(0));
        }
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(Error::InvalidParameter("non-finite energy".into()));
        }
        Self::new(ComplexMatrix::from_real_diagonal(energies))
    }

    /// `Σ k·spacing |k⟩⟨k|`.
    pub fn equally_spaced(dim: usize, spacing: f64) -> Result<Self> {
        let energies: Vec<f64> = (0..dim).map(|k| k as f64 * spacing).collect();
        Self::from_energies(&energies)
    }

    /// `H_A ⊗ I + I ⊗ H_B`.
    pub fn local_sum(a: &Self, b: &Self) -> Self {
        let ia = ComplexMatrix::identity(a.dim());
        let ib = ComplexMatrix::identity(b.dim());
        let m = &linalg::kron(&a.matrix, &ib) + &linalg::kron(&ia, &b.matrix);
        Self::new(m).expect("sum of Hermitian terms is Hermitian")
    }

    /// `U H U†`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.dim() != self.dim() {
            return Err(Error::dims(format!("{} vs {}", u.dim(), self.dim())));
        }
        Self::new(self.matrix.conjugate_by(u))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn spectrum(&self) -> &HermitianSpectrum {
        &self.spectrum
    }

    /// Level energies, ascending.
    pub fn energies(&self) -> &[f64] {
        &self.spectrum.eigenvalues
    }

    pub fn ground_energy(&self) -> f64 {
        self.spectrum.eigenvalues[0]
    }

    /// Whether the matrix is diagonal in the computational basis.
    pub fn is_diagonal(&self, tol: f64) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| i == j || self.matrix[(i, j)].norm() <= tol))
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let file = MatrixFile::read(path)?;
        file.expect_kind("hamiltonian")?;
        Self::new(file.to_matrix()?)
    }

    pub fn to_file(&self) -> MatrixFile {
        MatrixFile::from_matrix(&self.matrix, Some("hamiltonian"))
    }
}
