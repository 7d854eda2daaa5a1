//! Passive states and unitarily extractable work.
//!
//! For `ρ = Σ p_k |ψ_k⟩⟨ψ_k|` with `p_k` non-increasing and
//! `H = Σ ε_k |k⟩⟨k|` with `ε_k` non-decreasing, the passive state is
//! `ρ_p = Σ p_k |k⟩⟨k|` and the ergotropy is `Tr(ρH) − Tr(ρ_p H)`.
//! Ties in either spectrum are broken by original index; the energies
//! involved do not depend on the choice.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, eigvalsh, ComplexMatrix};
use crate::states::{DensityMatrix, Hamiltonian};
use crate::tol;

#[derive(Debug, Clone, PartialEq)]
pub struct WorkReport {
    pub input_energy: f64,
    pub passive_energy: f64,
    pub ergotropy: f64,
    pub passive_state: DensityMatrix,
    pub extraction_unitary: ComplexMatrix,
}

/// Scalar parts of a [`WorkReport`], for serialization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WorkSummary {
    pub input_energy: f64,
    pub passive_energy: f64,
    pub ergotropy: f64,
}

impl WorkReport {
    pub fn summary(&self) -> WorkSummary {
        WorkSummary {
            input_energy: self.input_energy,
            passive_energy: self.passive_energy,
            ergotropy: self.ergotropy,
        }
    }
}

fn check_dims(rho: &DensityMatrix, h: &Hamiltonian) -> Result<()> {
    if rho.dim() != h.dim() {
        return Err(Error::dims(format!(
            "state dim {} vs Hamiltonian dim {}",
            rho.dim(),
            h.dim()
        )));
    }
    Ok(())
}

/// Populations in non-increasing order with their eigenvectors as columns.
fn populations_descending(rho: &DensityMatrix) -> (Vec<f64>, ComplexMatrix) {
    let spectrum = rho.spectrum();
    let n = rho.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        spectrum.eigenvalues[b]
            .total_cmp(&spectrum.eigenvalues[a])
            .then(a.cmp(&b))
    });
    let p = order.iter().map(|&k| spectrum.eigenvalues[k]).collect();
    let vectors = ComplexMatrix::from_fn(n, |i, k| spectrum.eigenvectors[(i, order[k])]);
    (p, vectors)
}

pub fn passive_state(rho: &DensityMatrix, h: &Hamiltonian) -> Result<DensityMatrix> {
    check_dims(rho, h)?;
    let (p, _) = populations_descending(rho);
    Ok(passive_from_populations(&p, h))
}

fn passive_from_populations(p: &[f64], h: &Hamiltonian) -> DensityMatrix {
    let levels = &h.spectrum().eigenvectors;
    let n = p.len();
    let m = ComplexMatrix::from_fn(n, |i, j| {
        (0..n)
            .map(|k| levels[(i, k)] * levels[(j, k)].conj() * p[k])
            .sum()
    });
    DensityMatrix::from_matrix_unchecked(m)
}

/// `U = Σ_k |k⟩⟨ψ_k|`, rotating the sorted eigenvectors of `ρ` onto the
/// energy levels in ascending order.
pub fn extraction_unitary(rho: &DensityMatrix, h: &Hamiltonian) -> Result<ComplexMatrix> {
    check_dims(rho, h)?;
    let (_, psi) = populations_descending(rho);
    Ok(&h.spectrum().eigenvectors * &psi.adjoint())
}

pub fn ergotropy(rho: &DensityMatrix, h: &Hamiltonian) -> Result<WorkReport> {
    check_dims(rho, h)?;
    let (p, psi) = populations_descending(rho);
    let passive = passive_from_populations(&p, h);
    let input_energy = rho.matrix().trace_product(h.matrix()).re;
    let passive_energy = passive.matrix().trace_product(h.matrix()).re;
    Ok(WorkReport {
        input_energy,
        passive_energy,
        ergotropy: input_energy - passive_energy,
        passive_state: passive,
        extraction_unitary: &h.spectrum().eigenvectors * &psi.adjoint(),
    })
}

/// `Σ_{k,l} p_k ε_l (|⟨ψ_k|l⟩|² − δ_kl)`, the overlap form of the ergotropy.
pub fn ergotropy_double_sum(rho: &DensityMatrix, h: &Hamiltonian) -> Result<f64> {
    check_dims(rho, h)?;
    let (p, psi) = populations_descending(rho);
    let levels = &h.spectrum().eigenvectors;
    let eps = h.energies();
    let mut total = 0.0;
    for (k, &p_k) in p.iter().enumerate() {
        let psi_k = psi.column(k);
        for (l, &eps_l) in eps.iter().enumerate() {
            let overlap = linalg::inner(&psi_k, &levels.column(l)).norm_sqr();
            let delta = if k == l { 1.0 } else { 0.0 };
            total += p_k * eps_l * (overlap - delta);
        }
    }
    Ok(total)
}

/// Ergotropy of a raw Hermitian unit-trace matrix from eigenvalues only;
/// used in optimizer inner loops where full reports are not needed.
pub fn ergotropy_value(rho: &ComplexMatrix, h: &Hamiltonian) -> f64 {
    let mut p = eigvalsh(rho).expect("reduced states are Hermitian");
    p.reverse();
    let passive: f64 = p.iter().zip(h.energies()).map(|(a, e)| a * e).sum();
    rho.trace_product(h.matrix()).re - passive
}

pub fn is_passive(rho: &DensityMatrix, h: &Hamiltonian, tol: f64) -> Result<bool> {
    Ok(ergotropy(rho, h)?.ergotropy <= tol)
}

/// [`is_passive`] at the default tolerance.
pub fn is_passive_default(rho: &DensityMatrix, h: &Hamiltonian) -> Result<bool> {
    is_passive(rho, h, tol::PASSIVE)
}

/// `W(ρ_AB, H_A ⊗ I + I ⊗ H_B) − W(ρ_A, H_A) − W(ρ_B, H_B)`.
pub fn ergotropy_gap(
    rho_ab: &DensityMatrix,
    h_a: &Hamiltonian,
    h_b: &Hamiltonian,
    dims: (usize, usize),
) -> Result<f64> {
    let (da, db) = dims;
    if da * db != rho_ab.dim() || h_a.dim() != da || h_b.dim() != db {
        return Err(Error::dims(format!(
            "dims ({da}, {db}) with Hamiltonians ({}, {}) for state of dim {}",
            h_a.dim(),
            h_b.dim(),
            rho_ab.dim()
        )));
    }
    let global = ergotropy(rho_ab, &Hamiltonian::local_sum(h_a, h_b))?.ergotropy;
    let rho_a = rho_ab.partial_trace(&[da, db], &[0])?;
    let rho_b = rho_ab.partial_trace(&[da, db], &[1])?;
    Ok(global - ergotropy(&rho_a, h_a)?.ergotropy - ergotropy(&rho_b, h_b)?.ergotropy)
}
