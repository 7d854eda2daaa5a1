//! Exhaustive grid over two-qubit unitaries that conserve `H ⊗ I + I ⊗ H`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::objective_universal_mask;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::states::Hamiltonian;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub min_objective: f64,
    /// `[θ, α, β, φ₀, φ₁]` at the minimum.
    pub argmin: [f64; 5],
    pub points: usize,
}

/// `U|00⟩ = e^{iφ₀}|00⟩`, `U|11⟩ = e^{iφ₁}|11⟩`, and on `(|01⟩, |10⟩)` the
/// block `[[cosθ e^{iα}, −sinθ e^{−iβ}], [sinθ e^{iβ}, cosθ e^{−iα}]]`.
///
/// Up to a global phase this covers every unitary commuting with
/// `H ⊗ I + I ⊗ H` for a nondegenerate qubit `H`.
pub fn energy_preserving_unitary(theta: f64, alpha: f64, beta: f64, phi0: f64, phi1: f64) -> ComplexMatrix {
    let (s, c) = theta.sin_cos();
    let mut u = ComplexMatrix::zeros(4);
    u[(0, 0)] = Complex64::from_polar(1.0, phi0);
    u[(3, 3)] = Complex64::from_polar(1.0, phi1);
    u[(1, 1)] = Complex64::from_polar(c, alpha);
    u[(1, 2)] = -Complex64::from_polar(s, -beta);
    u[(2, 1)] = Complex64::from_polar(s, beta);
    u[(2, 2)] = Complex64::from_polar(c, -alpha);
    u
}

/// Minimum of [`objective_universal_mask`] over `grid⁵` members of the
/// energy-preserving family: `θ` on `grid` points spanning `[0, π/2]`, each
/// phase on `grid` points spanning `[0, 2π)`. Ties go to the first grid
/// point in lexicographic `(θ, α, β, φ₀, φ₁)` order.
pub fn scan_energy_preserving_mask(
    grid: usize,
    inputs: &[Vec<Complex64>],
    h: &Hamiltonian,
) -> Result<ScanResult> {
    if grid < 2 {
        return Err(Error::BadGrid(grid));
    }
    if h.dim() != 2 || !h.is_diagonal(0.0) {
        return Err(Error::InvalidParameter(
            "energy-preserving scan needs a diagonal qubit Hamiltonian".into(),
        ));
    }
    objective_universal_mask(&ComplexMatrix::identity(4), inputs, h)?;
    let points = grid.checked_pow(5).ok_or(Error::BadGrid(grid))?;
    let angle = |i: usize| std::f64::consts::FRAC_PI_2 * i as f64 / (grid - 1) as f64;
    let phase = |i: usize| 2.0 * std::f64::consts::PI * i as f64 / grid as f64;
    let coords = |mut idx: usize| {
        let mut digits = [0usize; 5];
        for d in digits.iter_mut().rev() {
            *d = idx % grid;
            idx /= grid;
        }
        [angle(digits[0]), phase(digits[1]), phase(digits[2]), phase(digits[3]), phase(digits[4])]
    };
    let (min_objective, index) = (0..points)
        .into_par_iter()
        .map(|idx| {
            let [t, a, b, p0, p1] = coords(idx);
            let u = energy_preserving_unitary(t, a, b, p0, p1);
            let v = objective_universal_mask(&u, inputs, h).unwrap_or(f64::INFINITY);
            (v, idx)
        })
        .reduce(
            || (f64::INFINITY, usize::MAX),
            |x, y| match x.0.total_cmp(&y.0) {
                std::cmp::Ordering::Less => x,
                std::cmp::Ordering::Greater => y,
                std::cmp::Ordering::Equal => if x.1 <= y.1 { x } else { y },
            },
        );
    Ok(ScanResult { min_objective, argmin: coords(index), points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::basis_vector;
    use crate::nogo::objective_universal_mask;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

    fn qubit_h() -> Hamiltonian {
        Hamiltonian::from_energies(&[0.0, 1.0]).unwrap()
    }

    fn plus() -> Vec<Complex64> {
        vec![Complex64::new(FRAC_1_SQRT_2, 0.0); 2]
    }

    #[test]
    fn family_is_unitary_and_conserves_energy() {
        let h = qubit_h();
        let total = Hamiltonian::local_sum(&h, &h);
        for (t, a, b, p0, p1) in [(0.3, 1.0, 2.0, 0.5, -1.0), (FRAC_PI_2, 0.0, 3.0, 1.0, 2.0)] {
            let u = energy_preserving_unitary(t, a, b, p0, p1);
            assert!(u.is_unitary(1e-14));
            let commutator = &(&u * total.matrix()) - &(total.matrix() * &u);
            assert!(commutator.max_abs() < 1e-14);
        }
    }

    #[test]
    fn ground_state_needs_no_masking() {
        let r = scan_energy_preserving_mask(4, &[basis_vector(2, 0)], &qubit_h()).unwrap();
        assert!(r.min_objective.abs() < 1e-15);
        assert_eq!(r.points, 1024);
        assert_eq!(r.argmin, [0.0; 5]);
    }

    #[test]
    fn coherent_input_cannot_be_masked() {
        let r = scan_energy_preserving_mask(8, &[plus()], &qubit_h()).unwrap();
        assert!(r.min_objective > 1e-3, "min {}", r.min_objective);
    }

    #[test]
    fn excited_state_alone_can_be_masked() {
        // θ = π/4 splits |10⟩ evenly, leaving both marginals I/2.
        let r = scan_energy_preserving_mask(3, &[basis_vector(2, 1)], &qubit_h()).unwrap();
        assert!(r.min_objective < 1e-12);
    }

    #[test]
    fn swap_block_moves_coherence_to_ancilla() {
        let swap = energy_preserving_unitary(FRAC_PI_2, 0.0, 0.0, 0.0, 0.0);
        let v = objective_universal_mask(&swap, &[plus()], &qubit_h()).unwrap();
        // The ancilla receives |+⟩ up to a phase, W = ½; the system is |0⟩.
        assert!((v - 0.5).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_grid() {
        assert!(matches!(
            scan_energy_preserving_mask(1, &[plus()], &qubit_h()),
            Err(Error::BadGrid(1))
        ));
        let h3 = Hamiltonian::equally_spaced(3, 1.0).unwrap();
        assert!(scan_energy_preserving_mask(3, &[plus()], &h3).is_err());
    }
}
