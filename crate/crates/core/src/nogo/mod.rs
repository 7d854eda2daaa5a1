//! Failure objectives for devices that cannot exist, and a seeded search
//! over parameterized unitaries that minimizes them.
//!
//! Every objective is a sum or mean of non-negative terms that depends on
//! `U` only through `U(ψ⊗|0⟩)`'s marginals, so it is invariant under a global
//! phase of `U`. The ancilla always starts in `|0⟩`.

mod scan;
mod search;

pub use scan::{energy_preserving_unitary, scan_energy_preserving_mask, ScanResult};
pub use search::{minimize, SearchOptions, SearchResult, SearchSpace};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ergotropy::ergotropy_value;
use crate::linalg::{expm_i_hermitian, reduce_pure, ComplexMatrix};
use crate::states::{GellMannBasis, Hamiltonian};
use crate::tol;

/// Coordinates of a special unitary over the Gell-Mann generators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitaryParams {
    pub dim: usize,
    pub theta: Vec<f64>,
}

impl UnitaryParams {
    pub fn new(dim: usize, theta: Vec<f64>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::BadDimension(dim));
        }
        if theta.len() != dim * dim - 1 {
            return Err(Error::dims(format!(
                "{} parameters for dim {dim}, expected {}",
                theta.len(),
                dim * dim - 1
            )));
        }
        Ok(Self { dim, theta })
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(dim, vec![0.0; dim.saturating_mul(dim).saturating_sub(1)])
    }

    pub fn count(dim: usize) -> usize {
        dim * dim - 1
    }
}

/// `exp(i Σ θ_j G_j)`.
///
/// # Panics
/// If `p` was built by hand with the wrong number of parameters or a
/// dimension below 2; [`UnitaryParams::new`] rules both out.
pub fn unitary_from_params(p: &UnitaryParams) -> ComplexMatrix {
    let basis = GellMannBasis::cached(p.dim).expect("dimension ≥ 2");
    unitary_from_coefficients(&basis, &p.theta)
}

pub(crate) fn unitary_from_coefficients(basis: &GellMannBasis, theta: &[f64]) -> ComplexMatrix {
    let generator = basis.combination(theta);
    expm_i_hermitian(&generator, -1.0).expect("generator is Hermitian")
}

/// `U(ψ⊗|0⟩)` for a `d²`-dimensional `U`: column `a·d` of `U` weighted by `ψ_a`.
fn branch(u: &ComplexMatrix, psi: &[Complex64], d: usize) -> Vec<Complex64> {
    (0..d * d)
        .map(|i| psi.iter().enumerate().map(|(a, &c)| u[(i, a * d)] * c).sum())
        .collect()
}

fn check_inputs(u: &ComplexMatrix, inputs: &[Vec<Complex64>], d: usize) -> Result<()> {
    if u.dim() != d * d {
        return Err(Error::dims(format!("unitary dim {} for local dim {d}", u.dim())));
    }
    for psi in inputs {
        if psi.len() != d {
            return Err(Error::dims(format!("input of length {} for local dim {d}", psi.len())));
        }
        let norm_sqr: f64 = psi.iter().map(|c| c.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > tol::STRUCTURAL {
            return Err(Error::NotNormalized { norm_sqr });
        }
    }
    Ok(())
}

fn marginals(u: &ComplexMatrix, psi: &[Complex64], d: usize) -> (ComplexMatrix, ComplexMatrix) {
    let out = branch(u, psi, d);
    (reduce_pure(&out, d, d, true), reduce_pure(&out, d, d, false))
}

fn purity(rho: &ComplexMatrix) -> f64 {
    rho.trace_product(rho).re
}

/// Ergotropy of a pure state: `⟨ψ|H|ψ⟩ − E₀`.
pub fn pure_ergotropy(psi: &[Complex64], h: &Hamiltonian) -> f64 {
    h.matrix().expectation(psi).re - h.ground_energy()
}

/// Work-cloner failure: for each input,
/// `|W(ρ_A) − W(ψ)| + |W(ρ_B) − W(ψ)| + (1 − Tr ρ_A²) + (1 − Tr ρ_B²)`,
/// summed. Zero iff every input yields two pure marginals carrying the
/// input's work.
pub fn objective_work_clone(u: &ComplexMatrix, inputs: &[Vec<Complex64>], h: &Hamiltonian) -> Result<f64> {
    let d = h.dim();
    check_inputs(u, inputs, d)?;
    Ok(inputs
        .iter()
        .map(|psi| {
            let w = pure_ergotropy(psi, h);
            let (a, b) = marginals(u, psi, d);
            (ergotropy_value(&a, h) - w).abs()
                + (ergotropy_value(&b, h) - w).abs()
                + (1.0 - purity(&a)).max(0.0)
                + (1.0 - purity(&b)).max(0.0)
        })
        .sum())
}

/// Universal-masker failure: mean over inputs of `W(ρ_S) + W(ρ_A)`.
pub fn objective_universal_mask(
    u: &ComplexMatrix,
    inputs: &[Vec<Complex64>],
    h: &Hamiltonian,
) -> Result<f64> {
    let d = h.dim();
    check_inputs(u, inputs, d)?;
    if inputs.is_empty() {
        return Ok(0.0);
    }
    let total: f64 = inputs
        .iter()
        .map(|psi| {
            let (s, a) = marginals(u, psi, d);
            ergotropy_value(&s, h).max(0.0) + ergotropy_value(&a, h).max(0.0)
        })
        .sum();
    Ok(total / inputs.len() as f64)
}

/// `(|φ⟩, |φ⊥⟩)` with `|φ⟩ = cos(θ/2)|0⟩ + e^{iϕ} sin(θ/2)|1⟩`.
pub fn qubit_basis(angles: [f64; 2]) -> ([Complex64; 2], [Complex64; 2]) {
    let (s, c) = (angles[0] / 2.0).sin_cos();
    let phase = Complex64::from_polar(1.0, angles[1]);
    (
        [Complex64::new(c, 0.0), phase * s],
        [-phase.conj() * s, Complex64::new(c, 0.0)],
    )
}

fn sandwich(bra: &[Complex64; 2], rho: &ComplexMatrix, ket: &[Complex64; 2]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            acc += bra[i].conj() * rho[(i, j)] * ket[j];
        }
    }
    acc
}

/// Bloch-radius failure for qubits: for each input,
/// `|⟨0|ρ_S|1⟩| + |⟨φ|ρ_A|φ⊥⟩| + max(0, ½ − ⟨0|ρ_S|0⟩) + max(0, ½ − ⟨φ|ρ_A|φ⟩)`,
/// summed. Zero iff every system marginal lies on the `|0⟩` half-axis and
/// every ancilla marginal on the `|φ⟩` half-axis.
pub fn objective_bloch_radius(
    u: &ComplexMatrix,
    ancilla_basis_angles: [f64; 2],
    inputs: &[Vec<Complex64>],
) -> Result<f64> {
    check_inputs(u, inputs, 2)?;
    let (phi, phi_perp) = qubit_basis(ancilla_basis_angles);
    Ok(inputs
        .iter()
        .map(|psi| {
            let (s, a) = marginals(u, psi, 2);
            s[(0, 1)].norm()
                + sandwich(&phi, &a, &phi_perp).norm()
                + (0.5 - s[(0, 0)].re).max(0.0)
                + (0.5 - sandwich(&phi, &a, &phi).re).max(0.0)
        })
        .sum())
}

/// Phase-insensitive squared distance to a target unitary:
/// `min_α ‖e^{iα}U − T‖²_F = 2d − 2|Tr(T†U)|`.
pub fn distance_to_target(u: &ComplexMatrix, target: &ComplexMatrix) -> Result<f64> {
    if u.dim() != target.dim() {
        return Err(Error::dims(format!("{} vs {}", u.dim(), target.dim())));
    }
    let d = u.dim() as f64;
    Ok((2.0 * d - 2.0 * target.trace_product(u).norm()).max(0.0))
}

/// Wraps a fallible objective for the search: errors and NaN score `+∞`.
/// Call the objective once at a valid point beforehand so configuration
/// errors surface to the caller instead.
fn total(value: Result<f64>) -> f64 {
    match value {
        Ok(v) if !v.is_nan() => v,
        _ => f64::INFINITY,
    }
}

/// Minimizes [`objective_work_clone`] over two-qudit special unitaries.
pub fn search_work_clone(
    inputs: &[Vec<Complex64>],
    h: &Hamiltonian,
    options: &SearchOptions,
) -> Result<SearchResult> {
    let d = h.dim();
    objective_work_clone(&ComplexMatrix::identity(d * d), inputs, h)?;
    minimize(
        |u: &ComplexMatrix, _: &[f64]| total(objective_work_clone(u, inputs, h)),
        SearchSpace::new(d * d, 0),
        options,
    )
}

/// Minimizes [`objective_universal_mask`] over two-qudit special unitaries.
pub fn search_universal_mask(
    inputs: &[Vec<Complex64>],
    h: &Hamiltonian,
    options: &SearchOptions,
) -> Result<SearchResult> {
    let d = h.dim();
    objective_universal_mask(&ComplexMatrix::identity(d * d), inputs, h)?;
    minimize(
        |u: &ComplexMatrix, _: &[f64]| total(objective_universal_mask(u, inputs, h)),
        SearchSpace::new(d * d, 0),
        options,
    )
}

/// Minimizes [`objective_bloch_radius`] jointly over two-qubit special
/// unitaries and the two ancilla basis angles.
pub fn search_bloch_radius(inputs: &[Vec<Complex64>], options: &SearchOptions) -> Result<SearchResult> {
    objective_bloch_radius(&ComplexMatrix::identity(4), [0.0, 0.0], inputs)?;
    minimize(
        |u: &ComplexMatrix, aux: &[f64]| total(objective_bloch_radius(u, [aux[0], aux[1]], inputs)),
        SearchSpace::new(4, 2),
        options,
    )
}

/// Positive control: minimizes [`distance_to_target`].
pub fn search_target(target: &ComplexMatrix, options: &SearchOptions) -> Result<SearchResult> {
    distance_to_target(&ComplexMatrix::identity(target.dim()), target)?;
    minimize(
        |u: &ComplexMatrix, _: &[f64]| total(distance_to_target(u, target)),
        SearchSpace::new(target.dim(), 0),
        options,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::{random_pure_state, sample_haar_unitary, seeded_rng};
    use crate::linalg::{basis_vector, ONE, ZERO};
    use crate::protocols::{diagonal_work_masker, energy_cloner};
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn qubit_h() -> Hamiltonian {
        Hamiltonian::from_energies(&[0.0, 1.0]).unwrap()
    }

    fn plus() -> Vec<Complex64> {
        vec![Complex64::new(FRAC_1_SQRT_2, 0.0); 2]
    }

    fn ket(k: usize) -> Vec<Complex64> {
        basis_vector(2, k)
    }

    #[test]
    fn zero_parameters_give_identity() {
        for d in 2..=4 {
            let u = unitary_from_params(&UnitaryParams::zeros(d).unwrap());
            assert!(u.max_abs_diff(&ComplexMatrix::identity(d)) < 1e-14);
        }
    }

    #[test]
    fn diagonal_generator_gives_diagonal_phases() {
        let mut theta = vec![0.0; 3];
        theta[2] = 0.7;
        let u = unitary_from_params(&UnitaryParams::new(2, theta).unwrap());
        // σ_z/√2 in this normalization.
        let a = 0.7 * FRAC_1_SQRT_2;
        assert!((u[(0, 0)] - Complex64::from_polar(1.0, a)).norm() < 1e-14);
        assert!((u[(1, 1)] - Complex64::from_polar(1.0, -a)).norm() < 1e-14);
        assert!(u[(0, 1)].norm() < 1e-14 && u[(1, 0)].norm() < 1e-14);
    }

    #[test]
    fn random_parameters_give_special_unitaries() {
        use rand::Rng;
        let mut rng = seeded_rng(1);
        for d in 2..=4 {
            for _ in 0..20 {
                let theta = (0..d * d - 1).map(|_| rng.random_range(-10.0..10.0)).collect();
                let u = unitary_from_params(&UnitaryParams::new(d, theta).unwrap());
                assert!(u.is_unitary(1e-10));
            }
        }
    }

    #[test]
    fn params_validate_length() {
        assert!(UnitaryParams::new(2, vec![0.0; 4]).is_err());
        assert!(UnitaryParams::new(1, vec![]).is_err());
        assert_eq!(UnitaryParams::count(3), 8);
    }

    #[test]
    fn clone_objective_examples() {
        let h = qubit_h();
        let cnot = energy_cloner(2).unwrap();
        let basis = [ket(0), ket(1)];
        assert!(objective_work_clone(&cnot, &basis, &h).unwrap().abs() < 1e-12);
        // |+⟩ branch: both marginals I/2, so 2·|0 − ½| + 2·(1 − ½).
        let with_plus = [ket(0), ket(1), plus()];
        assert!((objective_work_clone(&cnot, &with_plus, &h).unwrap() - 2.0).abs() < 1e-12);
        let id = ComplexMatrix::identity(4);
        assert!(objective_work_clone(&id, &[plus()], &h).unwrap() > 0.4);
    }

    #[test]
    fn clone_objective_rejects_bad_input() {
        let h = qubit_h();
        let id = ComplexMatrix::identity(4);
        assert!(matches!(
            objective_work_clone(&id, &[vec![ONE, ONE]], &h),
            Err(Error::NotNormalized { .. })
        ));
        assert!(objective_work_clone(&ComplexMatrix::identity(9), &[ket(0)], &h).is_err());
        assert!(objective_work_clone(&id, &[vec![ONE, ZERO, ZERO]], &h).is_err());
    }

    #[test]
    fn mask_objective_examples() {
        let h = qubit_h();
        let m = diagonal_work_masker(2).unwrap();
        assert!(objective_universal_mask(&m, &[ket(0), ket(1)], &h).unwrap() < 1e-10);
        assert!(objective_universal_mask(&m, &[ket(0), ket(1), plus()], &h).unwrap() > 1e-3);
        let id = ComplexMatrix::identity(4);
        assert!((objective_universal_mask(&id, &[ket(1)], &h).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mask_objective_works_for_qutrits() {
        let h = Hamiltonian::equally_spaced(3, 1.0).unwrap();
        let m = diagonal_work_masker(3).unwrap();
        let inputs: Vec<_> = (0..3).map(|k| basis_vector(3, k)).collect();
        assert!(objective_universal_mask(&m, &inputs, &h).unwrap() < 1e-10);
    }

    #[test]
    fn bloch_radius_examples() {
        let cnot = energy_cloner(2).unwrap();
        let id = ComplexMatrix::identity(4);
        assert!(objective_bloch_radius(&id, [0.0, 0.0], &[ket(0)]).unwrap().abs() < 1e-15);
        // |+⟩ sits on the boundary p = ½ with diagonal marginals.
        assert!(objective_bloch_radius(&cnot, [0.0, 0.0], &[ket(0), plus()]).unwrap() < 1e-12);
        let with_one = [ket(0), plus(), ket(1)];
        assert!((objective_bloch_radius(&cnot, [0.0, 0.0], &with_one).unwrap() - 1.0).abs() < 1e-12);
        // Flipping the ancilla axis moves the penalty from |1⟩ to |0⟩.
        let flipped = objective_bloch_radius(&cnot, [PI, 0.0], &with_one).unwrap();
        assert!((flipped - 1.0).abs() < 1e-12);
    }

    #[test]
    fn qubit_basis_is_orthonormal() {
        for angles in [[0.3, 1.1], [PI, 0.0], [2.0, -4.0]] {
            let (a, b) = qubit_basis(angles);
            let ip = a[0].conj() * b[0] + a[1].conj() * b[1];
            assert!(ip.norm() < 1e-15);
            assert!((a[0].norm_sqr() + a[1].norm_sqr() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn objectives_are_nonnegative_and_phase_invariant() {
        use rand::Rng;
        let mut rng = seeded_rng(2);
        let h = qubit_h();
        for _ in 0..50 {
            let u = sample_haar_unitary(4, &mut rng);
            let alpha = rng.random_range(0.0..2.0 * PI);
            let v = u.scale(Complex64::from_polar(1.0, alpha));
            let inputs: Vec<_> = (0..3).map(|_| random_pure_state(2, &mut rng)).collect();
            let angles = [rng.random_range(0.0..PI), rng.random_range(0.0..2.0 * PI)];
            let pairs = [
                (
                    objective_work_clone(&u, &inputs, &h).unwrap(),
                    objective_work_clone(&v, &inputs, &h).unwrap(),
                ),
                (
                    objective_universal_mask(&u, &inputs, &h).unwrap(),
                    objective_universal_mask(&v, &inputs, &h).unwrap(),
                ),
                (
                    objective_bloch_radius(&u, angles, &inputs).unwrap(),
                    objective_bloch_radius(&v, angles, &inputs).unwrap(),
                ),
            ];
            for (a, b) in pairs {
                assert!(a >= -1e-12);
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn target_distance_ignores_global_phase() {
        let cnot = energy_cloner(2).unwrap();
        assert!(distance_to_target(&cnot, &cnot).unwrap() < 1e-12);
        let phased = cnot.scale(Complex64::from_polar(1.0, 0.4));
        assert!(distance_to_target(&phased, &cnot).unwrap() < 1e-12);
        assert!(distance_to_target(&ComplexMatrix::identity(4), &cnot).unwrap() > 1.0);
    }
}
