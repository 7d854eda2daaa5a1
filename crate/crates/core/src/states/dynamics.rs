//! Energy and closed-system evolution (ħ = 1).

use num_complex::Complex64;

use super::bloch::{to_bloch, BlochVector, GellMannBasis};
use super::{DensityMatrix, Hamiltonian};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

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

/// `E(ρ) = Tr(ρH)`.
pub fn energy(rho: &DensityMatrix, h: &Hamiltonian) -> Result<f64> {
    check_dims(rho, h)?;
    Ok(rho.matrix().trace_product(h.matrix()).re)
}

/// Energy from the Bloch coefficients of a state `r` and a Hamiltonian `n`:
/// `E = (n₀·d + Σ n_k r_k)/d²` where `n₀ = Tr(H)`.
///
/// With the `Tr(σ_j σ_k) = δ_jk` normalization the prefactor is `1/d²`, not
/// `1/d`; this is only a cross-check for [`energy`].
pub fn energy_from_bloch(state: &BlochVector, hamiltonian: &BlochVector) -> Result<f64> {
    if state.dim != hamiltonian.dim || state.components.len() != hamiltonian.components.len() {
        return Err(Error::dims("Bloch vectors of different dimension"));
    }
    let d = state.dim as f64;
    let dot: f64 = state
        .components
        .iter()
        .zip(&hamiltonian.components)
        .map(|(r, n)| r * n)
        .sum();
    Ok((hamiltonian.scalar * state.scalar * d + dot) / (d * d))
}

/// `exp(−iHt)` from the cached spectrum.
pub fn propagator(h: &Hamiltonian, t: f64) -> ComplexMatrix {
    h.spectrum()
        .map_eigenvalues(|e| Complex64::from_polar(1.0, -e * t))
}

/// `U ρ U†` with `U = exp(−iHt)`.
pub fn evolve(rho: &DensityMatrix, h: &Hamiltonian, t: f64) -> Result<DensityMatrix> {
    check_dims(rho, h)?;
    rho.conjugate_by(&propagator(h, t))
}

/// Time derivative of the state's Bloch components under `H`:
/// `ṙ_l = (1/d) Σ_jk f_jkl n_j r_k`, the generalized `H⃗ × ρ⃗` rotation.
///
/// For a qubit in this normalization `f_jkl = √2·ε_jkl`, so
/// `ṙ = (n × r)/√2`.
pub fn bloch_velocity(rho: &DensityMatrix, h: &Hamiltonian, basis: &GellMannBasis) -> Result<Vec<f64>> {
    check_dims(rho, h)?;
    let r = to_bloch(rho.matrix(), basis)?;
    let n = to_bloch(h.matrix(), basis)?;
    let d = basis.dim() as f64;
    let mut v = vec![0.0; basis.len()];
    for c in basis.structure_constants() {
        v[c.l] += c.value * n.components[c.j] * r.components[c.k];
    }
    v.iter_mut().for_each(|x| *x /= d);
    Ok(v)
}

/// `a × b` for 3-vectors.
pub fn cross(a: &[f64], b: &[f64]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::{random_hermitian, sample_ginibre_density, seeded_rng};
    use crate::linalg::{eigvalsh, ONE, ZERO};

    #[test]
    fn energy_examples() {
        let h = Hamiltonian::from_energies(&[0.0, 1.0]).unwrap();
        assert_eq!(energy(&DensityMatrix::basis_state(2, 0), &h).unwrap(), 0.0);
        assert!((energy(&DensityMatrix::maximally_mixed(2), &h).unwrap() - 0.5).abs() < 1e-15);
        assert!(energy(&DensityMatrix::maximally_mixed(3), &h).is_err());
    }

    #[test]
    fn energy_is_linear() {
        let mut rng = seeded_rng(1);
        for d in 2..=5 {
            let h = Hamiltonian::new(random_hermitian(d, &mut rng)).unwrap();
            let a = sample_ginibre_density(d, d, &mut rng).unwrap();
            let b = sample_ginibre_density(d, 1, &mut rng).unwrap();
            for p in [0.0, 0.2, 0.5, 0.9, 1.0] {
                let mix = DensityMatrix::mixture(p, &a, &b).unwrap();
                let lhs = energy(&mix, &h).unwrap();
                let rhs = p * energy(&a, &h).unwrap() + (1.0 - p) * energy(&b, &h).unwrap();
                assert!((lhs - rhs).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn bloch_energy_uses_inverse_d_squared() {
        let mut rng = seeded_rng(2);
        for d in 2..=4 {
            let basis = GellMannBasis::new(d).unwrap();
            let h = Hamiltonian::new(random_hermitian(d, &mut rng)).unwrap();
            let rho = sample_ginibre_density(d, 2, &mut rng).unwrap();
            let r = to_bloch(rho.matrix(), &basis).unwrap();
            let n = to_bloch(h.matrix(), &basis).unwrap();
            let direct = energy(&rho, &h).unwrap();
            assert!((energy_from_bloch(&r, &n).unwrap() - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn evolution_at_zero_time_is_identity() {
        let mut rng = seeded_rng(3);
        let h = Hamiltonian::new(random_hermitian(3, &mut rng)).unwrap();
        let rho = sample_ginibre_density(3, 3, &mut rng).unwrap();
        assert!(evolve(&rho, &h, 0.0).unwrap().matrix().max_abs_diff(rho.matrix()) < 1e-14);
    }

    #[test]
    fn evolution_preserves_spectrum_and_energy() {
        let mut rng = seeded_rng(4);
        let h = Hamiltonian::new(random_hermitian(3, &mut rng)).unwrap();
        let rho = sample_ginibre_density(3, 3, &mut rng).unwrap();
        let e0 = energy(&rho, &h).unwrap();
        let s0 = eigvalsh(rho.matrix()).unwrap();
        for step in 1..=100 {
            let t = 0.1 * step as f64;
            let out = evolve(&rho, &h, t).unwrap();
            assert!((energy(&out, &h).unwrap() - e0).abs() < 1e-10);
            let s = eigvalsh(out.matrix()).unwrap();
            assert!(s.iter().zip(&s0).all(|(a, b)| (a - b).abs() < 1e-10));
        }
    }

    #[test]
    fn evolution_is_a_group_action() {
        let mut rng = seeded_rng(5);
        let h = Hamiltonian::new(random_hermitian(4, &mut rng)).unwrap();
        let rho = sample_ginibre_density(4, 2, &mut rng).unwrap();
        let two_step = evolve(&evolve(&rho, &h, 0.7).unwrap(), &h, 1.9).unwrap();
        let one_step = evolve(&rho, &h, 2.6).unwrap();
        assert!(two_step.matrix().max_abs_diff(one_step.matrix()) < 1e-10);
    }

    #[test]
    fn qubit_velocity_is_a_scaled_cross_product() {
        let basis = GellMannBasis::new(2).unwrap();
        let mut rng = seeded_rng(6);
        let h = Hamiltonian::new(random_hermitian(2, &mut rng)).unwrap();
        let rho = sample_ginibre_density(2, 2, &mut rng).unwrap();
        let r = to_bloch(rho.matrix(), &basis).unwrap();
        let n = to_bloch(h.matrix(), &basis).unwrap();
        let v = bloch_velocity(&rho, &h, &basis).unwrap();
        let c = cross(&n.components, &r.components);
        for i in 0..3 {
            assert!((v[i] - c[i] / std::f64::consts::SQRT_2).abs() < 1e-12);
        }
    }

    #[test]
    fn velocity_vanishes_for_energy_eigenstates() {
        let basis = GellMannBasis::new(3).unwrap();
        let h = Hamiltonian::equally_spaced(3, 1.0).unwrap();
        let rho = DensityMatrix::from_pure(&[ZERO, ONE, ZERO]).unwrap();
        let v = bloch_velocity(&rho, &h, &basis).unwrap();
        assert!(v.iter().all(|x| x.abs() < 1e-14));
    }
}
