//! Explicit system-ancilla constructions.
//!
//! Every device acts on `system ⊗ ancilla` with the system as the slow
//! index and the ancilla prepared in `|0⟩`. Devices that are only specified
//! on the `|k⟩|0⟩` slice are completed to full unitaries with
//! [`complete_to_unitary`]; nothing asserted about them depends on how the
//! rest of the matrix is filled.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    basis_vector, complete_to_unitary, kron_vec, AssignedColumn, ComplexMatrix, ONE, ZERO,
};
use crate::states::{energy, DensityMatrix, Hamiltonian};
use crate::tol;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyLedger {
    /// Energy of the input state under the system Hamiltonian.
    pub input: f64,
    /// Input plus ancilla energies before the unitary.
    pub initial_total: f64,
    /// Energy of each output marginal under its own Hamiltonian.
    pub marginals: Vec<f64>,
    /// Energy of the global output under the sum of local Hamiltonians.
    pub output_total: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolResult {
    pub global_output: DensityMatrix,
    pub marginals: Vec<DensityMatrix>,
    pub unitary: ComplexMatrix,
    pub energy_ledger: EnergyLedger,
}

impl ProtocolResult {
    /// Applies `unitary` to `input ⊗ |0⟩⟨0|` over the ancillas in
    /// `ancilla_dims`. `hamiltonians` holds one local Hamiltonian per
    /// factor, system first.
    pub fn apply(
        unitary: &ComplexMatrix,
        input: &DensityMatrix,
        ancilla_dims: &[usize],
        hamiltonians: &[Hamiltonian],
    ) -> Result<Self> {
        let mut dims = vec![input.dim()];
        dims.extend_from_slice(ancilla_dims);
        let total: usize = dims.iter().product();
        if unitary.dim() != total {
            return Err(Error::dims(format!(
                "unitary dim {} for factors {dims:?}",
                unitary.dim()
            )));
        }
        if hamiltonians.len() != dims.len()
            || hamiltonians.iter().zip(&dims).any(|(h, &d)| h.dim() != d)
        {
            return Err(Error::dims("one Hamiltonian per factor is required"));
        }

        let mut initial = input.clone();
        let mut initial_total = energy(input, &hamiltonians[0])?;
        for (&d, h) in ancilla_dims.iter().zip(&hamiltonians[1..]) {
            let ground = DensityMatrix::basis_state(d, 0);
            initial_total += energy(&ground, h)?;
            initial = initial.tensor(&ground);
        }
        let global_output = initial.conjugate_by(unitary)?;
        let marginals = (0..dims.len())
            .map(|s| global_output.partial_trace(&dims, &[s]))
            .collect::<Result<Vec<_>>>()?;
        let marginal_energies = marginals
            .iter()
            .zip(hamiltonians)
            .map(|(m, h)| energy(m, h))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            energy_ledger: EnergyLedger {
                input: energy(input, &hamiltonians[0])?,
                initial_total,
                output_total: marginal_energies.iter().sum(),
                marginals: marginal_energies,
            },
            global_output,
            marginals,
            unitary: unitary.clone(),
        })
    }
}

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::BadDimension(d));
    }
    Ok(())
}

/// Generalized CNOT `|k⟩|j⟩ → |k⟩|(j + k) mod d⟩`, which maps `|k⟩|0⟩` to
/// `|k⟩|k⟩` and so copies energy-basis populations onto the ancilla.
pub fn energy_cloner(d: usize) -> Result<ComplexMatrix> {
    check_dim(d)?;
    let mut u = ComplexMatrix::zeros(d * d);
    for k in 0..d {
        for j in 0..d {
            u[(k * d + (j + k) % d, k * d + j)] = ONE;
        }
    }
    Ok(u)
}

/// `|00⟩ → |00⟩`, `|k0⟩ → √p|k0⟩ + √(1−p)|0k⟩` for `k ≥ 1`.
pub fn energy_splitter(d: usize, p: f64) -> Result<ComplexMatrix> {
    check_dim(d)?;
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::BadFraction(p));
    }
    let dim = d * d;
    let (a, b) = (p.sqrt(), (1.0 - p).sqrt());
    let mut columns = vec![AssignedColumn::new(0, basis_vector(dim, 0))];
    for k in 1..d {
        let mut v = vec![ZERO; dim];
        v[k * d] += Complex64::new(a, 0.0);
        v[k] += Complex64::new(b, 0.0);
        columns.push(AssignedColumn::new(k * d, v));
    }
    complete_to_unitary(&columns, dim)
}

/// `|k0⟩ → (|0,k⟩ + |1,k−1⟩ + … + |k,0⟩)/√(k+1)`: energy-preserving for
/// equally spaced levels, and masks the work of energy-diagonal inputs.
pub fn diagonal_work_masker(d: usize) -> Result<ComplexMatrix> {
    check_dim(d)?;
    let dim = d * d;
    let columns: Vec<AssignedColumn> = (0..d)
        .map(|k| {
            let amp = Complex64::new(1.0 / ((k + 1) as f64).sqrt(), 0.0);
            let mut v = vec![ZERO; dim];
            for m in 0..=k {
                v[m * d + (k - m)] = amp;
            }
            AssignedColumn::new(k * d, v)
        })
        .collect();
    complete_to_unitary(&columns, dim)
}

/// Marginal populations of the diagonal masker's output for input
/// populations `c`: `p_k = Σ_{j ≥ k} c_j/(j+1)`.
pub fn masked_marginal_populations(c: &[f64]) -> Vec<f64> {
    (0..c.len())
        .map(|k| (k..c.len()).map(|j| c[j] / (j + 1) as f64).sum())
        .collect()
}

/// Bell state `(|00⟩ + sign·|11⟩)/√2`.
pub fn bell_phi(sign: f64) -> Vec<Complex64> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    vec![
        Complex64::new(h, 0.0),
        ZERO,
        ZERO,
        Complex64::new(sign * h, 0.0),
    ]
}

/// 16×16 unitary on `S ⊗ A₁ ⊗ A₂ ⊗ A₃` with `|0000⟩ → |φ⁺⟩|φ⁺⟩` and
/// `|1000⟩ → |φ⁻⟩|φ⁻⟩`, Bell pairs on qubits (S, A₁) and (A₂, A₃). Every
/// single-qubit marginal of the output is `I/2` for any input qubit.
pub fn four_party_masker() -> ComplexMatrix {
    let plus = bell_phi(1.0);
    let minus = bell_phi(-1.0);
    let columns = [
        AssignedColumn::new(0, kron_vec(&plus, &plus)),
        AssignedColumn::new(8, kron_vec(&minus, &minus)),
    ];
    complete_to_unitary(&columns, 16).expect("Bell products are orthonormal")
}

/// `(|0⟩ + e^{−iφ}|1⟩)/√2`.
pub fn phase_qubit(phi: f64) -> Vec<Complex64> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    vec![Complex64::new(h, 0.0), Complex64::from_polar(h, -phi)]
}

/// Bob's two-qubit states after a hypothetical work cloner acts on his half
/// of a singlet, for Alice measuring σ_z (`σ₁`) or σ_x (`σ₂`).
///
/// `σ₁ = ½|00⟩⟨00| + ½|11⟩⟨11|` and
/// `σ₂ = ½|χ₁⟩⟨χ₁| ⊗ |χ₂⟩⟨χ₂| + ½ρ₋` where `ρ₋` is the unconstrained image
/// of `|−⟩`. `⟨01|σ₂|01⟩ ≥ 1/8` while `⟨01|σ₁|01⟩ = 0`, so the trace
/// distance is at least 1/8 whatever `ρ₋` is.
pub fn signaling_pair(
    phi1: f64,
    phi2: f64,
    rho_minus: &DensityMatrix,
) -> Result<(DensityMatrix, DensityMatrix)> {
    if rho_minus.dim() != 4 {
        return Err(Error::InvalidState(format!(
            "image of |-> must be a two-qubit state, got dim {}",
            rho_minus.dim()
        )));
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    for phi in [phi1, phi2] {
        if !(phi > 0.0 && phi <= two_pi) {
            return Err(Error::InvalidParameter(format!("phase {phi} outside (0, 2π]")));
        }
    }
    let mut sigma1 = ComplexMatrix::zeros(4);
    sigma1[(0, 0)] = Complex64::new(0.5, 0.0);
    sigma1[(3, 3)] = Complex64::new(0.5, 0.0);
    let chi = kron_vec(&phase_qubit(phi1), &phase_qubit(phi2));
    let sigma2 = &ComplexMatrix::projector(&chi).scale_real(0.5) + &rho_minus.matrix().scale_real(0.5);
    Ok((
        DensityMatrix::from_matrix_unchecked(sigma1),
        DensityMatrix::from_matrix_unchecked(sigma2),
    ))
}

/// `⟨01|σ|01⟩`, the witness population separating the two branches.
pub fn witness_population(sigma: &DensityMatrix) -> f64 {
    sigma.matrix()[(1, 1)].re
}

/// Whether every listed operator is unitary at the default tolerance.
pub fn all_unitary(ops: &[&ComplexMatrix]) -> bool {
    ops.iter().all(|u| u.is_unitary(tol::UNITARY))
}
