//! Seeded random matrices and states.
//!
//! Every sampler takes the generator explicitly. Callers that sample in
//! parallel derive one generator per task with [`derived_rng`].

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::matrix::{inner, ComplexMatrix};
use crate::error::{Error, Result};
use crate::states::DensityMatrix;

pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `stream` of a base seed.
pub fn derived_rng(seed: u64, stream: u64) -> SeededRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Standard complex Gaussian, `E|z|² = 1`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Complex64> {
    (0..dim).map(|_| complex_gaussian(rng)).collect()
}

/// Haar-random pure state vector.
pub fn random_pure_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Complex64> {
    let mut v = gaussian_vector(dim, rng);
    let n = super::matrix::norm(&v);
    v.iter_mut().for_each(|z| *z /= n);
    v
}

/// Hermitian matrix with independent Gaussian entries (GUE up to scale).
pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let g = ComplexMatrix::from_vec(dim, gaussian_vector(dim * dim, rng)).expect("square");
    (&g + &g.adjoint()).scale_real(0.5)
}

/// Density matrix `G·G†/Tr(G·G†)` with `G` a `dim × rank` Ginibre matrix.
pub fn sample_ginibre_density<R: Rng + ?Sized>(
    dim: usize,
    rank: usize,
    rng: &mut R,
) -> Result<DensityMatrix> {
    if rank == 0 || rank > dim {
        return Err(Error::BadRank { rank, dim });
    }
    let columns: Vec<Vec<Complex64>> = (0..rank).map(|_| gaussian_vector(dim, rng)).collect();
    let mut m = ComplexMatrix::zeros(dim);
    for col in &columns {
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] += col[i] * col[j].conj();
            }
        }
    }
    let tr = m.trace().re;
    let m = m.scale_real(1.0 / tr).hermitian_part();
    DensityMatrix::new(m)
}

/// Haar-distributed unitary: Gram-Schmidt on the columns of a complex
/// Gaussian matrix. Gram-Schmidt produces the QR factor with a positive real
/// diagonal in `R`, which is the phase fixing that makes `Q` Haar.
pub fn sample_haar_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    assert!(dim >= 1, "unitary dimension must be positive");
    let mut q: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    for _ in 0..dim {
        let mut v = gaussian_vector(dim, rng);
        // Two passes keep the basis orthonormal to machine precision.
        for _ in 0..2 {
            for u in &q {
                let proj = inner(u, &v);
                v.iter_mut().zip(u).for_each(|(x, y)| *x -= proj * y);
            }
        }
        let n = super::matrix::norm(&v);
        v.iter_mut().for_each(|z| *z /= n);
        q.push(v);
    }
    ComplexMatrix::from_columns(&q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haar_dim_one_is_a_phase() {
        let u = sample_haar_unitary(1, &mut seeded_rng(1));
        assert!((u[(0, 0)].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn haar_is_unitary() {
        let mut rng = seeded_rng(2);
        for _ in 0..20 {
            assert!(sample_haar_unitary(6, &mut rng).is_unitary(1e-10));
        }
    }

    #[test]
    fn haar_first_moment() {
        // E|U_00|² = 1/d, Var|U_00|² = (d-1)/(d²(d+1)).
        let d = 4usize;
        let n = 10_000;
        let mut rng = seeded_rng(3);
        let samples: Vec<f64> = (0..n)
            .map(|_| sample_haar_unitary(d, &mut rng)[(0, 0)].norm_sqr())
            .collect();
        let mean = samples.iter().sum::<f64>() / n as f64;
        let df = d as f64;
        let sigma = ((df - 1.0) / (df * df * (df + 1.0)) / n as f64).sqrt();
        assert!((mean - 1.0 / df).abs() < 3.0 * sigma, "mean {mean}");
    }

    #[test]
    fn ginibre_rank_one_is_pure() {
        let rho = sample_ginibre_density(3, 1, &mut seeded_rng(4)).unwrap();
        assert!((rho.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ginibre_full_rank() {
        let rho = sample_ginibre_density(4, 4, &mut seeded_rng(5)).unwrap();
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
        let evs = crate::linalg::eigvalsh(rho.matrix()).unwrap();
        assert!(evs.iter().all(|&l| l > 0.0));
    }

    #[test]
    fn ginibre_bad_rank() {
        let mut rng = seeded_rng(6);
        assert_eq!(
            sample_ginibre_density(3, 0, &mut rng).unwrap_err(),
            Error::BadRank { rank: 0, dim: 3 }
        );
        assert!(sample_ginibre_density(3, 4, &mut rng).is_err());
    }

    #[test]
    fn samplers_are_deterministic_per_seed() {
        let a = sample_ginibre_density(3, 2, &mut seeded_rng(9)).unwrap();
        let b = sample_ginibre_density(3, 2, &mut seeded_rng(9)).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            sample_haar_unitary(3, &mut seeded_rng(9)),
            sample_haar_unitary(3, &mut seeded_rng(9))
        );
    }

    #[test]
    fn derived_streams_differ() {
        let a = random_pure_state(3, &mut derived_rng(1, 0));
        let b = random_pure_state(3, &mut derived_rng(1, 1));
        assert_ne!(a, b);
    }
}
