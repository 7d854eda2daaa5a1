//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary and then applies the real symmetric Jacobi rotation that zeroes
//! it. Sweeps visit pivots in row-major order of the strict upper triangle,
//! so the result depends only on the input matrix.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, ZERO};
use crate::error::{Error, Result};
use crate::tol;

/// Eigenvalues sorted ascending with matching column eigenvectors.
///
/// Inside a degenerate cluster the eigenvectors are any orthonormal basis of
/// the eigenspace; callers must only rely on spectral projectors there.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianSpectrum {
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the eigenvector for `eigenvalues[k]`.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianSpectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.column(k)
    }

    /// `V·diag(λ)·V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_eigenvalues(|x| Complex64::new(x, 0.0))
    }

    /// `V·diag(f(λ))·V†`.
    pub fn map_eigenvalues(&self, f: impl Fn(f64) -> Complex64) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let fl: Vec<Complex64> = self.eigenvalues.iter().map(|&x| f(x)).collect();
        ComplexMatrix::from_fn(n, |i, j| {
            (0..n).map(|k| v[(i, k)] * fl[k] * v[(j, k)].conj()).sum()
        })
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Fails with [`Error::NotHermitian`] when `max |A - A†|` exceeds the
/// structural tolerance.
pub fn eig_hermitian(a: &ComplexMatrix) -> Result<HermitianSpectrum> {
    let deviation = a.hermitian_deviation();
    if deviation > tol::STRUCTURAL {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(jacobi(&a.hermitian_part()))
}

/// Eigenvalues only, ascending.
pub fn eigvalsh(a: &ComplexMatrix) -> Result<Vec<f64>> {
    eig_hermitian(a).map(|s| s.eigenvalues)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn jacobi(input: &ComplexMatrix) -> HermitianSpectrum {
    let n = input.dim();
    let mut a = input.clone();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
    let target = tol::JACOBI_OFF_DIAGONAL * scale;

    for _sweep in 0..tol::JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q, scale);
            }
        }
    }

    let mut order: Vec<(f64, usize)> = (0..n).map(|i| (a[(i, i)].re, i)).collect();
    order.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));

    let eigenvalues = order.iter().map(|&(l, _)| l).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |i, k| v[(i, order[k].1)]);
    HermitianSpectrum {
        eigenvalues,
        eigenvectors,
    }
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, scale: f64) {
    let apq = a[(p, q)];
    let magnitude = apq.norm();
    if magnitude <= f64::EPSILON * 1e-3 * scale {
        a[(p, q)] = ZERO;
        a[(q, p)] = ZERO;
        return;
    }
    let phase = apq / magnitude;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let theta = (aqq - app) / (2.0 * magnitude);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // J = diag(1, conj(phase)) · [[c, s], [-s, c]] on the (p, q) plane.
    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    let n = a.dim();
    // A <- A J
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
    }
    // A <- J† A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(app - t * magnitude, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * magnitude, 0.0);

    // V <- V J
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::{random_hermitian, seeded_rng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_input_is_returned_as_is() {
        let s = eig_hermitian(&ComplexMatrix::from_real_diagonal(&[0.0, 1.0])).unwrap();
        assert_eq!(s.eigenvalues, vec![0.0, 1.0]);
        assert_eq!(s.eigenvectors, ComplexMatrix::identity(2));
    }

    #[test]
    fn pauli_x_spectrum() {
        let x = ComplexMatrix::from_vec(2, vec![ZERO, c(1.0, 0.0), c(1.0, 0.0), ZERO]).unwrap();
        let s = eig_hermitian(&x).unwrap();
        assert!((s.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((s.eigenvalues[1] - 1.0).abs() < 1e-14);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let minus = s.eigenvector(0);
        let plus = s.eigenvector(1);
        // Compare up to a global phase through the overlap modulus.
        let ov_minus = (minus[0] * h - minus[1] * h).norm();
        let ov_plus = (plus[0] * h + plus[1] * h).norm();
        assert!((ov_minus - 1.0).abs() < 1e-14);
        assert!((ov_plus - 1.0).abs() < 1e-14);
    }

    #[test]
    fn random_hermitian_reconstructs() {
        let mut rng = seeded_rng(7);
        for n in [1, 2, 3, 5, 8, 16] {
            let a = random_hermitian(n, &mut rng);
            let s = eig_hermitian(&a).unwrap();
            assert!(s.eigenvectors.is_unitary(1e-10), "n={n}");
            assert!(s.reconstruct().max_abs_diff(&a) < 1e-9, "n={n}");
            assert!(s.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
            let lmax = s.eigenvalues.iter().fold(1.0_f64, |m, l| m.max(l.abs()));
            for k in 0..n {
                let vk = s.eigenvector(k);
                let av = a.mul_vec(&vk);
                let err = av
                    .iter()
                    .zip(&vk)
                    .map(|(x, y)| (x - y * s.eigenvalues[k]).norm())
                    .fold(0.0, f64::max);
                assert!(err < 1e-9 * lmax);
            }
        }
    }

    #[test]
    fn trace_and_frobenius_identities() {
        let mut rng = seeded_rng(11);
        for n in 2..7 {
            let a = random_hermitian(n, &mut rng);
            let s = eig_hermitian(&a).unwrap();
            let sum: f64 = s.eigenvalues.iter().sum();
            let sq: f64 = s.eigenvalues.iter().map(|l| l * l).sum();
            assert!((sum - a.trace().re).abs() < 1e-9);
            assert!((sq - a.frobenius_norm().powi(2)).abs() < 1e-9);
        }
    }

    #[test]
    fn degenerate_spectrum_still_reconstructs() {
        let a = ComplexMatrix::from_real_diagonal(&[1.0, 1.0, 2.0]);
        let u = crate::linalg::random::sample_haar_unitary(3, &mut seeded_rng(3));
        let b = a.conjugate_by(&u);
        let s = eig_hermitian(&b).unwrap();
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-12);
        assert!((s.eigenvalues[1] - 1.0).abs() < 1e-12);
        assert!(s.reconstruct().max_abs_diff(&b) < 1e-12);
    }

    #[test]
    fn deterministic() {
        let a = random_hermitian(6, &mut seeded_rng(5));
        assert_eq!(eig_hermitian(&a).unwrap(), eig_hermitian(&a).unwrap());
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_vec(2, vec![ZERO, c(1.0, 0.0), ZERO, ZERO]).unwrap();
        assert!(matches!(eig_hermitian(&m), Err(Error::NotHermitian { .. })));
    }
}
