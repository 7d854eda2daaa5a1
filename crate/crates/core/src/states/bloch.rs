//! Generalized Gell-Mann basis and Bloch vectors.
//!
//! Basis elements are normalized to `Tr(σ_j σ_k) = δ_jk` (not the more common
//! `2δ_jk`), so a Hermitian operator expands as
//! `A = (1/d)(Tr(A)·I + Σ_k r_k σ_k)` with `r_k = d·Tr(A σ_k)`. For a state
//! this gives `Tr(ρ²) = (d + |r|²)/d²`; a pure qubit sits at radius √2.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ZERO};
use crate::tol;

/// One nonzero structure constant: `[σ_j, σ_k] = i Σ_l f_jkl σ_l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StructureConstant {
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub value: f64,
}

#[derive(Debug)]
pub struct GellMannBasis {
    dim: usize,
    elements: Vec<ComplexMatrix>,
    structure: OnceLock<Vec<StructureConstant>>,
}

impl GellMannBasis {
    /// Builds the `d² − 1` generators: symmetric pairs, then antisymmetric
    /// pairs (both in lexicographic `j < k` order), then the diagonal
    /// generators.
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::BadDimension(0));
        }
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        let mut elements = Vec::with_capacity(dim * dim - 1);
        let pairs: Vec<(usize, usize)> = (0..dim)
            .flat_map(|j| ((j + 1)..dim).map(move |k| (j, k)))
            .collect();
        for &(j, k) in &pairs {
            let mut m = ComplexMatrix::zeros(dim);
            m[(j, k)] = Complex64::new(inv_sqrt2, 0.0);
            m[(k, j)] = Complex64::new(inv_sqrt2, 0.0);
            elements.push(m);
        }
        for &(j, k) in &pairs {
            let mut m = ComplexMatrix::zeros(dim);
            m[(j, k)] = Complex64::new(0.0, -inv_sqrt2);
            m[(k, j)] = Complex64::new(0.0, inv_sqrt2);
            elements.push(m);
        }
        for l in 1..dim {
            let lf = l as f64;
            let norm = 1.0 / (lf * (lf + 1.0)).sqrt();
            let mut diag = vec![norm; l];
            diag.push(-lf * norm);
            diag.resize(dim, 0.0);
            elements.push(ComplexMatrix::from_real_diagonal(&diag));
        }
        Ok(Self {
            dim,
            elements,
            structure: OnceLock::new(),
        })
    }

    /// Shared instance for `dim`, built once per process.
    pub fn cached(dim: usize) -> Result<Arc<Self>> {
        static CACHE: OnceLock<RwLock<HashMap<usize, Arc<GellMannBasis>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(b) = cache.read().expect("basis cache poisoned").get(&dim) {
            return Ok(Arc::clone(b));
        }
        let basis = Arc::new(Self::new(dim)?);
        let mut w = cache.write().expect("basis cache poisoned");
        Ok(Arc::clone(w.entry(dim).or_insert(basis)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of generators, `d² − 1`.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn element(&self, k: usize) -> &ComplexMatrix {
        &self.elements[k]
    }

    /// Nonzero `f_jkl` for all ordered `j ≠ k`, computed on first use as
    /// `f_jkl = −i·Tr([σ_j, σ_k] σ_l)`.
    pub fn structure_constants(&self) -> &[StructureConstant] {
        self.structure.get_or_init(|| {
            let n = self.len();
            let mut out = Vec::new();
            for j in 0..n {
                for k in 0..n {
                    if j == k {
                        continue;
                    }
                    let a = &self.elements[j];
                    let b = &self.elements[k];
                    let comm = &(a * b) - &(b * a);
                    if comm.max_abs() < 1e-14 {
                        continue;
                    }
                    for l in 0..n {
                        let v = (comm.trace_product(&self.elements[l]) * Complex64::new(0.0, -1.0)).re;
                        if v.abs() > 1e-13 {
                            out.push(StructureConstant { j, k, l, value: v });
                        }
                    }
                }
            }
            out
        })
    }

    /// Dense lookup of `f_jkl` (zero when absent).
    pub fn structure_constant(&self, j: usize, k: usize, l: usize) -> f64 {
        self.structure_constants()
            .iter()
            .find(|c| c.j == j && c.k == k && c.l == l)
            .map_or(0.0, |c| c.value)
    }

    /// `Σ θ_k σ_k`.
    pub fn combination(&self, coefficients: &[f64]) -> ComplexMatrix {
        assert_eq!(coefficients.len(), self.len(), "coefficient count");
        let mut m = ComplexMatrix::zeros(self.dim);
        for (c, e) in coefficients.iter().zip(&self.elements) {
            if *c == 0.0 {
                continue;
            }
            for i in 0..self.dim {
                for j in 0..self.dim {
                    let x = e[(i, j)];
                    if x != ZERO {
                        m[(i, j)] += x * *c;
                    }
                }
            }
        }
        m
    }

    pub fn to_bloch(&self, a: &ComplexMatrix) -> Result<BlochVector> {
        to_bloch(a, self)
    }

    pub fn from_bloch(&self, b: &BlochVector) -> Result<ComplexMatrix> {
        from_bloch(b, self)
    }
}

/// Coefficients of a Hermitian operator over `{I, σ_k}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub dim: usize,
    /// Identity coefficient, equal to the trace of the source operator.
    pub scalar: f64,
    pub components: Vec<f64>,
}

impl BlochVector {
    pub fn norm(&self) -> f64 {
        self.components.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// `Tr(A²) = (scalar²·d + |r|²)/d²`.
    pub fn purity(&self) -> f64 {
        let d = self.dim as f64;
        (self.scalar * self.scalar * d + self.norm().powi(2)) / (d * d)
    }
}

pub fn to_bloch(a: &ComplexMatrix, basis: &GellMannBasis) -> Result<BlochVector> {
    if a.dim() != basis.dim() {
        return Err(Error::dims(format!(
            "operator dim {} vs basis dim {}",
            a.dim(),
            basis.dim()
        )));
    }
    let deviation = a.hermitian_deviation();
    if deviation > tol::STRUCTURAL {
        return Err(Error::NotHermitian { deviation });
    }
    let d = basis.dim() as f64;
    let components = basis
        .elements()
        .iter()
        .map(|s| d * a.trace_product(s).re)
        .collect();
    Ok(BlochVector {
        dim: basis.dim(),
        scalar: a.trace().re,
        components,
    })
}

/// `(1/d)(scalar·I + Σ r_k σ_k)`. No positivity check: vectors outside the
/// state body map to Hermitian matrices with negative eigenvalues.
pub fn from_bloch(b: &BlochVector, basis: &GellMannBasis) -> Result<ComplexMatrix> {
    if b.dim != basis.dim() || b.components.len() != basis.len() {
        return Err(Error::dims(format!(
            "bloch vector dim {} ({} components) vs basis dim {}",
            b.dim,
            b.components.len(),
            basis.dim()
        )));
    }
    let d = basis.dim() as f64;
    let mut m = basis.combination(&b.components);
    for i in 0..basis.dim() {
        m[(i, i)] += b.scalar;
    }
    Ok(m.scale_real(1.0 / d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::{random_hermitian, sample_ginibre_density, seeded_rng};

    #[test]
    fn orthonormal_and_traceless() {
        for d in 1..=6 {
            let b = GellMannBasis::new(d).unwrap();
            assert_eq!(b.len(), d * d - 1);
            for (j, sj) in b.elements().iter().enumerate() {
                assert!(sj.trace().norm() < 1e-12);
                assert!(sj.is_hermitian(0.0));
                for (k, sk) in b.elements().iter().enumerate() {
                    let g = sj.trace_product(sk);
                    let expected = if j == k { 1.0 } else { 0.0 };
                    assert!((g - expected).norm() < 1e-12, "d={d} j={j} k={k}");
                }
            }
        }
    }

    #[test]
    fn qubit_structure_constants_are_scaled_levi_civita() {
        let b = GellMannBasis::new(2).unwrap();
        let s2 = std::f64::consts::SQRT_2;
        assert!((b.structure_constant(0, 1, 2) - s2).abs() < 1e-12);
        assert!((b.structure_constant(1, 2, 0) - s2).abs() < 1e-12);
        assert!((b.structure_constant(1, 0, 2) + s2).abs() < 1e-12);
        assert_eq!(b.structure_constant(0, 0, 2), 0.0);
    }

    #[test]
    fn structure_constants_reproduce_commutators_and_are_antisymmetric() {
        for d in 2..=4 {
            let b = GellMannBasis::new(d).unwrap();
            let n = b.len();
            for c in b.structure_constants() {
                assert!((b.structure_constant(c.k, c.j, c.l) + c.value).abs() < 1e-10);
            }
            for j in 0..n {
                for k in 0..n {
                    let (sj, sk) = (b.element(j), b.element(k));
                    let comm = &(sj * sk) - &(sk * sj);
                    let mut rebuilt = ComplexMatrix::zeros(d);
                    for l in 0..n {
                        let f = b.structure_constant(j, k, l);
                        rebuilt = &rebuilt + &b.element(l).scale(Complex64::new(0.0, f));
                    }
                    assert!(comm.max_abs_diff(&rebuilt) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn maximally_mixed_is_origin() {
        let b = GellMannBasis::new(3).unwrap();
        let v = to_bloch(&ComplexMatrix::identity(3).scale_real(1.0 / 3.0), &b).unwrap();
        assert!(v.components.iter().all(|x| x.abs() < 1e-15));
        assert!((v.scalar - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pure_qubit_radius_is_sqrt_two() {
        let b = GellMannBasis::new(2).unwrap();
        let v = to_bloch(&ComplexMatrix::basis_projector(2, 0), &b).unwrap();
        assert!((v.norm() - std::f64::consts::SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn round_trip_and_purity() {
        let mut rng = seeded_rng(1);
        for d in 2..=5 {
            let b = GellMannBasis::new(d).unwrap();
            for _ in 0..20 {
                let a = random_hermitian(d, &mut rng);
                let back = from_bloch(&to_bloch(&a, &b).unwrap(), &b).unwrap();
                assert!(back.max_abs_diff(&a) < 1e-12);
            }
            let rho = sample_ginibre_density(d, 2, &mut rng).unwrap();
            let v = to_bloch(rho.matrix(), &b).unwrap();
            let df = d as f64;
            assert!((rho.purity() - (df + v.norm().powi(2)) / (df * df)).abs() < 1e-10);
            assert!((rho.purity() - v.purity()).abs() < 1e-10);
        }
    }

    #[test]
    fn outside_state_body_is_allowed() {
        let b = GellMannBasis::new(2).unwrap();
        let v = BlochVector {
            dim: 2,
            scalar: 1.0,
            components: vec![0.0, 0.0, 3.0],
        };
        let m = from_bloch(&v, &b).unwrap();
        assert!(m.is_hermitian(1e-15));
        assert!((m.trace().re - 1.0).abs() < 1e-15);
        assert!(crate::linalg::eigvalsh(&m).unwrap()[0] < 0.0);
    }

    #[test]
    fn dimension_errors() {
        let b = GellMannBasis::new(3).unwrap();
        assert!(matches!(
            to_bloch(&ComplexMatrix::identity(2), &b),
            Err(Error::DimensionMismatch(_))
        ));
        let v = BlochVector {
            dim: 2,
            scalar: 1.0,
            components: vec![0.0; 3],
        };
        assert!(from_bloch(&v, &b).is_err());
        let nh = ComplexMatrix::from_fn(3, |i, j| Complex64::new(i as f64, j as f64));
        assert!(matches!(to_bloch(&nh, &b), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn cached_instances_are_shared() {
        let a = GellMannBasis::cached(4).unwrap();
        let b = GellMannBasis::cached(4).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }
}
