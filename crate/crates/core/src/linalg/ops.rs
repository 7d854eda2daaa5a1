use num_complex::Complex64;

use super::eigen::eig_hermitian;
use super::matrix::{inner, norm, ComplexMatrix, ZERO};
use crate::error::{Error, Result};
use crate::tol;

/// Kronecker product `A ⊗ B`; the first factor is the slow index.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim(), b.dim());
    ComplexMatrix::from_fn(na * nb, |i, j| {
        a[(i / nb, j / nb)] * b[(i % nb, j % nb)]
    })
}

/// Kronecker product of a list of factors, left to right.
pub fn kron_all(factors: &[ComplexMatrix]) -> ComplexMatrix {
    let (first, rest) = factors.split_first().expect("at least one factor");
    rest.iter().fold(first.clone(), |acc, f| kron(&acc, f))
}

/// Reduces `m` on the tensor product of spaces with dimensions `dims` to the
/// subsystems in `keep`. The output keeps the original subsystem order,
/// whatever the order of `keep`.
pub fn partial_trace(m: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    let total: usize = dims.iter().product();
    if dims.is_empty() || dims.contains(&0) || total != m.dim() {
        return Err(Error::dims(format!(
            "factor dims {dims:?} do not multiply to matrix dim {}",
            m.dim()
        )));
    }
    if keep.is_empty() {
        return Err(Error::dims("no subsystem kept"));
    }
    let mut kept = vec![false; dims.len()];
    for &k in keep {
        if k >= dims.len() || kept[k] {
            return Err(Error::dims(format!(
                "invalid or repeated subsystem index {k} for {} factors",
                dims.len()
            )));
        }
        kept[k] = true;
    }

    // Row-major strides of the full index.
    let mut strides = vec![1usize; dims.len()];
    for s in (0..dims.len().saturating_sub(1)).rev() {
        strides[s] = strides[s + 1] * dims[s + 1];
    }
    let kept_axes: Vec<usize> = (0..dims.len()).filter(|&s| kept[s]).collect();
    let traced_axes: Vec<usize> = (0..dims.len()).filter(|&s| !kept[s]).collect();

    // Offsets contributed by every multi-index of the kept / traced axes,
    // enumerated with the last axis fastest.
    let offsets = |axes: &[usize]| -> Vec<usize> {
        let mut out = vec![0usize];
        for &ax in axes {
            let (d, stride) = (dims[ax], strides[ax]);
            out = out
                .iter()
                .flat_map(|&base| (0..d).map(move |x| base + x * stride))
                .collect();
        }
        out
    };
    let kept_off = offsets(&kept_axes);
    let traced_off = offsets(&traced_axes);

    let n = kept_off.len();
    let mut out = ComplexMatrix::zeros(n);
    for (i, &ri) in kept_off.iter().enumerate() {
        for (j, &cj) in kept_off.iter().enumerate() {
            let mut acc = ZERO;
            for &t in &traced_off {
                acc += m[(ri + t, cj + t)];
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

/// Reduced state of a pure bipartite vector on the first (`keep_first`) or
/// second factor. Avoids forming the full projector.
pub fn reduce_pure(
    psi: &[Complex64],
    dim_a: usize,
    dim_b: usize,
    keep_first: bool,
) -> ComplexMatrix {
    assert_eq!(psi.len(), dim_a * dim_b, "pure state length mismatch");
    if keep_first {
        ComplexMatrix::from_fn(dim_a, |i, j| {
            (0..dim_b)
                .map(|b| psi[i * dim_b + b] * psi[j * dim_b + b].conj())
                .sum()
        })
    } else {
        ComplexMatrix::from_fn(dim_b, |i, j| {
            (0..dim_a)
                .map(|a| psi[a * dim_b + i] * psi[a * dim_b + j].conj())
                .sum()
        })
    }
}

/// `½ Σ|λ_i(A − B)|` for Hermitian `A`, `B`.
pub fn trace_norm_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::dims(format!("{} vs {}", a.dim(), b.dim())));
    }
    let evs = eig_hermitian(&(a - b))?.eigenvalues;
    Ok(0.5 * evs.iter().map(|l| l.abs()).sum::<f64>())
}

/// A column of a partially specified unitary: `vector` becomes column
/// `index` of the completed matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct AssignedColumn {
    pub index: usize,
    pub vector: Vec<Complex64>,
}

impl AssignedColumn {
    pub fn new(index: usize, vector: Vec<Complex64>) -> Self {
        Self { index, vector }
    }
}

/// Extends an isometry given by `columns` to a full `dim × dim` unitary.
///
/// Unassigned columns, in increasing index order, are filled by
/// Gram-Schmidt on the canonical basis vectors `e_0, e_1, …`; candidates
/// whose residual norm drops below 1e-8 are skipped.
pub fn complete_to_unitary(columns: &[AssignedColumn], dim: usize) -> Result<ComplexMatrix> {
    if dim == 0 {
        return Err(Error::BadDimension(0));
    }
    let mut taken = vec![false; dim];
    for col in columns {
        if col.vector.len() != dim {
            return Err(Error::dims(format!(
                "column of length {} for dimension {dim}",
                col.vector.len()
            )));
        }
        if col.index >= dim || taken[col.index] {
            return Err(Error::dims(format!(
                "invalid or repeated column index {}",
                col.index
            )));
        }
        taken[col.index] = true;
    }

    let mut deviation: f64 = 0.0;
    for a in 0..columns.len() {
        for b in a..columns.len() {
            let g = inner(&columns[a].vector, &columns[b].vector);
            let expected = if a == b { 1.0 } else { 0.0 };
            deviation = deviation.max((g - expected).norm());
        }
    }
    if deviation > tol::ORTHONORMAL {
        return Err(Error::NotOrthonormal { deviation });
    }

    let mut basis: Vec<Vec<Complex64>> = columns.iter().map(|c| c.vector.clone()).collect();
    let mut extra: Vec<Vec<Complex64>> = Vec::new();
    let needed = dim - columns.len();
    for k in 0..dim {
        if extra.len() == needed {
            break;
        }
        let mut v = super::matrix::basis_vector(dim, k);
        for _ in 0..2 {
            for u in &basis {
                let proj = inner(u, &v);
                v.iter_mut().zip(u).for_each(|(x, y)| *x -= proj * y);
            }
        }
        let n = norm(&v);
        if n < tol::COMPLETION_SKIP {
            continue;
        }
        v.iter_mut().for_each(|z| *z /= n);
        basis.push(v.clone());
        extra.push(v);
    }

    let mut u = ComplexMatrix::zeros(dim);
    for col in columns {
        u.set_column(col.index, &col.vector);
    }
    let free = (0..dim).filter(|&j| !taken[j]);
    for (j, v) in free.zip(&extra) {
        u.set_column(j, v);
    }
    Ok(u)
}

/// `exp(−i·t·A)` for Hermitian `A`, via its spectral decomposition.
pub fn expm_i_hermitian(a: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    let spectrum = eig_hermitian(a)?;
    Ok(spectrum.map_eigenvalues(|l| Complex64::from_polar(1.0, -l * t)))
}
