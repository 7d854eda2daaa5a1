//! Dense complex linear algebra for small (d ≤ 64) quantum systems.

mod eigen;
pub mod io;
mod matrix;
mod ops;
pub mod random;

pub use eigen::{eig_hermitian, eigvalsh, HermitianSpectrum};
pub use io::MatrixFile;
pub use matrix::{basis_vector, inner, kron_vec, norm, ComplexMatrix, ONE, ZERO};
pub use ops::{
    complete_to_unitary, expm_i_hermitian, kron, kron_all, partial_trace, reduce_pure,
    trace_norm_distance, AssignedColumn,
};
pub use random::{sample_ginibre_density, sample_haar_unitary};
