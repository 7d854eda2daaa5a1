//! Numerical toolkit for work and energy content of finite-dimensional
//! quantum states.
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`]: dense complex matrices, a Jacobi Hermitian eigensolver,
//!   tensor products, partial traces, unitary completion and random sampling.
//! - [`states`]: validated density matrices, Hamiltonians, the generalized
//!   Gell-Mann basis with Bloch vectors, energy and closed-system evolution.
//! - [`ergotropy`]: passive states, extraction unitaries, ergotropy and the
//!   bipartite ergotropic gap.
//! - [`protocols`]: energy cloner, energy splitter, diagonal work masker,
//!   four-party masker and the signaling state pair for a work cloner.
//! - [`nogo`]: objectives and a seeded Nelder-Mead search over parameterized
//!   unitaries that probe devices which cannot exist.
//! - [`experiments`]: named, seeded experiments and their JSON/CSV reports.

pub mod ergotropy;
pub mod error;
pub mod experiments;
pub mod json;
pub mod linalg;
pub mod nogo;
pub mod protocols;
pub mod states;
pub mod tol;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, HermitianSpectrum};
pub use num_complex::Complex64;
pub use states::{BlochVector, DensityMatrix, GellMannBasis, Hamiltonian};
