//! Shared numerical tolerances.

/// Hermiticity, trace and positivity checks on states and observables.
pub const STRUCTURAL: f64 = 1e-9;

/// Spectral reconstruction `V diag(λ) V†` against the input.
pub const RECONSTRUCTION: f64 = 1e-9;

/// Default bound for equality assertions.
pub const EQUALITY: f64 = 1e-12;

/// Unitarity of constructed or sampled operators.
pub const UNITARY: f64 = 1e-10;

/// Orthonormality required of columns handed to unitary completion.
pub const ORTHONORMAL: f64 = 1e-10;

/// Candidates whose residual norm falls below this during completion are
/// treated as linearly dependent and skipped.
pub const COMPLETION_SKIP: f64 = 1e-8;

/// Off-diagonal Frobenius norm (relative to the matrix norm) at which the
/// Jacobi eigensolver stops.
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-12;

/// Maximum number of cyclic Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Default tolerance for the passivity predicate.
pub const PASSIVE: f64 = 1e-9;
