//! Quantum states, Hamiltonians, Bloch vectors and closed-system dynamics.

mod bloch;
mod density;
mod dynamics;
mod hamiltonian;

pub use bloch::{from_bloch, to_bloch, BlochVector, GellMannBasis, StructureConstant};
pub use density::{trace_distance, DensityMatrix};
pub use dynamics::{bloch_velocity, cross, energy, energy_from_bloch, evolve, propagator};
pub use hamiltonian::Hamiltonian;
