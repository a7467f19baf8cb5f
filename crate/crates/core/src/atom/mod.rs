//! Valence-electron structure of alkali Rydberg atoms.

mod numerov;
mod potential;
mod species;

pub use numerov::{
    radial_matrix_element, radial_power, solve_radial, RadialGrid, RadialWavefunction, RydbergState, SolverFlag,
    DEFAULT_INNER_RADIUS, DEFAULT_STEP,
};
pub use potential::{model_potential, qd_energy, spin_orbit_factor, QdEnergy};
pub use species::{ModelPotentialParams, SpeciesParams};

#[cfg(test)]
mod tests;
