//! Time evolution of states and Bloch observables.

pub mod bloch;
pub mod evolve;
pub mod invariants;
pub mod ode;
pub mod state;

pub use bloch::{
    auxiliary_rhs, bloch_from_state, bloch_rhs, bloch_rhs_null, bloch_rhs_spacelike,
    bloch_rhs_timelike, bloch_vector, reduced_rhs, BlochState, Vec3, Vec5,
};
pub use evolve::{
    check_step, detect_period, evolve_bloch, evolve_bloch_unchecked, evolve_reduced, evolve_state,
    evolve_state_unchecked, ReducedTrajectory, Sample, Trajectory,
};
pub use invariants::{invariant_report, Invariants};
pub use state::{schrodinger_rhs, StateVector};
