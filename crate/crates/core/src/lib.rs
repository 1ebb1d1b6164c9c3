//! Coquaternionic (split-quaternion) quantum dynamics of a two-level system.
//!
//! * [`coquaternion`]: the scalar algebra, conjugation, the indefinite norm
//!   and the four-branch polar decomposition.
//! * [`matrix2`]: 2×2 coquaternionic matrices, the five Pauli matrices and
//!   the Hermitian Hamiltonian `u0·1 + Σ u_l σ_l`.
//! * [`classify`]: time-like / null / space-like regimes, cases A/B/C and
//!   orbit diagnostics.
//! * [`dynamics`]: state-level and Bloch-level evolution with invariant
//!   monitoring.
//! * [`oracle`]: real-matrix representations used to cross-check the rest.

pub mod classify;
pub mod coquaternion;
pub mod dynamics;
pub mod error;
pub mod matrix2;
pub mod oracle;

pub use classify::{
    classify, orbit_diagnostics, CaseLabel, OrbitDiagnostics, OrbitKind, Params, Regime,
    RegimeKind, SpectrumKind,
};
pub use coquaternion::{polar_decompose, Coquaternion, PolarBranch, PolarForm};
pub use dynamics::{StateVector, Trajectory};
pub use error::{Error, Result};
pub use matrix2::{pauli, CoqMatrix2, Energy, Hamiltonian, Spectrum};
