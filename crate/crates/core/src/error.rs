use thiserror::Error;

use crate::classify::RegimeKind;

/// Failures raised by the algebra, the Hamiltonian builder and the integrators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coquaternion is null (squared modulus {mod2:e}); it has no inverse")]
    NullCoquaternion { mod2: f64 },

    #[error("the zero coquaternion has no polar form")]
    ZeroCoquaternion,

    #[error("coquaternion {0} lies on the light cone; no polar form exists")]
    DegeneratePolar(String),

    #[error("Pauli index {0} out of range 1..=5")]
    PauliIndex(usize),

    #[error("generator is null (u2^2 - u4^2 - u5^2 = {disc:e}); nu is undefined")]
    NullGenerator { disc: f64 },

    #[error("state is null (norm {norm:e}); the Bloch vector is undefined")]
    NullState { norm: f64 },

    #[error("expectation value of sigma{index} has imaginary residue {residue:e}")]
    ImaginaryResidue { index: usize, residue: f64 },

    #[error("equation requires the {expected:?} regime, parameters are {found:?}")]
    RegimeMismatch {
        expected: RegimeKind,
        found: RegimeKind,
    },

    #[error("step dt = {dt} is too coarse for rate {rate} (dt*rate = {product:.3} > 0.1)")]
    StepTooLarge { dt: f64, rate: f64, product: f64 },

    #[error("invalid time grid: t_max = {t_max}, dt = {dt}")]
    InvalidGrid { t_max: f64, dt: f64 },

    #[error("initial Bloch point is off the state space (residual {residual:e})")]
    OffStateSpace { residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
