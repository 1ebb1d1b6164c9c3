//! The five-component Bloch vector and its equations of motion.
//!
//! All right-hand sides return the full time derivative (the equations are
//! usually quoted for `½ σ'`).

use crate::classify::{self, Params, RegimeKind};
use crate::error::{Error, Result};
use crate::matrix2::{pauli, Hamiltonian};

use super::state::{null_state_tolerance, StateVector};

pub type Vec3 = [f64; 3];
pub type Vec5 = [f64; 5];

/// Bloch observables of a state under a given Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochState {
    /// `σ_l = ⟨ψ|σ_l|ψ⟩ / ⟨ψ|ψ⟩`, `l = 1..5`.
    pub sigma: Vec5,
    /// `(σx, σy, σz)`; absent on the null boundary where `ν = 0`.
    pub reduced: Option<Vec3>,
    /// `(σ_y1, σ_y2, σ_y3)`.
    pub auxiliary: Vec3,
}

impl BlochState {
    pub fn from_sigma(u: &Params, sigma: Vec5) -> Self {
        let reduced = match classify::regime_kind(u) {
            RegimeKind::Null => None,
            _ => Some(reduced_from_sigma(u, classify::nu(u), &sigma)),
        };
        Self {
            sigma,
            reduced,
            auxiliary: auxiliary_from_sigma(u, &sigma),
        }
    }
}

/// `σx = σ1`, `σy = (u2σ2 + u4σ4 + u5σ5)/ν`, `σz = σ3`.
pub fn reduced_from_sigma(u: &Params, nu: f64, s: &Vec5) -> Vec3 {
    [s[0], (u[2] * s[1] + u[4] * s[3] + u[5] * s[4]) / nu, s[2]]
}

/// `σ_y1 = u4σ5 - u5σ4`, `σ_y2 = u5σ2 + u2σ5`, `σ_y3 = u2σ4 + u4σ2`.
pub fn auxiliary_from_sigma(u: &Params, s: &Vec5) -> Vec3 {
    let (s2, s4, s5) = (s[1], s[3], s[4]);
    [
        u[4] * s5 - u[5] * s4,
        u[5] * s2 + u[2] * s5,
        u[2] * s4 + u[4] * s2,
    ]
}

/// Unnormalised expectations `⟨ψ|σ_l|ψ⟩`, checked to be real.
pub fn expectations(psi: &StateVector) -> Result<Vec5> {
    let tol = null_state_tolerance(psi);
    let mut out = [0.0; 5];
    for (idx, slot) in out.iter_mut().enumerate() {
        let l = idx + 1;
        let e = psi.inner(&pauli(l)?.apply(psi));
        let residue = e.q1.abs().max(e.q2.abs()).max(e.q3.abs());
        if residue > tol {
            return Err(Error::ImaginaryResidue { index: l, residue });
        }
        *slot = e.q0;
    }
    Ok(out)
}

/// The Bloch vector `σ_l = ⟨ψ|σ_l|ψ⟩ / ⟨ψ|ψ⟩`.
pub fn bloch_vector(psi: &StateVector) -> Result<Vec5> {
    let n = psi.norm();
    if n.abs() <= null_state_tolerance(psi) {
        return Err(Error::NullState { norm: n });
    }
    let e = expectations(psi)?;
    Ok(e.map(|x| x / n))
}

pub fn bloch_from_state(h: &Hamiltonian, psi: &StateVector) -> Result<BlochState> {
    Ok(BlochState::from_sigma(h.u(), bloch_vector(psi)?))
}

/// `σ1² + σ2² + σ3² - σ4² - σ5²`, equal to one on the state space.
pub fn state_space_quadric(s: &Vec5) -> f64 {
    s[0] * s[0] + s[1] * s[1] + s[2] * s[2] - s[3] * s[3] - s[4] * s[4]
}

fn require(u: &Params, expected: RegimeKind) -> Result<()> {
    let found = classify::regime_kind(u);
    if found != expected {
        return Err(Error::RegimeMismatch { expected, found });
    }
    Ok(())
}

fn rhs5(u: &Params, nu: f64, s_nu: f64, s: &Vec5) -> Vec5 {
    let [u0, u1, u2, u3, u4, u5] = *u;
    let [s1, s2, s3, s4, s5] = *s;
    let w = u2 * s2 + u4 * s4 + u5 * s5;
    let inv = 1.0 / nu;
    let snu = s_nu * nu;
    [
        2.0 * (snu * s3 - u3 * inv * w),
        2.0 * inv * (u2 * u3 * s1 - u1 * u2 * s3 + u0 * u5 * s4 - u0 * u4 * s5),
        2.0 * (-snu * s1 + u1 * inv * w),
        2.0 * inv * (-u3 * u4 * s1 + u0 * u5 * s2 + u1 * u4 * s3 + u0 * u2 * s5),
        2.0 * inv * (-u3 * u5 * s1 - u0 * u4 * s2 + u1 * u5 * s3 - u0 * u2 * s4),
    ]
}

/// Generalised Bloch equations for a time-like generator, `ν = sqrt(u2² - u4² - u5²)`.
pub fn bloch_rhs_timelike(u: &Params, sigma: &Vec5) -> Result<Vec5> {
    require(u, RegimeKind::TimeLike)?;
    Ok(rhs5(u, classify::nu(u), 1.0, sigma))
}

/// Space-like counterpart, `ν = sqrt(u4² + u5² - u2²)`; the `ν` terms of the
/// first and third equations change sign.
pub fn bloch_rhs_spacelike(u: &Params, sigma: &Vec5) -> Result<Vec5> {
    require(u, RegimeKind::SpaceLike)?;
    Ok(rhs5(u, classify::nu(u), -1.0, sigma))
}

/// Dispatches on the regime of `u`.
pub fn bloch_rhs(u: &Params, sigma: &Vec5) -> Result<Vec5> {
    match classify::regime_kind(u) {
        RegimeKind::TimeLike => bloch_rhs_timelike(u, sigma),
        RegimeKind::SpaceLike => bloch_rhs_spacelike(u, sigma),
        RegimeKind::Null => Err(Error::NullGenerator {
            disc: classify::generator_discriminant(u),
        }),
    }
}

/// Reduced flow on the null boundary `u2² = u4² + u5²`.
pub fn bloch_rhs_null(u: &Params, reduced: &Vec3) -> Result<Vec3> {
    require(u, RegimeKind::Null)?;
    Ok(reduced_flow(u, 0.0, RegimeKind::Null, reduced))
}

/// Reduced spin equations. Time-like: `σ' = 2 B × σ` with `B = (u1, ν, u3)`.
/// Space-like and null: the hyperbolic variant preserving `σx² - σy² + σz²`.
pub fn reduced_rhs(u: &Params, regime: RegimeKind, reduced: &Vec3) -> Result<Vec3> {
    require(u, regime)?;
    Ok(reduced_flow(u, classify::nu(u), regime, reduced))
}

fn reduced_flow(u: &Params, nu: f64, regime: RegimeKind, r: &Vec3) -> Vec3 {
    let (u1, u3) = (u[1], u[3]);
    let [x, y, z] = *r;
    match regime {
        RegimeKind::TimeLike => [
            2.0 * (nu * z - u3 * y),
            2.0 * (u3 * x - u1 * z),
            2.0 * (u1 * y - nu * x),
        ],
        RegimeKind::SpaceLike => [
            2.0 * (-nu * z - u3 * y),
            2.0 * (-u3 * x + u1 * z),
            2.0 * (u1 * y + nu * x),
        ],
        RegimeKind::Null => [2.0 * (-u3 * y), 2.0 * (-u3 * x + u1 * z), 2.0 * (u1 * y)],
    }
}

/// Auxiliary-variable flow; identical in form in both non-null regimes and
/// frozen when `u0 = 0`.
pub fn auxiliary_rhs(u: &Params, aux: &Vec3) -> Result<Vec3> {
    if classify::regime_kind(u) == RegimeKind::Null {
        return Err(Error::NullGenerator {
            disc: classify::generator_discriminant(u),
        });
    }
    let c = -2.0 * u[0] / classify::nu(u);
    let (u2, u4, u5) = (u[2], u[4], u[5]);
    let [a1, a2, a3] = *aux;
    Ok([
        c * (u5 * a2 + u4 * a3),
        c * (u2 * a3 + u5 * a1),
        c * (u4 * a1 - u2 * a2),
    ])
}
