use std::ops::{Add, Mul, Sub};

use crate::coquaternion::Coquaternion;
use crate::error::{Error, Result};
use crate::matrix2::Hamiltonian;

type Q = Coquaternion;

/// Two coquaternionic amplitudes `(ψ1, ψ2)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StateVector {
    pub psi1: Q,
    pub psi2: Q,
}

impl StateVector {
    pub const fn new(psi1: Q, psi2: Q) -> Self {
        Self { psi1, psi2 }
    }

    /// `ψ1 = c[0] + i c[1] + j c[2] + k c[3]`, `ψ2` from `c[4..8]`.
    pub fn from_components(c: [f64; 8]) -> Self {
        Self::new(
            Q::new(c[0], c[1], c[2], c[3]),
            Q::new(c[4], c[5], c[6], c[7]),
        )
    }

    pub fn components(&self) -> [f64; 8] {
        let (a, b) = (self.psi1, self.psi2);
        [a.q0, a.q1, a.q2, a.q3, b.q0, b.q1, b.q2, b.q3]
    }

    /// `⟨ψ|φ⟩ = ψ̄1 φ1 + ψ̄2 φ2`, products in that order.
    pub fn inner(&self, other: &Self) -> Q {
        self.psi1.conj() * other.psi1 + self.psi2.conj() * other.psi2
    }

    /// `⟨ψ|ψ⟩ = mod2(ψ1) + mod2(ψ2)`, indefinite.
    pub fn norm(&self) -> f64 {
        self.psi1.mod2() + self.psi2.mod2()
    }

    /// Sum of the squares of all eight components.
    pub fn euclid_norm2(&self) -> f64 {
        self.psi1.euclid_norm2() + self.psi2.euclid_norm2()
    }

    pub fn max_abs(&self) -> f64 {
        self.components().iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.psi1
            .max_abs_diff(other.psi1)
            .max(self.psi2.max_abs_diff(other.psi2))
    }

    /// Rescales to `⟨ψ|ψ⟩ = ±1`. Fails on null states.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n.abs() <= null_state_tolerance(self) {
            return Err(Error::NullState { norm: n });
        }
        Ok(*self * (1.0 / n.abs().sqrt()))
    }
}

/// `1e-12 * (1 + Σ components²)`.
pub(crate) fn null_state_tolerance(psi: &StateVector) -> f64 {
    1e-12 * (1.0 + psi.euclid_norm2())
}

impl Add for StateVector {
    type Output = Self;
    #[inline]
    fn add(self, r: Self) -> Self {
        Self::new(self.psi1 + r.psi1, self.psi2 + r.psi2)
    }
}

impl Sub for StateVector {
    type Output = Self;
    #[inline]
    fn sub(self, r: Self) -> Self {
        Self::new(self.psi1 - r.psi1, self.psi2 - r.psi2)
    }
}

impl Mul<f64> for StateVector {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        Self::new(self.psi1 * s, self.psi2 * s)
    }
}

/// Time derivative `ψ' = -𝒊Hψ` written out per component:
///
/// ```text
/// ψ1' = -(u0 + u3) 𝒊ψ1 - u1 𝒊ψ2 - s ν ψ2
/// ψ2' = -(u0 - u3) 𝒊ψ2 - u1 𝒊ψ1 + s ν ψ1
/// ```
///
/// with `s = +1` for a time-like generator (`𝒊² = -1`) and `s = -1` for a
/// space-like one (`𝒊² = +1`).
pub fn schrodinger_rhs(h: &Hamiltonian, psi: &StateVector) -> Result<StateVector> {
    let e = h.generator_unit().ok_or(Error::NullGenerator {
        disc: crate::classify::generator_discriminant(h.u()),
    })?;
    Ok(schrodinger_rhs_unchecked(
        h.u(),
        e,
        h.nu_sign() * h.nu(),
        psi,
    ))
}

#[inline]
pub(crate) fn schrodinger_rhs_unchecked(
    u: &[f64; 6],
    unit: Q,
    signed_nu: f64,
    psi: &StateVector,
) -> StateVector {
    let e1 = unit * psi.psi1;
    let e2 = unit * psi.psi2;
    StateVector::new(
        e1 * (-(u[0] + u[3])) - e2 * u[1] - psi.psi2 * signed_nu,
        e2 * (-(u[0] - u[3])) - e1 * u[1] + psi.psi1 * signed_nu,
    )
}
