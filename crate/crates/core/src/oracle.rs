//! Independent cross-checks through real matrices.
//!
//! Coquaternions are isomorphic to real 2×2 matrices; this module uses the
//! fixed representation
//!
//! ```text
//! 1 ↦ [[1, 0], [0, 1]]    i ↦ [[0, 1], [-1, 0]]
//! j ↦ [[1, 0], [0, -1]]   k ↦ [[0, -1], [-1, 0]]
//! ```
//!
//! so that `det(rep(q)) = q̄q` and `rep(q̄) = adj(rep(q))`. A coquaternionic
//! 2×2 matrix becomes a real 4×4 block matrix and a state vector a real 4×2
//! block column; evolution is then an ordinary matrix exponential.

use nalgebra::{Complex, Matrix2, Matrix4, Matrix4x2};

use crate::coquaternion::Coquaternion;
use crate::dynamics::StateVector;
use crate::error::Result;
use crate::matrix2::{CoqMatrix2, Hamiltonian};

pub type RealRep2 = Matrix2<f64>;
pub type RealRep4 = Matrix4<f64>;
pub type StateRep = Matrix4x2<f64>;

pub fn real_rep(q: Coquaternion) -> RealRep2 {
    RealRep2::new(q.q0 + q.q2, q.q1 - q.q3, -q.q1 - q.q3, q.q0 - q.q2)
}

/// Inverse of [`real_rep`]; every real 2×2 matrix is the image of exactly one
/// coquaternion.
pub fn from_real_rep(m: &RealRep2) -> Coquaternion {
    Coquaternion::new(
        0.5 * (m[(0, 0)] + m[(1, 1)]),
        0.5 * (m[(0, 1)] - m[(1, 0)]),
        0.5 * (m[(0, 0)] - m[(1, 1)]),
        -0.5 * (m[(0, 1)] + m[(1, 0)]),
    )
}

pub fn adjugate(m: &RealRep2) -> RealRep2 {
    RealRep2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)])
}

pub fn real_rep4(m: &CoqMatrix2) -> RealRep4 {
    let mut out = RealRep4::zeros();
    for (r, row) in m.entries().iter().enumerate() {
        for (c, q) in row.iter().enumerate() {
            out.fixed_view_mut::<2, 2>(2 * r, 2 * c)
                .copy_from(&real_rep(*q));
        }
    }
    out
}

pub fn state_rep(psi: &StateVector) -> StateRep {
    let mut out = StateRep::zeros();
    out.fixed_view_mut::<2, 2>(0, 0)
        .copy_from(&real_rep(psi.psi1));
    out.fixed_view_mut::<2, 2>(2, 0)
        .copy_from(&real_rep(psi.psi2));
    out
}

pub fn from_state_rep(m: &StateRep) -> StateVector {
    StateVector::new(
        from_real_rep(&m.fixed_view::<2, 2>(0, 0).into_owned()),
        from_real_rep(&m.fixed_view::<2, 2>(2, 0).into_owned()),
    )
}

/// `Σ adj(R_a) R_a` over the two blocks; equals `⟨ψ|ψ⟩ · 1`.
pub fn gram(m: &StateRep) -> RealRep2 {
    let a = m.fixed_view::<2, 2>(0, 0).into_owned();
    let b = m.fixed_view::<2, 2>(2, 0).into_owned();
    adjugate(&a) * a + adjugate(&b) * b
}

const EXPM_TERMS: usize = 20;
const EXPM_SCALED_NORM: f64 = 0.5;

fn max_norm(m: &RealRep4) -> f64 {
    m.iter().fold(0.0, |acc: f64, x| acc.max(x.abs()))
}

/// Matrix exponential by scaling and squaring: halve until the max-norm is
/// at most 0.5, sum the Taylor series (at most 20 terms), square back.
///
/// With a scaled 4×4 max-norm of 0.5 the 20-term remainder is below
/// `2^21 / 21! ≈ 4e-14`.
pub fn expm(a: &RealRep4) -> RealRep4 {
    let norm = max_norm(a);
    let squarings = if norm > EXPM_SCALED_NORM {
        (norm / EXPM_SCALED_NORM).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a / 2f64.powi(squarings);
    let mut sum = RealRep4::identity();
    let mut term = RealRep4::identity();
    for n in 1..=EXPM_TERMS {
        term = term * scaled / n as f64;
        sum += term;
        if max_norm(&term) <= f64::EPSILON * max_norm(&sum) {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}

/// `ψ(t) = exp(-𝒊H t) ψ0` through the 4×4 real representation.
pub fn evolve_exact(h: &Hamiltonian, psi0: &StateVector, t: f64) -> Result<StateVector> {
    let a = real_rep4(&h.generator()?);
    if t == 0.0 {
        return Ok(*psi0);
    }
    Ok(from_state_rep(&(expm(&(a * -t)) * state_rep(psi0))))
}

/// The propagator `exp(-𝒊H t)` as a real 4×4 matrix.
pub fn propagator(h: &Hamiltonian, t: f64) -> Result<RealRep4> {
    Ok(expm(&(real_rep4(&h.generator()?) * -t)))
}

/// Largest exponential growth rate of `exp(-𝒊H t)`: the largest absolute
/// real part among the eigenvalues of its generator.
pub fn growth_rate(h: &Hamiltonian) -> Result<f64> {
    let a = real_rep4(&h.generator()?);
    Ok(a.complex_eigenvalues()
        .iter()
        .fold(0.0, |m: f64, z| m.max(z.re.abs())))
}

/// Eigenvalues of the 4×4 representation of `H`, sorted by real then
/// imaginary part.
pub fn real_rep_eigenvalues(h: &Hamiltonian) -> Vec<Complex<f64>> {
    let mut ev: Vec<_> = real_rep4(&h.matrix())
        .complex_eigenvalues()
        .iter()
        .copied()
        .collect();
    ev.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    ev
}
