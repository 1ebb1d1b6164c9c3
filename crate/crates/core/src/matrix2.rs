//! 2×2 coquaternionic matrices and the Hermitian two-level Hamiltonian.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::classify::{self, Params, Regime, RegimeKind, SpectrumKind};
use crate::coquaternion::Coquaternion;
use crate::dynamics::StateVector;
use crate::error::{Error, Result};

type Q = Coquaternion;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CoqMatrix2 {
    pub a11: Q,
    pub a12: Q,
    pub a21: Q,
    pub a22: Q,
}

impl CoqMatrix2 {
    pub const ZERO: Self = Self::new(Q::ZERO, Q::ZERO, Q::ZERO, Q::ZERO);
    pub const IDENTITY: Self = Self::new(Q::ONE, Q::ZERO, Q::ZERO, Q::ONE);

    pub const fn new(a11: Q, a12: Q, a21: Q, a22: Q) -> Self {
        Self { a11, a12, a21, a22 }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::new(
            self.a11.conj(),
            self.a21.conj(),
            self.a12.conj(),
            self.a22.conj(),
        )
    }

    /// `q · M`, multiplying every entry from the left.
    pub fn left_scale(&self, q: Q) -> Self {
        Self::new(q * self.a11, q * self.a12, q * self.a21, q * self.a22)
    }

    pub fn apply(&self, v: &StateVector) -> StateVector {
        StateVector::new(
            self.a11 * v.psi1 + self.a12 * v.psi2,
            self.a21 * v.psi1 + self.a22 * v.psi2,
        )
    }

    pub fn entries(&self) -> [[Q; 2]; 2] {
        [[self.a11, self.a12], [self.a21, self.a22]]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let (a, b) = (self.entries(), other.entries());
        let mut m: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                m = m.max(a[r][c].max_abs_diff(b[r][c]));
            }
        }
        m
    }
}

impl Add for CoqMatrix2 {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self::new(
            self.a11 + r.a11,
            self.a12 + r.a12,
            self.a21 + r.a21,
            self.a22 + r.a22,
        )
    }
}

impl Sub for CoqMatrix2 {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        self + (-r)
    }
}

impl Neg for CoqMatrix2 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a11, -self.a12, -self.a21, -self.a22)
    }
}

impl Mul for CoqMatrix2 {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        Self::new(
            self.a11 * r.a11 + self.a12 * r.a21,
            self.a11 * r.a12 + self.a12 * r.a22,
            self.a21 * r.a11 + self.a22 * r.a21,
            self.a21 * r.a12 + self.a22 * r.a22,
        )
    }
}

impl Mul<f64> for CoqMatrix2 {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.a11 * s, self.a12 * s, self.a21 * s, self.a22 * s)
    }
}

/// The five coquaternionic Pauli matrices, `l = 1..=5`.
pub fn pauli(l: usize) -> Result<CoqMatrix2> {
    let z = Q::ZERO;
    let m = match l {
        1 => CoqMatrix2::new(z, Q::ONE, Q::ONE, z),
        2 => CoqMatrix2::new(z, -Q::I, Q::I, z),
        3 => CoqMatrix2::new(Q::ONE, z, z, -Q::ONE),
        4 => CoqMatrix2::new(z, -Q::J, Q::J, z),
        5 => CoqMatrix2::new(z, -Q::K, Q::K, z),
        _ => return Err(Error::PauliIndex(l)),
    };
    Ok(m)
}

/// One energy eigenvalue `re + i·im` (ordinary complex unit).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Energy {
    pub re: f64,
    pub im: f64,
}

impl fmt::Display for Energy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0.0 {
            write!(f, "{}", self.re)
        } else if self.im < 0.0 {
            write!(f, "{} - {}i", self.re, -self.im)
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectrum {
    pub kind: SpectrumKind,
    /// `u0 + sqrt(gap2)`; for a complex pair the imaginary part is `+sqrt(-gap2)`.
    pub e_plus: Energy,
    pub e_minus: Energy,
    pub gap2: f64,
}

impl Spectrum {
    /// `E± = u0 ± sqrt(u1² + u2² + u3² - u4² - u5²)`.
    pub fn of(u: &Params) -> Self {
        let gap2 = classify::gap2(u);
        let kind = classify::spectrum_kind(u);
        let split = gap2.abs().sqrt();
        let (e_plus, e_minus) = match kind {
            SpectrumKind::RealPair => (
                Energy {
                    re: u[0] + split,
                    im: 0.0,
                },
                Energy {
                    re: u[0] - split,
                    im: 0.0,
                },
            ),
            SpectrumKind::ComplexConjugatePair => (
                Energy {
                    re: u[0],
                    im: split,
                },
                Energy {
                    re: u[0],
                    im: -split,
                },
            ),
            SpectrumKind::Degenerate => {
                (Energy { re: u[0], im: 0.0 }, Energy { re: u[0], im: 0.0 })
            }
        };
        Self {
            kind,
            e_plus,
            e_minus,
            gap2,
        }
    }
}

/// `H = u0·1 + Σ u_l σ_l` together with its derived quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hamiltonian {
    u: Params,
    nu: f64,
    regime: Regime,
    generator_unit: Option<Q>,
    spectrum: Spectrum,
}

impl Hamiltonian {
    /// Fails with [`Error::NullGenerator`] on the null boundary, where the
    /// imaginary unit `(i u2 + j u4 + k u5)/ν` does not exist.
    pub fn new(u: Params) -> Result<Self> {
        let h = Self::allowing_null(u);
        if h.regime.kind == RegimeKind::Null {
            return Err(Error::NullGenerator {
                disc: classify::generator_discriminant(&u),
            });
        }
        Ok(h)
    }

    /// Like [`Hamiltonian::new`] but accepts the null regime; the generator
    /// unit is then absent and `nu` is reported as zero.
    pub fn allowing_null(u: Params) -> Self {
        let regime = classify::classify(&u);
        let (nu, generator_unit) = match regime.kind {
            RegimeKind::Null => (0.0, None),
            _ => {
                let nu = classify::nu(&u);
                (nu, Some(Q::imaginary(u[2], u[4], u[5]) / nu))
            }
        };
        Self {
            u,
            nu,
            regime,
            generator_unit,
            spectrum: Spectrum::of(&u),
        }
    }

    pub fn u(&self) -> &Params {
        &self.u
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn generator_unit(&self) -> Option<Q> {
        self.generator_unit
    }

    /// `+1` time-like, `-1` space-like: the sign of the `ν` terms in the
    /// component Schrödinger equation and the Bloch systems.
    pub fn nu_sign(&self) -> f64 {
        match self.regime.kind {
            RegimeKind::SpaceLike => -1.0,
            _ => 1.0,
        }
    }

    pub fn matrix(&self) -> CoqMatrix2 {
        let u = &self.u;
        let off = Q::new(u[1], -u[2], -u[4], -u[5]);
        CoqMatrix2::new(Q::real(u[0] + u[3]), off, off.conj(), Q::real(u[0] - u[3]))
    }

    pub fn eigenvalues(&self) -> Spectrum {
        self.spectrum
    }

    /// The skew-Hermitian generator `A = 𝒊·H`; evolution is `ψ' = -Aψ`.
    pub fn generator(&self) -> Result<CoqMatrix2> {
        let unit = self.generator_unit.ok_or(Error::NullGenerator {
            disc: classify::generator_discriminant(&self.u),
        })?;
        Ok(self.matrix().left_scale(unit))
    }
}
