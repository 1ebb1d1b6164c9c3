//! Regime classification of the six Hamiltonian parameters `u0..u5`.
//!
//! Two discriminants decide everything:
//!
//! * `u2² - u4² - u5²`, the signature of the imaginary unit that generates the
//!   evolution (time-like, null or space-like), and
//! * `gap2 = u1² + u2² + u3² - u4² - u5²`, whose sign decides whether the
//!   energies form a real or a complex-conjugate pair.
//!
//! | case | generator  | spectrum        | reduced orbit            |
//! |------|------------|-----------------|--------------------------|
//! | A    | time-like  | real (always)   | rigid rotation on sphere |
//! | B    | space-like | real            | open, on hyperboloid     |
//! | C    | space-like | complex pair    | closed, on hyperboloid   |

use crate::matrix2::Hamiltonian;

/// Hamiltonian parameters `[u0, u1, u2, u3, u4, u5]`.
pub type Params = [f64; 6];

const TOLERANCE_SCALE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegimeKind {
    TimeLike,
    Null,
    SpaceLike,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpectrumKind {
    RealPair,
    ComplexConjugatePair,
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseLabel {
    A,
    B,
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Regime {
    pub kind: RegimeKind,
    pub spectrum_kind: SpectrumKind,
    /// `None` on the null boundary and at space-like exceptional points.
    pub case_label: Option<CaseLabel>,
}

/// `u2² - u4² - u5²`.
#[inline]
pub fn generator_discriminant(u: &Params) -> f64 {
    u[2] * u[2] - u[4] * u[4] - u[5] * u[5]
}

/// `u1² + u2² + u3² - u4² - u5²`, the squared half-gap of the spectrum.
#[inline]
pub fn gap2(u: &Params) -> f64 {
    u[1] * u[1] + u[2] * u[2] + u[3] * u[3] - u[4] * u[4] - u[5] * u[5]
}

/// `1e-12 * (1 + Σ u_l²)` over `l = 1..5`; used for both discriminants.
#[inline]
pub fn tolerance(u: &Params) -> f64 {
    TOLERANCE_SCALE * (1.0 + u[1..].iter().map(|x| x * x).sum::<f64>())
}

/// `ν = sqrt(|u2² - u4² - u5²|)`.
#[inline]
pub fn nu(u: &Params) -> f64 {
    generator_discriminant(u).abs().sqrt()
}

pub fn regime_kind(u: &Params) -> RegimeKind {
    let d = generator_discriminant(u);
    let tol = tolerance(u);
    if d > tol {
        RegimeKind::TimeLike
    } else if d < -tol {
        RegimeKind::SpaceLike
    } else {
        RegimeKind::Null
    }
}

pub fn spectrum_kind(u: &Params) -> SpectrumKind {
    let g = gap2(u);
    let tol = tolerance(u);
    if g > tol {
        SpectrumKind::RealPair
    } else if g < -tol {
        SpectrumKind::ComplexConjugatePair
    } else {
        SpectrumKind::Degenerate
    }
}

pub fn classify(u: &Params) -> Regime {
    let kind = regime_kind(u);
    let spectrum_kind = spectrum_kind(u);
    let case_label = match (kind, spectrum_kind) {
        (RegimeKind::TimeLike, _) => Some(CaseLabel::A),
        (RegimeKind::SpaceLike, SpectrumKind::RealPair) => Some(CaseLabel::B),
        (RegimeKind::SpaceLike, SpectrumKind::ComplexConjugatePair) => Some(CaseLabel::C),
        _ => None,
    };
    Regime {
        kind,
        spectrum_kind,
        case_label,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrbitKind {
    ClosedPeriodic,
    OpenHyperbolic,
    ParabolicShear,
}

/// Geometry of the reduced flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitDiagnostics {
    pub kind: OrbitKind,
    /// Angular frequency (closed orbits) or exponential rate (open orbits).
    /// Unset on the null boundary and at exceptional points.
    pub rate: Option<f64>,
    /// `(u1, ν, u3)`. In the time-like regime this is the rotation vector of
    /// the reduced flow; in the space-like regime the orbits lie in planes
    /// normal to it.
    pub axis: [f64; 3],
    /// Angle between `axis` and the hyperboloid axis `(0, 1, 0)`.
    pub axis_angle: f64,
}

impl OrbitDiagnostics {
    pub fn period(&self) -> Option<f64> {
        match (self.kind, self.rate) {
            (OrbitKind::ClosedPeriodic, Some(r)) => Some(2.0 * std::f64::consts::PI / r),
            _ => None,
        }
    }
}

pub fn orbit_diagnostics(h: &Hamiltonian) -> OrbitDiagnostics {
    let u = h.u();
    let nu = h.nu();
    let axis = [u[1], nu, u[3]];
    let axis_norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    let axis_angle = if axis_norm > 0.0 {
        (nu / axis_norm).acos()
    } else {
        0.0
    };
    let transverse = u[1] * u[1] + u[3] * u[3];
    let regime = h.regime();
    let (kind, rate) = match regime.case_label {
        Some(CaseLabel::A) => (
            OrbitKind::ClosedPeriodic,
            Some(2.0 * (transverse + nu * nu).sqrt()),
        ),
        Some(CaseLabel::B) => (
            OrbitKind::OpenHyperbolic,
            Some(2.0 * (transverse - nu * nu).sqrt()),
        ),
        Some(CaseLabel::C) => (
            OrbitKind::ClosedPeriodic,
            Some(2.0 * (nu * nu - transverse).sqrt()),
        ),
        None => (OrbitKind::ParabolicShear, None),
    };
    OrbitDiagnostics {
        kind,
        rate,
        axis,
        axis_angle,
    }
}
