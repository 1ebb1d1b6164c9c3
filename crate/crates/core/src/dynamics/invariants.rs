//! Conserved quadratic quantities of the Bloch dynamics.
//!
//! | name       | time-like               | space-like              |
//! |------------|-------------------------|-------------------------|
//! | `norm`     | `⟨ψ|ψ⟩`                 | `⟨ψ|ψ⟩`                 |
//! | `state`    | `σ1²+σ2²+σ3²-σ4²-σ5²`   | same                    |
//! | `reduced`  | `σx²+σy²+σz²`           | `σx²-σy²+σz²`           |
//! | `cylinder` | `σy1²-σy2²-σy3²`        | `-σy1²+σy2²+σy3²`       |
//! | `aux`      | `-σy1²+σy2²+σy3²`       | same                    |
//!
//! In terms of `σ2, σ4, σ5` the cylinder is
//! `-(u2σ4+u4σ2)² + (u4σ5-u5σ4)² - (u5σ2+u2σ5)²` (time-like) and its
//! negative (space-like).
//!
//! Trajectories in the space-like regime grow exponentially, so drifts are
//! compared against `max(1, scale)` where `scale` is the sum of the squared
//! sizes of the individual terms that enter each quantity.

use crate::classify::{self, Params, RegimeKind};

use super::bloch::{state_space_quadric, BlochState, Vec3, Vec5};
use super::state::StateVector;

pub const NAMES: [&str; 5] = ["norm", "state", "reduced", "cylinder", "aux"];

/// One value per conserved quantity; `None` where it does not apply.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Invariants {
    pub norm: Option<f64>,
    pub state: f64,
    pub reduced: Option<f64>,
    pub cylinder: Option<f64>,
    pub aux: f64,
}

impl Invariants {
    pub fn values(&self) -> [Option<f64>; 5] {
        [
            self.norm,
            Some(self.state),
            self.reduced,
            self.cylinder,
            Some(self.aux),
        ]
    }

    /// Named entries, skipping quantities that do not apply.
    pub fn entries(&self) -> Vec<(&'static str, f64)> {
        NAMES
            .iter()
            .zip(self.values())
            .filter_map(|(n, v)| v.map(|v| (*n, v)))
            .collect()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        let both = |a: Option<f64>, b: Option<f64>| Some(f(a?, b?));
        Self {
            norm: both(self.norm, other.norm),
            state: f(self.state, other.state),
            reduced: both(self.reduced, other.reduced),
            cylinder: both(self.cylinder, other.cylinder),
            aux: f(self.aux, other.aux),
        }
    }

    /// `self - initial`, entry by entry.
    pub fn minus(&self, initial: &Self) -> Self {
        self.zip_with(initial, |a, b| a - b)
    }

    /// `|self| / max(1, scale)`.
    pub fn relative_to(&self, scale: &Self) -> Self {
        self.zip_with(scale, |d, s| d.abs() / s.max(1.0))
    }

    /// `|self - initial| / max(1, scale)`.
    pub fn relative_drift(&self, initial: &Self, scale: &Self) -> Self {
        self.minus(initial).relative_to(scale)
    }

    /// Entry-wise maximum; an entry present on one side only is kept.
    pub fn running_max(&self, other: &Self) -> Self {
        let pick = |a: Option<f64>, b: Option<f64>| match (a, b) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        Self {
            norm: pick(self.norm, other.norm),
            state: self.state.max(other.state),
            reduced: pick(self.reduced, other.reduced),
            cylinder: pick(self.cylinder, other.cylinder),
            aux: self.aux.max(other.aux),
        }
    }

    /// Largest entry (ignoring absent ones).
    pub fn max(&self) -> f64 {
        self.values()
            .iter()
            .flatten()
            .fold(f64::NEG_INFINITY, |m, x| m.max(*x))
    }
}

/// `σx² ± σy² + σz²`, the sign following the regime.
pub fn reduced_quadric(kind: RegimeKind, r: &Vec3) -> f64 {
    let y2 = r[1] * r[1];
    let sign = if kind == RegimeKind::TimeLike {
        1.0
    } else {
        -1.0
    };
    r[0] * r[0] + sign * y2 + r[2] * r[2]
}

/// `-σy1² + σy2² + σy3²`.
pub fn aux_quadric(a: &Vec3) -> f64 {
    -a[0] * a[0] + a[1] * a[1] + a[2] * a[2]
}

fn sq3(v: &Vec3) -> f64 {
    v[0] * v[0] + v[1] * v[1] + v[2] * v[2]
}

/// Evaluates every conserved quadratic that applies in the regime of `u`.
/// `norm` is left unset; see [`state_invariants`].
pub fn invariant_report(u: &Params, bloch: &BlochState) -> Invariants {
    let kind = classify::regime_kind(u);
    let aux = aux_quadric(&bloch.auxiliary);
    let cylinder = match kind {
        RegimeKind::TimeLike => Some(-aux),
        RegimeKind::SpaceLike => Some(aux),
        RegimeKind::Null => None,
    };
    Invariants {
        norm: None,
        state: state_space_quadric(&bloch.sigma),
        reduced: bloch.reduced.map(|r| reduced_quadric(kind, &r)),
        cylinder,
        aux,
    }
}

/// [`invariant_report`] plus the state norm.
pub fn state_invariants(u: &Params, psi: &StateVector, bloch: &BlochState) -> Invariants {
    Invariants {
        norm: Some(psi.norm()),
        ..invariant_report(u, bloch)
    }
}

/// `|u4σ5| + |u5σ4|`, `|u5σ2| + |u2σ5|`, `|u2σ4| + |u4σ2|`: the sizes of the
/// terms summed into each auxiliary component.
pub fn auxiliary_magnitudes(u: &Params, s: &Vec5) -> Vec3 {
    let (s2, s4, s5) = (s[1], s[3], s[4]);
    [
        (u[4] * s5).abs() + (u[5] * s4).abs(),
        (u[5] * s2).abs() + (u[2] * s5).abs(),
        (u[2] * s4).abs() + (u[4] * s2).abs(),
    ]
}

fn reduced_magnitudes(u: &Params, s: &Vec5) -> Vec3 {
    let nu = classify::nu(u);
    let y = (u[2] * s[1]).abs() + (u[4] * s[3]).abs() + (u[5] * s[4]).abs();
    [s[0].abs(), y / nu, s[2].abs()]
}

/// Magnitudes against which the drift of each invariant is judged: the sum
/// of the squared term sizes that enter it.
pub fn invariant_scales(u: &Params, psi: Option<&StateVector>, bloch: &BlochState) -> Invariants {
    let a = sq3(&auxiliary_magnitudes(u, &bloch.sigma));
    Invariants {
        norm: psi.map(StateVector::euclid_norm2),
        state: bloch.sigma.iter().map(|x| x * x).sum(),
        reduced: bloch
            .reduced
            .map(|_| sq3(&reduced_magnitudes(u, &bloch.sigma))),
        cylinder: Some(a),
        aux: a,
    }
}
