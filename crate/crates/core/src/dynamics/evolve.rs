use crate::classify::{self, orbit_diagnostics, Params};
use crate::error::{Error, Result};
use crate::matrix2::Hamiltonian;

use super::bloch::{self, BlochState, Vec3, Vec5};
use super::invariants::{self, Invariants};
use super::ode::{integrate, rk4_step, TimeGrid};
use super::state::{schrodinger_rhs_unchecked, StateVector};

/// Largest accepted `dt * rate` before [`Error::StepTooLarge`].
pub const MAX_STEP_RESOLUTION: f64 = 0.1;

/// Initial Bloch points must satisfy the state-space quadric to this accuracy.
pub const STATE_SPACE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t: f64,
    /// Absent for trajectories integrated directly at the Bloch level.
    pub state: Option<StateVector>,
    pub bloch: BlochState,
    pub invariants: Invariants,
    /// `invariants` minus their values at `t = 0`.
    pub drift: Invariants,
    /// Running maximum of the term magnitudes, see [`invariants::invariant_scales`].
    pub scale: Invariants,
}

impl Sample {
    /// `|drift| / max(1, scale)` per invariant.
    pub fn relative_drift(&self) -> Invariants {
        self.drift.relative_to(&self.scale)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub u: Params,
    pub samples: Vec<Sample>,
}

impl Trajectory {
    fn build(
        u: Params,
        points: impl Iterator<Item = (f64, Option<StateVector>, BlochState)>,
    ) -> Self {
        let mut samples: Vec<Sample> = Vec::new();
        for (t, state, bloch) in points {
            let invariants = match &state {
                Some(psi) => invariants::state_invariants(&u, psi, &bloch),
                None => invariants::invariant_report(&u, &bloch),
            };
            let raw_scale = invariants::invariant_scales(&u, state.as_ref(), &bloch);
            let (drift, scale) = match samples.first() {
                None => (invariants.minus(&invariants), raw_scale),
                Some(first) => {
                    let prev = &samples[samples.len() - 1].scale;
                    (
                        invariants.minus(&first.invariants),
                        raw_scale.running_max(prev),
                    )
                }
            };
            samples.push(Sample {
                t,
                state,
                bloch,
                invariants,
                drift,
                scale,
            });
        }
        Self { u, samples }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn times(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.t).collect()
    }

    pub fn states(&self) -> Vec<StateVector> {
        self.samples.iter().filter_map(|s| s.state).collect()
    }

    pub fn reduced(&self) -> Vec<Vec3> {
        self.samples
            .iter()
            .filter_map(|s| s.bloch.reduced)
            .collect()
    }

    pub fn last(&self) -> &Sample {
        self.samples
            .last()
            .expect("trajectory has at least one sample")
    }

    /// Entry-wise maximum over all samples of [`Sample::relative_drift`].
    pub fn max_relative_drift(&self) -> Invariants {
        let mut acc = Invariants::default();
        for (k, s) in self.samples.iter().enumerate() {
            let d = s.relative_drift();
            acc = if k == 0 { d } else { d.running_max(&acc) };
        }
        acc
    }
}

/// Rejects steps that resolve the orbit too coarsely (`dt * rate > 0.1`).
pub fn check_step(h: &Hamiltonian, dt: f64) -> Result<()> {
    if let Some(rate) = orbit_diagnostics(h).rate {
        let product = dt * rate;
        if product > MAX_STEP_RESOLUTION {
            return Err(Error::StepTooLarge { dt, rate, product });
        }
    }
    Ok(())
}

/// Integrates `ψ' = -𝒊Hψ` with fixed-step RK4 and records Bloch observables
/// and invariants at every step. No renormalisation is applied.
pub fn evolve_state(h: &Hamiltonian, psi0: StateVector, t_max: f64, dt: f64) -> Result<Trajectory> {
    check_step(h, dt)?;
    evolve_state_unchecked(h, psi0, t_max, dt)
}

/// [`evolve_state`] without the step-resolution check.
pub fn evolve_state_unchecked(
    h: &Hamiltonian,
    psi0: StateVector,
    t_max: f64,
    dt: f64,
) -> Result<Trajectory> {
    let grid = TimeGrid::new(t_max, dt)?;
    let states = integrate_state(h, psi0, &grid)?;
    let mut points = Vec::with_capacity(states.len());
    for (t, psi) in grid.times().zip(states) {
        points.push((t, Some(psi), bloch::bloch_from_state(h, &psi)?));
    }
    Ok(Trajectory::build(*h.u(), points.into_iter()))
}

/// Raw RK4 state sequence on `grid`.
pub fn integrate_state(
    h: &Hamiltonian,
    psi0: StateVector,
    grid: &TimeGrid,
) -> Result<Vec<StateVector>> {
    let unit = h.generator_unit().ok_or(Error::NullGenerator {
        disc: classify::generator_discriminant(h.u()),
    })?;
    let u = *h.u();
    let signed_nu = h.nu_sign() * h.nu();
    Ok(integrate(
        move |psi: &StateVector| schrodinger_rhs_unchecked(&u, unit, signed_nu, psi),
        psi0,
        grid,
    ))
}

/// Integrates the five-component Bloch equations directly from `sigma0`,
/// which must lie on the state space `σ1²+σ2²+σ3²-σ4²-σ5² = 1`.
pub fn evolve_bloch(h: &Hamiltonian, sigma0: Vec5, t_max: f64, dt: f64) -> Result<Trajectory> {
    check_step(h, dt)?;
    evolve_bloch_unchecked(h, sigma0, t_max, dt)
}

/// [`evolve_bloch`] without the step-resolution check.
pub fn evolve_bloch_unchecked(
    h: &Hamiltonian,
    sigma0: Vec5,
    t_max: f64,
    dt: f64,
) -> Result<Trajectory> {
    let residual = bloch::state_space_quadric(&sigma0) - 1.0;
    if residual.abs() > STATE_SPACE_TOLERANCE {
        return Err(Error::OffStateSpace { residual });
    }
    let u = *h.u();
    // Surface the regime error before integrating.
    bloch::bloch_rhs(&u, &sigma0)?;
    let grid = TimeGrid::new(t_max, dt)?;
    let sigmas = integrate(
        |s: &Vec5| bloch::bloch_rhs(&u, s).expect("regime checked"),
        sigma0,
        &grid,
    );
    let points = grid
        .times()
        .zip(sigmas)
        .map(|(t, s)| (t, None, BlochState::from_sigma(&u, s)));
    Ok(Trajectory::build(u, points))
}

/// Solution of the reduced three-component equations.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedTrajectory {
    pub times: Vec<f64>,
    pub points: Vec<Vec3>,
}

/// Integrates the reduced equations in whichever regime `u` is in,
/// including the null boundary.
pub fn evolve_reduced(u: &Params, r0: Vec3, t_max: f64, dt: f64) -> Result<ReducedTrajectory> {
    let grid = TimeGrid::new(t_max, dt)?;
    let points = integrate(reduced_field(u), r0, &grid);
    Ok(ReducedTrajectory {
        times: grid.times().collect(),
        points,
    })
}

/// The reduced vector field of `u`'s regime as a closure.
pub fn reduced_field(u: &Params) -> impl Fn(&Vec3) -> Vec3 {
    let u = *u;
    let kind = classify::regime_kind(&u);
    move |r: &Vec3| {
        match kind {
            classify::RegimeKind::Null => bloch::bloch_rhs_null(&u, r),
            _ => bloch::reduced_rhs(&u, kind, r),
        }
        .expect("regime fixed at construction")
    }
}

fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn dist(a: &Vec3, b: &Vec3) -> f64 {
    let d = [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    dot(&d, &d).sqrt()
}

/// First return time of a sampled reduced orbit to its starting point.
///
/// The return is the first crossing, in the direction of the initial
/// velocity `v0`, of the plane through `points[0]` normal to `v0`, after the
/// orbit has been on the far side of that plane. The crossing time is
/// refined to machine precision with a fractional RK4 step of the reduced
/// flow from the preceding sample. Returns `None` if there is no such
/// crossing or if it lands farther than `delta` from the start.
pub fn detect_period(u: &Params, times: &[f64], points: &[Vec3], delta: f64) -> Option<f64> {
    let p0 = *points.first()?;
    let f = reduced_field(u);
    let v0 = f(&p0);
    if dot(&v0, &v0) == 0.0 {
        return None;
    }
    let g = |p: &Vec3| dot(&[p[0] - p0[0], p[1] - p0[1], p[2] - p0[2]], &v0);

    let behind = points.iter().position(|p| g(p) < 0.0)?;
    let k = behind + points[behind..].iter().position(|p| g(p) >= 0.0)?;
    let (ta, pa) = (times[k - 1], points[k - 1]);
    let span = times[k] - ta;

    let at = |tau: f64| rk4_step(&f, &pa, tau);
    let (mut lo, mut hi) = (0.0, span);
    let (mut g_lo, mut g_hi) = (g(&pa), g(&at(span)));
    // Illinois false position.
    let mut side = 0i8;
    for _ in 0..100 {
        let tau = (lo * g_hi - hi * g_lo) / (g_hi - g_lo);
        let gt = g(&at(tau));
        if gt < 0.0 {
            lo = tau;
            g_lo = gt;
            if side == -1 {
                g_hi *= 0.5;
            }
            side = -1;
        } else {
            hi = tau;
            g_hi = gt;
            if side == 1 {
                g_lo *= 0.5;
            }
            side = 1;
        }
        if hi - lo <= 4.0 * f64::EPSILON * (ta + span) || gt == 0.0 {
            break;
        }
    }
    let tau = 0.5 * (lo + hi);
    let p = at(tau);
    if dist(&p, &p0) <= delta && dot(&f(&p), &v0) > 0.0 {
        Some(ta + tau)
    } else {
        None
    }
}
