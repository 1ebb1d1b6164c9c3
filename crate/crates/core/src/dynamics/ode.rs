//! Fixed-step classical fourth-order Runge–Kutta.

use crate::error::{Error, Result};

use super::state::StateVector;

/// A point in a real vector space the integrator can step.
pub trait OdeState: Copy {
    /// `self + h * d`.
    fn add_scaled(&self, h: f64, d: &Self) -> Self;
}

impl<const N: usize> OdeState for [f64; N] {
    #[inline]
    fn add_scaled(&self, h: f64, d: &Self) -> Self {
        let mut out = *self;
        for (o, x) in out.iter_mut().zip(d) {
            *o += h * x;
        }
        out
    }
}

impl OdeState for StateVector {
    #[inline]
    fn add_scaled(&self, h: f64, d: &Self) -> Self {
        *self + *d * h
    }
}

#[inline]
pub fn rk4_step<S: OdeState>(f: &impl Fn(&S) -> S, y: &S, h: f64) -> S {
    let k1 = f(y);
    let k2 = f(&y.add_scaled(0.5 * h, &k1));
    let k3 = f(&y.add_scaled(0.5 * h, &k2));
    let k4 = f(&y.add_scaled(h, &k3));
    y.add_scaled(h / 6.0, &k1)
        .add_scaled(h / 3.0, &k2)
        .add_scaled(h / 3.0, &k3)
        .add_scaled(h / 6.0, &k4)
}

/// Uniform grid `0, h, 2h, ..., t_max` with `h` the largest step `≤ dt`
/// that divides `t_max` (equal to `dt` whenever `t_max/dt` is an integer).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub t_max: f64,
    pub steps: usize,
    pub h: f64,
}

impl TimeGrid {
    pub fn new(t_max: f64, dt: f64) -> Result<Self> {
        if !(t_max.is_finite() && dt.is_finite() && t_max >= 0.0 && dt > 0.0) {
            return Err(Error::InvalidGrid { t_max, dt });
        }
        if t_max == 0.0 {
            return Ok(Self {
                t_max,
                steps: 0,
                h: 0.0,
            });
        }
        let ratio = t_max / dt;
        let nearest = ratio.round();
        let steps = if (ratio - nearest).abs() <= 1e-9 * ratio.max(1.0) {
            nearest
        } else {
            ratio.ceil()
        }
        .max(1.0) as usize;
        Ok(Self {
            t_max,
            steps,
            h: t_max / steps as f64,
        })
    }

    pub fn time(&self, k: usize) -> f64 {
        if k == self.steps {
            self.t_max
        } else {
            k as f64 * self.h
        }
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.steps).map(|k| self.time(k))
    }
}

/// All grid points of the RK4 solution, starting with `y0`.
pub fn integrate<S: OdeState>(f: impl Fn(&S) -> S, y0: S, grid: &TimeGrid) -> Vec<S> {
    let mut out = Vec::with_capacity(grid.steps + 1);
    out.push(y0);
    let mut y = y0;
    for _ in 0..grid.steps {
        y = rk4_step(&f, &y, grid.h);
        out.push(y);
    }
    out
}
