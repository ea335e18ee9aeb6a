//! Blow-up time of the comparison problem `y' = y^l - c`, `y(0) = ψ₀ > c^{1/l}`:
//!
//! ```text
//! T(ψ₀) = ∫_{ψ₀}^∞ dτ / (τ^l - c)
//! ```

use alloc::vec::Vec;

use crate::math::{exp, ln, powf};
use crate::quadrature;
use crate::{Error, Result};

const HYPOTHESIS: &str = "hypothesis violated: ψ₀ ≤ c^{1/l}";

/// Relative growth of `y` allowed per integration step.
const STEP_FRACTION: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeProblem {
    pub l: f64,
    pub c: f64,
    pub psi0: f64,
}

impl OdeProblem {
    pub fn new(l: f64, c: f64, psi0: f64) -> Result<Self> {
        let prob = Self { l, c, psi0 };
        prob.check()?;
        Ok(prob)
    }

    pub fn check(&self) -> Result<()> {
        if !(self.l > 1.0) || !self.l.is_finite() {
            return Err(Error::Oracle("exponent l must be finite and > 1"));
        }
        if !(self.c >= 0.0) || !self.c.is_finite() {
            return Err(Error::Oracle("constant c must be finite and ≥ 0"));
        }
        if !self.psi0.is_finite() || !(self.psi0 > 0.0) || !(powf(self.psi0, self.l) > self.c) {
            return Err(Error::Oracle(HYPOTHESIS));
        }
        Ok(())
    }

    /// Right-hand side `|y|^l - c`.
    pub fn rhs(&self, y: f64) -> f64 {
        powf(y.abs(), self.l) - self.c
    }

    /// The same problem started from `psi0`.
    pub fn with_start(&self, psi0: f64) -> Result<Self> {
        Self::new(self.l, self.c, psi0)
    }
}

/// `∫_{ψ₀}^∞ dτ/(τ^l - c)` to absolute accuracy `tol`.
///
/// The range is cut at `R`; the tail is `R^{1-l}/(l-1)` plus a remainder
/// bounded by `c R^{1-2l} / ((2l-1)(1 - c R^{-l}))`, and `R` is enlarged
/// until that bound is below `tol/2`. The finite part is integrated in
/// `s = ln τ` to accuracy `tol/2`.
pub fn blowup_time(prob: &OdeProblem, tol: f64) -> Result<f64> {
    prob.check()?;
    if !(tol > 0.0) {
        return Err(Error::Oracle("tolerance must be positive"));
    }
    let OdeProblem { l, c, psi0 } = *prob;
    let remainder = |r: f64| c * powf(r, 1.0 - 2.0 * l) / ((2.0 * l - 1.0) * (1.0 - c / powf(r, l)));
    let mut r = 2.0 * psi0;
    while remainder(r) > 0.5 * tol {
        r *= 2.0;
        if !r.is_finite() {
            return Err(Error::Oracle("tail cut did not converge"));
        }
    }
    let head = quadrature::integrate(
        |s| {
            let tau = exp(s);
            tau / (powf(tau, l) - c)
        },
        ln(psi0),
        ln(r),
        0.5 * tol,
    )?;
    Ok(head + powf(r, 1.0 - l) / (l - 1.0))
}

/// Explicit RK4 for `y' = |y|^l - c` from `ψ₀` until `y ≥ blow_threshold`.
///
/// The step is `10⁻³·min(y/(y^l - c), 1/(l y^{l-1}))`, so it shrinks like
/// `y^{1-l}`. The last point is the threshold crossing, located by linear
/// interpolation within the final step.
pub fn integrate_comparison(prob: &OdeProblem, blow_threshold: f64) -> Result<Vec<(f64, f64)>> {
    prob.check()?;
    if !(blow_threshold > prob.psi0) || !blow_threshold.is_finite() {
        return Err(Error::Oracle("threshold must be finite and exceed ψ₀"));
    }
    let l = prob.l;
    let step = |y: f64| {
        let growth = prob.rhs(y);
        let by_growth = if growth > 0.0 { y / growth } else { f64::INFINITY };
        STEP_FRACTION * by_growth.min(1.0 / (l * powf(y, l - 1.0)))
    };
    integrate_autonomous(|y| prob.rhs(y), step, prob.psi0, blow_threshold)
}

/// Generic RK4 integration of the autonomous scalar ODE `y' = rhs(y)` with
/// state-dependent step `step(y)`, stopping at the first crossing of
/// `threshold` (which is interpolated into the last sample).
pub fn integrate_autonomous(
    rhs: impl Fn(f64) -> f64,
    step: impl Fn(f64) -> f64,
    y0: f64,
    threshold: f64,
) -> Result<Vec<(f64, f64)>> {
    const MAX_STEPS: usize = 50_000_000;
    let mut out = alloc::vec![(0.0, y0)];
    let (mut t, mut y) = (0.0f64, y0);
    for _ in 0..MAX_STEPS {
        let dt = step(y);
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::Numerical("comparison step is not positive"));
        }
        let k1 = rhs(y);
        let k2 = rhs(y + 0.5 * dt * k1);
        let k3 = rhs(y + 0.5 * dt * k2);
        let k4 = rhs(y + dt * k3);
        let y_next = y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if !y_next.is_finite() {
            return Err(Error::Numerical("comparison solution became non-finite"));
        }
        if y_next >= threshold {
            let t_hit = t + dt * (threshold - y) / (y_next - y);
            out.push((t_hit, threshold));
            return Ok(out);
        }
        t += dt;
        y = y_next;
        out.push((t, y));
    }
    Err(Error::Numerical("comparison integration exceeded step budget"))
}

/// Fixed-step RK4 samples of `y' = rhs(y)` at `t = k·dt`, `k = 0..=steps`.
pub fn rk4_fixed(rhs: impl Fn(f64) -> f64, y0: f64, dt: f64, steps: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(steps + 1);
    let mut y = y0;
    out.push((0.0, y));
    for k in 1..=steps {
        let k1 = rhs(y);
        let k2 = rhs(y + 0.5 * dt * k1);
        let k3 = rhs(y + 0.5 * dt * k2);
        let k4 = rhs(y + dt * k3);
        y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        out.push((k as f64 * dt, y));
    }
    out
}

/// Threshold-crossing time of [`integrate_comparison`].
pub fn hit_time(prob: &OdeProblem, blow_threshold: f64) -> Result<f64> {
    let traj = integrate_comparison(prob, blow_threshold)?;
    Ok(traj.last().expect("trajectory is never empty").0)
}
