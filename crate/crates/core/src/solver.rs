//! Time integration on the annulus.
//!
//! The semi-discrete system is the Hamiltonian system of the discrete energy
//! (see [`functionals::energy`]) with the `Γ₁` row carrying the lumped mass
//! of its half cell plus the boundary arclength. Each step is Störmer–Verlet:
//!
//! ```text
//! v½   = v + (dt/2)(A(u) - D(v½))
//! u⁺   = u + dt v½
//! v⁺   = v½ + (dt/2)(A(u⁺) - D(v⁺))
//! ```
//!
//! where `A` collects the elastic forces and the (explicit) sources and `D`
//! is the damping, solved node by node. On `Γ₁`, with `h = Δr`,
//!
//! ```text
//! A = Δ_Γ u + (-flux(u) + (h/2) f(u) + g(u)) / (1 + h/2)
//! D = ((h/2) P(v) + Q(v)) / (1 + h/2)
//! ```

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::functionals::{self, energy_identity_residual, energy_report, EnergyReport, LyapunovConfig};
use crate::geometry::{AnnulusMesh, InteriorField};
use crate::math::{cos, powf, sin, sqrt};
use crate::model::{self, ModelParams};
use crate::{Error, Result};

pub use crate::functionals::State;

/// Radial factor of an initial profile; every shape vanishes on `Γ₀`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadialShape {
    /// `r - r_inner`
    Linear,
    /// `(r - r_inner)²`
    Quadratic,
    /// `sin(π (r - r_inner) / (r_outer - r_inner))`
    Sine,
    /// `sin(π (r - r_inner) / (2 (r_outer - r_inner)))`
    QuarterSine,
}

impl RadialShape {
    pub fn name(self) -> &'static str {
        match self {
            RadialShape::Linear => "linear",
            RadialShape::Quadratic => "quadratic",
            RadialShape::Sine => "sine",
            RadialShape::QuarterSine => "quarter_sine",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "linear" => RadialShape::Linear,
            "quadratic" => RadialShape::Quadratic,
            "sine" => RadialShape::Sine,
            "quarter_sine" => RadialShape::QuarterSine,
            _ => return None,
        })
    }
}

/// Initial profile `φ(r, θ) = radial(r) · cos(kθ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Profile {
    pub radial: RadialShape,
    pub angular_mode: u32,
}

impl Default for Profile {
    fn default() -> Self {
        Self { radial: RadialShape::Linear, angular_mode: 0 }
    }
}

impl Profile {
    pub fn field(&self, mesh: &AnnulusMesh) -> InteriorField {
        let (ri, ro) = (mesh.r_inner(), mesh.r_outer());
        let k = self.angular_mode as f64;
        let mut field = mesh.field_from_fn(|r, theta| {
            let s = (r - ri) / (ro - ri);
            let radial = match self.radial {
                RadialShape::Linear => r - ri,
                RadialShape::Quadratic => (r - ri) * (r - ri),
                RadialShape::Sine => sin(PI * s),
                RadialShape::QuarterSine => sin(0.5 * PI * s),
            };
            if self.angular_mode == 0 {
                radial
            } else {
                radial * cos(k * theta)
            }
        });
        field.values[..mesh.n_theta()].fill(0.0);
        if self.radial == RadialShape::Sine {
            let o = mesh.outer_row();
            field.values[o..].fill(0.0);
        }
        field
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialData {
    /// `u₀ = scale · φ`, `u₁ = 0`.
    Scaled { profile: Profile, scale: f64 },
    /// `u₀ = λφ`, `u₁ = 0`, with `λ` chosen so that `E(U₀) = -margin`.
    AutoNegativeEnergy { profile: Profile, margin: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshSpec {
    pub r_inner: f64,
    pub r_outer: f64,
    pub n_r: usize,
    pub n_theta: usize,
}

impl MeshSpec {
    pub fn build(&self) -> Result<AnnulusMesh> {
        AnnulusMesh::new(self.r_inner, self.r_outer, self.n_r, self.n_theta)
    }
}

pub const DEFAULT_BLOW_THRESHOLD: f64 = 1e8;

/// Largest admissible Courant number.
pub const MAX_CFL: f64 = 0.5;

/// Bound on `dt · √(f'(u))` for the explicit source terms.
pub const SOURCE_CFL: f64 = 0.005;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub params: ModelParams,
    pub mesh: MeshSpec,
    pub dt: f64,
    pub t_end: f64,
    pub blow_threshold: f64,
    pub dt_min: f64,
    pub initial_data: InitialData,
    pub report_every: usize,
}

impl SimConfig {
    /// Config with the default threshold, `dt_min = dt / 2²⁰` and a report
    /// every step.
    pub fn new(params: ModelParams, mesh: MeshSpec, dt: f64, t_end: f64, initial_data: InitialData) -> Self {
        Self {
            params,
            mesh,
            dt,
            t_end,
            blow_threshold: DEFAULT_BLOW_THRESHOLD,
            dt_min: dt / (1u64 << 20) as f64,
            initial_data,
            report_every: 1,
        }
    }

    /// Checks the config and builds its mesh.
    pub fn validate(&self) -> Result<AnnulusMesh> {
        self.params.validate()?;
        if self.params.dim != 2 {
            return Err(Error::Config(format!("simulator requires N = 2, got N = {}", self.params.dim)));
        }
        let mesh = self.mesh.build()?;
        let bad = |msg: &str| Err(Error::Config(msg.into()));
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return bad("dt must be positive");
        }
        if !(self.t_end > 0.0) || !self.t_end.is_finite() {
            return bad("t_end must be positive");
        }
        if !(self.dt_min > 0.0) || self.dt_min >= self.dt {
            return bad("dt_min must satisfy 0 < dt_min < dt");
        }
        if !(self.blow_threshold > 0.0) {
            return bad("blow_threshold must be positive");
        }
        if self.report_every == 0 {
            return bad("report_every must be ≥ 1");
        }
        let limit = cfl_limit(&mesh);
        if self.dt > limit * (1.0 + 1e-12) {
            return Err(Error::Config(format!("dt = {} exceeds the CFL limit {limit}", self.dt)));
        }
        match self.initial_data {
            InitialData::Scaled { scale, .. } if !scale.is_finite() => bad("initial scale must be finite"),
            InitialData::AutoNegativeEnergy { margin, .. } if !(margin > 0.0) || !margin.is_finite() => {
                bad("margin must be positive")
            }
            _ => Ok(mesh),
        }
    }
}

/// `MAX_CFL · min(Δr, r_inner Δθ)`.
pub fn cfl_limit(mesh: &AnnulusMesh) -> f64 {
    MAX_CFL * mesh.dr().min(mesh.r_inner() * mesh.dtheta())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trigger {
    PhaseNorm,
    LpNorm,
    DtFloor,
    None,
}

impl Trigger {
    pub fn as_str(self) -> &'static str {
        match self {
            Trigger::PhaseNorm => "PhaseNorm",
            Trigger::LpNorm => "LpNorm",
            Trigger::DtFloor => "DtFloor",
            Trigger::None => "None",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlowupReport {
    pub blew_up: bool,
    pub t_detect: Option<f64>,
    /// Last accepted time and the time of the first over-threshold (or failed) step.
    pub t_bracket: Option<(f64, f64)>,
    pub trigger: Trigger,
    pub final_report: EnergyReport,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Simulation {
    pub trajectory: Vec<EnergyReport>,
    pub blowup: BlowupReport,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
}

/// Solves `x + h D(x) = s` for nondecreasing `D` with `D(0) = 0`. The root
/// lies between 0 and `s`; Newton starts from `guess` (or `s` when the guess
/// is outside that range) and steps that leave the bracket are replaced by
/// bisection.
fn solve_kick(s: f64, h: f64, guess: f64, d: impl Fn(f64) -> f64, dd: impl Fn(f64) -> f64) -> Option<f64> {
    if !s.is_finite() {
        return None;
    }
    if s == 0.0 {
        return Some(0.0);
    }
    let (mut lo, mut hi) = if s > 0.0 { (0.0, s) } else { (s, 0.0) };
    let mut x = if guess > lo && guess < hi { guess } else { s };
    for _ in 0..200 {
        let g = x + h * d(x) - s;
        if g == 0.0 {
            return Some(x);
        }
        if g > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let newton = x - g / (1.0 + h * dd(x));
        let next = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        if (next - x).abs() <= 4.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE) || hi - lo <= 0.0 {
            return Some(next);
        }
        x = next;
    }
    None
}

/// Elastic force plus sources per unit mass, with `Γ₀` rows zero.
fn acceleration(mesh: &AnnulusMesh, params: &ModelParams, u: &[f64], out: &mut [f64], flux: &mut [f64], lb: &mut [f64]) {
    mesh.laplacian_into(u, out);
    let o = mesh.outer_row();
    let nt = mesh.n_theta();
    for k in nt..o {
        out[k] += model::source_f(params, u[k]);
    }
    mesh.face_normal_flux_into(u, flux);
    mesh.laplace_beltrami_into(&u[o..], lb);
    let half = 0.5 * mesh.dr();
    let mass = 1.0 + half;
    for j in 0..nt {
        let x = u[o + j];
        out[o + j] = lb[j] + (-flux[j] + half * model::source_f(params, x) + model::source_g(params, x)) / mass;
    }
}

/// `SOURCE_CFL / √(max source stiffness)`, infinite without sources.
pub fn source_step_limit(mesh: &AnnulusMesh, params: &ModelParams, u: &[f64]) -> f64 {
    let stiff_f = |x: f64| if params.gamma == 0.0 { 0.0 } else { params.gamma * (params.p - 1.0) * powf(x.abs(), params.p - 2.0) };
    let stiff_g = |x: f64| if params.delta == 0.0 { 0.0 } else { params.delta * (params.q - 1.0) * powf(x.abs(), params.q - 2.0) };
    let o = mesh.outer_row();
    let half = 0.5 * mesh.dr();
    let interior = u[mesh.n_theta()..o].iter().map(|&x| stiff_f(x)).fold(0.0, f64::max);
    let outer = u[o..].iter().map(|&x| (half * stiff_f(x) + stiff_g(x)) / (1.0 + half)).fold(0.0, f64::max);
    let stiffness = interior.max(outer);
    if stiffness > 0.0 {
        SOURCE_CFL / sqrt(stiffness)
    } else {
        f64::INFINITY
    }
}

/// Newton start for the kick: exact for linear damping, otherwise the
/// smaller of `|s|` and the root of the dominant power term alone.
fn kick_guess(s: f64, h: f64, c: f64, e: f64) -> f64 {
    if e == 2.0 {
        return s / (1.0 + h * c);
    }
    let a = s.abs();
    a.min(powf(a / (h * c), 1.0 / (e - 1.0))).copysign(s)
}

fn kick(mesh: &AnnulusMesh, params: &ModelParams, v: &mut [f64], acc: &[f64], h: f64) -> Result<()> {
    let failure = Error::Numerical("damping solve did not converge");
    let nt = mesh.n_theta();
    let o = mesh.outer_row();
    let damped_interior = params.alpha != 0.0;
    for k in nt..o {
        let s = v[k] + h * acc[k];
        v[k] = if damped_interior {
            let guess = kick_guess(s, h, params.alpha, params.m);
            solve_kick(s, h, guess, |x| model::damping_p(params, x), |x| model::damping_p_derivative(params, x))
                .ok_or(failure.clone())?
        } else if s.is_finite() {
            s
        } else {
            return Err(failure);
        };
    }
    let half = 0.5 * mesh.dr();
    let mass = 1.0 + half;
    let damped_outer = params.alpha != 0.0 || params.beta != 0.0;
    let (outer_c, outer_e) = match (params.alpha != 0.0, params.beta != 0.0) {
        (true, true) => ((half * params.alpha + params.beta) / mass, params.m.min(params.mu)),
        (true, false) => (half * params.alpha / mass, params.m),
        _ => (params.beta / mass, params.mu),
    };
    for k in o..o + nt {
        let s = v[k] + h * acc[k];
        v[k] = if damped_outer {
            solve_kick(
                s,
                h,
                kick_guess(s, h, outer_c, outer_e),
                |x| (half * model::damping_p(params, x) + model::damping_q(params, x)) / mass,
                |x| (half * model::damping_p_derivative(params, x) + model::damping_q_derivative(params, x)) / mass,
            )
            .ok_or(failure.clone())?
        } else if s.is_finite() {
            s
        } else {
            return Err(failure);
        };
    }
    Ok(())
}

/// Reusable buffers for repeated steps on one mesh.
pub struct Stepper<'a> {
    mesh: &'a AnnulusMesh,
    params: ModelParams,
    acc: Vec<f64>,
    flux: Vec<f64>,
    lb: Vec<f64>,
}

impl<'a> Stepper<'a> {
    pub fn new(mesh: &'a AnnulusMesh, params: ModelParams) -> Self {
        Self {
            mesh,
            params,
            acc: alloc::vec![0.0; mesh.len()],
            flux: alloc::vec![0.0; mesh.n_theta()],
            lb: alloc::vec![0.0; mesh.n_theta()],
        }
    }

    /// One Störmer–Verlet step of size `dt` from `state`.
    pub fn step(&mut self, state: &State, dt: f64) -> Result<State> {
        state.check(self.mesh)?;
        if !(dt > 0.0) {
            return Err(Error::Domain("time step must be positive"));
        }
        let mesh = self.mesh;
        let nt = mesh.n_theta();
        let o = mesh.outer_row();
        let half_dt = 0.5 * dt;
        let mut u = state.u.values.clone();
        let mut v = state.v_interior.values.clone();
        v[o..].copy_from_slice(&state.v_boundary.values);
        u[..nt].fill(0.0);
        v[..nt].fill(0.0);

        acceleration(mesh, &self.params, &u, &mut self.acc, &mut self.flux, &mut self.lb);
        kick(mesh, &self.params, &mut v, &self.acc, half_dt)?;
        for (x, w) in u.iter_mut().zip(&v).skip(nt) {
            *x += dt * w;
        }
        acceleration(mesh, &self.params, &u, &mut self.acc, &mut self.flux, &mut self.lb);
        kick(mesh, &self.params, &mut v, &self.acc, half_dt)?;

        let v_boundary = v[o..].to_vec();
        Ok(State {
            u: InteriorField { values: u },
            v_interior: InteriorField { values: v },
            v_boundary: crate::geometry::BoundaryTrace { values: v_boundary },
            t: state.t + dt,
        })
    }
}

/// One Störmer–Verlet step; see [`Stepper`] for repeated use.
pub fn step(mesh: &AnnulusMesh, state: &State, params: &ModelParams, dt: f64) -> Result<State> {
    Stepper::new(mesh, *params).step(state, dt)
}

fn scaled_state(mesh: &AnnulusMesh, phi: &InteriorField, lambda: f64) -> State {
    let u = InteriorField { values: phi.values.iter().map(|x| lambda * x).collect() };
    State::from_fields(mesh, u, InteriorField::zeros(mesh), 0.0).expect("profile built on this mesh")
}

/// `(λφ, 0)` with `E(λφ) = -margin` (to bisection accuracy, and never above
/// `-margin`).
pub fn negative_energy_data(mesh: &AnnulusMesh, params: &ModelParams, profile: &Profile, margin: f64) -> Result<State> {
    if params.gamma == 0.0 && params.delta == 0.0 {
        return Err(Error::Domain("no source: energy cannot be negative"));
    }
    if !(margin > 0.0) || !margin.is_finite() {
        return Err(Error::Domain("margin must be positive"));
    }
    let phi = profile.field(mesh);
    let energy_at = |lambda: f64| functionals::energy(mesh, &scaled_state(mesh, &phi, lambda), params);
    let target = -margin;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while energy_at(hi)? >= target {
        lo = hi;
        hi *= 2.0;
        if hi > 1e150 {
            return Err(Error::Domain("profile does not meet the active source: energy stays above -margin"));
        }
    }
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if energy_at(mid)? >= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(scaled_state(mesh, &phi, hi))
}

pub fn initial_state(mesh: &AnnulusMesh, params: &ModelParams, data: &InitialData) -> Result<State> {
    match *data {
        InitialData::Scaled { profile, scale } => Ok(scaled_state(mesh, &profile.field(mesh), scale)),
        InitialData::AutoNegativeEnergy { profile, margin } => negative_energy_data(mesh, params, &profile, margin),
    }
}

fn threshold_trigger(report: &EnergyReport, threshold: f64) -> Option<Trigger> {
    let phase = report.phase_norm_sq;
    if !phase.is_finite() || phase >= threshold * threshold {
        return Some(Trigger::PhaseNorm);
    }
    let lebesgue = report.lp_interior + report.lq_boundary;
    if !lebesgue.is_finite() || lebesgue >= threshold * threshold {
        return Some(Trigger::LpNorm);
    }
    None
}

fn report_for(mesh: &AnnulusMesh, state: &State, params: &ModelParams, lyap: Option<&LyapunovConfig>) -> Result<EnergyReport> {
    energy_report(mesh, state, params, lyap)
}

fn with_residual(mut report: EnergyReport, last: &EnergyReport) -> EnergyReport {
    report.identity_residual = energy_identity_residual(last, &report).unwrap_or(f64::NAN);
    report
}

/// Runs `cfg` to `t_end` or to a detected blow-up.
///
/// Steps are capped by [`source_step_limit`] (never below `dt_min`). When a
/// step ends over the threshold (or fails), it is undone and `dt` is halved; once `dt` has reached `dt_min` the crossing is reported with the
/// bracket of that last step. The reduced `dt` is kept for the rest of the run.
pub fn run(cfg: &SimConfig) -> Result<Simulation> {
    let mesh = cfg.validate()?;
    let params = cfg.params;
    let lyap = functionals::default_k(&params).ok();
    let lyap = lyap.as_ref();
    let mut state = initial_state(&mesh, &params, &cfg.initial_data)?;
    state.t = 0.0;
    let mut current = report_for(&mesh, &state, &params, lyap)?;
    let mut trajectory = alloc::vec![current];
    let mut last_emitted = current;
    let mut stepper = Stepper::new(&mesh, params);
    let mut h = cfg.dt;
    let (mut accepted, mut rejected) = (0usize, 0usize);
    let finish_tol = 1e-12 * cfg.t_end;

    let blowup = loop {
        if state.t >= cfg.t_end - finish_tol {
            if last_emitted.t < current.t {
                current = with_residual(current, &last_emitted);
                trajectory.push(current);
            }
            break BlowupReport {
                blew_up: false,
                t_detect: None,
                t_bracket: None,
                trigger: Trigger::None,
                final_report: current,
            };
        }
        let remaining = cfg.t_end - state.t;
        let h_cap = h.min(source_step_limit(&mesh, &params, &state.u.values)).max(cfg.dt_min);
        let h_step = if remaining <= h_cap * (1.0 + 1e-9) { remaining } else { h_cap };
        let at_floor = h_step <= cfg.dt_min * (1.0 + 1e-12);
        let attempt = stepper.step(&state, h_step).and_then(|next| {
            let report = report_for(&mesh, &next, &params, lyap)?;
            Ok((next, report))
        });
        let (trigger, over_report) = match attempt {
            Ok((mut next, report)) => match threshold_trigger(&report, cfg.blow_threshold) {
                None => {
                    if h_step == remaining {
                        next.t = cfg.t_end;
                    }
                    let mut report = report;
                    report.t = next.t;
                    state = next;
                    current = report;
                    accepted += 1;
                    if accepted % cfg.report_every == 0 {
                        current = with_residual(current, &last_emitted);
                        trajectory.push(current);
                        last_emitted = current;
                    }
                    continue;
                }
                Some(trigger) => (trigger, Some(report)),
            },
            Err(Error::Numerical(_)) => (Trigger::DtFloor, None),
            Err(e) => return Err(e),
        };
        rejected += 1;
        if !at_floor {
            h = (0.5 * h).max(cfg.dt_min);
            continue;
        }
        let t_hi = state.t + h_step;
        let final_report = match over_report {
            Some(r) if trigger != Trigger::DtFloor => with_residual(r, &last_emitted),
            _ => current,
        };
        if final_report.t > last_emitted.t {
            trajectory.push(final_report);
        }
        break BlowupReport {
            blew_up: true,
            t_detect: Some(t_hi),
            t_bracket: Some((state.t, t_hi)),
            trigger,
            final_report,
        };
    };
    Ok(Simulation { trajectory, blowup, accepted_steps: accepted, rejected_steps: rejected })
}

/// Trajectory of reports and the blow-up verdict of [`run`].
pub fn simulate(cfg: &SimConfig) -> Result<(Vec<EnergyReport>, BlowupReport)> {
    let sim = run(cfg)?;
    Ok((sim.trajectory, sim.blowup))
}
