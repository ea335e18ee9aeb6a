//! Energy, potential and Lyapunov functionals evaluated on discrete states.
//!
//! ```text
//! J(u) = ∫_Ω F(u) + ∫_Γ₁ G(u)
//! E(u, u') = ½‖u'‖²_{H⁰} + ½∫_Ω |∇u|² + ½∫_Γ₁ |∇_Γ u|² - J(u),    K = -E
//! Z = K^{1-k} + ω (u', u)_{H⁰}
//! ```

use crate::geometry::{AnnulusMesh, BoundaryTrace, InteriorField};
use crate::math::{powf, sqrt};
use crate::model::{damping_p, damping_q, primitive_f, primitive_g, ModelParams};
use crate::{Error, Result};

/// Phase-space point `(u, u')` at time `t`. On `Γ₁` the velocity is stored
/// twice: as the outer row of `v_interior` and as `v_boundary`, which must agree.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    pub u: InteriorField,
    pub v_interior: InteriorField,
    pub v_boundary: BoundaryTrace,
    pub t: f64,
}

impl State {
    pub fn zeros(mesh: &AnnulusMesh) -> Self {
        Self {
            u: InteriorField::zeros(mesh),
            v_interior: InteriorField::zeros(mesh),
            v_boundary: BoundaryTrace::zeros(mesh),
            t: 0.0,
        }
    }

    /// State with displacement `u`, velocity `v` and the boundary velocity
    /// taken from the outer row of `v`.
    pub fn from_fields(mesh: &AnnulusMesh, u: InteriorField, v: InteriorField, t: f64) -> Result<Self> {
        mesh.check_field(&u)?;
        let v_boundary = mesh.trace(&v)?;
        Ok(Self { u, v_interior: v, v_boundary, t })
    }

    pub fn check(&self, mesh: &AnnulusMesh) -> Result<()> {
        mesh.check_field(&self.u)?;
        mesh.check_field(&self.v_interior)?;
        mesh.check_trace(&self.v_boundary)
    }

    /// Largest mismatch between `v_boundary` and the outer row of `v_interior`.
    pub fn trace_mismatch(&self, mesh: &AnnulusMesh) -> f64 {
        let o = mesh.outer_row();
        self.v_boundary
            .values
            .iter()
            .zip(&self.v_interior.values[o..])
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.u.values.iter().chain(&self.v_interior.values).all(|x| x.is_finite())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovConfig {
    pub k: f64,
    pub omega: f64,
    /// `min{k₁, k₂}` over the active damping terms, if any.
    pub k_bar: Option<f64>,
}

/// One row of the functional log.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyReport {
    pub t: f64,
    /// `∫_Ω |u|^p`.
    pub lp_interior: f64,
    /// `∫_Γ₁ |u|^q`.
    pub lq_boundary: f64,
    pub grad_omega: f64,
    pub grad_gamma: f64,
    pub kinetic: f64,
    pub phase_norm_sq: f64,
    pub j: f64,
    pub e: f64,
    pub k: f64,
    pub z: Option<f64>,
    pub dissipation_rate: f64,
    pub identity_residual: f64,
}

impl EnergyReport {
    pub const COLUMNS: [&'static str; 13] = [
        "t",
        "lp_interior",
        "lq_boundary",
        "grad_omega",
        "grad_gamma",
        "kinetic",
        "phase_norm_sq",
        "J",
        "E",
        "K",
        "Z",
        "dissipation_rate",
        "identity_residual",
    ];

    /// Values in [`COLUMNS`](Self::COLUMNS) order.
    pub fn values(&self) -> [Option<f64>; 13] {
        [
            Some(self.t),
            Some(self.lp_interior),
            Some(self.lq_boundary),
            Some(self.grad_omega),
            Some(self.grad_gamma),
            Some(self.kinetic),
            Some(self.phase_norm_sq),
            Some(self.j),
            Some(self.e),
            Some(self.k),
            self.z,
            Some(self.dissipation_rate),
            Some(self.identity_residual),
        ]
    }

    pub fn phase_norm(&self) -> f64 {
        sqrt(self.phase_norm_sq.max(0.0))
    }
}

fn interior_sum(mesh: &AnnulusMesh, values: &[f64], f: impl Fn(f64) -> f64) -> f64 {
    values.iter().zip(mesh.interior_weights()).map(|(&x, w)| w * f(x)).sum()
}

fn boundary_sum(mesh: &AnnulusMesh, values: &[f64], f: impl Fn(f64) -> f64) -> f64 {
    values.iter().zip(mesh.boundary_weights()).map(|(&x, w)| w * f(x)).sum()
}

fn outer<'a>(mesh: &AnnulusMesh, field: &'a InteriorField) -> &'a [f64] {
    &field.values[mesh.outer_row()..]
}

/// `J(u) = ∫_Ω F(u) + ∫_Γ₁ G(u)`.
pub fn potential_j(mesh: &AnnulusMesh, state: &State, params: &ModelParams) -> Result<f64> {
    state.check(mesh)?;
    let interior = interior_sum(mesh, &state.u.values, |u| primitive_f(params, u));
    let boundary = boundary_sum(mesh, outer(mesh, &state.u), |u| primitive_g(params, u));
    Ok(interior + boundary)
}

/// `‖u'‖²_{H⁰} = ∫_Ω |u_t|² + ∫_Γ₁ |u_t|²`.
pub fn kinetic(mesh: &AnnulusMesh, state: &State) -> Result<f64> {
    state.check(mesh)?;
    let v = &state.v_interior.values;
    Ok(interior_sum(mesh, v, |x| x * x) + boundary_sum(mesh, &state.v_boundary.values, |x| x * x))
}

/// `(u', u)_{H⁰}`.
pub fn velocity_inner_displacement(mesh: &AnnulusMesh, state: &State) -> Result<f64> {
    state.check(mesh)?;
    let interior: f64 = state
        .v_interior
        .values
        .iter()
        .zip(&state.u.values)
        .zip(mesh.interior_weights())
        .map(|((v, u), w)| w * v * u)
        .sum();
    let boundary: f64 = state
        .v_boundary
        .values
        .iter()
        .zip(outer(mesh, &state.u))
        .zip(mesh.boundary_weights())
        .map(|((v, u), w)| w * v * u)
        .sum();
    Ok(interior + boundary)
}

fn gradient_terms(mesh: &AnnulusMesh, u: &InteriorField) -> Result<(f64, f64)> {
    let omega = mesh.integrate_interior(&mesh.gradient_sq(u)?)?;
    let gamma = mesh.integrate_boundary(&mesh.tangential_gradient_sq(&mesh.trace(u)?)?)?;
    Ok((omega, gamma))
}

/// Energy `E`.
pub fn energy(mesh: &AnnulusMesh, state: &State, params: &ModelParams) -> Result<f64> {
    let kin = kinetic(mesh, state)?;
    let (g_omega, g_gamma) = gradient_terms(mesh, &state.u)?;
    let j = potential_j(mesh, state, params)?;
    Ok(0.5 * kin + 0.5 * (g_omega + g_gamma) - j)
}

/// `K = -E`.
pub fn auxiliary_k(mesh: &AnnulusMesh, state: &State, params: &ModelParams) -> Result<f64> {
    Ok(-energy(mesh, state, params)?)
}

fn z_from(k_value: f64, pairing: f64, cfg: &LyapunovConfig) -> Result<f64> {
    if !(k_value > 0.0) {
        return Err(Error::Domain("Z undefined: energy not negative"));
    }
    Ok(powf(k_value, 1.0 - cfg.k) + cfg.omega * pairing)
}

/// `Z = K^{1-k} + ω(u', u)_{H⁰}`, defined only when `K > 0`.
pub fn lyapunov_z(mesh: &AnnulusMesh, state: &State, params: &ModelParams, cfg: &LyapunovConfig) -> Result<f64> {
    let k_value = auxiliary_k(mesh, state, params)?;
    z_from(k_value, velocity_inner_displacement(mesh, state)?, cfg)
}

/// `k₀ = min{k̄, ½ - 1/p, ½ - 1/q}` with `ω = 1`.
///
/// `k̄` collects `k₁ = 1/m - 1/p` (interior damping against the interior
/// source) and `k₂ = 1/μ - 1/p` (boundary damping; `1/q` replaces `1/p`
/// when there is no interior source). Only active terms enter the minimum.
pub fn default_k(params: &ModelParams) -> Result<LyapunovConfig> {
    let no_exponent = Error::Domain("no admissible Lyapunov exponent");
    let interior = params.gamma > 0.0;
    let boundary = params.delta > 0.0;
    if !interior && !boundary {
        return Err(no_exponent);
    }
    let reference = if interior { params.p } else { params.q };
    let mut k_bar: Option<f64> = None;
    let fold = |slot: &mut Option<f64>, x: f64| *slot = Some(slot.map_or(x, |y: f64| y.min(x)));
    if params.alpha > 0.0 && interior {
        fold(&mut k_bar, 1.0 / params.m - 1.0 / params.p);
    }
    if params.beta > 0.0 {
        fold(&mut k_bar, 1.0 / params.mu - 1.0 / reference);
    }
    let mut k0 = k_bar;
    if interior {
        fold(&mut k0, 0.5 - 1.0 / params.p);
    }
    if boundary {
        fold(&mut k0, 0.5 - 1.0 / params.q);
    }
    match k0 {
        Some(k) if k > 0.0 => Ok(LyapunovConfig { k, omega: 1.0, k_bar }),
        _ => Err(no_exponent),
    }
}

/// `∫_Ω P(u_t)u_t + ∫_Γ₁ Q(u_t)u_t`.
pub fn dissipation_rate(mesh: &AnnulusMesh, state: &State, params: &ModelParams) -> Result<f64> {
    state.check(mesh)?;
    let interior = interior_sum(mesh, &state.v_interior.values, |v| damping_p(params, v) * v);
    let boundary = boundary_sum(mesh, &state.v_boundary.values, |v| damping_q(params, v) * v);
    Ok(interior + boundary)
}

/// Evaluates every functional at `state`. `Z` is filled only when `cfg` is
/// given and `K > 0`; `identity_residual` is left at 0.
pub fn energy_report(
    mesh: &AnnulusMesh,
    state: &State,
    params: &ModelParams,
    cfg: Option<&LyapunovConfig>,
) -> Result<EnergyReport> {
    state.check(mesh)?;
    let u = &state.u.values;
    let lp_interior = interior_sum(mesh, u, |x| powf(x.abs(), params.p));
    let lq_boundary = boundary_sum(mesh, outer(mesh, &state.u), |x| powf(x.abs(), params.q));
    let (grad_omega, grad_gamma) = gradient_terms(mesh, &state.u)?;
    let kin = kinetic(mesh, state)?;
    let trace_sq = boundary_sum(mesh, outer(mesh, &state.u), |x| x * x);
    let j = potential_j(mesh, state, params)?;
    let e = 0.5 * kin + 0.5 * (grad_omega + grad_gamma) - j;
    let k = -e;
    let z = match cfg {
        Some(cfg) if k > 0.0 => Some(z_from(k, velocity_inner_displacement(mesh, state)?, cfg)?),
        _ => None,
    };
    Ok(EnergyReport {
        t: state.t,
        lp_interior,
        lq_boundary,
        grad_omega,
        grad_gamma,
        kinetic: kin,
        phase_norm_sq: kin + grad_omega + grad_gamma + trace_sq,
        j,
        e,
        k,
        z,
        dissipation_rate: dissipation_rate(mesh, state, params)?,
        identity_residual: 0.0,
    })
}

/// Defect of the energy identity between two reports,
/// `E_next - E_prev + Δt (d_prev + d_next) / 2`.
pub fn energy_identity_residual(prev: &EnergyReport, next: &EnergyReport) -> Result<f64> {
    let dt = next.t - prev.t;
    if !(dt > 0.0) {
        return Err(Error::Domain("energy identity needs increasing times"));
    }
    Ok(next.e - prev.e + 0.5 * dt * (prev.dissipation_rate + next.dissipation_rate))
}
