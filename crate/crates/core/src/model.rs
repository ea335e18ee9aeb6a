//! Model nonlinearities of the pure-power family and their assumption checks.
//!
//! ```text
//! P(v) = α(a|v|^{m̃-2}v + |v|^{m-2}v)      Q(v) = β(b|v|^{μ̃-2}v + |v|^{μ-2}v)
//! f(u) = γ|u|^{p-2}u,  F = (γ/p)|u|^p      g(u) = δ|u|^{q-2}u,  G = (δ/q)|u|^q
//! ```

use alloc::format;

use crate::math::{powf, signed_pow};
use crate::regimes;
use crate::{Error, Result};

/// The twelve parameters of the model problem plus the space dimension.
///
/// The simulator only runs `dim = 2`; the classifier accepts any `dim ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub dim: u32,
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub m_tilde: f64,
    pub m: f64,
    pub mu_tilde: f64,
    pub mu: f64,
    pub p: f64,
    pub q: f64,
}

impl Default for ModelParams {
    /// Sourceless, undamped, planar problem with all exponents equal to 2.
    fn default() -> Self {
        Self {
            dim: 2,
            a: 0.0,
            b: 0.0,
            alpha: 0.0,
            beta: 0.0,
            gamma: 0.0,
            delta: 0.0,
            m_tilde: 2.0,
            m: 2.0,
            mu_tilde: 2.0,
            mu: 2.0,
            p: 2.0,
            q: 2.0,
        }
    }
}

/// Field names accepted by [`ModelParams::set`] and [`ModelParams::get`].
pub const FIELD_NAMES: [&str; 13] =
    ["N", "a", "b", "alpha", "beta", "gamma", "delta", "m_tilde", "m", "mu_tilde", "mu", "p", "q"];

impl ModelParams {
    /// Checks the structural constraints
    /// `a, b, α, β, γ, δ ≥ 0`, `1 < m̃ ≤ m`, `1 < μ̃ ≤ μ`, `p, q ≥ 2`, `N ≥ 2`.
    pub fn validate(&self) -> Result<()> {
        let all = [
            self.a,
            self.b,
            self.alpha,
            self.beta,
            self.gamma,
            self.delta,
            self.m_tilde,
            self.m,
            self.mu_tilde,
            self.mu,
            self.p,
            self.q,
        ];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParams("parameters must be finite".into()));
        }
        if self.dim < 2 {
            return Err(Error::InvalidParams(format!("N ≥ 2 violated (N = {})", self.dim)));
        }
        for (name, v) in [
            ("a", self.a),
            ("b", self.b),
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("gamma", self.gamma),
            ("delta", self.delta),
        ] {
            if v < 0.0 {
                return Err(Error::InvalidParams(format!("{name} ≥ 0 violated ({name} = {v})")));
            }
        }
        if self.m_tilde <= 1.0 {
            return Err(Error::InvalidParams(format!("1 < m_tilde violated (m_tilde = {})", self.m_tilde)));
        }
        if self.m_tilde > self.m {
            return Err(Error::InvalidParams(format!("m_tilde ≤ m violated ({} > {})", self.m_tilde, self.m)));
        }
        if self.mu_tilde <= 1.0 {
            return Err(Error::InvalidParams(format!("1 < mu_tilde violated (mu_tilde = {})", self.mu_tilde)));
        }
        if self.mu_tilde > self.mu {
            return Err(Error::InvalidParams(format!("mu_tilde ≤ mu violated ({} > {})", self.mu_tilde, self.mu)));
        }
        if self.p < 2.0 {
            return Err(Error::InvalidParams(format!("p ≥ 2 violated (p = {})", self.p)));
        }
        if self.q < 2.0 {
            return Err(Error::InvalidParams(format!("q ≥ 2 violated (q = {})", self.q)));
        }
        Ok(())
    }

    /// Reads a parameter by name (`N` is returned as a float).
    pub fn get(&self, name: &str) -> Option<f64> {
        Some(match name {
            "N" => self.dim as f64,
            "a" => self.a,
            "b" => self.b,
            "alpha" => self.alpha,
            "beta" => self.beta,
            "gamma" => self.gamma,
            "delta" => self.delta,
            "m_tilde" => self.m_tilde,
            "m" => self.m,
            "mu_tilde" => self.mu_tilde,
            "mu" => self.mu,
            "p" => self.p,
            "q" => self.q,
            _ => return None,
        })
    }

    /// Writes a parameter by name. `N` must be a whole number.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        let slot = match name {
            "N" => {
                if libm::trunc(value) != value || value < 0.0 || value > u32::MAX as f64 {
                    return Err(Error::InvalidParams(format!("N must be a non-negative integer, got {value}")));
                }
                self.dim = value as u32;
                return Ok(());
            }
            "a" => &mut self.a,
            "b" => &mut self.b,
            "alpha" => &mut self.alpha,
            "beta" => &mut self.beta,
            "gamma" => &mut self.gamma,
            "delta" => &mut self.delta,
            "m_tilde" => &mut self.m_tilde,
            "m" => &mut self.m,
            "mu_tilde" => &mut self.mu_tilde,
            "mu" => &mut self.mu,
            "p" => &mut self.p,
            "q" => &mut self.q,
            _ => return Err(Error::InvalidParams(format!("unknown parameter `{name}`"))),
        };
        *slot = value;
        Ok(())
    }

    pub fn damping_p(&self, v: f64) -> f64 {
        damping_p(self, v)
    }

    pub fn damping_q(&self, v: f64) -> f64 {
        damping_q(self, v)
    }
}

/// Interior damping `P(v) = α(a|v|^{m̃-2}v + |v|^{m-2}v)`.
pub fn damping_p(params: &ModelParams, v: f64) -> f64 {
    if params.alpha == 0.0 {
        return 0.0;
    }
    let low = if params.a == 0.0 { 0.0 } else { params.a * signed_pow(v, params.m_tilde) };
    params.alpha * (low + signed_pow(v, params.m))
}

/// Boundary damping `Q(v) = β(b|v|^{μ̃-2}v + |v|^{μ-2}v)`.
pub fn damping_q(params: &ModelParams, v: f64) -> f64 {
    if params.beta == 0.0 {
        return 0.0;
    }
    let low = if params.b == 0.0 { 0.0 } else { params.b * signed_pow(v, params.mu_tilde) };
    params.beta * (low + signed_pow(v, params.mu))
}

/// `dP/dv`; infinite at `v = 0` when an active exponent lies in `(1, 2)`.
pub(crate) fn damping_p_derivative(params: &ModelParams, v: f64) -> f64 {
    power_pair_derivative(params.alpha, params.a, params.m_tilde, params.m, v)
}

pub(crate) fn damping_q_derivative(params: &ModelParams, v: f64) -> f64 {
    power_pair_derivative(params.beta, params.b, params.mu_tilde, params.mu, v)
}

fn power_pair_derivative(weight: f64, low_weight: f64, low: f64, high: f64, v: f64) -> f64 {
    if weight == 0.0 {
        return 0.0;
    }
    let x = v.abs();
    let term = |e: f64| (e - 1.0) * powf(x, e - 2.0);
    let low_part = if low_weight == 0.0 { 0.0 } else { low_weight * term(low) };
    weight * (low_part + term(high))
}

/// Interior source `f(u) = γ|u|^{p-2}u`.
pub fn source_f(params: &ModelParams, u: f64) -> f64 {
    if params.gamma == 0.0 {
        return 0.0;
    }
    params.gamma * signed_pow(u, params.p)
}

/// Boundary source `g(u) = δ|u|^{q-2}u`.
pub fn source_g(params: &ModelParams, u: f64) -> f64 {
    if params.delta == 0.0 {
        return 0.0;
    }
    params.delta * signed_pow(u, params.q)
}

/// `F(u) = (γ/p)|u|^p`.
pub fn primitive_f(params: &ModelParams, u: f64) -> f64 {
    if params.gamma == 0.0 {
        return 0.0;
    }
    params.gamma / params.p * powf(u.abs(), params.p)
}

/// `G(u) = (δ/q)|u|^q`.
pub fn primitive_g(params: &ModelParams, u: f64) -> f64 {
    if params.delta == 0.0 {
        return 0.0;
    }
    params.delta / params.q * powf(u.abs(), params.q)
}

/// Constants `c'` of the structural bound `|P(v)| ≤ c'[(Pv)^{1/m'} + (Pv)^{1/m̃'}]`
/// for the interior and boundary damping, built from the growth bound
/// `|P(v)| ≤ c_m α(|v|^{m̃-1} + |v|^{m-1})` with `c_m = max{a, 1}`.
pub fn structural_constants(params: &ModelParams) -> (f64, f64) {
    let build = |weight: f64, low_weight: f64, low: f64, high: f64| {
        let c = 2.0 * low_weight.max(1.0) * weight;
        powf(c, 1.0 / high).max(powf(c, 1.0 / low))
    };
    (
        build(params.alpha, params.a, params.m_tilde, params.m),
        build(params.beta, params.b, params.mu_tilde, params.mu),
    )
}

/// Outcome of the assumption checks specialised to the model family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssumptionReport {
    /// (A1)–(A5): structural constraints together with the well-posedness
    /// condition on the source exponents.
    pub a1: bool,
    pub a2: bool,
    pub a3: bool,
    pub a4: bool,
    pub a5: bool,
    /// (A6), which for pure powers is the uniqueness condition on `p`, `q`.
    pub a6: bool,
    /// (F1): `γ > 0` and `p > 2`.
    pub f1: bool,
    /// (G1): `δ > 0` and `q > 2`.
    pub g1: bool,
    /// (G2): `q > 2` (with `δ ≥ 0`).
    pub g2: bool,
    pub gamma0: f64,
    pub gamma1: f64,
    pub delta0: f64,
    pub delta1: f64,
    pub q_bar: f64,
    /// Alternatives under which the two-source blow-up statement holds with
    /// `lim` rather than `limsup`: `N ≤ 4`; `N = 5 ∧ p ≤ 1 + r_Ω/2`;
    /// `N ≥ 6 ∧ p ≤ 1 + r_Ω/2 ∧ q ≤ 1 + r_Γ/2`. Reported as printed,
    /// without choosing among them.
    pub lim_alternatives: [bool; 3],
}

pub fn check_assumptions(params: &ModelParams) -> Result<AssumptionReport> {
    params.validate()?;
    let wellposed = regimes::wellposed_ok(params);
    let f1 = params.gamma > 0.0 && params.p > 2.0;
    let g1 = params.delta > 0.0 && params.q > 2.0;
    let g2 = params.q > 2.0;
    let crit = regimes::critical_exponents(params.dim)?;
    let half_omega = crit.r_omega.plus_half();
    let half_gamma = crit.r_gamma.plus_half();
    let n = params.dim;
    Ok(AssumptionReport {
        a1: wellposed,
        a2: wellposed,
        a3: wellposed,
        a4: wellposed,
        a5: wellposed,
        a6: regimes::uniqueness_ok(params),
        f1,
        g1,
        g2,
        gamma0: if f1 { params.gamma * (1.0 - 2.0 / params.p) } else { 0.0 },
        gamma1: 0.0,
        delta0: if g1 { params.delta * (1.0 - 2.0 / params.q) } else { 0.0 },
        delta1: 0.0,
        q_bar: if g2 { params.q } else { 0.0 },
        lim_alternatives: [
            n <= 4,
            n == 5 && half_omega.ge_real(params.p),
            n >= 6 && half_omega.ge_real(params.p) && half_gamma.ge_real(params.q),
        ],
    })
}
