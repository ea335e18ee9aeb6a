//! JSON documents for model parameters and simulation configs.

use std::path::Path;

use kwl_core::solver::cfl_limit;
use kwl_core::{InitialData, MeshSpec, ModelParams, Profile, RadialShape, SimConfig};
use serde::Deserialize;

use crate::CliError;

/// Model parameters as written in a config. Missing fields take the
/// [`ModelParams::default`] values, except `m_tilde`/`mu_tilde`, which
/// default to `m`/`mu`.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsDoc {
    #[serde(rename = "N")]
    pub dim: Option<u32>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
    pub delta: Option<f64>,
    pub m_tilde: Option<f64>,
    pub m: Option<f64>,
    pub mu_tilde: Option<f64>,
    pub mu: Option<f64>,
    pub p: Option<f64>,
    pub q: Option<f64>,
}

impl ParamsDoc {
    /// Whether `m_tilde` follows `m` (it was not given explicitly).
    pub fn ties(&self) -> (bool, bool) {
        (self.m_tilde.is_none(), self.mu_tilde.is_none())
    }

    pub fn resolve(&self) -> ModelParams {
        let d = ModelParams::default();
        let m = self.m.unwrap_or(d.m);
        let mu = self.mu.unwrap_or(d.mu);
        ModelParams {
            dim: self.dim.unwrap_or(d.dim),
            a: self.a.unwrap_or(d.a),
            b: self.b.unwrap_or(d.b),
            alpha: self.alpha.unwrap_or(d.alpha),
            beta: self.beta.unwrap_or(d.beta),
            gamma: self.gamma.unwrap_or(d.gamma),
            delta: self.delta.unwrap_or(d.delta),
            m_tilde: self.m_tilde.unwrap_or(m),
            m,
            mu_tilde: self.mu_tilde.unwrap_or(mu),
            mu,
            p: self.p.unwrap_or(d.p),
            q: self.q.unwrap_or(d.q),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshDoc {
    pub r_inner: f64,
    pub r_outer: f64,
    pub n_r: usize,
    pub n_theta: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileDoc {
    pub radial: String,
    #[serde(default)]
    pub angular_mode: u32,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialDataDoc {
    Scaled { profile: ProfileDoc, scale: f64 },
    AutoNegativeEnergy { profile: ProfileDoc, margin: f64 },
}

/// A simulation config. Exactly one of `dt` and `cfl` must be given; `cfl`
/// sets `dt = cfl · min(Δr, r_inner Δθ)`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimDoc {
    #[serde(default)]
    pub params: ParamsDoc,
    pub mesh: MeshDoc,
    pub dt: Option<f64>,
    pub cfl: Option<f64>,
    pub t_end: f64,
    pub blow_threshold: Option<f64>,
    pub dt_min: Option<f64>,
    pub initial_data: InitialDataDoc,
    pub report_every: Option<usize>,
}

fn profile(doc: &ProfileDoc) -> Result<Profile, CliError> {
    let radial = RadialShape::from_name(&doc.radial).ok_or_else(|| {
        CliError::Invalid(format!(
            "initial_data.profile.radial: unknown shape `{}` (expected linear, quadratic, sine or quarter_sine)",
            doc.radial
        ))
    })?;
    Ok(Profile { radial, angular_mode: doc.angular_mode })
}

impl SimDoc {
    pub fn to_config(&self) -> Result<SimConfig, CliError> {
        let mesh = MeshSpec {
            r_inner: self.mesh.r_inner,
            r_outer: self.mesh.r_outer,
            n_r: self.mesh.n_r,
            n_theta: self.mesh.n_theta,
        };
        let dt = match (self.dt, self.cfl) {
            (Some(dt), None) => dt,
            (None, Some(cfl)) => {
                let built = mesh.build().map_err(|e| CliError::Invalid(format!("mesh: {e}")))?;
                cfl / kwl_core::solver::MAX_CFL * cfl_limit(&built)
            }
            _ => return Err(CliError::Invalid("exactly one of `dt` and `cfl` must be given".into())),
        };
        let initial_data = match &self.initial_data {
            InitialDataDoc::Scaled { profile: p, scale } => InitialData::Scaled { profile: profile(p)?, scale: *scale },
            InitialDataDoc::AutoNegativeEnergy { profile: p, margin } => {
                InitialData::AutoNegativeEnergy { profile: profile(p)?, margin: *margin }
            }
        };
        let mut cfg = SimConfig::new(self.params.resolve(), mesh, dt, self.t_end, initial_data);
        if let Some(x) = self.blow_threshold {
            cfg.blow_threshold = x;
        }
        if let Some(x) = self.dt_min {
            cfg.dt_min = x;
        }
        if let Some(x) = self.report_every {
            cfg.report_every = x;
        }
        cfg.validate().map_err(|e| CliError::Invalid(e.to_string()))?;
        Ok(cfg)
    }
}

pub fn parse_sim(text: &str) -> Result<SimConfig, CliError> {
    let doc: SimDoc = serde_json::from_str(text).map_err(|e| CliError::Invalid(format!("config: {e}")))?;
    doc.to_config()
}

pub fn load_sim(path: &Path) -> Result<SimConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))?;
    parse_sim(&text)
}

pub fn load_params(path: &Path) -> Result<ParamsDoc, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("params: {e}")))
}
