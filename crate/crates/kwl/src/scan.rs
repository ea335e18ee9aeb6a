//! Two-parameter verdict grids.

use std::io::Write;

use kwl_core::model::FIELD_NAMES;
use kwl_core::regimes::classify;
use kwl_core::solver::{run, MAX_CFL};
use kwl_core::{Conclusion, InitialData, MeshSpec, ModelParams, Profile, RadialShape, SimConfig};
use rayon::prelude::*;

use crate::output::csv_float;
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl Axis {
    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.steps {
            self.hi
        } else {
            self.lo + (self.hi - self.lo) * i as f64 / (self.steps - 1) as f64
        }
    }
}

impl std::str::FromStr for Axis {
    type Err = CliError;

    /// `name:lo:hi:steps`
    fn from_str(s: &str) -> Result<Self, CliError> {
        let bad = || CliError::Invalid(format!("axis `{s}`: expected name:lo:hi:steps"));
        let parts: Vec<&str> = s.split(':').collect();
        let [name, lo, hi, steps] = parts[..] else { return Err(bad()) };
        Ok(Axis {
            name: name.to_string(),
            lo: lo.parse().map_err(|_| bad())?,
            hi: hi.parse().map_err(|_| bad())?,
            steps: steps.parse().map_err(|_| bad())?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanMode {
    ClassifyOnly,
    ClassifyAndSimulate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanSpec {
    pub base: ModelParams,
    /// Whether `m_tilde` (resp. `mu_tilde`) tracks `m` (resp. `mu`) in every cell.
    pub tie_tildes: (bool, bool),
    pub axis1: Axis,
    pub axis2: Axis,
    pub mode: ScanMode,
}

/// Blow-up threshold for simulated cells.
pub const CELL_BLOW_THRESHOLD: f64 = 1e4;

/// Short run used for simulated cells.
pub fn cell_sim_config(params: ModelParams) -> SimConfig {
    let mesh = MeshSpec { r_inner: 1.0, r_outer: 1.5, n_r: 17, n_theta: 32 };
    let dt = 0.4 / MAX_CFL * kwl_core::solver::cfl_limit(&mesh.build().expect("fixed mesh"));
    let data = InitialData::AutoNegativeEnergy {
        profile: Profile { radial: RadialShape::Linear, angular_mode: 0 },
        margin: 1.0,
    };
    let mut cfg = SimConfig::new(params, mesh, dt, 10.0, data);
    cfg.blow_threshold = CELL_BLOW_THRESHOLD;
    cfg.report_every = usize::MAX;
    cfg
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub x1: f64,
    pub x2: f64,
    pub verdict: String,
    pub fired: String,
    /// `(blew_up, t_detect)` for simulated cells.
    pub simulated: Option<Result<(bool, Option<f64>), String>>,
}

impl ScanSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        for axis in [&self.axis1, &self.axis2] {
            if !FIELD_NAMES.contains(&axis.name.as_str()) {
                return Err(CliError::Invalid(format!(
                    "axis `{}` is not a parameter (expected one of {})",
                    axis.name,
                    FIELD_NAMES.join(", ")
                )));
            }
            if axis.steps < 2 {
                return Err(CliError::Invalid(format!("axis `{}`: steps must be ≥ 2", axis.name)));
            }
            if !axis.lo.is_finite() || !axis.hi.is_finite() {
                return Err(CliError::Invalid(format!("axis `{}`: bounds must be finite", axis.name)));
            }
        }
        if self.axis1.name == self.axis2.name {
            return Err(CliError::Invalid("axes must name distinct parameters".into()));
        }
        Ok(())
    }

    pub fn cell_params(&self, x1: f64, x2: f64) -> Result<ModelParams, String> {
        let mut p = self.base;
        for (axis, x) in [(&self.axis1, x1), (&self.axis2, x2)] {
            p.set(&axis.name, x).map_err(|e| e.to_string())?;
        }
        let touched = |n: &str| self.axis1.name == n || self.axis2.name == n;
        if self.tie_tildes.0 && !touched("m_tilde") {
            p.m_tilde = p.m;
        }
        if self.tie_tildes.1 && !touched("mu_tilde") {
            p.mu_tilde = p.mu;
        }
        Ok(p)
    }

    fn cell(&self, i: usize, j: usize) -> Cell {
        let (x1, x2) = (self.axis1.value(i), self.axis2.value(j));
        let verdict = self.cell_params(x1, x2).and_then(|p| classify(&p).map(|v| (p, v)).map_err(|e| e.to_string()));
        match verdict {
            Err(msg) => Cell { x1, x2, verdict: "Invalid".into(), fired: msg, simulated: None },
            Ok((params, v)) => {
                let simulated = (self.mode == ScanMode::ClassifyAndSimulate
                    && v.conclusion == Conclusion::BlowsUpForNegativeEnergy
                    && params.dim == 2)
                    .then(|| {
                        run(&cell_sim_config(params))
                            .map(|sim| (sim.blowup.blew_up, sim.blowup.t_detect))
                            .map_err(|e| e.to_string())
                    });
                Cell { x1, x2, verdict: v.conclusion.as_str().into(), fired: v.fired, simulated }
            }
        }
    }

    /// Cells in row-major order (`axis1` outer).
    pub fn run(&self) -> Result<Vec<Cell>, CliError> {
        self.validate()?;
        let n2 = self.axis2.steps;
        Ok((0..self.axis1.steps * n2).into_par_iter().map(|k| self.cell(k / n2, k % n2)).collect())
    }

    pub fn write_csv<W: Write>(&self, out: W, cells: &[Cell]) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec![self.axis1.name.as_str(), self.axis2.name.as_str(), "verdict", "fired"];
        if self.mode == ScanMode::ClassifyAndSimulate {
            header.extend(["blew_up", "t_detect"]);
        }
        w.write_record(&header)?;
        for c in cells {
            let mut row = vec![csv_float(c.x1), csv_float(c.x2), c.verdict.clone(), c.fired.clone()];
            if self.mode == ScanMode::ClassifyAndSimulate {
                let (b, t) = match &c.simulated {
                    None => (String::new(), String::new()),
                    Some(Ok((b, t))) => (b.to_string(), t.map(csv_float).unwrap_or_default()),
                    Some(Err(msg)) => (format!("error: {msg}"), String::new()),
                };
                row.extend([b, t]);
            }
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Threads for scans: `KWL_THREADS` when set, machine parallelism otherwise.
pub fn thread_count() -> Result<usize, CliError> {
    match std::env::var("KWL_THREADS") {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(CliError::Invalid(format!("KWL_THREADS must be a positive integer, got `{s}`"))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

/// Runs `spec` on a dedicated pool of `threads` workers.
pub fn run_with_threads(spec: &ScanSpec, threads: usize) -> Result<Vec<Cell>, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Numerical(format!("thread pool: {e}")))?;
    pool.install(|| spec.run())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(a1: &str, a2: &str) -> ScanSpec {
        ScanSpec {
            base: ModelParams { dim: 3, gamma: 1.0, alpha: 1.0, ..ModelParams::default() },
            tie_tildes: (true, true),
            axis1: a1.parse().unwrap(),
            axis2: a2.parse().unwrap(),
            mode: ScanMode::ClassifyOnly,
        }
    }

    #[test]
    fn minimal_grid_has_four_rows() {
        let cells = spec("p:2:6:2", "m:2:6:2").run().unwrap();
        assert_eq!(cells.len(), 4);
        assert_eq!((cells[1].x1, cells[1].x2), (2.0, 6.0));
        assert_eq!((cells[2].x1, cells[2].x2), (6.0, 2.0));
    }

    #[test]
    fn cells_agree_with_direct_classification() {
        let s = spec("p:2:6:21", "m:2:6:21");
        for c in s.run().unwrap() {
            let p = ModelParams { p: c.x1, m: c.x2, m_tilde: c.x2, ..s.base };
            let v = classify(&p).unwrap();
            assert_eq!(c.verdict, v.conclusion.as_str());
            assert_eq!(c.fired, v.fired);
        }
    }

    #[test]
    fn rejects_bad_axes() {
        assert!(spec("p:2:6:4", "zeta:2:6:4").run().is_err());
        assert!(spec("p:2:6:1", "m:2:6:4").run().is_err());
        assert!(spec("p:2:6:4", "p:2:6:4").run().is_err());
        assert!("p:2:6".parse::<Axis>().is_err());
    }
}
