//! Numerical core for the damped wave equation with kinetic (dynamical
//! Wentzell) boundary conditions:
//!
//! ```text
//! u_tt - Δu + α(a|u_t|^{m̃-2}u_t + |u_t|^{m-2}u_t) = γ|u|^{p-2}u    in Ω
//! u = 0                                                              on Γ₀
//! u_tt + ∂_ν u - Δ_Γ u + β(b|u_t|^{μ̃-2}u_t + |u_t|^{μ-2}u_t) = δ|u|^{q-2}u  on Γ₁
//! ```
//!
//! The crate is `no_std` (it only needs `alloc`). It contains
//!
//! * [`geometry`]: the annulus mesh (Γ₀ inner circle, Γ₁ outer circle),
//!   quadratures and discrete operators,
//! * [`model`]: damping/source nonlinearities and assumption checks,
//! * [`regimes`]: the exponent algebra and the global-existence / blow-up
//!   classifier,
//! * [`functionals`]: energy, potential, Lyapunov functional and the discrete
//!   energy identity,
//! * [`oracle`]: blow-up time of the comparison ODE `y' = |y|^l - c`,
//! * [`solver`]: Störmer–Verlet time stepping with pointwise-implicit damping
//!   and blow-up detection.
#![no_std]

#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
mod math;

pub mod functionals;
pub mod geometry;
pub mod model;
pub mod oracle;
pub mod quadrature;
pub mod regimes;
pub mod solver;

pub use error::Error;
pub use functionals::{EnergyReport, LyapunovConfig};
pub use geometry::{AnnulusMesh, BoundaryTrace, InteriorField};
pub use model::{AssumptionReport, ModelParams};
pub use oracle::OdeProblem;
pub use regimes::{Conclusion, CriticalExponent, CriticalExponents, RegimeVerdict};
pub use solver::{BlowupReport, InitialData, MeshSpec, Profile, RadialShape, SimConfig, State, Trigger};

pub type Result<T, E = Error> = core::result::Result<T, E>;
