//! Exponent algebra and the global-existence / blow-up classifier.
//!
//! All conditions are evaluated with the inequalities exactly as stated
//! (`≤` for the global-existence and well-posedness bounds, `<`/`>` for the
//! blow-up ranges), so parameter ties fall on the printed side.

use alloc::format;
use alloc::string::String;

use crate::model::ModelParams;
use crate::{Error, Result};

/// A Sobolev critical exponent; `Infinite` compares greater than every real.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CriticalExponent {
    Finite(f64),
    Infinite,
}

impl CriticalExponent {
    pub fn value(self) -> f64 {
        match self {
            CriticalExponent::Finite(x) => x,
            CriticalExponent::Infinite => f64::INFINITY,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, CriticalExponent::Infinite)
    }

    /// `1 + r/2`.
    pub fn plus_half(self) -> Self {
        self.one_plus_over(2.0)
    }

    /// `1 + r/d` for a finite positive `d`.
    pub fn one_plus_over(self, d: f64) -> Self {
        match self {
            CriticalExponent::Finite(r) => CriticalExponent::Finite(1.0 + r / d),
            CriticalExponent::Infinite => CriticalExponent::Infinite,
        }
    }

    /// `self ≥ x`.
    pub fn ge_real(self, x: f64) -> bool {
        match self {
            CriticalExponent::Finite(r) => r >= x,
            CriticalExponent::Infinite => true,
        }
    }

    /// `self > x`.
    pub fn gt_real(self, x: f64) -> bool {
        match self {
            CriticalExponent::Finite(r) => r > x,
            CriticalExponent::Infinite => true,
        }
    }
}

/// Critical exponents of the embeddings of `H¹(Ω)` and `H¹(Γ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalExponents {
    pub r_omega: CriticalExponent,
    pub r_gamma: CriticalExponent,
}

/// `r_Ω = 2N/(N-2)` (∞ for `N = 2`), `r_Γ = 2(N-1)/(N-3)` (∞ for `N ≤ 3`).
pub fn critical_exponents(dim: u32) -> Result<CriticalExponents> {
    if dim < 2 {
        return Err(Error::InvalidParams(format!("N ≥ 2 violated (N = {dim})")));
    }
    let n = dim as f64;
    let r_omega = if dim >= 3 { CriticalExponent::Finite(2.0 * n / (n - 2.0)) } else { CriticalExponent::Infinite };
    let r_gamma =
        if dim >= 4 { CriticalExponent::Finite(2.0 * (n - 1.0) / (n - 3.0)) } else { CriticalExponent::Infinite };
    Ok(CriticalExponents { r_omega, r_gamma })
}

fn exponents_of(params: &ModelParams) -> CriticalExponents {
    critical_exponents(params.dim.max(2)).expect("dimension clamped to ≥ 2")
}

/// Hölder conjugate `ρ' = ρ/(ρ-1)`; `∞' = 1`.
pub fn holder_conjugate(rho: f64) -> Result<f64> {
    if rho.is_nan() || rho <= 1.0 {
        return Err(Error::Domain("Hölder conjugate requires ρ > 1"));
    }
    if rho.is_infinite() {
        return Ok(1.0);
    }
    Ok(rho / (rho - 1.0))
}

/// `max{2, ρ}`.
pub fn bar(rho: f64) -> f64 {
    rho.max(2.0)
}

/// `m̄' = m̄/(m̄-1)`, always defined since `m̄ ≥ 2`.
fn bar_conjugate(rho: f64) -> f64 {
    let b = bar(rho);
    b / (b - 1.0)
}

/// Local well-posedness range:
/// `p ≤ 1 + r_Ω/2` (γ > 0, α = 0) or `p ≤ 1 + r_Ω/m̄'` (γ > 0, α > 0),
/// and the analogous bound on `q` with `r_Γ`, `β`, `μ̄`.
pub fn wellposed_ok(params: &ModelParams) -> bool {
    let crit = exponents_of(params);
    let interior = params.gamma == 0.0 || {
        let denom = if params.alpha == 0.0 { 2.0 } else { bar_conjugate(params.m) };
        crit.r_omega.one_plus_over(denom).ge_real(params.p)
    };
    let boundary = params.delta == 0.0 || {
        let denom = if params.beta == 0.0 { 2.0 } else { bar_conjugate(params.mu) };
        crit.r_gamma.one_plus_over(denom).ge_real(params.q)
    };
    interior && boundary
}

/// Supplementary local-existence restriction for supercritical damping in
/// high dimension: `p < 1 + r_Ω/m'` when `N ≥ 5, γ > 0, m > r_Ω`, and
/// `q < 1 + r_Γ/μ'` when `N ≥ 6, δ > 0, μ > r_Γ`.
pub fn high_dim_restriction_ok(params: &ModelParams) -> bool {
    let crit = exponents_of(params);
    let interior = !(params.dim >= 5 && params.gamma > 0.0 && !crit.r_omega.ge_real(params.m))
        || crit.r_omega.one_plus_over(params.m / (params.m - 1.0)).gt_real(params.p);
    let boundary = !(params.dim >= 6 && params.delta > 0.0 && !crit.r_gamma.ge_real(params.mu))
        || crit.r_gamma.one_plus_over(params.mu / (params.mu - 1.0)).gt_real(params.q);
    interior && boundary
}

/// Whether the data-regularity requirement (a Lebesgue condition on `u₀`)
/// is activated: `N = 3, 4, γ > 0, p = 1 + r_Ω/m', m > r_Ω`, or
/// `N = 4, 5, δ > 0, q = 1 + r_Γ/μ', μ > r_Γ`.
pub fn data_condition_active(params: &ModelParams) -> bool {
    let crit = exponents_of(params);
    let interior = matches!(params.dim, 3 | 4)
        && params.gamma > 0.0
        && !crit.r_omega.ge_real(params.m)
        && crit.r_omega.one_plus_over(params.m / (params.m - 1.0)).value() == params.p;
    let boundary = matches!(params.dim, 4 | 5)
        && params.delta > 0.0
        && !crit.r_gamma.ge_real(params.mu)
        && crit.r_gamma.one_plus_over(params.mu / (params.mu - 1.0)).value() == params.q;
    interior || boundary
}

/// Uniqueness condition: `p ≤ 1 + r_Ω/2` when `N ≥ 5, γ > 0`, and
/// `q ≤ 1 + r_Γ/2` when `N ≥ 6, δ > 0`.
pub fn uniqueness_ok(params: &ModelParams) -> bool {
    let crit = exponents_of(params);
    let interior = !(params.dim >= 5 && params.gamma > 0.0) || crit.r_omega.plus_half().ge_real(params.p);
    let boundary = !(params.dim >= 6 && params.delta > 0.0) || crit.r_gamma.plus_half().ge_real(params.q);
    interior && boundary
}

/// Threshold on `p` separating the two regimes: 2 without interior
/// damping, `m̄` with it.
fn interior_threshold(params: &ModelParams) -> f64 {
    if params.alpha == 0.0 {
        2.0
    } else {
        bar(params.m)
    }
}

fn boundary_threshold(params: &ModelParams) -> f64 {
    if params.beta == 0.0 {
        2.0
    } else {
        bar(params.mu)
    }
}

/// Source growth dominated by damping: `p ≤ 2` or `p ≤ m̄` (when γ > 0) and
/// `q ≤ 2` or `q ≤ μ̄` (when δ > 0). This is the parameter range for global
/// existence for all data, before the high-dimension restriction.
pub fn damping_dominates(params: &ModelParams) -> bool {
    let interior = params.gamma == 0.0 || params.p <= interior_threshold(params);
    let boundary = params.delta == 0.0 || params.q <= boundary_threshold(params);
    interior && boundary
}

/// Global existence for arbitrary data: [`damping_dominates`] together with
/// [`high_dim_restriction_ok`].
pub fn global_existence_ok(params: &ModelParams) -> bool {
    damping_dominates(params) && high_dim_restriction_ok(params)
}

/// Interior-source blow-up range (requires `γ > 0 = δ`):
/// `p > 2` (α = 0) or `p > m̄` (α > 0), and `μ̄ < 1 + p/2` when `β > 0`.
pub fn blowup_interior_ok(params: &ModelParams) -> bool {
    if !(params.gamma > 0.0 && params.delta == 0.0) {
        return false;
    }
    params.p > interior_threshold(params) && (params.beta == 0.0 || bar(params.mu) < 1.0 + params.p / 2.0)
}

/// Two-source blow-up range (requires `γ, δ > 0`):
/// `p > 2` or `p > m̄`, `q > 2`, and `μ̄ < max{q, 1 + p/2}` when `β > 0`.
pub fn blowup_two_sources_ok(params: &ModelParams) -> bool {
    if !(params.gamma > 0.0 && params.delta > 0.0) {
        return false;
    }
    params.p > interior_threshold(params)
        && params.q > 2.0
        && (params.beta == 0.0 || bar(params.mu) < params.q.max(1.0 + params.p / 2.0))
}

/// Linear damping: `a = b = 0`, `α = 0 or m = 2`, `β = 0 or μ = 2`.
pub fn linear_damping(params: &ModelParams) -> bool {
    params.a == 0.0
        && params.b == 0.0
        && (params.alpha == 0.0 || params.m == 2.0)
        && (params.beta == 0.0 || params.mu == 2.0)
}

/// Blow-up range for linear damping: [`linear_damping`] and
/// `(γ, δ) ≠ (0, 0)`, `p > 2` when `γ > 0`, `q > 2` when `δ > 0`.
pub fn blowup_linear_damping_ok(params: &ModelParams) -> bool {
    linear_damping(params)
        && (params.gamma > 0.0 || params.delta > 0.0)
        && (params.gamma == 0.0 || params.p > 2.0)
        && (params.delta == 0.0 || params.q > 2.0)
}

/// Final classification. The string forms are a stable interface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Conclusion {
    GlobalForAllData,
    BlowsUpForNegativeEnergy,
    OutsideLocalTheory,
    Undetermined,
}

impl Conclusion {
    pub fn as_str(self) -> &'static str {
        match self {
            Conclusion::GlobalForAllData => "GlobalForAllData",
            Conclusion::BlowsUpForNegativeEnergy => "BlowsUpForNegativeEnergy",
            Conclusion::OutsideLocalTheory => "OutsideLocalTheory",
            Conclusion::Undetermined => "Undetermined",
        }
    }
}

impl core::fmt::Display for Conclusion {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for Conclusion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "GlobalForAllData" => Conclusion::GlobalForAllData,
            "BlowsUpForNegativeEnergy" => Conclusion::BlowsUpForNegativeEnergy,
            "OutsideLocalTheory" => Conclusion::OutsideLocalTheory,
            "Undetermined" => Conclusion::Undetermined,
            _ => return Err(Error::Domain("unknown conclusion")),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegimeVerdict {
    pub wellposed: bool,
    pub uniqueness_extra: bool,
    pub global_existence: bool,
    pub blowup_interior: bool,
    pub blowup_two_sources: bool,
    pub blowup_linear_damping: bool,
    pub conclusion: Conclusion,
    /// Governing condition and theorem, plus any notes.
    pub fired: String,
}

pub const FIRED_WELLPOSED: &str = "(1.6) fails: no local theory";
pub const FIRED_GLOBAL: &str = "(1.15)/Theorem 1.1";
pub const FIRED_TWO_SOURCES: &str = "(1.24bis)/Theorem 1.4";
pub const FIRED_INTERIOR: &str = "(1.21)/Theorem 1.3";
pub const FIRED_LINEAR: &str = "(1.19)/Theorem 1.2";

/// Classifies a parameter set.
///
/// Order: well-posedness first, then global existence, then the blow-up
/// ranges (two sources, interior source, linear damping), otherwise
/// undetermined.
pub fn classify(params: &ModelParams) -> Result<RegimeVerdict> {
    params.validate()?;
    let wellposed = wellposed_ok(params);
    let uniqueness_extra = uniqueness_ok(params);
    let global_existence = global_existence_ok(params);
    let blowup_interior = blowup_interior_ok(params);
    let blowup_two_sources = blowup_two_sources_ok(params);
    let blowup_linear_damping = blowup_linear_damping_ok(params);

    let (conclusion, mut fired) = if !wellposed {
        (Conclusion::OutsideLocalTheory, String::from(FIRED_WELLPOSED))
    } else if global_existence {
        (Conclusion::GlobalForAllData, String::from(FIRED_GLOBAL))
    } else if blowup_two_sources {
        (Conclusion::BlowsUpForNegativeEnergy, String::from(FIRED_TWO_SOURCES))
    } else if blowup_interior {
        (Conclusion::BlowsUpForNegativeEnergy, String::from(FIRED_INTERIOR))
    } else if blowup_linear_damping {
        (Conclusion::BlowsUpForNegativeEnergy, String::from(FIRED_LINEAR))
    } else {
        (Conclusion::Undetermined, undetermined_reason(params))
    };
    if wellposed && data_condition_active(params) {
        fired.push_str("; note: (1.12) data condition on u0 applies");
    }
    Ok(RegimeVerdict {
        wellposed,
        uniqueness_extra,
        global_existence,
        blowup_interior,
        blowup_two_sources,
        blowup_linear_damping,
        conclusion,
        fired,
    })
}

fn undetermined_reason(params: &ModelParams) -> String {
    if damping_dominates(params) && !high_dim_restriction_ok(params) {
        return String::from("none: (1.15) holds but (1.11) fails");
    }
    match (params.gamma > 0.0, params.delta > 0.0) {
        (false, true) => String::from("none: class B with nonlinear damping is open"),
        (true, false) => String::from("none: (1.24) range, boundary damping too strong for (1.21)"),
        (true, true) => String::from("none: (1.15) and (1.24bis) both fail"),
        (false, false) => String::from("none"),
    }
}
