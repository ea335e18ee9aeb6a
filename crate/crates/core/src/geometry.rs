//! Annulus mesh, quadratures and discrete differential operators.
//!
//! The domain is `Ω = {r_inner < r < r_outer}` with the pinched part of the
//! boundary `Γ₀` the inner circle and the kinetic part `Γ₁` the outer circle.
//! Nodes sit on a tensor polar grid `r_i = r_inner + iΔr`, `θ_j = jΔθ`; row
//! `i = 0` is `Γ₀` and row `i = n_r - 1` is `Γ₁`. Values are stored row-major,
//! index `i * n_theta + j`.
//!
//! All radial differences come from one discrete Dirichlet form
//!
//! ```text
//! D_Ω(u) = Σ_faces r_{i+½} ΔrΔθ ((u_{i+1,j} - u_{i,j}) / Δr)²
//!        + Σ_nodes w_i r_i⁻² ((u_{i,j+1} - u_{i,j}) / Δθ)²
//! ```
//!
//! with `w_i` the trapezoid area weights. Its Euler–Lagrange operator at the
//! inner rows is the centered polar Laplacian, and [`AnnulusMesh::gradient_sq`]
//! integrates to it exactly, which is what makes the discrete energy of the
//! solver conserved up to time-stepping error.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::{Error, Result};

/// Nodal values on the whole closed annulus (`n_r × n_theta`).
#[derive(Debug, Clone, PartialEq)]
pub struct InteriorField {
    pub values: Vec<f64>,
}

/// Nodal values on the outer circle `Γ₁` (`n_theta` entries, periodic).
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryTrace {
    pub values: Vec<f64>,
}

impl InteriorField {
    pub fn zeros(mesh: &AnnulusMesh) -> Self {
        Self { values: vec![0.0; mesh.len()] }
    }

    /// True when the `Γ₀` row vanishes identically.
    pub fn is_admissible(&self, mesh: &AnnulusMesh) -> bool {
        self.values.len() == mesh.len() && self.values[..mesh.n_theta].iter().all(|&x| x == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }
}

impl BoundaryTrace {
    pub fn zeros(mesh: &AnnulusMesh) -> Self {
        Self { values: vec![0.0; mesh.n_theta] }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnnulusMesh {
    r_inner: f64,
    r_outer: f64,
    n_r: usize,
    n_theta: usize,
    dr: f64,
    dtheta: f64,
    interior_weights: Vec<f64>,
    boundary_weights: Vec<f64>,
}

/// Builds the annulus mesh; see [`AnnulusMesh::new`].
pub fn build_annulus(r_inner: f64, r_outer: f64, n_r: usize, n_theta: usize) -> Result<AnnulusMesh> {
    AnnulusMesh::new(r_inner, r_outer, n_r, n_theta)
}

impl AnnulusMesh {
    pub fn new(r_inner: f64, r_outer: f64, n_r: usize, n_theta: usize) -> Result<Self> {
        if !(r_inner.is_finite() && r_outer.is_finite()) {
            return Err(Error::Mesh("radii must be finite"));
        }
        if r_inner <= 0.0 || r_outer <= 0.0 {
            return Err(Error::Mesh("radii must be positive"));
        }
        if r_inner >= r_outer {
            return Err(Error::Mesh("r_inner ≥ r_outer"));
        }
        if n_r < 3 {
            return Err(Error::Mesh("n_r < 3"));
        }
        if n_theta < 8 {
            return Err(Error::Mesh("n_theta < 8"));
        }
        let dr = (r_outer - r_inner) / (n_r - 1) as f64;
        let dtheta = 2.0 * PI / n_theta as f64;

        let mut interior_weights = Vec::with_capacity(n_r * n_theta);
        for i in 0..n_r {
            let r = r_inner + i as f64 * dr;
            let half = if i == 0 || i == n_r - 1 { 0.5 } else { 1.0 };
            let w = half * r * dr * dtheta;
            interior_weights.extend(core::iter::repeat_n(w, n_theta));
        }
        let boundary_weights = vec![r_outer * dtheta; n_theta];

        Ok(Self { r_inner, r_outer, n_r, n_theta, dr, dtheta, interior_weights, boundary_weights })
    }

    pub fn r_inner(&self) -> f64 {
        self.r_inner
    }

    pub fn r_outer(&self) -> f64 {
        self.r_outer
    }

    pub fn n_r(&self) -> usize {
        self.n_r
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn dr(&self) -> f64 {
        self.dr
    }

    pub fn dtheta(&self) -> f64 {
        self.dtheta
    }

    /// Number of nodes in an [`InteriorField`].
    pub fn len(&self) -> usize {
        self.n_r * self.n_theta
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        i * self.n_theta + j
    }

    #[inline]
    pub fn radius(&self, i: usize) -> f64 {
        self.r_inner + i as f64 * self.dr
    }

    #[inline]
    pub fn theta(&self, j: usize) -> f64 {
        j as f64 * self.dtheta
    }

    /// Area quadrature weights, trapezoid in `r` and periodic trapezoid in `θ`.
    pub fn interior_weights(&self) -> &[f64] {
        &self.interior_weights
    }

    /// Arclength quadrature weights on `Γ₁`.
    pub fn boundary_weights(&self) -> &[f64] {
        &self.boundary_weights
    }

    /// Discrete `|Ω|`.
    pub fn area(&self) -> f64 {
        self.interior_weights.iter().sum()
    }

    /// Discrete `σ(Γ₁)`.
    pub fn boundary_length(&self) -> f64 {
        self.boundary_weights.iter().sum()
    }

    /// Offset of the `Γ₁` row in an [`InteriorField`].
    #[inline]
    pub fn outer_row(&self) -> usize {
        (self.n_r - 1) * self.n_theta
    }

    /// Samples `f(r, θ)` at every node.
    pub fn field_from_fn(&self, f: impl Fn(f64, f64) -> f64) -> InteriorField {
        let mut values = Vec::with_capacity(self.len());
        for i in 0..self.n_r {
            let r = self.radius(i);
            for j in 0..self.n_theta {
                values.push(f(r, self.theta(j)));
            }
        }
        InteriorField { values }
    }

    /// Samples `g(θ)` on `Γ₁`.
    pub fn trace_from_fn(&self, g: impl Fn(f64) -> f64) -> BoundaryTrace {
        BoundaryTrace { values: (0..self.n_theta).map(|j| g(self.theta(j))).collect() }
    }

    pub(crate) fn check_field(&self, f: &InteriorField) -> Result<()> {
        if f.values.len() != self.len() {
            return Err(Error::ShapeMismatch { expected: self.len(), found: f.values.len() });
        }
        Ok(())
    }

    pub(crate) fn check_trace(&self, g: &BoundaryTrace) -> Result<()> {
        if g.values.len() != self.n_theta {
            return Err(Error::ShapeMismatch { expected: self.n_theta, found: g.values.len() });
        }
        Ok(())
    }

    /// The outermost row of `u`, i.e. its trace on `Γ₁`.
    pub fn trace(&self, u: &InteriorField) -> Result<BoundaryTrace> {
        self.check_field(u)?;
        Ok(BoundaryTrace { values: u.values[self.outer_row()..].to_vec() })
    }

    pub fn integrate_interior(&self, f: &InteriorField) -> Result<f64> {
        self.check_field(f)?;
        Ok(dot(&f.values, &self.interior_weights))
    }

    pub fn integrate_boundary(&self, g: &BoundaryTrace) -> Result<f64> {
        self.check_trace(g)?;
        Ok(dot(&g.values, &self.boundary_weights))
    }

    /// Centered polar Laplacian `u_rr + u_r / r + u_θθ / r²` on rows
    /// `1..n_r-1`. The `Γ₀` and `Γ₁` rows of the result are zero.
    pub fn laplacian(&self, u: &InteriorField) -> Result<InteriorField> {
        self.check_field(u)?;
        let mut out = InteriorField::zeros(self);
        self.laplacian_into(&u.values, &mut out.values);
        Ok(out)
    }

    pub(crate) fn laplacian_into(&self, u: &[f64], out: &mut [f64]) {
        let (nt, dr, dth) = (self.n_theta, self.dr, self.dtheta);
        out[..nt].fill(0.0);
        out[self.outer_row()..].fill(0.0);
        for i in 1..self.n_r - 1 {
            let r = self.radius(i);
            let rp = r + 0.5 * dr;
            let rm = r - 0.5 * dr;
            let radial = 1.0 / (r * dr * dr);
            let angular = 1.0 / (r * r * dth * dth);
            let row = i * nt;
            for j in 0..nt {
                let jp = if j + 1 == nt { 0 } else { j + 1 };
                let jm = if j == 0 { nt - 1 } else { j - 1 };
                let c = u[row + j];
                out[row + j] = radial * (rp * (u[row + nt + j] - c) - rm * (c - u[row - nt + j]))
                    + angular * (u[row + jp] - 2.0 * c + u[row + jm]);
            }
        }
    }

    /// Laplace–Beltrami operator on `Γ₁`: `r_outer⁻² ∂²_θ`, periodic centered.
    pub fn laplace_beltrami(&self, v: &BoundaryTrace) -> Result<BoundaryTrace> {
        self.check_trace(v)?;
        let mut out = BoundaryTrace::zeros(self);
        self.laplace_beltrami_into(&v.values, &mut out.values);
        Ok(out)
    }

    pub(crate) fn laplace_beltrami_into(&self, v: &[f64], out: &mut [f64]) {
        let nt = self.n_theta;
        let scale = 1.0 / (self.r_outer * self.r_outer * self.dtheta * self.dtheta);
        for j in 0..nt {
            let jp = if j + 1 == nt { 0 } else { j + 1 };
            let jm = if j == 0 { nt - 1 } else { j - 1 };
            out[j] = scale * (v[jp] - 2.0 * v[j] + v[jm]);
        }
    }

    /// One-sided second-order outward normal derivative on `Γ₁`,
    /// `(3u_{n-1} - 4u_{n-2} + u_{n-3}) / (2Δr)`.
    pub fn normal_derivative(&self, u: &InteriorField) -> Result<BoundaryTrace> {
        self.check_field(u)?;
        let nt = self.n_theta;
        let o = self.outer_row();
        let values = (0..nt)
            .map(|j| (3.0 * u.values[o + j] - 4.0 * u.values[o - nt + j] + u.values[o - 2 * nt + j]) / (2.0 * self.dr))
            .collect();
        Ok(BoundaryTrace { values })
    }

    /// Normal flux through the last radial face per unit arclength of `Γ₁`,
    /// `r_{n-3/2} (u_{n-1} - u_{n-2}) / (r_outer Δr)`.
    ///
    /// This is the normal derivative paired with [`laplacian`](Self::laplacian)
    /// by the discrete Green identity
    /// `-∫_Ω Δ_h u · w + ∫_Γ₁ w · flux(u) = symmetric in (u, w)`.
    pub fn face_normal_flux(&self, u: &InteriorField) -> Result<BoundaryTrace> {
        self.check_field(u)?;
        let mut out = BoundaryTrace::zeros(self);
        self.face_normal_flux_into(&u.values, &mut out.values);
        Ok(out)
    }

    pub(crate) fn face_normal_flux_into(&self, u: &[f64], out: &mut [f64]) {
        let nt = self.n_theta;
        let o = self.outer_row();
        let scale = (self.r_outer - 0.5 * self.dr) / (self.r_outer * self.dr);
        for j in 0..nt {
            out[j] = scale * (u[o + j] - u[o - nt + j]);
        }
    }

    /// Nodal `|∇u|² = u_r² + r⁻² u_θ²`.
    ///
    /// Each radial face difference contributes half of its face energy to
    /// each adjacent node (so the derivative is one-sided at both radial
    /// extremes), and the angular part averages the forward and backward
    /// differences. `integrate_interior(gradient_sq(u))` is exactly the
    /// discrete Dirichlet energy.
    pub fn gradient_sq(&self, u: &InteriorField) -> Result<InteriorField> {
        self.check_field(u)?;
        let (nt, dr, dth) = (self.n_theta, self.dr, self.dtheta);
        let u = &u.values;
        let mut out = InteriorField::zeros(self);
        for i in 0..self.n_r {
            let r = self.radius(i);
            // face energy density r_face·(Du)² / (2 · r_node · half-cell factor)
            let node_scale = if i == 0 || i == self.n_r - 1 { 0.5 } else { 1.0 } * r;
            for j in 0..nt {
                let k = i * nt + j;
                let mut radial = 0.0;
                if i + 1 < self.n_r {
                    let d = (u[k + nt] - u[k]) / dr;
                    radial += (r + 0.5 * dr) * d * d;
                }
                if i > 0 {
                    let d = (u[k] - u[k - nt]) / dr;
                    radial += (r - 0.5 * dr) * d * d;
                }
                let jp = if j + 1 == nt { 0 } else { j + 1 };
                let jm = if j == 0 { nt - 1 } else { j - 1 };
                let dp = (u[i * nt + jp] - u[k]) / dth;
                let dm = (u[k] - u[i * nt + jm]) / dth;
                out.values[k] = 0.5 * radial / node_scale + 0.5 * (dp * dp + dm * dm) / (r * r);
            }
        }
        Ok(out)
    }

    /// Nodal `|∇_Γ v|² = r_outer⁻² v_θ²` on `Γ₁`.
    pub fn tangential_gradient_sq(&self, v: &BoundaryTrace) -> Result<BoundaryTrace> {
        self.check_trace(v)?;
        let nt = self.n_theta;
        let scale = 1.0 / (self.r_outer * self.r_outer * self.dtheta * self.dtheta);
        let values = (0..nt)
            .map(|j| {
                let jp = if j + 1 == nt { 0 } else { j + 1 };
                let jm = if j == 0 { nt - 1 } else { j - 1 };
                let dp = v.values[jp] - v.values[j];
                let dm = v.values[j] - v.values[jm];
                0.5 * scale * (dp * dp + dm * dm)
            })
            .collect();
        Ok(BoundaryTrace { values })
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
