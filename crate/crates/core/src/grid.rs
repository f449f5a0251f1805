//! Finite-difference discretisation on a uniform interval grid or a uniform
//! radial grid.
//!
//! The discrete Laplacian is a tridiagonal operator `L` (one row per node),
//! so `∫(Δu)² ≈ Σ_i c_i (Lu)_i²` with control-volume weights `c_i`, and the
//! Hessian of that quadratic form is the pentadiagonal `2LᵀCL`.
//!
//! On the radial grid the Laplacian is taken in conservative form,
//! `Δ_h u_i = [A(r_i+h/2)(u_{i+1}−u_i) − A(r_i−h/2)(u_i−u_{i−1})] / (h·V_i)`
//! with `A` the sphere area and `V_i` the exact shell volume. It reduces to
//! `2n(u₁−u₀)/h²` at the centre, is exact on quadratics, and its weighted
//! partial sums telescope to boundary fluxes.
//!
//! Boundary nodes carry the datum `u0`. Ghost values beyond the boundary are
//! never stored; they are eliminated from the boundary row:
//!
//! * Navier: the ghost is chosen so that `Δ_h u = 0` at the boundary node,
//!   which makes the boundary row identically zero;
//! * Dirichlet: zero flux through the boundary (on the interval the ghost
//!   mirrors the last interior node, giving `Δ_h u_b = 2(u_{b−1} − u_b)/h²`).

use alloc::vec::Vec;

use crate::banded::Pentadiagonal;
use crate::error::{require, Error, Result};
use crate::math::{powi, unit_ball_volume};
use crate::{BoundaryKind, EnergyBreakdown};

/// `{|u| < EXACT_ZERO}` is exactly the zero set `{u = 0}`.
pub const EXACT_ZERO: f64 = f64::MIN_POSITIVE;

/// Minimum number of nodes of any grid.
pub const MIN_NODES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum Geometry {
    /// `[−R, R]` with `m` equispaced nodes including both ends.
    Interval {
        #[cfg_attr(feature = "serde", serde(rename = "R"))]
        half_length: f64,
        m: usize,
    },
    /// Radial grid `r_i = i·h` on `[0, R]` for `B_R ⊂ ℝⁿ`; node 0 is the centre.
    RadialDisk {
        n: u32,
        #[cfg_attr(feature = "serde", serde(rename = "R"))]
        radius: f64,
        m: usize,
    },
}

impl Geometry {
    pub fn interval(half_length: f64, m: usize) -> Result<Self> {
        let g = Geometry::Interval { half_length, m };
        g.validate()?;
        Ok(g)
    }

    pub fn radial(n: u32, radius: f64, m: usize) -> Result<Self> {
        let g = Geometry::RadialDisk { n, radius, m };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        let (r, m) = match *self {
            Geometry::Interval { half_length, m } => (half_length, m),
            Geometry::RadialDisk { n, radius, m } => {
                if n == 0 {
                    return Err(Error::domain("n", 0.0, "dimension >= 1"));
                }
                (radius, m)
            }
        };
        require("R", r, "R > 0", |r| r > 0.0)?;
        if m < MIN_NODES {
            return Err(Error::domain("m", m as f64, "at least 16 nodes"));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        match *self {
            Geometry::Interval { m, .. } | Geometry::RadialDisk { m, .. } => m,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Spatial dimension (1 for the interval).
    pub fn dimension(&self) -> u32 {
        match *self {
            Geometry::Interval { .. } => 1,
            Geometry::RadialDisk { n, .. } => n,
        }
    }

    /// Outer radius (half-length for the interval).
    pub fn outer_radius(&self) -> f64 {
        match *self {
            Geometry::Interval { half_length, .. } => half_length,
            Geometry::RadialDisk { radius, .. } => radius,
        }
    }

    pub fn spacing(&self) -> f64 {
        match *self {
            Geometry::Interval { half_length, m } => 2.0 * half_length / (m - 1) as f64,
            Geometry::RadialDisk { radius, m, .. } => radius / (m - 1) as f64,
        }
    }

    /// Node coordinates: `x_i` on the interval, `r_i` on the radial grid.
    pub fn nodes(&self) -> Vec<f64> {
        let h = self.spacing();
        let m = self.len();
        match *self {
            Geometry::Interval { half_length, .. } => {
                (0..m).map(|i| if i == m - 1 { half_length } else { -half_length + i as f64 * h }).collect()
            }
            Geometry::RadialDisk { radius, .. } => {
                (0..m).map(|i| if i == m - 1 { radius } else { i as f64 * h }).collect()
            }
        }
    }

    /// Distance of node `i` from the centre.
    pub fn radius_of(&self, i: usize) -> f64 {
        let h = self.spacing();
        match *self {
            Geometry::Interval { half_length, m } => {
                if i == 0 || i == m - 1 {
                    half_length
                } else {
                    (-half_length + i as f64 * h).abs()
                }
            }
            Geometry::RadialDisk { radius, m, .. } => {
                if i == m - 1 {
                    radius
                } else {
                    i as f64 * h
                }
            }
        }
    }

    /// Indices of the boundary nodes.
    pub fn boundary_nodes(&self) -> Vec<usize> {
        let m = self.len();
        match self {
            Geometry::Interval { .. } => alloc::vec![0, m - 1],
            Geometry::RadialDisk { .. } => alloc::vec![m - 1],
        }
    }

    /// Measure of the domain, `2R` or `e_n·Rⁿ`.
    pub fn domain_measure(&self) -> f64 {
        match *self {
            Geometry::Interval { half_length, .. } => 2.0 * half_length,
            Geometry::RadialDisk { n, radius, .. } => unit_ball_volume(n) * powi(radius, n as i32),
        }
    }

    /// Control-volume weights. On the radial grid these are the exact
    /// volumes of the shells `r_i ± h/2` clipped to `[0, R]`, so they sum
    /// to `e_n·Rⁿ`.
    pub fn weights(&self) -> Vec<f64> {
        let h = self.spacing();
        let m = self.len();
        match *self {
            Geometry::Interval { .. } => (0..m).map(|i| if i == 0 || i == m - 1 { h / 2.0 } else { h }).collect(),
            Geometry::RadialDisk { n, radius, .. } => {
                let en = unit_ball_volume(n);
                let k = n as i32;
                let edge = |j: usize| -> f64 {
                    // edge between node j-1 and node j
                    if j == 0 {
                        0.0
                    } else if j >= m {
                        radius
                    } else {
                        (j as f64 - 0.5) * h
                    }
                };
                (0..m).map(|i| en * (powi(edge(i + 1), k) - powi(edge(i), k))).collect()
            }
        }
    }

    /// The discrete Laplacian for boundary condition `bc`.
    pub fn laplacian_operator(&self, bc: BoundaryKind) -> Tridiagonal {
        let m = self.len();
        let h = self.spacing();
        let ih2 = 1.0 / (h * h);
        let mut t = Tridiagonal {
            lower: alloc::vec![0.0; m],
            diag: alloc::vec![0.0; m],
            upper: alloc::vec![0.0; m],
            zero_row_sums: true,
        };
        let boundary_row = |t: &mut Tridiagonal, i: usize, inward_lower: bool| {
            if bc == BoundaryKind::Dirichlet {
                t.diag[i] = -2.0 * ih2;
                if inward_lower {
                    t.lower[i] = 2.0 * ih2;
                } else {
                    t.upper[i] = 2.0 * ih2;
                }
            }
        };
        match *self {
            Geometry::Interval { .. } => {
                for i in 1..m - 1 {
                    t.lower[i] = ih2;
                    t.diag[i] = -2.0 * ih2;
                    t.upper[i] = ih2;
                }
                boundary_row(&mut t, 0, false);
                boundary_row(&mut t, m - 1, true);
            }
            Geometry::RadialDisk { n, radius, .. } => {
                // conservative form: (1/V_i)·[A(r+h/2)·(u_{i+1}−u_i) − A(r−h/2)·(u_i−u_{i−1})]/h
                let w = self.weights();
                let k = n as i32;
                let face = |x: f64| n as f64 * unit_ball_volume(n) * powi(x, k - 1);
                t.upper[0] = face(h / 2.0) / (h * w[0]);
                t.diag[0] = -t.upper[0];
                for i in 1..m - 1 {
                    let r = i as f64 * h;
                    t.lower[i] = face(r - h / 2.0) / (h * w[i]);
                    t.upper[i] = face(r + h / 2.0) / (h * w[i]);
                    t.diag[i] = -(t.lower[i] + t.upper[i]);
                }
                if bc == BoundaryKind::Dirichlet {
                    // zero flux through |x| = R
                    t.lower[m - 1] = face(radius - h / 2.0) / (h * w[m - 1]);
                    t.diag[m - 1] = -t.lower[m - 1];
                }
            }
        }
        t
    }
}

/// Row-wise tridiagonal operator: `(Tu)_i = lower_i u_{i−1} + diag_i u_i + upper_i u_{i+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub lower: Vec<f64>,
    pub diag: Vec<f64>,
    pub upper: Vec<f64>,
    /// Every row has `diag = −(lower + upper)`, so [`Tridiagonal::apply`]
    /// can use differences and annihilates constants exactly.
    pub zero_row_sums: bool,
}

impl Tridiagonal {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn apply(&self, u: &[f64]) -> Vec<f64> {
        let m = self.len();
        (0..m)
            .map(|i| {
                if self.zero_row_sums {
                    let mut s = 0.0;
                    if i > 0 {
                        s += self.lower[i] * (u[i - 1] - u[i]);
                    }
                    if i + 1 < m {
                        s += self.upper[i] * (u[i + 1] - u[i]);
                    }
                    return s;
                }
                let mut s = self.diag[i] * u[i];
                if i > 0 {
                    s += self.lower[i] * u[i - 1];
                }
                if i + 1 < m {
                    s += self.upper[i] * u[i + 1];
                }
                s
            })
            .collect()
    }

    /// `Tᵀ v`.
    pub fn apply_transpose(&self, v: &[f64]) -> Vec<f64> {
        let m = self.len();
        (0..m)
            .map(|j| {
                let mut s = self.diag[j] * v[j];
                if j + 1 < m {
                    s += self.lower[j + 1] * v[j + 1];
                }
                if j > 0 {
                    s += self.upper[j - 1] * v[j - 1];
                }
                s
            })
            .collect()
    }

    /// `Tᵀ diag(c) T` as a symmetric pentadiagonal matrix.
    pub fn gram(&self, c: &[f64]) -> Pentadiagonal {
        let m = self.len();
        let mut p = Pentadiagonal::zeros(m);
        for i in 0..m {
            let mut row: [(usize, f64); 3] = [(usize::MAX, 0.0); 3];
            let mut k = 0;
            if i > 0 {
                row[k] = (i - 1, self.lower[i]);
                k += 1;
            }
            row[k] = (i, self.diag[i]);
            k += 1;
            if i + 1 < m {
                row[k] = (i + 1, self.upper[i]);
                k += 1;
            }
            for &(a, va) in &row[..k] {
                for &(b, vb) in &row[..k] {
                    if a <= b && va != 0.0 && vb != 0.0 {
                        p.add(a, b, c[i] * va * vb);
                    }
                }
            }
        }
        p
    }
}

/// Samples on a [`Geometry`] plus the boundary datum.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GridFunction {
    pub geometry: Geometry,
    pub values: Vec<f64>,
    pub bc_kind: BoundaryKind,
    pub u0: f64,
}

impl GridFunction {
    pub fn new(geometry: Geometry, values: Vec<f64>, bc_kind: BoundaryKind, u0: f64) -> Result<Self> {
        geometry.validate()?;
        require("u0", u0, "finite u0", |_| true)?;
        if values.len() != geometry.len() {
            return Err(Error::Mismatch(alloc::format!(
                "{} values for a grid of {} nodes",
                values.len(),
                geometry.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::domain("values", values[i], "finite samples"));
        }
        Ok(Self { geometry, values, bc_kind, u0 })
    }

    /// The constant `u0` (boundary data included).
    pub fn constant(geometry: Geometry, bc_kind: BoundaryKind, u0: f64) -> Result<Self> {
        Self::new(geometry, alloc::vec![u0; geometry.len()], bc_kind, u0)
    }

    /// Samples `f(radius)` at every node, then pins the boundary.
    pub fn sample(geometry: Geometry, bc_kind: BoundaryKind, u0: f64, f: impl Fn(f64) -> f64) -> Result<Self> {
        geometry.validate()?;
        let values = (0..geometry.len()).map(|i| f(geometry.radius_of(i))).collect();
        Ok(enforce_boundary(&Self::new(geometry, values, bc_kind, u0)?))
    }

    /// Ghost value beyond each boundary node implied by the boundary rule.
    pub fn ghost_values(&self) -> Vec<f64> {
        let u = &self.values;
        let m = u.len();
        let h = self.geometry.spacing();
        let ghost = |b: usize, inner: usize| match self.bc_kind {
            BoundaryKind::Dirichlet => u[inner],
            BoundaryKind::Navier => match self.geometry {
                Geometry::Interval { .. } => 2.0 * u[b] - u[inner],
                Geometry::RadialDisk { n, radius, .. } => {
                    // balance of the fluxes through r = R ± h/2
                    let q = powi((radius - h / 2.0) / (radius + h / 2.0), n as i32 - 1);
                    u[b] + q * (u[b] - u[inner])
                }
            },
        };
        match self.geometry {
            Geometry::Interval { .. } => alloc::vec![ghost(0, 1), ghost(m - 1, m - 2)],
            Geometry::RadialDisk { .. } => alloc::vec![ghost(m - 1, m - 2)],
        }
    }
}

/// `Δ_h u` at every node.
pub fn discrete_laplacian(u: &GridFunction) -> Result<Vec<f64>> {
    if u.values.len() < 4 {
        return Err(Error::domain("m", u.values.len() as f64, "at least 4 nodes"));
    }
    Ok(u.geometry.laplacian_operator(u.bc_kind).apply(&u.values))
}

/// `χ_ε(u) = u²/(u² + ε²)`.
pub fn smoothed_indicator(u: f64, eps: f64) -> f64 {
    let u2 = u * u;
    u2 / (u2 + eps * eps)
}

/// `χ_ε'(u) = 2uε²/(u² + ε²)²`.
pub fn smoothed_indicator_derivative(u: f64, eps: f64) -> f64 {
    let e2 = eps * eps;
    let s = u * u + e2;
    2.0 * u * e2 / (s * s)
}

/// `Σ c_i (Δ_h u)_i² + λ Σ c_i χ_ε(u_i)`.
pub fn discrete_energy(u: &GridFunction, lambda: f64, epsilon: f64) -> Result<EnergyBreakdown> {
    require("epsilon", epsilon, "epsilon > 0", |e| e > 0.0)?;
    require("lambda", lambda, "lambda > 0", |l| l > 0.0)?;
    Ok(energy_with(u, lambda, |v| smoothed_indicator(v, epsilon)))
}

/// Energy with the sharp indicator `1_{|u| ≥ threshold}`.
pub fn discrete_energy_sharp(u: &GridFunction, lambda: f64, threshold: f64) -> Result<EnergyBreakdown> {
    require("threshold", threshold, "threshold > 0", |t| t > 0.0)?;
    require("lambda", lambda, "lambda > 0", |l| l > 0.0)?;
    Ok(energy_with(u, lambda, |v| if v.abs() >= threshold { 1.0 } else { 0.0 }))
}

fn energy_with(u: &GridFunction, lambda: f64, indicator: impl Fn(f64) -> f64) -> EnergyBreakdown {
    let w = u.geometry.weights();
    let lap = u.geometry.laplacian_operator(u.bc_kind).apply(&u.values);
    let mut d = 0.0;
    let mut m = 0.0;
    for i in 0..w.len() {
        d += w[i] * lap[i] * lap[i];
        m += w[i] * indicator(u.values[i]);
    }
    EnergyBreakdown::new(d, lambda * m, lambda)
}

/// Gradient of [`discrete_energy`] with respect to every nodal value.
pub fn discrete_energy_gradient(u: &GridFunction, lambda: f64, epsilon: f64) -> Result<Vec<f64>> {
    require("epsilon", epsilon, "epsilon > 0", |e| e > 0.0)?;
    require("lambda", lambda, "lambda > 0", |l| l > 0.0)?;
    let w = u.geometry.weights();
    let op = u.geometry.laplacian_operator(u.bc_kind);
    let weighted: Vec<f64> = op.apply(&u.values).iter().zip(&w).map(|(l, c)| 2.0 * c * l).collect();
    let mut g = op.apply_transpose(&weighted);
    for (i, gi) in g.iter_mut().enumerate() {
        *gi += lambda * w[i] * smoothed_indicator_derivative(u.values[i], epsilon);
    }
    Ok(g)
}

/// Pins boundary nodes to `u0`; interior values are untouched. Ghosts are
/// implied by the boundary rule, so after this call the Navier boundary
/// Laplacian is exactly zero.
pub fn enforce_boundary(u: &GridFunction) -> GridFunction {
    let mut out = u.clone();
    for b in u.geometry.boundary_nodes() {
        out.values[b] = u.u0;
    }
    out
}

/// Measure of `{|u| < threshold}` and, when the centre is flat, the radius
/// of the flat core around it.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FlatSet {
    pub measure: f64,
    /// Half-way between the outermost node of the central flat run and the
    /// first non-flat node beyond it.
    pub radius_estimate: Option<f64>,
}

pub fn extract_flat_set(u: &GridFunction, threshold: f64) -> Result<FlatSet> {
    require("threshold", threshold, "threshold > 0", |t| t > 0.0)?;
    let flat: Vec<bool> = u.values.iter().map(|v| v.abs() < threshold).collect();
    let w = u.geometry.weights();
    let measure = flat.iter().zip(&w).filter(|(f, _)| **f).fold(0.0, |a, (_, c)| a + c);
    let h = u.geometry.spacing();
    let m = flat.len();
    let radius_estimate = match u.geometry {
        Geometry::RadialDisk { radius, .. } => {
            if !flat[0] {
                None
            } else {
                match flat.iter().position(|f| !f) {
                    Some(k) => Some((u.geometry.radius_of(k) - h / 2.0).max(0.0)),
                    None => Some(radius),
                }
            }
        }
        Geometry::Interval { half_length, .. } => {
            // central node(s)
            let (cl, cr) = if m % 2 == 1 { (m / 2, m / 2) } else { (m / 2 - 1, m / 2) };
            if !(flat[cl] && flat[cr]) {
                None
            } else {
                let left = (0..=cl).rev().find(|&i| !flat[i]);
                let right = (cr..m).find(|&i| !flat[i]);
                let reach = |k: Option<usize>| match k {
                    Some(k) => u.geometry.radius_of(k) - h / 2.0,
                    None => half_length,
                };
                Some(reach(left).min(reach(right)).max(0.0))
            }
        }
    };
    Ok(FlatSet { measure, radius_estimate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::ln;
    use core::f64::consts::PI;

    #[test]
    fn small_grids_rejected() {
        assert!(Geometry::interval(1.0, 8).is_err());
        assert!(Geometry::radial(2, 1.0, 15).is_err());
        assert!(Geometry::radial(0, 1.0, 64).is_err());
        assert!(Geometry::interval(-1.0, 64).is_err());
    }

    #[test]
    fn weights_sum_to_domain_measure() {
        let g = Geometry::interval(3.0, 101).unwrap();
        let s: f64 = g.weights().iter().sum();
        assert!((s - 6.0).abs() < 1e-12);
        for n in 1..=4 {
            let g = Geometry::radial(n, 1.5, 77).unwrap();
            let s: f64 = g.weights().iter().sum();
            assert!((s - g.domain_measure()).abs() < 1e-12 * s, "n={n}");
        }
    }

    #[test]
    fn quadratic_exact_on_interval() {
        let g = Geometry::interval(1.0, 33).unwrap();
        let u = GridFunction::sample(g, BoundaryKind::Navier, 1.0, |r| r * r).unwrap();
        let lap = discrete_laplacian(&u).unwrap();
        for l in &lap[1..32] {
            assert!((l - 2.0).abs() < 1e-10);
        }
        assert_eq!(lap[0], 0.0);
        assert_eq!(lap[32], 0.0);
    }

    #[test]
    fn r_squared_on_disk() {
        let g = Geometry::radial(2, 1.0, 65).unwrap();
        let u = GridFunction::sample(g, BoundaryKind::Dirichlet, 1.0, |r| r * r).unwrap();
        let lap = discrete_laplacian(&u).unwrap();
        for l in &lap[..64] {
            assert!((l - 4.0).abs() < 1e-9, "{l}");
        }
    }

    #[test]
    fn r2_log_r_second_order() {
        let err = |m: usize| {
            let g = Geometry::radial(2, 1.0, m).unwrap();
            let u = GridFunction::sample(g, BoundaryKind::Navier, 0.0, |r| if r == 0.0 { 0.0 } else { r * r * ln(r) })
                .unwrap();
            let lap = discrete_laplacian(&u).unwrap();
            let nodes = g.nodes();
            let mut e: f64 = 0.0;
            for i in 0..m - 1 {
                if nodes[i] >= 0.25 {
                    e = e.max((lap[i] - (4.0 * ln(nodes[i]) + 4.0)).abs());
                }
            }
            e
        };
        let (e1, e2) = (err(129), err(257));
        assert!(e1 < 1e-3);
        assert!(e1 / e2 > 3.5, "{e1} {e2}");
    }

    #[test]
    fn navier_boundary_laplacian_vanishes_via_ghost() {
        let g = Geometry::radial(2, 1.0, 40).unwrap();
        let u = GridFunction::sample(g, BoundaryKind::Navier, 0.3, |r| 0.1 + r * r * r).unwrap();
        let ghost = u.ghost_values()[0];
        let (h, m) = (g.spacing(), 40);
        let (ub, ui) = (u.values[m - 1], u.values[m - 2]);
        let flux = (1.0 + h / 2.0) * (ghost - ub) - (1.0 - h / 2.0) * (ub - ui);
        assert!(flux.abs() < 1e-15, "{flux}");
        assert_eq!(discrete_laplacian(&u).unwrap()[m - 1], 0.0);
    }

    #[test]
    fn transpose_and_gram_consistent() {
        let g = Geometry::radial(3, 1.0, 20).unwrap();
        let t = g.laplacian_operator(BoundaryKind::Dirichlet);
        let x: Vec<f64> = (0..20).map(|i| ((i * 7) % 5) as f64 - 2.0).collect();
        let y: Vec<f64> = (0..20).map(|i| ((i * 3) % 7) as f64 * 0.5).collect();
        let tx = t.apply(&x);
        let tty = t.apply_transpose(&y);
        let a: f64 = tx.iter().zip(&y).map(|(p, q)| p * q).sum();
        let b: f64 = x.iter().zip(&tty).map(|(p, q)| p * q).sum();
        assert!((a - b).abs() < 1e-9 * a.abs().max(1.0));
        let c = g.weights();
        let p = t.gram(&c);
        let px = p.mul_vec(&x);
        let direct: Vec<f64> = t.apply_transpose(&tx.iter().zip(&c).map(|(v, w)| v * w).collect::<Vec<_>>());
        for (u, v) in px.iter().zip(&direct) {
            assert!((u - v).abs() < 1e-9 * v.abs().max(1.0));
        }
    }

    #[test]
    fn constant_has_full_measure() {
        let g = Geometry::radial(2, 1.0, 200).unwrap();
        let u = GridFunction::constant(g, BoundaryKind::Navier, 0.5).unwrap();
        let e = discrete_energy(&u, 1.0, 1e-9).unwrap();
        assert!(e.dirichlet_part < 1e-18);
        assert!((e.measure_part - PI).abs() < 1e-12);
        let z = GridFunction::new(g, alloc::vec![0.0; 200], BoundaryKind::Navier, 0.5).unwrap();
        assert_eq!(discrete_energy(&z, 1.0, 1e-3).unwrap().total, 0.0);
        let f = extract_flat_set(&u, 1e-8).unwrap();
        assert_eq!(f.measure, 0.0);
        assert_eq!(f.radius_estimate, None);
    }

    #[test]
    fn enforce_is_idempotent_and_keeps_interior() {
        let g = Geometry::interval(1.0, 20).unwrap();
        let v: Vec<f64> = (0..20).map(|i| i as f64).collect();
        let u = GridFunction::new(g, v.clone(), BoundaryKind::Dirichlet, 7.0).unwrap();
        let a = enforce_boundary(&u);
        assert_eq!(a.values[0], 7.0);
        assert_eq!(a.values[19], 7.0);
        assert_eq!(&a.values[1..19], &v[1..19]);
        assert_eq!(enforce_boundary(&a), a);
    }

    #[test]
    fn interval_flat_radius() {
        let g = Geometry::interval(2.0, 401).unwrap();
        let u = GridFunction::sample(g, BoundaryKind::Navier, 1.0, |r| if r <= 0.75 { 0.0 } else { r - 0.75 }).unwrap();
        let f = extract_flat_set(&u, 1e-12).unwrap();
        let h = g.spacing();
        assert!((f.measure - 1.5).abs() <= 1.000001 * h, "{f:?}");
        assert!((f.radius_estimate.unwrap() - 0.75).abs() <= 1.000001 * h);
    }
}
