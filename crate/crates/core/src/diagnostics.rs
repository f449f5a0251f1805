//! Executable checks of the energy bounds and qualitative claims, applied
//! to closed-form candidates and solver output alike.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{require, Error, Result};
use crate::grid::{Geometry, GridFunction};
use crate::math::{abs, cos, powi, sin, sqrt, unit_ball_volume, unit_sphere_area};
use crate::quadrature::{integrate, QuadConfig};
use crate::radial::{infimum_navier2d, Decision, RadialCandidate};
use crate::{BoundaryKind, Verdict};

/// How `lhs` is compared with `rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Relation {
    Le,
    Ge,
    Eq,
    /// A sign condition described in the report's context.
    Sign,
}

impl core::fmt::Display for Relation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "==",
            Relation::Sign => "sign",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DiagnosticReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub relation: Relation,
    pub verdict: Verdict,
    pub context: String,
    /// Named side results, e.g. the dichotomy flag of the Navier bound.
    pub flags: Vec<(String, bool)>,
}

impl DiagnosticReport {
    fn new(name: &str, lhs: f64, rhs: f64, relation: Relation, verdict: Verdict, context: String) -> Self {
        Self { name: name.into(), lhs, rhs, relation, verdict, context, flags: Vec::new() }
    }

    fn with_flag(mut self, name: &str, value: bool) -> Self {
        self.flags.push((name.into(), value));
        self
    }

    pub fn flag(&self, name: &str) -> Option<bool> {
        self.flags.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

const BOUND_SLACK: f64 = 1e-9;

/// `F ≤ |Ω|` under Navier data: the constant datum is admissible and
/// harmonic. When the inequality is strict the flat set of a minimiser is
/// nonempty, reported as the `dichotomy` flag.
pub fn navier_upper_bound(energy_total: f64, domain_measure: f64) -> Result<DiagnosticReport> {
    require("energy_total", energy_total, "energy_total >= 0", |e| e >= 0.0)?;
    require("domain_measure", domain_measure, "domain_measure >= 0", |m| m >= 0.0)?;
    let pass = energy_total <= domain_measure + BOUND_SLACK;
    Ok(DiagnosticReport::new(
        "navier_upper_bound",
        energy_total,
        domain_measure,
        Relation::Le,
        Verdict::from_bool(pass),
        format!("energy {energy_total:e} against |Ω| = {domain_measure:e}"),
    )
    .with_flag("dichotomy", energy_total < domain_measure))
}

/// `F ≥ (∫_∂Ω ∇φ·ν)²/|Ω|` under Dirichlet data.
pub fn dirichlet_lower_bound(
    boundary_flux_integral: f64,
    domain_measure: f64,
    energy_total: f64,
) -> Result<DiagnosticReport> {
    require("domain_measure", domain_measure, "domain_measure > 0", |m| m > 0.0)?;
    require("boundary_flux_integral", boundary_flux_integral, "finite flux", |_| true)?;
    require("energy_total", energy_total, "finite energy", |_| true)?;
    let bound = boundary_flux_integral * boundary_flux_integral / domain_measure;
    Ok(DiagnosticReport::new(
        "dirichlet_lower_bound",
        energy_total,
        bound,
        Relation::Ge,
        Verdict::from_bool(energy_total >= bound - BOUND_SLACK),
        format!("flux {boundary_flux_integral:e}, |Ω| = {domain_measure:e}"),
    ))
}

/// Template used for the flat-set bound on `Ω = B_2`: zero on `B_1`,
/// `u0·s²(3 − 2s)` with `s = |x| − 1` on the shell, so it is `C¹`, equals
/// `u0` with zero slope at `|x| = 2`.
pub fn flat_template(u0: f64, r: f64) -> f64 {
    if r <= 1.0 {
        0.0
    } else {
        let s = r - 1.0;
        u0 * s * s * (3.0 - 2.0 * s)
    }
}

/// `∫_{B_2} (Δv)²` for [`flat_template`] in dimension `n`.
pub fn flat_template_constant(n: u32, u0: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("n", 0.0, "dimension >= 1"));
    }
    require("u0", u0, "finite u0", |_| true)?;
    let k = n as f64 - 1.0;
    let q = integrate(
        |r| {
            let s = r - 1.0;
            let d1 = 6.0 * s - 6.0 * s * s;
            let d2 = 6.0 - 12.0 * s;
            let lap = d2 + k / r * d1;
            lap * lap * powi(r, n as i32 - 1)
        },
        1.0,
        2.0,
        &QuadConfig::default(),
    );
    Ok(u0 * u0 * unit_sphere_area(n) * q.value)
}

/// The bound `(e_n R⁴ − C1)·R^{n−4}` on the flat-set measure of any
/// minimiser on the scaled domain. When `measured` is given the verdict
/// compares it with the bound; a nonpositive bound is flagged `vacuous`.
pub fn flat_set_lower_bound(r: f64, c1: f64, n: u32, measured: Option<f64>) -> Result<DiagnosticReport> {
    require("R", r, "R > 0", |r| r > 0.0)?;
    require("C1", c1, "C1 > 0", |c| c > 0.0)?;
    if n == 0 {
        return Err(Error::domain("n", 0.0, "dimension >= 1"));
    }
    let en = unit_ball_volume(n);
    let raw = (en * powi(r, 4) - c1) * powi(r, n as i32 - 4);
    let vacuous = raw <= 0.0;
    let bound = if vacuous { 0.0 } else { raw };
    let (lhs, verdict) = match measured {
        Some(m) => {
            require("measured", m, "measured >= 0", |m| m >= 0.0)?;
            (m, Verdict::from_bool(m >= bound - BOUND_SLACK * bound.max(1.0)))
        }
        None => (bound, Verdict::NotApplicable),
    };
    Ok(DiagnosticReport::new(
        "flat_set_lower_bound",
        lhs,
        bound,
        Relation::Ge,
        verdict,
        format!("R = {r}, C1 = {c1:e}, n = {n}, threshold R = {:e}", sqrt(sqrt(c1 / en))),
    )
    .with_flag("vacuous", vacuous))
}

/// Discrete second derivatives at node `i`: `u''` and, on balls, `u'/r`.
fn hessian_parts(u: &GridFunction, i: usize) -> (f64, f64) {
    let v = &u.values;
    let h = u.geometry.spacing();
    match u.geometry {
        Geometry::RadialDisk { .. } if i == 0 => (2.0 * (v[1] - v[0]) / (h * h), 2.0 * (v[1] - v[0]) / (h * h)),
        Geometry::RadialDisk { .. } => {
            let r = u.geometry.radius_of(i);
            ((v[i + 1] - 2.0 * v[i] + v[i - 1]) / (h * h), (v[i + 1] - v[i - 1]) / (2.0 * h * r))
        }
        Geometry::Interval { .. } => ((v[i + 1] - 2.0 * v[i] + v[i - 1]) / (h * h), 0.0),
    }
}

/// Second derivatives vanish on the flat set: the sup of the discrete
/// `|D²u|` over flat nodes at least two cells inside `{|u| < threshold}`
/// must be below `10·h²·scale`, where `scale` is the sup of `|D²u|` over
/// all interior nodes (floored at `u0/R²`).
pub fn stampacchia_check(u: &GridFunction, flat_threshold: f64) -> Result<DiagnosticReport> {
    require("flat_threshold", flat_threshold, "flat_threshold > 0", |t| t > 0.0)?;
    let m = u.values.len();
    let h = u.geometry.spacing();
    let flat: Vec<bool> = u.values.iter().map(|v| abs(*v) < flat_threshold).collect();
    let last = m - 1;
    let interior_end = match u.geometry {
        Geometry::Interval { .. } => 1..last,
        Geometry::RadialDisk { .. } => 0..last,
    };
    let lo = interior_end.start;
    let mut scale = abs(u.u0) / (u.geometry.outer_radius() * u.geometry.outer_radius());
    let mut worst = 0.0f64;
    let mut count = 0usize;
    for i in interior_end {
        let (a, b) = hessian_parts(u, i);
        let size = abs(a).max(abs(b));
        scale = scale.max(size);
        // nodes within two cells, reflected through the centre on balls
        let deep = (0..=2usize).all(|k| {
            let left = if i >= k {
                Some(i - k)
            } else if lo == 0 {
                Some(k - i)
            } else {
                None
            };
            let right = i + k;
            left.is_some_and(|j| flat[j]) && right <= last && flat[right]
        });
        if deep {
            worst = worst.max(size);
            count += 1;
        }
    }
    let tol = 10.0 * h * h * scale;
    let verdict = if count == 0 { Verdict::NotApplicable } else { Verdict::from_bool(worst < tol) };
    Ok(DiagnosticReport::new(
        "stampacchia_check",
        worst,
        tol,
        Relation::Le,
        verdict,
        format!("{count} interior flat nodes, threshold {flat_threshold:e}"),
    ))
}

/// `Δu` jumps across the free boundary: `Δu(ρ⁻) = 0` while `Δu(ρ⁺) ≠ 0`.
/// Under Dirichlet data `Δu(ρ⁺)·Δu(R⁻) < 0` is required as well.
pub fn laplacian_jump(candidate: &RadialCandidate) -> Result<DiagnosticReport> {
    candidate.validate()?;
    let u0 = candidate.u0;
    if candidate.is_constant() || !(candidate.rho > 0.0) {
        return Ok(DiagnosticReport::new(
            "laplacian_jump",
            0.0,
            0.0,
            Relation::Sign,
            Verdict::NotApplicable,
            "constant candidate has no free boundary".into(),
        ));
    }
    let inner = candidate.laplacian_outer(candidate.rho);
    let outer = candidate.laplacian_outer(candidate.outer_radius);
    let jump = abs(inner) > 1e-6 * abs(u0);
    let (pass, context) = match candidate.bc_kind {
        BoundaryKind::Navier => (jump, format!("Δu(ρ⁺) = {inner:e}, Δu(R) = {outer:e}")),
        BoundaryKind::Dirichlet => (
            jump && inner * outer < 0.0,
            format!("Δu(ρ⁺) = {inner:e}, Δu(R⁻) = {outer:e}, product {:e}", inner * outer),
        ),
    };
    Ok(DiagnosticReport::new("laplacian_jump", inner, 0.0, Relation::Sign, Verdict::from_bool(pass), context)
        .with_flag("jump", jump))
}

/// Linear interpolation of nodal samples in the radius.
fn interp(geometry: &Geometry, values: &[f64], x: f64) -> f64 {
    let h = geometry.spacing();
    let (t, base) = match *geometry {
        Geometry::Interval { half_length, .. } => ((x + half_length) / h, 0usize),
        Geometry::RadialDisk { .. } => (abs(x) / h, 0usize),
    };
    let last = values.len() - 1;
    let k = (t.max(0.0) as usize).min(last.saturating_sub(1)) + base;
    let f = (t - k as f64).clamp(0.0, 1.0);
    values[k] * (1.0 - f) + values[k + 1] * f
}

const BMO_RADIAL_POINTS: usize = 48;
const BMO_ANGULAR_POINTS: usize = 48;
const BMO_CENTRES: usize = 33;

/// For each `r`, the largest `∫_{B_r(x0)} |Δ_h u − mean|² / rⁿ` over centres
/// with `dist(x0, ∂Ω) ≥ 3r`. Radii without an admissible centre are
/// skipped. Centres are sampled on a ray (the grid functions are radial) or
/// across the interval; the integrals use midpoint rules in polar
/// coordinates about `x0` and linear interpolation of `Δ_h u`.
pub fn bmo_profile(u: &GridFunction, radii: &[f64]) -> Result<Vec<(f64, f64)>> {
    let lap = crate::grid::discrete_laplacian(u)?;
    let geometry = u.geometry;
    let big_r = geometry.outer_radius();
    let n = geometry.dimension();
    let mut out = Vec::new();
    for &r in radii {
        require("radii", r, "positive radii", |r| r > 0.0)?;
        let reach = big_r - 3.0 * r;
        if reach < 0.0 {
            continue;
        }
        let mut best = 0.0f64;
        for c in 0..BMO_CENTRES {
            let frac = c as f64 / (BMO_CENTRES - 1) as f64;
            let x0 = match geometry {
                Geometry::Interval { .. } => -reach + 2.0 * reach * frac,
                Geometry::RadialDisk { .. } => reach * frac,
            };
            let samples = ball_samples(&geometry, &lap, x0, r, n);
            let total: f64 = samples.iter().map(|s| s.1).sum();
            let mean = samples.iter().map(|s| s.0 * s.1).sum::<f64>() / total;
            let volume = unit_ball_volume(n) * powi(r, n as i32);
            let osc: f64 = samples.iter().map(|s| (s.0 - mean) * (s.0 - mean) * s.1).sum::<f64>() / total * volume;
            best = best.max(osc / powi(r, n as i32));
        }
        out.push((r, best));
    }
    Ok(out)
}

/// `(value, weight)` quadrature samples of `Δ_h u` over `B_r(x0)`.
fn ball_samples(geometry: &Geometry, lap: &[f64], x0: f64, r: f64, n: u32) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(BMO_RADIAL_POINTS * BMO_ANGULAR_POINTS);
    if n == 1 {
        let pts = BMO_RADIAL_POINTS * BMO_ANGULAR_POINTS;
        for k in 0..pts {
            let x = x0 - r + 2.0 * r * (k as f64 + 0.5) / pts as f64;
            out.push((interp(geometry, lap, x), 1.0));
        }
        return out;
    }
    // |x0 + t·e| with angle φ to the ray, weight t^{n−1} sin^{n−2} φ
    for a in 0..BMO_RADIAL_POINTS {
        let t = r * (a as f64 + 0.5) / BMO_RADIAL_POINTS as f64;
        for b in 0..BMO_ANGULAR_POINTS {
            let phi = core::f64::consts::PI * (b as f64 + 0.5) / BMO_ANGULAR_POINTS as f64;
            let dist = sqrt(x0 * x0 + t * t + 2.0 * x0 * t * cos(phi));
            let weight = powi(t, n as i32 - 1) * powi(sin(phi), n as i32 - 2);
            out.push((interp(geometry, lap, dist), weight));
        }
    }
    out
}

/// `inf f_1(u0, ·)` over an increasing grid of data on the unit disk under
/// Navier conditions must be nondecreasing, strictly increasing while the
/// minimiser has a flat core, and equal to `π` once saturated.
pub fn infimum_monotonicity(u0_grid: &[f64]) -> Result<DiagnosticReport> {
    for w in u0_grid.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::domain("u0_grid", w[1], "a strictly increasing grid"));
        }
    }
    let pi = core::f64::consts::PI;
    let mut values = Vec::with_capacity(u0_grid.len());
    for &u0 in u0_grid {
        let rep = infimum_navier2d(u0, 1.0)?;
        values.push((u0, rep.energy.total, rep.decision));
    }
    let mut min_step = f64::INFINITY;
    let mut ok = true;
    for (k, &(_, e, d)) in values.iter().enumerate() {
        if d == Decision::Constant && abs(e - pi) > 1e-12 {
            ok = false;
        }
        if k > 0 {
            let (_, prev, pd) = values[k - 1];
            let step = e - prev;
            min_step = min_step.min(step);
            if step < 0.0 {
                ok = false;
            }
            if (d == Decision::FreeBoundary || pd == Decision::FreeBoundary) && step <= 1e-10 {
                ok = false;
            }
        }
    }
    let saturated = values.iter().filter(|v| v.2 == Decision::Constant).count();
    Ok(DiagnosticReport::new(
        "infimum_monotonicity",
        if min_step.is_finite() { min_step } else { 0.0 },
        0.0,
        Relation::Ge,
        Verdict::from_bool(ok),
        format!("{} data, {saturated} saturated at π", values.len()),
    ))
}
