//! Penalised discrete minimisation of `F_λ`.
//!
//! The indicator `1_{u≠0}` is replaced by `χ_ε(u) = u²/(u² + ε²)` and ε is
//! driven down a geometric schedule, each stage warm-started from the last.
//! Within a stage the smooth energy is minimised by preconditioned descent
//! with Armijo backtracking. The preconditioner is
//! `P = 2LᵀCL + λ·diag(c_j·max(χ_ε''(u_j), 0))`, i.e. the Hessian with the
//! concave part of the penalty dropped; it is symmetric positive definite
//! once the boundary rows are pinned, so `-P⁻¹∇E` is always a descent
//! direction.
//!
//! A stage stops when the sup-norm of the step falls below `inner_tol·u0`
//! or when three consecutive accepted steps change the energy by less than
//! a few ulps. The step cannot shrink further than the conditioning of `P`
//! allows (about `1e-8·u0` at `m = 4096`), so the second test is what ends
//! most coarse stages.
//!
//! After the last stage, `{|u| < 10·ε_floor·u0}` is taken as a zero set, the
//! biharmonic part is minimised exactly with `u = 0` there, and single nodes
//! are moved across the edge of the zero set while the sharp energy
//! `Σ c(Δu)² + λ·|{u ≠ 0}|` decreases. That sharp energy is what is reported.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{require, Error, Result};
use crate::grid::{
    discrete_energy, discrete_energy_gradient, discrete_energy_sharp, enforce_boundary, extract_flat_set, Geometry,
    GridFunction, EXACT_ZERO,
};
use crate::math::abs;
use crate::radial::{
    infimum_dirichlet2d_with, infimum_navier2d_with, minimiser_1d_scaled, rescale_disk_candidate, RadialCandidate,
};
use crate::search::GridGolden;
use crate::{BoundaryKind, EnergyBreakdown};

/// Continuation schedule. `epsilons` are relative to `u0`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PenaltySchedule {
    pub epsilons: Vec<f64>,
    /// Stop a stage once the sup-norm of the preconditioned step is below
    /// `inner_tol·u0`.
    pub inner_tol: f64,
    pub max_inner_iters: usize,
}

impl Default for PenaltySchedule {
    fn default() -> Self {
        let mut epsilons = Vec::new();
        let mut e = 1e-1;
        while e >= 0.99e-6 {
            epsilons.push(e);
            epsilons.push(e * 0.3);
            e *= 0.1;
        }
        epsilons.retain(|&x| x >= 0.99e-6);
        Self { epsilons, inner_tol: 1e-8, max_inner_iters: 2000 }
    }
}

impl PenaltySchedule {
    pub fn validate(&self) -> Result<()> {
        if self.epsilons.is_empty() {
            return Err(Error::domain("epsilons", 0.0, "a nonempty schedule"));
        }
        for w in self.epsilons.windows(2) {
            if !(w[1] < w[0]) {
                return Err(Error::domain("epsilons", w[1], "strictly decreasing values"));
            }
        }
        for &e in &self.epsilons {
            require("epsilons", e, "relative epsilons >= 1e-8", |e| e >= 1e-8)?;
        }
        require("inner_tol", self.inner_tol, "inner_tol > 0", |t| t > 0.0)?;
        if self.max_inner_iters == 0 {
            return Err(Error::domain("max_inner_iters", 0.0, "at least one iteration"));
        }
        Ok(())
    }

    /// Smallest relative ε.
    pub fn floor(&self) -> f64 {
        self.epsilons.last().copied().unwrap_or(1e-6)
    }
}

/// Which starting point produced the reported state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Seed {
    /// Continuation from `u ≡ u0`.
    Constant,
    /// The closed-form radial candidate, sampled on the grid.
    ClosedForm,
}

/// Accepted smooth energies of one ε stage.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StageTrace {
    /// Absolute ε.
    pub epsilon: f64,
    pub energies: Vec<f64>,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SolveResult {
    pub u: GridFunction,
    /// Energy with the sharp indicator `1_{u ≠ 0}`.
    pub energy: EnergyBreakdown,
    pub flat_measure: f64,
    pub flat_radius_estimate: Option<f64>,
    /// Threshold defining the flat set, `10·ε_floor·u0`.
    pub flat_threshold: f64,
    pub converged: bool,
    pub iterations: usize,
    pub seed: Seed,
    #[cfg_attr(feature = "serde", serde(skip))]
    pub trace: Vec<StageTrace>,
}

struct Problem {
    geometry: Geometry,
    bc: BoundaryKind,
    u0: f64,
    lambda: f64,
    fixed: Vec<bool>,
}

impl Problem {
    fn grid(&self, values: Vec<f64>) -> GridFunction {
        GridFunction { geometry: self.geometry, values, bc_kind: self.bc, u0: self.u0 }
    }

    fn smooth_energy(&self, x: &[f64], eps: f64) -> f64 {
        discrete_energy(&self.grid(x.to_vec()), self.lambda, eps).map(|e| e.total).unwrap_or(f64::INFINITY)
    }
}

struct StageOutcome {
    x: Vec<f64>,
    trace: StageTrace,
    iterations: usize,
}

fn descend(p: &Problem, x0: Vec<f64>, eps: f64, sched: &PenaltySchedule) -> Result<StageOutcome> {
    let mut x = x0;
    let op = p.geometry.laplacian_operator(p.bc);
    let w = p.geometry.weights();
    let hess = op.gram(&w.iter().map(|c| 2.0 * c).collect::<Vec<_>>());
    let mut e = p.smooth_energy(&x, eps);
    let mut trace = StageTrace { epsilon: eps, energies: vec![e], converged: false };
    let mut iterations = 0;
    let mut stalls = 0;
    let tol = sched.inner_tol * p.u0;
    while iterations < sched.max_inner_iters {
        iterations += 1;
        let mut g = discrete_energy_gradient(&p.grid(x.clone()), p.lambda, eps)?;
        let mut pre = hess.clone();
        for j in 0..x.len() {
            if p.fixed[j] {
                g[j] = 0.0;
                pre.pin(j);
            } else {
                let s = x[j] * x[j] + eps * eps;
                let e2 = eps * eps;
                let curv = (2.0 * e2 * (e2 - 3.0 * x[j] * x[j]) / (s * s * s)).max(0.0);
                pre.d0[j] += p.lambda * w[j] * curv;
            }
        }
        let mut d = pre.solve(&g)?;
        for v in d.iter_mut() {
            *v = -*v;
        }
        let step_norm = d.iter().fold(0.0f64, |a, v| a.max(abs(*v)));
        if step_norm <= tol {
            trace.converged = true;
            break;
        }
        let slope: f64 = g.iter().zip(&d).map(|(a, b)| a * b).sum();
        if !(slope < 0.0) {
            // no descent direction left at working precision
            trace.converged = true;
            break;
        }
        let mut alpha = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let trial: Vec<f64> = x.iter().zip(&d).map(|(a, b)| a + alpha * b).collect();
            let et = p.smooth_energy(&trial, eps);
            if et <= e + 1e-4 * alpha * slope {
                accepted = Some((trial, et));
                break;
            }
            alpha *= 0.5;
        }
        match accepted {
            Some((trial, et)) => {
                if e - et <= 4.0 * f64::EPSILON * abs(e) {
                    stalls += 1;
                } else {
                    stalls = 0;
                }
                x = trial;
                e = et;
                trace.energies.push(e);
                if stalls >= 3 {
                    // stationary to working precision
                    trace.converged = true;
                    break;
                }
            }
            None => {
                // the step is below resolution of the energy
                trace.converged = step_norm <= 1e3 * tol;
                break;
            }
        }
    }
    Ok(StageOutcome { x, trace, iterations })
}

/// Minimiser of the biharmonic part with `u = 0` on `zero` and the boundary
/// data held, together with its sharp energy `Σ c(Δu)² + λ·|{u ≠ 0}|`.
fn solve_with_zero_set(p: &Problem, x: &[f64], zero: &[bool]) -> Result<(Vec<f64>, EnergyBreakdown)> {
    let op = p.geometry.laplacian_operator(p.bc);
    let w = p.geometry.weights();
    let mut hess = op.gram(&w);
    let pinned: Vec<bool> = (0..x.len()).map(|j| p.fixed[j] || zero[j]).collect();
    for j in 0..x.len() {
        if pinned[j] {
            hess.pin(j);
        }
    }
    // Newton steps from x with the pinned values imposed. The residual is
    // formed as Lᵀ(C·Lu) rather than through the assembled Gram matrix,
    // whose O(h⁻⁴) entries would swamp it; the later passes then remove
    // the rounding of the factorisation.
    let mut u: Vec<f64> = (0..x.len()).map(|j| if zero[j] && !p.fixed[j] { 0.0 } else { x[j] }).collect();
    for _ in 0..3 {
        let lu = op.apply(&u);
        let cl: Vec<f64> = lu.iter().zip(&w).map(|(l, c)| -c * l).collect();
        let mut res = op.apply_transpose(&cl);
        for j in 0..x.len() {
            if pinned[j] {
                res[j] = 0.0;
            }
        }
        let d = hess.solve(&res)?;
        for j in 0..x.len() {
            u[j] += d[j];
        }
    }
    let e = discrete_energy_sharp(&p.grid(u.clone()), p.lambda, EXACT_ZERO)?;
    Ok((u, e))
}

/// Starts from the zero set `{|u| < threshold}` and moves single nodes
/// across its edge while the sharp energy decreases.
fn refine_zero_set(p: &Problem, x: &[f64], threshold: f64) -> Result<(Vec<f64>, EnergyBreakdown)> {
    let n = x.len();
    let mut zero: Vec<bool> = (0..n).map(|j| !p.fixed[j] && abs(x[j]) < threshold).collect();
    let (mut u, mut e) = solve_with_zero_set(p, x, &zero)?;
    loop {
        let mut best: Option<(usize, Vec<f64>, EnergyBreakdown)> = None;
        for j in 0..n {
            if p.fixed[j] {
                continue;
            }
            let edge = (j > 0 && zero[j - 1] != zero[j]) || (j + 1 < n && zero[j + 1] != zero[j]);
            if !edge {
                continue;
            }
            zero[j] = !zero[j];
            let (ut, et) = solve_with_zero_set(p, x, &zero)?;
            zero[j] = !zero[j];
            let current = best.as_ref().map_or(e.total, |b| b.2.total);
            if et.total < current {
                best = Some((j, ut, et));
            }
        }
        match best {
            Some((j, ut, et)) => {
                zero[j] = !zero[j];
                u = ut;
                e = et;
            }
            None => break,
        }
    }
    Ok((u, e))
}

fn finish(p: &Problem, x: Vec<f64>, threshold: f64) -> Result<(GridFunction, EnergyBreakdown)> {
    let (u, e) = refine_zero_set(p, &x, threshold)?;
    Ok((p.grid(u), e))
}

/// The closed-form minimiser's flat-core candidate for this problem, if
/// there is one.
pub fn closed_form_seed(geometry: &Geometry, bc: BoundaryKind, u0: f64, lambda: f64) -> Option<RadialCandidate> {
    match *geometry {
        Geometry::Interval { half_length, .. } if bc == BoundaryKind::Navier => {
            minimiser_1d_scaled(half_length, u0, lambda).ok()?.candidate
        }
        Geometry::RadialDisk { n: 2, radius, .. } => {
            // unit disk with λ·R⁴, mapped back by x ↦ x/R
            let lam = lambda * radius * radius * radius * radius;
            let rep = match bc {
                BoundaryKind::Navier => infimum_navier2d_with(u0, lam, &GridGolden::default()),
                BoundaryKind::Dirichlet => infimum_dirichlet2d_with(u0, lam, &GridGolden::default()),
            }
            .ok()?;
            rep.candidate.map(|c| rescale_disk_candidate(&c, radius))
        }
        _ => None,
    }
}

/// Minimises the penalised discrete energy. See the module docs.
pub fn minimise_penalised(
    geometry: Geometry,
    bc: BoundaryKind,
    u0: f64,
    lambda: f64,
    schedule: &PenaltySchedule,
) -> Result<SolveResult> {
    geometry.validate()?;
    schedule.validate()?;
    require("u0", u0, "u0 > 0", |u| u > 0.0)?;
    require("lambda", lambda, "lambda > 0", |l| l > 0.0)?;
    let mut fixed = vec![false; geometry.len()];
    for b in geometry.boundary_nodes() {
        fixed[b] = true;
    }
    let p = Problem { geometry, bc, u0, lambda, fixed };
    let threshold = 10.0 * schedule.floor() * u0;

    // continuation from the constant
    let mut x = vec![u0; geometry.len()];
    let mut trace = Vec::new();
    let mut iterations = 0;
    let mut converged = true;
    for &rel in &schedule.epsilons {
        let out = descend(&p, x, rel * u0, schedule)?;
        x = out.x;
        iterations += out.iterations;
        converged &= out.trace.converged;
        trace.push(out.trace);
    }
    let (mut best_u, mut best_e) = finish(&p, x, threshold)?;
    let mut seed = Seed::Constant;

    // closed-form seed, refined at the final ε only
    if let Some(c) = closed_form_seed(&geometry, bc, u0, lambda) {
        let start = enforce_boundary(&GridFunction::sample(geometry, bc, u0, |r| c.eval(r))?);
        let out = descend(&p, start.values, schedule.floor() * u0, schedule)?;
        let (u, e) = finish(&p, out.x, threshold)?;
        if e.total < best_e.total {
            best_u = u;
            best_e = e;
            seed = Seed::ClosedForm;
            iterations += out.iterations;
            converged = out.trace.converged;
            trace.push(out.trace);
        }
    }

    let flat = extract_flat_set(&best_u, threshold)?;
    Ok(SolveResult {
        u: best_u,
        energy: best_e,
        flat_measure: flat.measure,
        flat_radius_estimate: flat.radius_estimate,
        flat_threshold: threshold,
        converged,
        iterations,
        seed,
        trace,
    })
}
