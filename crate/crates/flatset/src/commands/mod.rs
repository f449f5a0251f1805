pub mod grid;
pub mod radial;
pub mod rearrange;
pub mod solve1d;
pub mod sweep;
pub mod verify;

use serde::Serialize;

use flatset_core::diagnostics::{navier_upper_bound, DiagnosticReport, Relation};
use flatset_core::grid::{Geometry, GridFunction};
use flatset_core::penalised::{PenaltySchedule, Seed, SolveResult};
use flatset_core::radial::RadialCandidate;
use flatset_core::rearrangement::CertificateReport;
use flatset_core::{EnergyBreakdown, Verdict};

use crate::args::ScheduleArgs;
use crate::error::{CliError, CliResult};

/// A diagnostic together with the object it was run on.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub subject: String,
    #[serde(flatten)]
    pub report: DiagnosticReport,
}

impl Check {
    pub fn new(subject: &str, report: DiagnosticReport) -> Self {
        Self { subject: subject.into(), report }
    }

    pub fn failed(&self) -> bool {
        self.report.verdict == Verdict::Fail
    }

    pub fn label(&self) -> String {
        format!("{}/{}", self.subject, self.report.name)
    }
}

/// Text to emit plus the labels of failed checks.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub failures: Vec<String>,
}

impl Outcome {
    pub fn new(text: String, checks: &[Check]) -> Self {
        Self { text, failures: checks.iter().filter(|c| c.failed()).map(Check::label).collect() }
    }
}

pub fn positive(field: &str, value: f64) -> CliResult<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(CliError::invalid(field, format!("{value} must be a positive finite number")))
    }
}

/// `1e-1, 3e-2, 1e-2, …` down to `floor`, which is always the last entry.
pub fn schedule(args: &ScheduleArgs) -> CliResult<PenaltySchedule> {
    let floor = args.eps_floor;
    if !(floor.is_finite() && (1e-8..=0.1).contains(&floor)) {
        return Err(CliError::invalid("eps-floor", format!("{floor} must lie in [1e-8, 0.1]")));
    }
    positive("inner-tol", args.inner_tol)?;
    if args.max_inner_iters == 0 {
        return Err(CliError::invalid("max-inner-iters", "must be at least 1"));
    }
    let mut epsilons = Vec::new();
    let mut e = 1e-1;
    while e > floor {
        for x in [e, 0.3 * e] {
            if x > floor * (1.0 + 1e-9) {
                epsilons.push(x);
            }
        }
        e *= 0.1;
    }
    epsilons.push(floor);
    Ok(PenaltySchedule { epsilons, inner_tol: args.inner_tol, max_inner_iters: args.max_inner_iters })
}

/// The solver result without the grid values.
#[derive(Debug, Clone, Serialize)]
pub struct SolverSummary {
    pub geometry: Geometry,
    pub energy: EnergyBreakdown,
    pub flat_measure: f64,
    pub flat_radius_estimate: Option<f64>,
    pub flat_threshold: f64,
    pub converged: bool,
    pub iterations: usize,
    pub seed: Seed,
}

impl From<&SolveResult> for SolverSummary {
    fn from(s: &SolveResult) -> Self {
        Self {
            geometry: s.u.geometry,
            energy: s.energy,
            flat_measure: s.flat_measure,
            flat_radius_estimate: s.flat_radius_estimate,
            flat_threshold: s.flat_threshold,
            converged: s.converged,
            iterations: s.iterations,
            seed: s.seed,
        }
    }
}

/// Closed form minus penalised solve.
#[derive(Debug, Clone, Serialize)]
pub struct Discrepancy {
    pub energy: f64,
    pub flat_radius: Option<f64>,
}

impl Discrepancy {
    pub fn new(closed_energy: f64, closed_rho: Option<f64>, solve: &SolveResult) -> Self {
        Self {
            energy: closed_energy - solve.energy.total,
            flat_radius: match (closed_rho, solve.flat_radius_estimate) {
                (Some(a), Some(b)) => Some(a - b),
                _ => None,
            },
        }
    }
}

pub fn converged_check(solve: &SolveResult) -> DiagnosticReport {
    DiagnosticReport {
        name: "solver_converged".into(),
        lhs: solve.iterations as f64,
        rhs: 0.0,
        relation: Relation::Sign,
        verdict: Verdict::from_bool(solve.converged),
        context: format!("{} descent iterations", solve.iterations),
        flags: Vec::new(),
    }
}

/// `F ≤ λ|Ω|`: the constant datum is admissible for either boundary
/// condition. Under Navier data this is the bound with its dichotomy flag.
pub fn upper_bound(energy: f64, lambda_measure: f64, navier: bool) -> CliResult<DiagnosticReport> {
    let mut r = navier_upper_bound(energy, lambda_measure)?;
    if !navier {
        r.name = "constant_upper_bound".into();
        r.flags.clear();
    }
    Ok(r)
}

pub fn certificate_check(c: &CertificateReport) -> DiagnosticReport {
    DiagnosticReport {
        name: "symmetry_certificate".into(),
        lhs: c.w_one,
        rhs: c.u0,
        relation: Relation::Ge,
        verdict: c.verdict,
        context: format!("w(1) - u0 = {:e}, flat measure {:e}, hole radius {:e}", c.gap, c.flat_measure, c.r0),
        flags: Vec::new(),
    }
}

/// The candidate sampled on `geometry` with its boundary datum.
pub fn sample(candidate: &RadialCandidate, geometry: Geometry) -> CliResult<GridFunction> {
    Ok(GridFunction::sample(geometry, candidate.bc_kind, candidate.u0, |r| candidate.eval(r))?)
}

pub fn linspace(from: f64, to: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![from];
    }
    (0..points)
        .map(|k| if k + 1 == points { to } else { from + (to - from) * k as f64 / (points - 1) as f64 })
        .collect()
}
