use serde::Serialize;

use flatset_core::diagnostics::{dirichlet_lower_bound, laplacian_jump, stampacchia_check, DiagnosticReport, Relation};
use flatset_core::grid::Geometry;
use flatset_core::quadrature::QuadConfig;
use flatset_core::radial::{CandidateResiduals, RadialCandidate};
use flatset_core::rearrangement::symmetry_certificate;
use flatset_core::{BoundaryKind, EnergyBreakdown, Verdict};

use super::{certificate_check, positive, sample, upper_bound, Check, Outcome};
use crate::args::{Format, VerifyArgs};
use crate::error::{CliError, CliResult};
use crate::output::to_json;

/// Residual tolerance relative to `max(1, max|C_k|)`.
pub const RESIDUAL_TOLERANCE: f64 = 1e-9;

#[derive(Serialize)]
struct Report {
    candidate: RadialCandidate,
    lambda: f64,
    energy: EnergyBreakdown,
    residuals: CandidateResiduals,
    diagnostics: Vec<Check>,
}

fn residual_check(candidate: &RadialCandidate) -> (CandidateResiduals, DiagnosticReport) {
    let res = candidate.residuals();
    let scale = candidate.coeffs.iter().fold(1.0f64, |a, c| a.max(c.abs()));
    let tol = RESIDUAL_TOLERANCE * scale;
    let report = DiagnosticReport {
        name: "defining_conditions".into(),
        lhs: res.max_abs(),
        rhs: tol,
        relation: Relation::Le,
        verdict: Verdict::from_bool(res.max_abs() <= tol),
        context: "matching at ρ and boundary data at R".into(),
        flags: Vec::new(),
    };
    (res, report)
}

pub fn run(args: &VerifyArgs, format: Format) -> CliResult<Outcome> {
    if format == Format::Csv {
        return Err(CliError::invalid("format", "verify writes a JSON report"));
    }
    let lambda = positive("lambda", args.lambda)?;
    let text = std::fs::read_to_string(&args.input).map_err(|e| CliError::io(&args.input, e))?;
    let candidate: RadialCandidate = serde_json::from_str(&text).map_err(|e| CliError::json(&args.input, &e))?;
    candidate.validate()?;
    let r = candidate.outer_radius;
    let geometry = if candidate.n == 1 {
        Geometry::interval(r, args.m.unwrap_or(4096))?
    } else {
        Geometry::radial(candidate.n, r, args.m.unwrap_or(2048))?
    };

    let energy = candidate.energy(lambda, &QuadConfig::default())?;
    let navier = candidate.bc_kind == BoundaryKind::Navier;
    let (residuals, res_check) = residual_check(&candidate);
    let sampled = sample(&candidate, geometry)?;
    let mut checks = vec![
        Check::new("candidate", res_check),
        Check::new("candidate", upper_bound(energy.total, lambda * geometry.domain_measure(), navier)?),
    ];
    if !navier {
        let bound = dirichlet_lower_bound(0.0, geometry.domain_measure(), energy.total)?;
        checks.push(Check::new("candidate", bound));
    }
    checks.push(Check::new("candidate", laplacian_jump(&candidate)?));
    checks.push(Check::new("candidate", stampacchia_check(&sampled, 1e-8 * candidate.u0)?));
    if candidate.n >= 2 {
        let cert = symmetry_certificate(&sampled, candidate.u0)?;
        checks.push(Check::new("candidate", certificate_check(&cert)));
    }

    let report = Report { candidate, lambda, energy, residuals, diagnostics: checks };
    Ok(Outcome::new(to_json(&report), &report.diagnostics))
}
