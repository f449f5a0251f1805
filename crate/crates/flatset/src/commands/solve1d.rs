use serde::Serialize;

use flatset_core::diagnostics::{laplacian_jump, stampacchia_check};
use flatset_core::grid::{Geometry, EXACT_ZERO};
use flatset_core::penalised::minimise_penalised;
use flatset_core::radial::{minimiser_1d_scaled, MinimiserReport, RadialCandidate};
use flatset_core::BoundaryKind;

use super::{converged_check, positive, sample, schedule, upper_bound, Check, Discrepancy, Outcome, SolverSummary};
use crate::args::{Format, Solve1dArgs};
use crate::error::{CliError, CliResult};
use crate::output::to_json;

#[derive(Serialize)]
struct Config {
    #[serde(rename = "R")]
    r: f64,
    u0: f64,
    lambda: f64,
    m: usize,
}

#[derive(Serialize)]
struct Report {
    config: Config,
    closed_form: MinimiserReport,
    /// `ρ_opt / R`, zero for the constant minimiser.
    flat_ratio: f64,
    penalised: Option<SolverSummary>,
    discrepancy: Option<Discrepancy>,
    diagnostics: Vec<Check>,
}

pub fn run(args: &Solve1dArgs, format: Format) -> CliResult<Outcome> {
    if format == Format::Csv {
        return Err(CliError::invalid("format", "solve1d writes a JSON report"));
    }
    let r = positive("R", args.r)?;
    positive("u0", args.u0)?;
    positive("lambda", args.lambda)?;
    let sched = schedule(&args.schedule)?;
    let geometry = Geometry::interval(r, args.m)?;

    let closed = minimiser_1d_scaled(r, args.u0, args.lambda)?;
    let lambda_measure = args.lambda * 2.0 * r;
    let candidate = closed.candidate.unwrap_or_else(|| RadialCandidate::constant(1, r, BoundaryKind::Navier, args.u0));
    let sampled = sample(&candidate, geometry)?;
    let mut checks = vec![
        Check::new("closed_form", upper_bound(closed.energy.total, lambda_measure, true)?),
        Check::new("closed_form", laplacian_jump(&candidate)?),
        Check::new("closed_form", stampacchia_check(&sampled, 1e-8 * args.u0)?),
    ];

    let (penalised, discrepancy) = if args.skip_solver {
        (None, None)
    } else {
        let solve = minimise_penalised(geometry, BoundaryKind::Navier, args.u0, args.lambda, &sched)?;
        checks.push(Check::new("penalised", converged_check(&solve)));
        checks.push(Check::new("penalised", upper_bound(solve.energy.total, lambda_measure, true)?));
        checks.push(Check::new("penalised", stampacchia_check(&solve.u, EXACT_ZERO)?));
        let d = Discrepancy::new(closed.energy.total, closed.rho_opt, &solve);
        (Some(SolverSummary::from(&solve)), Some(d))
    };

    let report = Report {
        config: Config { r, u0: args.u0, lambda: args.lambda, m: args.m },
        flat_ratio: closed.rho_opt.map_or(0.0, |rho| rho / r),
        closed_form: closed,
        penalised,
        discrepancy,
        diagnostics: checks,
    };
    Ok(Outcome::new(to_json(&report), &report.diagnostics))
}
