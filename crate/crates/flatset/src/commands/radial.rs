use serde::Serialize;

use flatset_core::diagnostics::{dirichlet_lower_bound, laplacian_jump, stampacchia_check};
use flatset_core::grid::{Geometry, EXACT_ZERO};
use flatset_core::penalised::minimise_penalised;
use flatset_core::radial::{f_lambda, g_lambda, infimum_disk, MinimiserReport, RadialCandidate};
use flatset_core::rearrangement::symmetry_certificate;
use flatset_core::BoundaryKind;

use super::{
    certificate_check, converged_check, linspace, positive, sample, schedule, upper_bound, Check, Discrepancy, Outcome,
    SolverSummary,
};
use crate::args::{Format, RadialArgs};
use crate::error::{CliError, CliResult};
use crate::output::{float, to_json, Csv};

#[derive(Serialize)]
struct Config {
    bc: BoundaryKind,
    u0: f64,
    lambda: f64,
    #[serde(rename = "R")]
    r: f64,
    n: u32,
    m: usize,
}

#[derive(Serialize)]
struct CurvePoint {
    rho: f64,
    energy_total: f64,
    energy_dirichlet: f64,
    energy_measure: f64,
}

#[derive(Serialize)]
struct Report {
    config: Config,
    closed_form: MinimiserReport,
    /// Energy of the flat-core family against its core radius on `B_R`.
    curve: Vec<CurvePoint>,
    penalised: Option<SolverSummary>,
    discrepancy: Option<Discrepancy>,
    diagnostics: Vec<Check>,
}

/// Energy of the flat-core candidate with core radius `rho` on `B_r`,
/// obtained from the unit disk with `λr⁴`.
pub fn family_energy(bc: BoundaryKind, u0: f64, lambda: f64, r: f64, rho: f64) -> CliResult<[f64; 3]> {
    let scaled = lambda * r.powi(4);
    let e = match bc {
        BoundaryKind::Navier => f_lambda(u0, rho / r, scaled)?,
        BoundaryKind::Dirichlet => g_lambda(u0, rho / r, scaled)?,
    };
    let s = r.powi(-2);
    Ok([e.total * s, e.dirichlet_part * s, e.measure_part * s])
}

pub fn run(args: &RadialArgs, format: Format) -> CliResult<Outcome> {
    let bc = BoundaryKind::from(args.bc);
    positive("u0", args.u0)?;
    positive("lambda", args.lambda)?;
    let r = positive("R", args.r)?;
    if args.n != 2 {
        return Err(CliError::invalid("n", format!("{}: closed forms are available for n = 2 only", args.n)));
    }
    if args.curve_points == 0 {
        return Err(CliError::invalid("curve-points", "must be at least 1"));
    }
    let sched = schedule(&args.schedule)?;
    let geometry = Geometry::radial(2, r, args.m)?;

    let closed = infimum_disk(bc, args.u0, args.lambda, r)?;
    let curve = linspace(1e-3 * r, (1.0 - 1e-3) * r, args.curve_points)
        .into_iter()
        .map(|rho| {
            let [t, d, m] = family_energy(bc, args.u0, args.lambda, r, rho)?;
            Ok(CurvePoint { rho, energy_total: t, energy_dirichlet: d, energy_measure: m })
        })
        .collect::<CliResult<Vec<_>>>()?;

    if format == Format::Csv {
        let mut csv = Csv::new(&["rho", "energy_total", "energy_dirichlet", "energy_measure"]);
        for p in &curve {
            csv.row(&[float(p.rho), float(p.energy_total), float(p.energy_dirichlet), float(p.energy_measure)]);
        }
        return Ok(Outcome::new(csv.finish(), &[]));
    }

    let lambda_measure = args.lambda * geometry.domain_measure();
    let navier = bc == BoundaryKind::Navier;
    let candidate = closed.candidate.unwrap_or_else(|| RadialCandidate::constant(2, r, bc, args.u0));
    let sampled = sample(&candidate, geometry)?;
    let mut checks = vec![
        Check::new("closed_form", laplacian_jump(&candidate)?),
        Check::new("closed_form", certificate_check(&symmetry_certificate(&sampled, args.u0)?)),
        Check::new("closed_form", upper_bound(closed.energy.total, lambda_measure, navier)?),
    ];
    if !navier {
        // the boundary datum is constant, so the flux term vanishes
        let bound = dirichlet_lower_bound(0.0, geometry.domain_measure(), closed.energy.total)?;
        checks.push(Check::new("closed_form", bound));
    }
    checks.push(Check::new("closed_form", stampacchia_check(&sampled, 1e-8 * args.u0)?));

    let (penalised, discrepancy) = if args.skip_solver {
        (None, None)
    } else {
        let solve = minimise_penalised(geometry, bc, args.u0, args.lambda, &sched)?;
        checks.push(Check::new("penalised", converged_check(&solve)));
        checks.push(Check::new("penalised", upper_bound(solve.energy.total, lambda_measure, navier)?));
        checks.push(Check::new("penalised", stampacchia_check(&solve.u, EXACT_ZERO)?));
        let d = Discrepancy::new(closed.energy.total, closed.rho_opt, &solve);
        (Some(SolverSummary::from(&solve)), Some(d))
    };

    let report = Report {
        config: Config { bc, u0: args.u0, lambda: args.lambda, r, n: 2, m: args.m },
        closed_form: closed,
        curve,
        penalised,
        discrepancy,
        diagnostics: checks,
    };
    Ok(Outcome::new(to_json(&report), &report.diagnostics))
}
