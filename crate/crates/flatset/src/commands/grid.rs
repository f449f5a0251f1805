use serde::Serialize;

use flatset_core::diagnostics::stampacchia_check;
use flatset_core::grid::{discrete_laplacian, Geometry, EXACT_ZERO};
use flatset_core::penalised::minimise_penalised;
use flatset_core::BoundaryKind;

use super::{converged_check, positive, schedule, upper_bound, Check, Outcome, SolverSummary};
use crate::args::{Format, GeometryKind, GridArgs};
use crate::error::CliResult;
use crate::output::{float, to_json, Csv};

#[derive(Serialize)]
struct Profile {
    x: Vec<f64>,
    u: Vec<f64>,
    laplacian: Vec<f64>,
}

#[derive(Serialize)]
struct Report {
    bc: BoundaryKind,
    u0: f64,
    lambda: f64,
    summary: SolverSummary,
    diagnostics: Vec<Check>,
    profile: Profile,
}

pub fn run(args: &GridArgs, format: Format) -> CliResult<Outcome> {
    let bc = BoundaryKind::from(args.bc);
    let r = positive("R", args.r)?;
    positive("u0", args.u0)?;
    positive("lambda", args.lambda)?;
    let sched = schedule(&args.schedule)?;
    let geometry = match args.geometry {
        GeometryKind::Interval => Geometry::interval(r, args.m.unwrap_or(4096))?,
        GeometryKind::Disk => Geometry::radial(args.n, r, args.m.unwrap_or(2048))?,
    };

    let solve = minimise_penalised(geometry, bc, args.u0, args.lambda, &sched)?;
    let lap = discrete_laplacian(&solve.u)?;
    let x = geometry.nodes();

    let checks = vec![
        Check::new("penalised", converged_check(&solve)),
        Check::new(
            "penalised",
            upper_bound(solve.energy.total, args.lambda * geometry.domain_measure(), bc == BoundaryKind::Navier)?,
        ),
        Check::new("penalised", stampacchia_check(&solve.u, EXACT_ZERO)?),
    ];

    if format == Format::Csv {
        let mut csv = Csv::new(&["x", "u", "laplacian"]);
        for i in 0..x.len() {
            csv.row(&[float(x[i]), float(solve.u.values[i]), float(lap[i])]);
        }
        return Ok(Outcome::new(csv.finish(), &checks));
    }
    let report = Report {
        bc,
        u0: args.u0,
        lambda: args.lambda,
        summary: SolverSummary::from(&solve),
        diagnostics: checks,
        profile: Profile { x, u: solve.u.values.clone(), laplacian: lap },
    };
    Ok(Outcome::new(to_json(&report), &report.diagnostics))
}
