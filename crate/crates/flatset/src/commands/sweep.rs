use rayon::prelude::*;
use serde::Serialize;

use flatset_core::radial::{energy_1d_scaled, infimum_disk, minimiser_1d_scaled, Decision};
use flatset_core::{BoundaryKind, EnergyBreakdown};

use super::radial::family_energy;
use super::{linspace, positive, Outcome};
use crate::args::{Format, GeometryKind, SweepArgs, SweepMode, SweepParam};
use crate::error::{CliError, CliResult};
use crate::output::{float, to_json, Csv};

pub const HEADER: [&str; 6] = ["param", "rho_opt", "energy_total", "energy_dirichlet", "energy_measure", "decision"];

#[derive(Debug, Clone, Serialize)]
struct Row {
    param: f64,
    rho_opt: Option<f64>,
    energy_total: f64,
    energy_dirichlet: f64,
    energy_measure: f64,
    decision: Decision,
    /// `λ|Ω|` at this row.
    constant_energy: f64,
    upper_bound: bool,
    dichotomy: bool,
}

#[derive(Serialize)]
struct Table {
    mode: &'static str,
    param: &'static str,
    geometry: &'static str,
    bc: BoundaryKind,
    rows: Vec<Row>,
}

#[derive(Clone, Copy)]
struct Fixed {
    geometry: GeometryKind,
    bc: BoundaryKind,
    u0: f64,
    r: f64,
    lambda: f64,
}

impl Fixed {
    fn constant_energy(&self) -> f64 {
        let measure = match self.geometry {
            GeometryKind::Interval => 2.0 * self.r,
            GeometryKind::Disk => core::f64::consts::PI * self.r * self.r,
        };
        self.lambda * measure
    }

    fn row(&self, param: f64, rho_opt: Option<f64>, e: EnergyBreakdown, decision: Decision) -> Row {
        let c = self.constant_energy();
        Row {
            param,
            rho_opt,
            energy_total: e.total,
            energy_dirichlet: e.dirichlet_part,
            energy_measure: e.measure_part,
            decision,
            constant_energy: c,
            upper_bound: e.total <= c + 1e-9,
            dichotomy: e.total < c,
        }
    }

    fn infimum(&self, param: f64) -> CliResult<Row> {
        let rep = match self.geometry {
            GeometryKind::Interval => minimiser_1d_scaled(self.r, self.u0, self.lambda)?,
            GeometryKind::Disk => infimum_disk(self.bc, self.u0, self.lambda, self.r)?,
        };
        Ok(self.row(param, rep.rho_opt, rep.energy, rep.decision))
    }

    /// One member of the flat-core family; the decision records whether it
    /// beats the constant.
    fn curve(&self, rho: f64) -> CliResult<Row> {
        let e = match self.geometry {
            GeometryKind::Interval => energy_1d_scaled(self.r, rho, self.u0, self.lambda)?,
            GeometryKind::Disk => {
                let [t, d, m] = family_energy(self.bc, self.u0, self.lambda, self.r, rho)?;
                EnergyBreakdown { dirichlet_part: d, measure_part: m, total: t, lambda: self.lambda }
            }
        };
        let decision = if e.total < self.constant_energy() { Decision::FreeBoundary } else { Decision::Constant };
        Ok(self.row(rho, Some(rho), e, decision))
    }
}

fn param_name(p: SweepParam) -> &'static str {
    match p {
        SweepParam::U0 => "u0",
        SweepParam::R => "R",
        SweepParam::Lambda => "lambda",
    }
}

pub fn run(args: &SweepArgs, format: Format) -> CliResult<Outcome> {
    if args.points == 0 {
        return Err(CliError::invalid("points", "empty range: at least one point is required"));
    }
    let bc = BoundaryKind::from(args.bc);
    if args.geometry == GeometryKind::Interval && bc == BoundaryKind::Dirichlet {
        return Err(CliError::invalid("bc", "the interval closed form is available for Navier data only"));
    }
    let base = Fixed {
        geometry: args.geometry,
        bc,
        u0: args.u0,
        r: positive("R", args.r)?,
        lambda: positive("lambda", args.lambda)?,
    };

    let (mode, param_label, from, to) = match args.mode {
        SweepMode::Param => {
            let p = args.param.ok_or_else(|| CliError::invalid("param", "required in param mode"))?;
            if p != SweepParam::U0 {
                positive("u0", base.u0)?;
            }
            let from = args.from.ok_or_else(|| CliError::invalid("from", "required in param mode"))?;
            let to = args.to.ok_or_else(|| CliError::invalid("to", "required in param mode"))?;
            positive("from", from)?;
            ("param", param_name(p), from, to)
        }
        SweepMode::Curve => {
            positive("u0", base.u0)?;
            let (lo, hi) = match args.geometry {
                GeometryKind::Interval => (0.0, base.r * (1.0 - 1e-3)),
                GeometryKind::Disk => (1e-3 * base.r, (1.0 - 1e-3) * base.r),
            };
            let from = args.from.unwrap_or(lo);
            let to = args.to.unwrap_or(hi);
            if !(from >= 0.0 && to < base.r) {
                return Err(CliError::invalid("from", format!("ρ range [{from}, {to}] must lie in [0, R)")));
            }
            ("curve", "rho", from, to)
        }
    };
    if !(from.is_finite() && to.is_finite()) || (args.points > 1 && from >= to) || from > to {
        return Err(CliError::invalid("to", format!("empty range: --from {from} --to {to}")));
    }

    let values = linspace(from, to, args.points);
    let param = args.param;
    let rows = values
        .par_iter()
        .map(|&v| match args.mode {
            SweepMode::Curve => base.curve(v),
            SweepMode::Param => {
                let mut f = base;
                match param {
                    Some(SweepParam::U0) => f.u0 = v,
                    Some(SweepParam::R) => f.r = v,
                    Some(SweepParam::Lambda) => f.lambda = v,
                    None => unreachable!("checked above"),
                }
                f.infimum(v)
            }
        })
        .collect::<CliResult<Vec<_>>>()?;

    let failed: Vec<String> = if args.mode == SweepMode::Param {
        rows.iter().filter(|r| !r.upper_bound).map(|r| format!("upper_bound at {param_label} = {}", r.param)).collect()
    } else {
        Vec::new()
    };

    let text = match format {
        Format::Csv => {
            let mut csv = Csv::new(&HEADER);
            for r in &rows {
                csv.row(&[
                    float(r.param),
                    float(r.rho_opt.unwrap_or(0.0)),
                    float(r.energy_total),
                    float(r.energy_dirichlet),
                    float(r.energy_measure),
                    r.decision.to_string(),
                ]);
            }
            csv.finish()
        }
        Format::Json => to_json(&Table {
            mode,
            param: param_label,
            geometry: match args.geometry {
                GeometryKind::Interval => "interval",
                GeometryKind::Disk => "disk",
            },
            bc,
            rows,
        }),
    };
    Ok(Outcome { text, failures: failed })
}
