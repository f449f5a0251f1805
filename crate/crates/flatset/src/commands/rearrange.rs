use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use flatset_core::rearrangement::{
    annular_rearrange, check_lp_preservation, distribution, lp_norm_p, talenti_w, Cell, ComparisonProfile,
    MeasuredFunction, RadialProfile,
};

use super::Outcome;
use crate::args::{Format, RearrangeArgs};
use crate::error::{CliError, CliResult};
use crate::output::{float, to_json, Csv};

/// Relative tolerance on every preservation residual.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CellFile {
    n: u32,
    hole_measure: f64,
    cells: Vec<Cell>,
}

#[derive(Serialize)]
struct Residual {
    name: String,
    residual: f64,
    tolerance: f64,
    pass: bool,
}

#[derive(Serialize)]
struct Report {
    n: u32,
    hole_measure: f64,
    cells: usize,
    fstar: RadialProfile,
    w: ComparisonProfile,
    w_one: f64,
    residuals: Vec<Residual>,
}

pub fn read_cells(path: &Path) -> CliResult<MeasuredFunction> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let file: CellFile = serde_json::from_str(&text).map_err(|e| CliError::json(path, &e))?;
    for (i, c) in file.cells.iter().enumerate() {
        if !(c.value.is_finite() && c.value >= 0.0) {
            return Err(CliError::invalid(
                &format!("cells[{i}].value"),
                format!("{} must be finite and >= 0", c.value),
            ));
        }
        if !(c.measure.is_finite() && c.measure > 0.0) {
            return Err(CliError::invalid(
                &format!("cells[{i}].measure"),
                format!("{} must be finite and > 0", c.measure),
            ));
        }
    }
    Ok(MeasuredFunction::new(file.n, file.hole_measure, file.cells)?)
}

fn random_cells(n: u32, count: usize, hole_fraction: f64, seed: u64) -> CliResult<MeasuredFunction> {
    if count == 0 {
        return Err(CliError::invalid("random-cells", "must be at least 1"));
    }
    if !(0.0..1.0).contains(&hole_fraction) {
        return Err(CliError::invalid("hole-fraction", format!("{hole_fraction} must lie in [0, 1)")));
    }
    if n == 0 {
        return Err(CliError::invalid("n", "dimension must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values: Vec<f64> = (0..count).map(|_| rng.gen::<f64>()).collect();
    let probe = MeasuredFunction::uniform(n, 0.0, &[1.0])?;
    let hole = hole_fraction * probe.ambient_measure();
    Ok(MeasuredFunction::uniform(n, hole, &values)?)
}

fn relative(residual: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        residual / scale
    } else {
        residual
    }
}

pub fn run(args: &RearrangeArgs, format: Format, seed: u64) -> CliResult<Outcome> {
    let f = match (&args.input, args.random_cells) {
        (Some(p), _) => read_cells(p)?,
        (None, Some(k)) => random_cells(args.n, k, args.hole_fraction, seed)?,
        (None, None) => return Err(CliError::invalid("input", "give --input or --random-cells")),
    };
    let star = annular_rearrange(&f)?;
    let w = talenti_w(&star)?;

    let annulus = f.ambient_measure() - f.hole_measure;
    let equi = f
        .cells
        .iter()
        .map(|c| (distribution(&f, c.value) - star.distribution(c.value)).abs())
        .chain(std::iter::once((distribution(&f, -1.0) - star.distribution(-1.0)).abs()))
        .fold(0.0f64, f64::max);
    let mut residuals = vec![Residual {
        name: "equimeasurability".into(),
        residual: relative(equi, annulus),
        tolerance: RESIDUAL_TOLERANCE,
        pass: relative(equi, annulus) <= RESIDUAL_TOLERANCE,
    }];
    for p in [1.0, 2.0, 4.0] {
        let r = relative(check_lp_preservation(&f, p)?, lp_norm_p(&f, p));
        residuals.push(Residual {
            name: format!("l{p}_preservation"),
            residual: r,
            tolerance: RESIDUAL_TOLERANCE,
            pass: r <= RESIDUAL_TOLERANCE,
        });
    }
    let failures = residuals.iter().filter(|r| !r.pass).map(|r| r.name.clone()).collect();

    let text = match format {
        Format::Csv => {
            let mut csv = Csv::new(&["r_inner", "r_outer", "fstar", "w_outer"]);
            for k in 0..star.values.len() {
                csv.row(&[
                    float(star.r_nodes[k]),
                    float(star.r_nodes[k + 1]),
                    float(star.values[k]),
                    float(w.w_nodes[k + 1]),
                ]);
            }
            csv.finish()
        }
        Format::Json => to_json(&Report {
            n: f.n,
            hole_measure: f.hole_measure,
            cells: f.cells.len(),
            w_one: w.w_one,
            fstar: star,
            w,
            residuals,
        }),
    };
    Ok(Outcome { text, failures })
}
