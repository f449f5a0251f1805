//! Unit disk, Navier data `u = u0`, `Δu = 0` on `|x| = 1`.
//!
//! With `L = log ρ` the candidate has
//! `C1 = −u0/d`, `d = 1 − ρ² + 2ρ²L − 2ρ²L²`, `C2 = ρ²(1 − 2L)·C1`,
//! `C3 = −C1`, `C4 = u0 + C1`, and `Δu = 4C1·log r`, so that
//! `f_λ(u0, ρ) = λπ(1 − ρ²) + 8πu0²/d`.
//!
//! For `ρ → 1` the literal `d` cancels to nothing; in `t = −log ρ` it equals
//! `e^{−2t}·(e^{2t} − 1 − 2t − 2t²)`, which is evaluated from the series tail.

use super::{decide, rescale_report, search_rho, MinimiserReport, RadialCandidate};
use crate::error::{require, Error, Result};
use crate::math::{exp_tail, ln};
use crate::search::GridGolden;
use crate::{BoundaryKind, EnergyBreakdown};
use core::f64::consts::PI;

/// `d(ρ) = 1 − ρ² + 2ρ²log ρ − 2ρ²log²ρ`, positive on `[0, 1)`.
pub(crate) fn navier_denominator(rho: f64) -> f64 {
    if rho == 0.0 {
        return 1.0;
    }
    let t = -ln(rho);
    if t > 20.0 {
        let l = -t;
        let r2 = rho * rho;
        1.0 - r2 + 2.0 * r2 * l - 2.0 * r2 * l * l
    } else {
        rho * rho * exp_tail(2.0 * t, 3)
    }
}

fn check_u0(u0: f64) -> Result<f64> {
    require("u0", u0, "u0 > 0", |u| u > 0.0)
}

fn check_lambda(lambda: f64) -> Result<f64> {
    require("lambda", lambda, "lambda > 0", |l| l > 0.0)
}

/// The matched candidate with flat core `B_ρ`.
pub fn navier2d_coefficients(u0: f64, rho: f64) -> Result<RadialCandidate> {
    check_u0(u0)?;
    require("rho", rho, "0 < rho < 1", |r| r > 0.0 && r < 1.0)?;
    let d = navier_denominator(rho);
    if !(d > 0.0) {
        return Err(Error::Internal("Navier denominator is not positive"));
    }
    let c1 = -u0 / d;
    let l = ln(rho);
    Ok(RadialCandidate {
        n: 2,
        rho,
        outer_radius: 1.0,
        coeffs: [c1, rho * rho * (1.0 - 2.0 * l) * c1, -c1, u0 + c1],
        bc_kind: BoundaryKind::Navier,
        u0,
    })
}

/// `f_λ(u0, ρ)` for `ρ ∈ [0, 1)`; `ρ = 0` gives the limit `λπ + 8πu0²`.
pub fn f_lambda(u0: f64, rho: f64, lambda: f64) -> Result<EnergyBreakdown> {
    check_u0(u0)?;
    check_lambda(lambda)?;
    require("rho", rho, "0 <= rho < 1", |r| (0.0..1.0).contains(&r))?;
    let d = navier_denominator(rho);
    if !(d > 0.0) {
        return Err(Error::Internal("Navier denominator is not positive"));
    }
    Ok(EnergyBreakdown::new(8.0 * PI * u0 * u0 / d, lambda * PI * (1.0 - rho) * (1.0 + rho), lambda))
}

/// `min{λπ, inf_ρ f_λ(u0, ρ)}` with the default ρ-search.
pub fn infimum_navier2d(u0: f64, lambda: f64) -> Result<MinimiserReport> {
    infimum_navier2d_with(u0, lambda, &GridGolden::default())
}

pub fn infimum_navier2d_with(u0: f64, lambda: f64, search: &GridGolden) -> Result<MinimiserReport> {
    check_u0(u0)?;
    check_lambda(lambda)?;
    let constant = EnergyBreakdown::new(0.0, lambda * PI, lambda);
    let (rho, energy) = search_rho(search, |rho| f_lambda(u0, rho, lambda))?;
    let cand = navier2d_coefficients(u0, rho)?;
    Ok(decide(constant, Some((rho, energy, cand))))
}

/// Infimum on `B_R` with `λ = 1`, obtained from the unit disk with
/// `λ = R⁴` and the factor `R^{−2}`.
pub fn rescale_to_ball(r: f64, u0: f64) -> Result<MinimiserReport> {
    require("R", r, "R > 0", |r| r > 0.0)?;
    let unit = infimum_navier2d(u0, r * r * r * r)?;
    Ok(rescale_report(unit, r, 1.0))
}
