//! Exact radial minimisers.
//!
//! Off its flat core `{|x| ≤ ρ}` a radial minimiser is biharmonic, so it is
//! a combination of the four radial biharmonic functions of [`basis`]. The
//! boundary data and the `C¹` matching `u(ρ) = u'(ρ) = 0` fix the four
//! coefficients; what remains is a one-parameter family in `ρ` whose
//! energy is known in closed form for the interval and the disk.

mod candidate;
mod dirichlet;
mod interval;
mod navier;

pub use candidate::{CandidateResiduals, RadialCandidate};
pub use dirichlet::{
    dirichlet2d_coefficients, g_energy, g_lambda, infimum_dirichlet2d, infimum_dirichlet2d_with,
    rescale_dirichlet_to_ball,
};
pub use interval::{
    candidate_1d, energy_1d_flat, energy_1d_scaled, eval_1d, flat_ratio_1d, flat_threshold_1d, minimiser_1d,
    minimiser_1d_scaled,
};
pub use navier::{f_lambda, infimum_navier2d, infimum_navier2d_with, navier2d_coefficients, rescale_to_ball};

use crate::error::{require, Result};
use crate::math::{ln, powf};
use crate::search::GridGolden;
use crate::{BoundaryKind, EnergyBreakdown};

/// Which of the competing representations attains the infimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Decision {
    /// `u ≡ u0`, empty flat set.
    Constant,
    /// A nonconstant minimiser with flat core of radius `ρ_opt`.
    FreeBoundary,
    /// Both representations have equal energy (within the tie tolerance).
    Tie,
}

impl core::fmt::Display for Decision {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Decision::Constant => "Constant",
            Decision::FreeBoundary => "FreeBoundary",
            Decision::Tie => "Tie",
        })
    }
}

/// Outcome of an infimum computation.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MinimiserReport {
    pub decision: Decision,
    /// Present unless the decision is [`Decision::Constant`].
    pub rho_opt: Option<f64>,
    /// Energy of the winning representation.
    pub energy: EnergyBreakdown,
    /// The nonconstant candidate at `rho_opt`, when there is one.
    pub candidate: Option<RadialCandidate>,
    /// Energy of `u ≡ u0`.
    pub constant_total: f64,
    /// Best energy among nonconstant candidates, when the family is nonempty.
    pub free_boundary_total: Option<f64>,
}

/// Relative tolerance under which the constant and free-boundary branches
/// are declared tied.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// Search interval for `ρ`; the endpoints themselves are singular.
pub const RHO_MIN: f64 = 1e-9;
pub const RHO_MAX: f64 = 1.0 - 1e-9;

pub(crate) fn decide(
    constant: EnergyBreakdown,
    free: Option<(f64, EnergyBreakdown, RadialCandidate)>,
) -> MinimiserReport {
    let constant_total = constant.total;
    let Some((rho, energy, candidate)) = free else {
        return MinimiserReport {
            decision: Decision::Constant,
            rho_opt: None,
            energy: constant,
            candidate: None,
            constant_total,
            free_boundary_total: None,
        };
    };
    let gap = energy.total - constant_total;
    let tie = gap.abs() <= TIE_TOLERANCE * constant_total.abs();
    let free_total = Some(energy.total);
    if tie {
        MinimiserReport {
            decision: Decision::Tie,
            rho_opt: Some(rho),
            energy: if gap < 0.0 { energy } else { constant },
            candidate: Some(candidate),
            constant_total,
            free_boundary_total: free_total,
        }
    } else if gap < 0.0 {
        MinimiserReport {
            decision: Decision::FreeBoundary,
            rho_opt: Some(rho),
            energy,
            candidate: Some(candidate),
            constant_total,
            free_boundary_total: free_total,
        }
    } else {
        MinimiserReport {
            decision: Decision::Constant,
            rho_opt: None,
            energy: constant,
            candidate: None,
            constant_total,
            free_boundary_total: free_total,
        }
    }
}

/// Minimises a closed-form energy curve over `ρ ∈ [RHO_MIN, RHO_MAX]`.
pub(crate) fn search_rho(
    search: &GridGolden,
    energy: impl Fn(f64) -> Result<EnergyBreakdown>,
) -> Result<(f64, EnergyBreakdown)> {
    let best = search.minimise(|rho| energy(rho).map(|e| e.total).unwrap_or(f64::INFINITY), RHO_MIN, RHO_MAX);
    Ok((best.x, energy(best.x)?))
}

/// Maps a unit-disk report computed with `λ·R⁴` to the ball `B_R` with
/// `λ`: radii scale by `R`, energies by `R^{−2}`.
pub(crate) fn rescale_report(rep: MinimiserReport, r: f64, lambda: f64) -> MinimiserReport {
    let s = 1.0 / (r * r);
    let scale = |e: EnergyBreakdown| EnergyBreakdown::new(e.dirichlet_part * s, e.measure_part * s, lambda);
    MinimiserReport {
        decision: rep.decision,
        rho_opt: rep.rho_opt.map(|p| p * r),
        energy: scale(rep.energy),
        candidate: rep.candidate.map(|c| rescale_disk_candidate(&c, r)),
        constant_total: rep.constant_total * s,
        free_boundary_total: rep.free_boundary_total.map(|t| t * s),
    }
}

/// Infimum over radial competitors on the disk `B_R` with weight `λ`, via
/// the unit disk with weight `λ·R⁴`.
pub fn infimum_disk(bc: BoundaryKind, u0: f64, lambda: f64, r: f64) -> Result<MinimiserReport> {
    require("R", r, "R > 0", |r| r > 0.0 && r.is_finite())?;
    require("lambda", lambda, "lambda > 0", |l| l > 0.0)?;
    let lam = lambda * r * r * r * r;
    let search = GridGolden::default();
    let unit = match bc {
        BoundaryKind::Navier => infimum_navier2d_with(u0, lam, &search)?,
        BoundaryKind::Dirichlet => infimum_dirichlet2d_with(u0, lam, &search)?,
    };
    Ok(rescale_report(unit, r, lambda))
}

/// `x ↦ u(x/R)` for a planar candidate on the unit disk.
pub(crate) fn rescale_disk_candidate(c: &RadialCandidate, r: f64) -> RadialCandidate {
    debug_assert_eq!(c.n, 2);
    let [c1, c2, c3, c4] = c.coeffs;
    let lr = ln(r);
    let r2 = r * r;
    RadialCandidate { rho: c.rho * r, outer_radius: r, coeffs: [c1 / r2, c2, (c3 - c1 * lr) / r2, c4 - c2 * lr], ..*c }
}

/// Values of the four radial biharmonic functions at `r`.
///
/// * `n = 2`: `(r² log r, log r, r², 1)`
/// * `n = 4`: `(log r, r⁻², r², 1)`
/// * otherwise: `(r^{4−n}, r^{2−n}, r², 1)`
pub fn basis(n: u32, r: f64) -> Result<[f64; 4]> {
    check_basis_args(n, r)?;
    let r2 = r * r;
    Ok(match n {
        2 => {
            let l = ln(r);
            [r2 * l, l, r2, 1.0]
        }
        4 => [ln(r), 1.0 / r2, r2, 1.0],
        _ => {
            let nf = n as f64;
            [powf(r, 4.0 - nf), powf(r, 2.0 - nf), r2, 1.0]
        }
    })
}

/// First and second radial derivatives of the [`basis`] functions.
pub fn basis_derivatives(n: u32, r: f64) -> Result<([f64; 4], [f64; 4])> {
    check_basis_args(n, r)?;
    let r2 = r * r;
    Ok(match n {
        2 => {
            let l = ln(r);
            ([2.0 * r * l + r, 1.0 / r, 2.0 * r, 0.0], [2.0 * l + 3.0, -1.0 / r2, 2.0, 0.0])
        }
        4 => ([1.0 / r, -2.0 / (r2 * r), 2.0 * r, 0.0], [-1.0 / r2, 6.0 / (r2 * r2), 2.0, 0.0]),
        _ => {
            let nf = n as f64;
            (
                [(4.0 - nf) * powf(r, 3.0 - nf), (2.0 - nf) * powf(r, 1.0 - nf), 2.0 * r, 0.0],
                [(4.0 - nf) * (3.0 - nf) * powf(r, 2.0 - nf), (2.0 - nf) * (1.0 - nf) * powf(r, -nf), 2.0, 0.0],
            )
        }
    })
}

fn check_basis_args(n: u32, r: f64) -> Result<()> {
    if n == 0 {
        return Err(crate::Error::domain("n", 0.0, "dimension >= 1"));
    }
    require("r", r, "radius > 0", |r| r > 0.0)?;
    Ok(())
}
