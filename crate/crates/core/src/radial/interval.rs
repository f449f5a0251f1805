//! The interval `(−R, R)` with Navier data `u(±R) = u0`, `u''(±R) = 0`.
//!
//! The even candidate with flat core `[−ρ, ρ]` is the cubic
//! `u0·(|x|−ρ)²(3R−2ρ−|x|) / (2(R−ρ)³)` and costs
//! `6u0²/(R−ρ)³ + 2λ(R−ρ)`.

use super::{decide, MinimiserReport, RadialCandidate};
use crate::error::{require, Result};
use crate::math::{abs, powf, sqrt};
use crate::{BoundaryKind, EnergyBreakdown};

fn check_r(r: f64) -> Result<f64> {
    require("R", r, "R > 0", |r| r > 0.0)
}

fn check_rho(r: f64, rho: f64) -> Result<f64> {
    require("rho", rho, "0 <= rho < R", |p| p >= 0.0 && p < r)
}

fn flat_energy(r: f64, rho: f64, u0: f64, lambda: f64) -> EnergyBreakdown {
    let a = r - rho;
    EnergyBreakdown::new(6.0 * u0 * u0 / (a * a * a), 2.0 * lambda * a, lambda)
}

/// Energy (`u0 = λ = 1`) of the candidate with flat core `[−ρ, ρ]`.
pub fn energy_1d_flat(r: f64, rho: f64) -> Result<EnergyBreakdown> {
    check_r(r)?;
    check_rho(r, rho)?;
    Ok(flat_energy(r, rho, 1.0, 1.0))
}

/// Energy of the flat-core candidate for general `u0` and `λ`.
pub fn energy_1d_scaled(r: f64, rho: f64, u0: f64, lambda: f64) -> Result<EnergyBreakdown> {
    check_r(r)?;
    check_rho(r, rho)?;
    require("u0", u0, "u0 > 0", |u| u > 0.0)?;
    require("lambda", lambda, "lambda > 0", |l| l > 0.0)?;
    Ok(flat_energy(r, rho, u0, lambda))
}

/// The flat-core cubic as a one-dimensional [`RadialCandidate`].
pub fn candidate_1d(r: f64, rho: f64, u0: f64) -> Result<RadialCandidate> {
    check_r(r)?;
    check_rho(r, rho)?;
    require("u0", u0, "u0 > 0", |u| u > 0.0)?;
    let a = r - rho;
    let q = 3.0 * r - 2.0 * rho;
    let s = u0 / (2.0 * a * a * a);
    Ok(RadialCandidate {
        n: 1,
        rho,
        outer_radius: r,
        coeffs: [-s, -(2.0 * rho * q + rho * rho) * s, 3.0 * r * s, rho * rho * q * s],
        bc_kind: BoundaryKind::Navier,
        u0,
    })
}

/// Value of the flat-core cubic (`u0 = 1`) at `x ∈ [−R, R]`.
pub fn eval_1d(r: f64, rho: f64, x: f64) -> Result<f64> {
    check_r(r)?;
    check_rho(r, rho)?;
    require("x", x, "|x| <= R", |x| abs(x) <= r)?;
    let ax = abs(x);
    if ax <= rho {
        return Ok(0.0);
    }
    let a = r - rho;
    let d = ax - rho;
    Ok(d * d * (3.0 * r - 2.0 * rho - ax) / (2.0 * a * a * a))
}

/// Infimum over `u ≡ u0` and the flat-core family, for general `u0`, `λ`.
///
/// The family energy is convex in `a = R − ρ` with minimiser
/// `a* = (9u0²/λ)^{1/4}`; when `a* ≥ R` the best member has `ρ = 0`.
pub fn minimiser_1d_scaled(r: f64, u0: f64, lambda: f64) -> Result<MinimiserReport> {
    check_r(r)?;
    require("u0", u0, "u0 > 0", |u| u > 0.0)?;
    require("lambda", lambda, "lambda > 0", |l| l > 0.0)?;
    let constant = EnergyBreakdown::new(0.0, 2.0 * lambda * r, lambda);
    let a_star = powf(9.0 * u0 * u0 / lambda, 0.25);
    let rho = if a_star < r { r - a_star } else { 0.0 };
    let free = flat_energy(r, rho, u0, lambda);
    let cand = candidate_1d(r, rho, u0)?;
    Ok(decide(constant, Some((rho, free, cand))))
}

/// Infimum of the unit problem (`u0 = λ = 1`): constant below
/// `R = √3 + 1/√3`, flat core of radius `R − √3` above, tie at the threshold.
pub fn minimiser_1d(r: f64) -> Result<MinimiserReport> {
    minimiser_1d_scaled(r, 1.0, 1.0)
}

/// Threshold half-length above which the unit problem has a flat set.
pub fn flat_threshold_1d() -> f64 {
    sqrt(3.0) + 1.0 / sqrt(3.0)
}

/// Fraction `ρ/R = 1 − √3/R` of the interval that is flat.
pub fn flat_ratio_1d(r: f64) -> Result<f64> {
    let threshold = flat_threshold_1d();
    require("R", r, "R >= sqrt(3) + 1/sqrt(3)", |r| r >= threshold * (1.0 - 4.0 * f64::EPSILON))?;
    Ok(1.0 - sqrt(3.0) / r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::QuadConfig;
    use crate::radial::Decision;

    fn s3() -> f64 {
        sqrt(3.0)
    }

    #[test]
    fn optimal_energy_at_r3() {
        let e = energy_1d_flat(3.0, 3.0 - s3()).unwrap();
        assert!((e.total - (2.0 * s3() + 2.0 / s3())).abs() < 1e-14);
        assert!((e.total - 4.618802).abs() < 1e-6);
    }

    #[test]
    fn no_core_energy() {
        assert_eq!(energy_1d_flat(1.0, 0.0).unwrap().total, 8.0);
    }

    #[test]
    fn closed_form_matches_quadrature_of_cubic() {
        let e = energy_1d_flat(2.0, 0.5).unwrap();
        assert!((e.total - (3.0 + 6.0 / 3.375)).abs() < 1e-14);
        let c = candidate_1d(2.0, 0.5, 1.0).unwrap();
        let q = c.energy(1.0, &QuadConfig::default()).unwrap();
        assert!((q.total - e.total).abs() < 1e-12, "{} vs {}", q.total, e.total);
    }

    #[test]
    fn rejects_core_beyond_r() {
        assert!(energy_1d_flat(1.0, 1.0).is_err());
        assert!(energy_1d_flat(-1.0, 0.0).is_err());
        assert!(eval_1d(2.0, 1.0, 2.5).is_err());
    }

    #[test]
    fn cubic_values() {
        assert_eq!(eval_1d(2.0, 1.0, 1.5).unwrap(), 0.3125);
        assert_eq!(eval_1d(2.0, 1.0, -1.5).unwrap(), 0.3125);
        assert_eq!(eval_1d(2.0, 1.0, 0.7).unwrap(), 0.0);
        assert!((eval_1d(3.0, 0.4, 3.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((eval_1d(3.0, 0.4, -3.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn candidate_agrees_with_cubic_and_conditions() {
        for &(r, rho) in &[(2.0, 1.0), (3.0, 3.0 - s3()), (1.0, 0.0), (5.0, 4.9)] {
            let c = candidate_1d(r, rho, 1.0).unwrap();
            for k in 0..=20 {
                let x = r * k as f64 / 20.0;
                let d = c.eval(x) - eval_1d(r, rho, x).unwrap();
                assert!(d.abs() < 1e-10, "R={r} rho={rho} x={x}: {d}");
            }
            assert!(c.residuals().max_abs() < 1e-10, "{:?}", c.residuals());
        }
    }

    #[test]
    fn case_split() {
        let r2 = minimiser_1d(2.0).unwrap();
        assert_eq!(r2.decision, Decision::Constant);
        assert_eq!(r2.energy.total, 4.0);
        assert!(r2.rho_opt.is_none());

        let r3 = minimiser_1d(3.0).unwrap();
        assert_eq!(r3.decision, Decision::FreeBoundary);
        assert!((r3.rho_opt.unwrap() - (3.0 - s3())).abs() < 1e-12);
        assert!((r3.energy.total - (2.0 * s3() + 2.0 / s3())).abs() < 1e-12);

        let t = minimiser_1d(flat_threshold_1d()).unwrap();
        assert_eq!(t.decision, Decision::Tie);
        let free = t.free_boundary_total.unwrap();
        assert!((free - t.constant_total).abs() < 1e-12);
    }

    #[test]
    fn small_interval_is_constant() {
        let r = minimiser_1d(0.3).unwrap();
        assert_eq!(r.decision, Decision::Constant);
        assert!((r.energy.total - 0.6).abs() < 1e-15);
    }

    #[test]
    fn flat_ratios() {
        assert!((flat_ratio_1d(flat_threshold_1d()).unwrap() - 0.25).abs() < 1e-12);
        assert!((flat_ratio_1d(2.0 * s3()).unwrap() - 0.5).abs() < 1e-12);
        assert!((flat_ratio_1d(100.0).unwrap() - (1.0 - s3() / 100.0)).abs() < 1e-12);
        assert!(flat_ratio_1d(2.0).is_err());
    }

    #[test]
    fn scaled_minimiser_uses_general_data() {
        // u0 = 2, λ = 4: a* = (9)^{1/4}; same optimum radius as the unit case
        let rep = minimiser_1d_scaled(10.0, 2.0, 4.0).unwrap();
        assert_eq!(rep.decision, Decision::FreeBoundary);
        assert!((rep.rho_opt.unwrap() - (10.0 - s3())).abs() < 1e-12);
        let c = rep.candidate.unwrap();
        assert!((c.eval(10.0) - 2.0).abs() < 1e-12);
    }
}
