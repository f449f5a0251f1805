//! Unit disk, Dirichlet data `u = u0`, `∂_r u = 0` on `|x| = 1`.
//!
//! With `L = log ρ` and `den = 4ρ²L² − (1 − ρ²)²` the candidate has
//! `C1 = 2u0(1 − ρ²)/den`, `C2 = 2ρ²L·C1/(ρ² − 1)`,
//! `C3 = u0(2ρ²L − 1 + ρ²)/den`, `C4 = u0 − C3`, and
//! `Δu = C1·(4 log r + D)` with `D = 2 − 4ρ²L/(ρ² − 1)`.
//! The energy is `g = 2πC1²·∫_ρ^1 (4 log r + D)² r dr + λπ(1 − ρ²)`.
//!
//! All of this is evaluated in `t = −log ρ`:
//! `den = −4ρ²(sinh t − t)(sinh t + t)`, `D = 2(e^{2t} − 1 − 2t)/(e^{2t} − 1)`,
//! and the integral becomes `D²I₀ − 8D·I₁ + 16I₂` with
//! `I_k = ∫_0^t τ^k e^{−2τ} dτ`.

use super::{decide, rescale_report, search_rho, MinimiserReport, RadialCandidate};
use crate::error::{require, Error, Result};
use crate::math::{exp, exp_tail, expm1, ln, sinh, sinh_minus_id};
use crate::search::GridGolden;
use crate::{BoundaryKind, EnergyBreakdown};
use core::f64::consts::PI;

struct Parts {
    c1: f64,
    c3: f64,
    d: f64,
    q: f64,
}

fn denominator(rho: f64, t: f64) -> f64 {
    if t > 20.0 {
        let l = -t;
        let w = (1.0 - rho) * (1.0 + rho);
        4.0 * rho * rho * l * l - w * w
    } else {
        -4.0 * rho * rho * sinh_minus_id(t) * (sinh(t) + t)
    }
}

/// `I_k(t) = ∫_0^t τ^k e^{−2τ} dτ` for `k = 0, 1, 2`.
fn moments(t: f64) -> [f64; 3] {
    if t < 1.0 {
        let mut out = [0.0; 3];
        for (k, slot) in out.iter_mut().enumerate() {
            let mut p = 1.0; // (−2t)^j / j!
            let mut tk = 1.0;
            for _ in 0..=k {
                tk *= t;
            }
            let mut sum = 0.0;
            for j in 0..60 {
                let term = p * tk / (k + j + 1) as f64;
                sum += term;
                if term.abs() < 1e-18 * sum.abs() {
                    break;
                }
                p *= -2.0 * t / (j + 1) as f64;
            }
            *slot = sum;
        }
        out
    } else {
        let e = exp(-2.0 * t);
        let i0 = -expm1(-2.0 * t) / 2.0;
        let i1 = (i0 - t * e) / 2.0;
        let i2 = (2.0 * i1 - t * t * e) / 2.0;
        [i0, i1, i2]
    }
}

fn parts(u0: f64, rho: f64) -> Result<Parts> {
    if rho == 0.0 {
        return Ok(Parts { c1: -2.0 * u0, c3: u0, d: 2.0, q: 2.0 });
    }
    let t = -ln(rho);
    let den = denominator(rho, t);
    if !(den < 0.0) {
        return Err(Error::Internal("Dirichlet denominator is not negative"));
    }
    let one_minus = (1.0 - rho) * (1.0 + rho);
    let c1 = 2.0 * u0 * one_minus / den;
    let c3 = -u0 * rho * rho * (expm1(2.0 * t) + 2.0 * t) / den;
    let d = 2.0 * exp_tail(2.0 * t, 2) / expm1(2.0 * t);
    let [i0, i1, i2] = moments(t);
    let q = d * d * i0 - 8.0 * d * i1 + 16.0 * i2;
    Ok(Parts { c1, c3, d, q })
}

fn check_u0(u0: f64) -> Result<f64> {
    require("u0", u0, "u0 > 0", |u| u > 0.0)
}

fn check_rho(rho: f64) -> Result<f64> {
    require("rho", rho, "0 < rho < 1", |r| r > 0.0 && r < 1.0)
}

/// The matched candidate with flat core `B_ρ`.
pub fn dirichlet2d_coefficients(u0: f64, rho: f64) -> Result<RadialCandidate> {
    check_u0(u0)?;
    check_rho(rho)?;
    let p = parts(u0, rho)?;
    let t = -ln(rho);
    let c2 = p.c1 * 2.0 * rho * rho * t / ((1.0 - rho) * (1.0 + rho));
    Ok(RadialCandidate {
        n: 2,
        rho,
        outer_radius: 1.0,
        coeffs: [p.c1, c2, p.c3, u0 - p.c3],
        bc_kind: BoundaryKind::Dirichlet,
        u0,
    })
}

/// `g(u0, ρ)` with `λ = 1`.
pub fn g_energy(u0: f64, rho: f64) -> Result<EnergyBreakdown> {
    g_lambda(u0, rho, 1.0)
}

/// `∫(Δu)² + λπ(1 − ρ²)` of the Dirichlet candidate.
pub fn g_lambda(u0: f64, rho: f64, lambda: f64) -> Result<EnergyBreakdown> {
    check_u0(u0)?;
    check_rho(rho)?;
    require("lambda", lambda, "lambda > 0", |l| l > 0.0)?;
    let p = parts(u0, rho)?;
    debug_assert!(p.d.is_finite());
    Ok(EnergyBreakdown::new(2.0 * PI * p.c1 * p.c1 * p.q, lambda * PI * (1.0 - rho) * (1.0 + rho), lambda))
}

/// `min{π, inf_ρ g(u0, ρ)}`.
pub fn infimum_dirichlet2d(u0: f64) -> Result<MinimiserReport> {
    infimum_dirichlet2d_with(u0, 1.0, &GridGolden::default())
}

pub fn infimum_dirichlet2d_with(u0: f64, lambda: f64, search: &GridGolden) -> Result<MinimiserReport> {
    check_u0(u0)?;
    require("lambda", lambda, "lambda > 0", |l| l > 0.0)?;
    let constant = EnergyBreakdown::new(0.0, lambda * PI, lambda);
    let (rho, energy) = search_rho(search, |rho| g_lambda(u0, rho, lambda))?;
    let cand = dirichlet2d_coefficients(u0, rho)?;
    Ok(decide(constant, Some((rho, energy, cand))))
}

/// Dirichlet infimum on `B_R` with `λ = 1`.
pub fn rescale_dirichlet_to_ball(r: f64, u0: f64) -> Result<MinimiserReport> {
    require("R", r, "R > 0", |r| r > 0.0)?;
    let unit = infimum_dirichlet2d_with(u0, r * r * r * r, &GridGolden::default())?;
    Ok(rescale_report(unit, r, 1.0))
}

#[cfg(test)]
fn d_value(rho: f64) -> f64 {
    parts(1.0, rho).unwrap().d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate, QuadConfig};
    use crate::radial::Decision;

    fn literal(u0: f64, rho: f64) -> (f64, f64, f64, f64) {
        let l = ln(rho);
        let r2 = rho * rho;
        let den = 4.0 * r2 * l * l - (1.0 - r2) * (1.0 - r2);
        let c1 = u0 * 2.0 * (1.0 - r2) / den;
        let c3 = u0 * (2.0 * r2 * l - (1.0 - r2)) / den;
        let d = 2.0 - 4.0 * r2 * l / (r2 - 1.0);
        // closed-form ∫_ρ^1 (4 log r + D)² r dr
        let q =
            -8.0 * r2 * l * l + (8.0 * r2 - 4.0 * d * r2) * l + (4.0 - 2.0 * d) * (1.0 - r2) + d * d * (1.0 - r2) / 2.0;
        (c1, c3, d, q)
    }

    #[test]
    fn stable_forms_match_literal_formulas() {
        for k in 1..=18 {
            let rho = 0.05 * k as f64;
            let p = parts(0.04, rho).unwrap();
            let (c1, c3, d, q) = literal(0.04, rho);
            for (a, b) in [(p.c1, c1), (p.c3, c3), (p.d, d), (p.q, q)] {
                assert!((a - b).abs() < 1e-9 * b.abs().max(1e-3), "rho={rho}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn frozen_coefficients() {
        let c = dirichlet2d_coefficients(0.045, 0.4).unwrap();
        let expected = [-0.449296026414877, -0.156832679951176, 0.303064353183027, -0.258064353183027];
        for (g, w) in c.coeffs.iter().zip(expected) {
            assert!((g - w).abs() < 1e-12 * w.abs(), "{g} vs {w}");
        }
    }

    #[test]
    fn conditions_hold() {
        let c = dirichlet2d_coefficients(0.03, 0.3).unwrap();
        assert!(c.residuals().max_abs() < 1e-10 * 0.03, "{:?}", c.residuals());
    }

    #[test]
    fn frozen_energies() {
        for (u0, rho, want) in
            [(0.05, 0.3, 3.23223563635559), (0.03, 0.5, 2.76972827466242), (0.1, 0.7, 25.4387830238485)]
        {
            let g = g_energy(u0, rho).unwrap().total;
            assert!((g - want).abs() < 1e-12 * want, "{g} vs {want}");
        }
    }

    #[test]
    fn energy_matches_quadrature_near_one() {
        let (u0, rho) = (0.02, 0.97);
        let c = dirichlet2d_coefficients(u0, rho).unwrap();
        let g = g_energy(u0, rho).unwrap();
        let q = integrate(
            |r| {
                let l = c.laplacian(r);
                2.0 * PI * l * l * r
            },
            rho,
            1.0,
            &QuadConfig::default(),
        );
        assert!((q.value - g.dirichlet_part).abs() < 1e-8 * g.dirichlet_part);
    }

    #[test]
    fn d_tends_to_two_at_the_origin() {
        assert!((d_value(1e-12) - 2.0).abs() < 1e-9);
        // D → 0 as ρ → 1
        assert!(d_value(1.0 - 1e-9).abs() < 1e-8);
    }

    #[test]
    fn decisions() {
        let r = infimum_dirichlet2d(0.03).unwrap();
        assert_eq!(r.decision, Decision::FreeBoundary);
        assert!((r.rho_opt.unwrap() - 0.52173690).abs() < 1e-6);
        assert!((r.energy.total - 2.7649251341913).abs() < 1e-9);
        let big = infimum_dirichlet2d(1.0).unwrap();
        assert_eq!(big.decision, Decision::Constant);
        assert_eq!(big.energy.total, PI);
    }

    #[test]
    fn sign_change_of_laplacian() {
        let c = infimum_dirichlet2d(0.03).unwrap().candidate.unwrap();
        assert!(c.laplacian_outer(c.rho) * c.laplacian_outer(1.0) < 0.0);
    }
}
