use core::f64::consts::PI;

use flatset_core::diagnostics::*;
use flatset_core::grid::{Geometry, GridFunction, EXACT_ZERO};
use flatset_core::penalised::{minimise_penalised, PenaltySchedule};
use flatset_core::radial::*;
use flatset_core::{BoundaryKind, Verdict};

#[test]
fn navier_bound_cases() {
    let r = navier_upper_bound(PI, PI).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.flag("dichotomy"), Some(false));
    let rep = infimum_navier2d(0.05, 1.0).unwrap();
    let r = navier_upper_bound(rep.energy.total, PI).unwrap();
    assert!(r.passed());
    assert_eq!(r.flag("dichotomy"), Some(true));
    let r = navier_upper_bound(PI + 0.1, PI).unwrap();
    assert_eq!(r.verdict, Verdict::Fail);
    assert_eq!(navier_upper_bound(-1.0, PI).unwrap_err().field(), Some("energy_total"));
}

#[test]
fn navier_bound_holds_for_library_candidates() {
    for k in 1..=40 {
        let u0 = 0.005 * k as f64;
        for lambda in [0.5, 1.0, 3.0] {
            let rep = infimum_navier2d(u0, lambda).unwrap();
            let d = navier_upper_bound(rep.energy.total, lambda * PI).unwrap();
            assert!(d.passed());
            assert_eq!(d.flag("dichotomy"), Some(rep.energy.total < lambda * PI));
            assert_eq!(d.flag("dichotomy"), Some(rep.decision != Decision::Constant));
        }
    }
    for r in [1.0, 2.0, 3.0, 5.0] {
        let rep = minimiser_1d_scaled(r, 1.0, 1.0).unwrap();
        assert!(navier_upper_bound(rep.energy.total, 2.0 * r).unwrap().passed());
    }
}

#[test]
fn dirichlet_bound_cases() {
    assert!(dirichlet_lower_bound(0.0, PI, 0.0).unwrap().passed());
    // φ = ε + k·d on the unit disk: flux = k·2π
    let k = 3.0;
    let r = dirichlet_lower_bound(k * 2.0 * PI, PI, 0.0).unwrap();
    assert!((r.rhs - k * k * 4.0 * PI * PI / PI).abs() < 1e-12);
    assert_eq!(r.verdict, Verdict::Fail);
    let rep = infimum_dirichlet2d(0.03).unwrap();
    let r = dirichlet_lower_bound(0.0, PI, rep.energy.total).unwrap();
    assert!(r.passed());
    assert_eq!(r.lhs, rep.energy.total);
    assert_eq!(dirichlet_lower_bound(1.0, 0.0, 1.0).unwrap_err().field(), Some("domain_measure"));
}

#[test]
fn template_constant_matches_symbolic_value() {
    let c2 = flat_template_constant(2, 1.0).unwrap();
    assert!((c2 - 18.0 * PI * (16.0 * 2f64.ln() - 9.0)).abs() < 1e-10 * c2);
    let c3 = flat_template_constant(3, 1.0).unwrap();
    assert!((c3 - 624.0 * PI / 5.0).abs() < 1e-10 * c3);
    assert!((flat_template_constant(2, 0.5).unwrap() - 0.25 * c2).abs() < 1e-12 * c2);
    assert_eq!(flat_template(1.0, 0.7), 0.0);
    assert_eq!(flat_template(1.0, 2.0), 1.0);
}

#[test]
fn flat_set_bound_cases() {
    let c1 = flat_template_constant(2, 1.0).unwrap();
    let threshold = (c1 / PI).powf(0.25);
    let r = flat_set_lower_bound(threshold, c1, 2, None).unwrap();
    assert!(r.rhs.abs() < 1e-9);
    let r = flat_set_lower_bound(0.5 * threshold, c1, 2, Some(0.0)).unwrap();
    assert_eq!(r.flag("vacuous"), Some(true));
    assert_eq!(r.rhs, 0.0);
    assert!(r.passed());
    // doubling R
    for n in [1u32, 2, 3] {
        let en = flatset_core::math::unit_ball_volume(n);
        let rr: f64 = 4.0;
        let a = flat_set_lower_bound(rr, c1, n, None).unwrap().rhs;
        let b = flat_set_lower_bound(2.0 * rr, c1, n, None).unwrap().rhs;
        let ratio = (en * 16.0 * rr.powi(4) - c1) / (en * rr.powi(4) - c1) * 2f64.powi(n as i32 - 4);
        assert!((b / a - ratio).abs() < 1e-12 * ratio);
    }
    let r = flat_set_lower_bound(4.0, c1, 2, Some(1.0)).unwrap();
    assert_eq!(r.verdict, Verdict::Fail);
}

#[test]
fn flat_set_bound_against_closed_form_dirichlet() {
    // on B_{2R} with datum u0 the Dirichlet minimiser is radial; its flat
    // set must beat the template bound (with Ω = B_2, so Ω_R = B_{2R})
    let u0 = 1.0;
    let c1 = flat_template_constant(2, u0).unwrap();
    for r in [3.0, 5.0, 10.0] {
        // unit-disk data u0 with λ scaled by (2R)⁴
        let rep =
            infimum_dirichlet2d_with(u0, (2.0f64 * r).powi(4), &flatset_core::search::GridGolden::default()).unwrap();
        let rho = rep.rho_opt.unwrap() * 2.0 * r;
        let measured = PI * rho * rho;
        let d = flat_set_lower_bound(r, c1, 2, Some(measured)).unwrap();
        assert!(d.passed(), "R={r}: {measured} vs {}", d.rhs);
    }
}

#[test]
fn stampacchia_on_exact_and_corrupted() {
    let r = 3.0;
    let rho = 3.0 - 3f64.sqrt();
    let c = candidate_1d(r, rho, 1.0).unwrap();
    let g = Geometry::interval(r, 4096).unwrap();
    let u = GridFunction::sample(g, BoundaryKind::Navier, 1.0, |x| c.eval(x)).unwrap();
    let rep = stampacchia_check(&u, 1e-8).unwrap();
    assert!(rep.passed());
    assert_eq!(rep.lhs, 0.0);
    let mut bad = u.clone();
    let mid = g.len() / 2;
    let h = g.spacing();
    // u'' = 1 on one cell around the centre while u stays below threshold
    bad.values[mid] = -0.5 * h * h * 1e-3;
    let rep = stampacchia_check(&bad, 1e-5).unwrap();
    assert_eq!(rep.verdict, Verdict::Fail, "{rep:?}");
    let constant = GridFunction::constant(g, BoundaryKind::Navier, 1.0).unwrap();
    assert_eq!(stampacchia_check(&constant, 1e-8).unwrap().verdict, Verdict::NotApplicable);
}

#[test]
fn stampacchia_on_disk_candidates_and_solver() {
    for (bc, u0) in [(BoundaryKind::Navier, 0.05), (BoundaryKind::Dirichlet, 0.03)] {
        let rep = match bc {
            BoundaryKind::Navier => infimum_navier2d(u0, 1.0).unwrap(),
            BoundaryKind::Dirichlet => infimum_dirichlet2d(u0).unwrap(),
        };
        let c = rep.candidate.unwrap();
        let g = Geometry::radial(2, 1.0, 2048).unwrap();
        let u = GridFunction::sample(g, bc, u0, |r| c.eval(r)).unwrap();
        assert!(stampacchia_check(&u, 1e-8 * u0).unwrap().passed());
        let s = minimise_penalised(g, bc, u0, 1.0, &PenaltySchedule::default()).unwrap();
        assert!(s.converged);
        let d = stampacchia_check(&s.u, EXACT_ZERO).unwrap();
        assert!(d.passed(), "{d:?}");
    }
}

#[test]
fn laplacian_jump_cases() {
    let rep = infimum_navier2d(0.05, 1.0).unwrap();
    let c = rep.candidate.unwrap();
    let d = laplacian_jump(&c).unwrap();
    assert!(d.passed());
    assert!(d.lhs > 0.0);
    assert!((d.lhs - 4.0 * c.coeffs[0] * c.rho.ln()).abs() < 1e-12 * d.lhs);
    assert!(c.laplacian_outer(1.0).abs() < 1e-15);
    let rep = infimum_dirichlet2d(0.03).unwrap();
    let d = laplacian_jump(&rep.candidate.unwrap()).unwrap();
    assert!(d.passed(), "{d:?}");
    let k = RadialCandidate::constant(2, 1.0, BoundaryKind::Navier, 0.1);
    assert_eq!(laplacian_jump(&k).unwrap().verdict, Verdict::NotApplicable);
}

#[test]
fn laplacian_jump_for_all_nonconstant_minimisers() {
    for k in 1..=60 {
        let u0 = 0.001 * k as f64;
        let rep = infimum_navier2d(u0, 1.0).unwrap();
        if let Some(c) = rep.candidate {
            assert!(laplacian_jump(&c).unwrap().passed(), "navier u0={u0}");
        }
        let rep = infimum_dirichlet2d(u0).unwrap();
        if let Some(c) = rep.candidate {
            assert!(laplacian_jump(&c).unwrap().passed(), "dirichlet u0={u0}");
        }
    }
}

#[test]
fn bmo_profiles() {
    let g = Geometry::radial(2, 1.0, 513).unwrap();
    let constant = GridFunction::constant(g, BoundaryKind::Navier, 0.3).unwrap();
    let radii = [0.01, 0.02, 0.05, 0.1];
    for (_, v) in bmo_profile(&constant, &radii).unwrap() {
        assert_eq!(v, 0.0);
    }
    let sq = GridFunction::sample(g, BoundaryKind::Dirichlet, 1.0, |r| r * r).unwrap();
    // Δ_h r² is 4 away from the boundary node; admissible balls avoid it
    for (_, v) in bmo_profile(&sq, &radii).unwrap() {
        assert!(v < 1e-20, "{v}");
    }
    assert!(bmo_profile(&constant, &[0.5]).unwrap().is_empty());
    let c = infimum_navier2d(0.05, 1.0).unwrap().candidate.unwrap();
    let g = Geometry::radial(2, 1.0, 2048).unwrap();
    let u = GridFunction::sample(g, BoundaryKind::Navier, 0.05, |r| c.eval(r)).unwrap();
    let h = g.spacing();
    let radii: Vec<f64> = (0..8).map(|k| 8.0 * h * 1.6f64.powi(k)).filter(|&r| r <= 0.1).collect();
    let prof = bmo_profile(&u, &radii).unwrap();
    assert_eq!(prof.len(), radii.len());
    let sup = prof.iter().fold(0.0f64, |a, p| a.max(p.1));
    // bounded by the square of the jump, which is the only oscillation
    let jump = c.laplacian_outer(c.rho);
    assert!(sup > 0.0 && sup < PI * jump * jump, "{sup}");
}

#[test]
fn monotone_infima() {
    let grid: Vec<f64> = (1..=20).map(|k| 0.01 * k as f64).collect();
    let r = infimum_monotonicity(&grid).unwrap();
    assert!(r.passed(), "{r:?}");
    assert!(infimum_monotonicity(&[0.05]).unwrap().passed());
    let tail: Vec<f64> = (0..5).map(|k| 0.15 + 0.01 * k as f64).collect();
    for u0 in tail {
        assert!((infimum_navier2d(u0, 1.0).unwrap().energy.total - PI).abs() < 1e-12);
    }
    assert_eq!(infimum_monotonicity(&[0.1, 0.05]).unwrap_err().field(), Some("u0_grid"));
}

#[test]
fn reports_are_reproducible() {
    let c = infimum_navier2d(0.05, 1.0).unwrap().candidate.unwrap();
    assert_eq!(laplacian_jump(&c).unwrap(), laplacian_jump(&c).unwrap());
    let grid = [0.02, 0.04, 0.08];
    assert_eq!(infimum_monotonicity(&grid).unwrap(), infimum_monotonicity(&grid).unwrap());
}

#[test]
fn stampacchia_on_interval_solver_uses_exact_zero_set() {
    // at u0 = 1 the first two nodes past the free boundary lie below the
    // flat-measure threshold, so only the exact zero set is meaningful here
    let g = Geometry::interval(3.0, 4096).unwrap();
    let s = minimise_penalised(g, BoundaryKind::Navier, 1.0, 1.0, &PenaltySchedule::default()).unwrap();
    assert!(s.converged);
    let d = stampacchia_check(&s.u, EXACT_ZERO).unwrap();
    assert!(d.passed(), "{d:?}");
    assert!(!stampacchia_check(&s.u, s.flat_threshold).unwrap().passed());
}
