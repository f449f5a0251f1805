use flatset_core::grid::{Geometry, GridFunction};
use flatset_core::radial::{infimum_navier2d, RadialCandidate};
use flatset_core::rearrangement::{symmetry_certificate, talenti_w, RadialProfile};
use flatset_core::{BoundaryKind, Verdict};

fn exact_navier(u0: f64) -> RadialCandidate {
    infimum_navier2d(u0, 1.0).unwrap().candidate.unwrap()
}

fn sample(c: &RadialCandidate, intervals: usize, scale: f64) -> GridFunction {
    let g = Geometry::radial(2, c.outer_radius, intervals + 1).unwrap();
    let values = (0..g.len()).map(|i| scale * c.eval(g.radius_of(i))).collect();
    GridFunction::new(g, values, BoundaryKind::Navier, c.u0).unwrap()
}

/// Interval count near `target` whose free boundary sits closest to the
/// middle of a cell, so that successive levels are comparable.
pub fn aligned(target: usize, rho: f64) -> usize {
    (target - target / 16..=target + target / 16)
        .min_by(|&a, &b| {
            let da = ((a as f64 * rho).fract() - 0.5).abs();
            let db = ((b as f64 * rho).fract() - 0.5).abs();
            da.total_cmp(&db)
        })
        .unwrap()
}

#[test]
fn exact_navier_minimiser_passes_and_gap_shrinks() {
    let c = exact_navier(0.05);
    let mut gaps = Vec::new();
    for target in [256, 1024, 4096] {
        let n = aligned(target, c.rho);
        let rep = symmetry_certificate(&sample(&c, n, 1.0), c.u0).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass, "N={n} gap {:e}", rep.gap);
        assert!(rep.gap >= 0.0);
        gaps.push(rep.gap);
    }
    assert!(gaps[1] < gaps[0] && gaps[2] < gaps[1], "{gaps:?}");
    assert!(gaps[2] < 1e-2 * c.u0);
}

#[test]
fn gap_is_first_order_for_any_grid() {
    let c = exact_navier(0.05);
    for n in [300, 517, 1000, 2049, 3001] {
        let rep = symmetry_certificate(&sample(&c, n, 1.0), c.u0).unwrap();
        let scaled = rep.gap * n as f64;
        assert!(scaled > 0.0 && scaled < 0.25, "N={n}: gap·N = {scaled}");
    }
}

#[test]
fn constant_is_not_applicable() {
    let g = Geometry::radial(2, 1.0, 257).unwrap();
    let u = GridFunction::constant(g, BoundaryKind::Navier, 0.1).unwrap();
    let rep = symmetry_certificate(&u, 0.1).unwrap();
    assert_eq!(rep.verdict, Verdict::NotApplicable);
}

#[test]
fn weakened_candidate_fails() {
    let c = exact_navier(0.05);
    // half the curvature cannot lift the flat core to the boundary datum
    let u = sample(&c, 1024, 0.5);
    let rep = symmetry_certificate(&u, c.u0).unwrap();
    assert_eq!(rep.verdict, Verdict::Fail);
    assert!(rep.gap < -0.4 * c.u0);
}

#[test]
fn scaled_ball_is_handled() {
    // u_R(x) = u(x/R) on B_R with the same datum
    let c = exact_navier(0.05);
    let n = aligned(1024, c.rho);
    let unit = symmetry_certificate(&sample(&c, n, 1.0), c.u0).unwrap();
    let g = Geometry::radial(2, 3.0, n + 1).unwrap();
    let values = (0..g.len()).map(|i| c.eval(g.radius_of(i) / 3.0)).collect();
    let big = GridFunction::new(g, values, BoundaryKind::Navier, c.u0).unwrap();
    let rep = symmetry_certificate(&big, c.u0).unwrap();
    assert_eq!(rep.verdict, Verdict::Pass);
    assert!((rep.gap - unit.gap).abs() < 1e-9 * c.u0);
    assert!((rep.r0 - 3.0 * unit.r0).abs() < 1e-9);
}

#[test]
fn analytic_w_for_unit_source() {
    let r0: f64 = 0.5;
    let profile = RadialProfile {
        n: 2,
        r0,
        r_nodes: vec![r0, 1.0],
        values: vec![1.0],
        measures: vec![core::f64::consts::PI * (1.0 - r0 * r0)],
    };
    let w = talenti_w(&profile).unwrap();
    for k in 0..=50 {
        let r = r0 + (1.0 - r0) * k as f64 / 50.0;
        let exact = (r * r - r0 * r0) / 4.0 - r0 * r0 / 2.0 * (r / r0).ln();
        assert!((w.eval(r) - exact).abs() < 1e-10);
    }
    assert!((w.w_one - ((1.0 - r0 * r0) / 4.0 + r0 * r0 / 2.0 * r0.ln())).abs() < 1e-10);
    assert_eq!(w.eval(0.2), 0.0);
}
