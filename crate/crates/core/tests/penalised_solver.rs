use flatset_core::grid::Geometry;
use flatset_core::penalised::*;
use flatset_core::radial::{infimum_dirichlet2d, infimum_navier2d, Decision};
use flatset_core::BoundaryKind;

fn solve(g: Geometry, bc: BoundaryKind, u0: f64) -> SolveResult {
    minimise_penalised(g, bc, u0, 1.0, &PenaltySchedule::default()).unwrap()
}

fn assert_stagewise_descent(r: &SolveResult) {
    for stage in &r.trace {
        for w in stage.energies.windows(2) {
            assert!(w[1] <= w[0], "energy rose at ε = {:e}: {} -> {}", stage.epsilon, w[0], w[1]);
        }
    }
}

#[test]
fn short_interval_stays_constant() {
    let r = solve(Geometry::interval(2.0, 4096).unwrap(), BoundaryKind::Navier, 1.0);
    assert!(r.converged);
    assert!((r.energy.total - 4.0).abs() < 1e-9);
    assert!(r.flat_measure.abs() < 1e-12);
    assert!(r.flat_radius_estimate.is_none());
    assert!(r.u.values.iter().all(|v| (v - 1.0).abs() < 1e-6));
    assert_stagewise_descent(&r);
}

#[test]
fn long_interval_develops_flat_core() {
    let r = solve(Geometry::interval(3.0, 4096).unwrap(), BoundaryKind::Navier, 1.0);
    assert!(r.converged);
    let rho = 3.0 - 3f64.sqrt();
    let est = r.flat_radius_estimate.unwrap();
    assert!((est - rho).abs() < 1e-2, "flat radius {est}");
    let exact = 2.0 * 3f64.sqrt() + 2.0 / 3f64.sqrt();
    assert!((r.energy.total - exact).abs() < 5e-3, "energy {}", r.energy.total);
    // energy-based prediction of the flat set is |Ω| - measure_part/λ; the
    // thresholded set can only add the few tiny nodes next to its edge
    let predicted = 6.0 - r.energy.measure_part;
    let h = 6.0 / 4095.0;
    assert!(r.flat_measure >= predicted - 1e-12);
    assert!(r.flat_measure - predicted <= 8.0 * h, "{} vs {predicted}", r.flat_measure);
    assert!((r.flat_measure - 2.0 * rho).abs() < 2e-2);
    assert_stagewise_descent(&r);
}

#[test]
fn navier_disk_matches_closed_form() {
    let rep = infimum_navier2d(0.05, 1.0).unwrap();
    let r = solve(Geometry::radial(2, 1.0, 2048).unwrap(), BoundaryKind::Navier, 0.05);
    assert!(r.converged);
    assert!((r.energy.total - rep.energy.total).abs() < 1e-2 * core::f64::consts::PI);
    let est = r.flat_radius_estimate.unwrap();
    assert!((est - rep.rho_opt.unwrap()).abs() < 0.02, "{est}");
    assert_stagewise_descent(&r);
}

#[test]
fn dirichlet_disk_matches_closed_form() {
    let rep = infimum_dirichlet2d(0.03).unwrap();
    let r = solve(Geometry::radial(2, 1.0, 2048).unwrap(), BoundaryKind::Dirichlet, 0.03);
    assert!(r.converged);
    assert!((r.energy.total - rep.energy.total).abs() < 1e-2 * core::f64::consts::PI);
    let est = r.flat_radius_estimate.unwrap();
    assert!((est - rep.rho_opt.unwrap()).abs() < 0.02, "{est}");
    assert_stagewise_descent(&r);
}

#[test]
fn large_datum_on_disk_is_constant() {
    let rep = infimum_navier2d(0.1, 1.0).unwrap();
    assert_eq!(rep.decision, Decision::Constant);
    let r = solve(Geometry::radial(2, 1.0, 2048).unwrap(), BoundaryKind::Navier, 0.1);
    assert!(r.converged);
    assert!((r.energy.total - core::f64::consts::PI).abs() < 1e-9);
    assert!(r.flat_radius_estimate.is_none());
}

#[test]
fn scaled_disk_matches_scaled_infimum() {
    // F on B_R with data u0 equals R² times the unit-disk energy with data u0/R²
    let rep = infimum_navier2d(0.05, 1.0).unwrap();
    let r = solve(Geometry::radial(2, 2.0, 2048).unwrap(), BoundaryKind::Navier, 0.2);
    assert!((r.energy.total - 4.0 * rep.energy.total).abs() < 4e-2 * core::f64::consts::PI);
    let est = r.flat_radius_estimate.unwrap();
    assert!((est - 2.0 * rep.rho_opt.unwrap()).abs() < 0.04);
}

#[test]
fn reported_energy_matches_reported_state() {
    use flatset_core::grid::discrete_energy_sharp;
    let r = solve(Geometry::interval(3.0, 512).unwrap(), BoundaryKind::Navier, 1.0);
    let e = discrete_energy_sharp(&r.u, 1.0, f64::MIN_POSITIVE).unwrap();
    assert_eq!(e, r.energy);
    let omega = 6.0;
    assert!(r.flat_measure >= 0.0 && r.flat_measure <= omega);
}

#[test]
fn starved_schedule_is_flagged() {
    let sched = PenaltySchedule { max_inner_iters: 2, ..PenaltySchedule::default() };
    let r = minimise_penalised(Geometry::interval(3.0, 1024).unwrap(), BoundaryKind::Navier, 1.0, 1.0, &sched).unwrap();
    assert!(!r.converged);
}

#[test]
fn bad_inputs_name_their_field() {
    let g = Geometry::interval(3.0, 256).unwrap();
    let d = PenaltySchedule::default();
    let field = |r: flatset_core::Result<SolveResult>| r.unwrap_err().field().map(str::to_owned);
    assert_eq!(field(minimise_penalised(g, BoundaryKind::Navier, 0.0, 1.0, &d)).as_deref(), Some("u0"));
    assert_eq!(field(minimise_penalised(g, BoundaryKind::Navier, 1.0, -1.0, &d)).as_deref(), Some("lambda"));
    let s = PenaltySchedule { epsilons: vec![1e-2, 1e-1], ..d.clone() };
    assert_eq!(field(minimise_penalised(g, BoundaryKind::Navier, 1.0, 1.0, &s)).as_deref(), Some("epsilons"));
    let s = PenaltySchedule { epsilons: vec![1e-2, 1e-9], ..d.clone() };
    assert_eq!(field(minimise_penalised(g, BoundaryKind::Navier, 1.0, 1.0, &s)).as_deref(), Some("epsilons"));
    let s = PenaltySchedule { max_inner_iters: 0, ..d };
    assert_eq!(field(minimise_penalised(g, BoundaryKind::Navier, 1.0, 1.0, &s)).as_deref(), Some("max_inner_iters"));
}

#[test]
fn solves_are_deterministic() {
    let g = Geometry::radial(2, 1.0, 256).unwrap();
    let a = solve(g, BoundaryKind::Navier, 0.05);
    let b = solve(g, BoundaryKind::Navier, 0.05);
    assert_eq!(a.u.values, b.u.values);
    assert_eq!(a.energy, b.energy);
}
