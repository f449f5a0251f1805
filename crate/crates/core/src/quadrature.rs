//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! The interval with the largest error estimate is bisected until the
//! summed estimate drops below `max(abs_tol, rel_tol·|I|)`. The integrands
//! used in this crate (`log²` weights on `[ρ, 1]`, piecewise polynomials)
//! are bounded, so no extrapolation is needed.

use alloc::collections::BinaryHeap;
use core::cmp::Ordering;

use crate::math::abs;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self { abs_tol: 1e-12, rel_tol: 1e-13, max_intervals: 4000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        // max-heap on error; ties broken by position for determinism
        self.error.total_cmp(&other.error).then_with(|| other.a.total_cmp(&self.a))
    }
}

fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, abs((kronrod - gauss) * half))
}

/// Integrates `f` over `[a, b]` (either orientation).
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, cfg: &QuadConfig) -> Integral {
    if a == b {
        return Integral { value: 0.0, error: 0.0, intervals: 0, converged: true };
    }
    if b < a {
        let r = integrate(f, b, a, cfg);
        return Integral { value: -r.value, ..r };
    }
    let (v, e) = gk15(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, value: v, error: e });
    let mut total = v;
    let mut total_err = e;
    let mut converged = false;
    while heap.len() < cfg.max_intervals {
        if total_err <= cfg.abs_tol.max(cfg.rel_tol * abs(total)) {
            converged = true;
            break;
        }
        let worst = match heap.pop() {
            Some(p) => p,
            None => break,
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval exhausted at machine resolution
            heap.push(Piece { error: 0.0, ..worst });
            total_err -= worst.error;
            continue;
        }
        let (lv, le) = gk15(&f, worst.a, mid);
        let (rv, re) = gk15(&f, mid, worst.b);
        total += lv + rv - worst.value;
        total_err += le + re - worst.error;
        heap.push(Piece { a: worst.a, b: mid, value: lv, error: le });
        heap.push(Piece { a: mid, b: worst.b, value: rv, error: re });
    }
    // re-sum to shed the drift of incremental updates
    let mut pieces = heap.into_vec();
    pieces.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = pieces.iter().map(|p| p.value).sum();
    let error: f64 = pieces.iter().map(|p| p.error).sum();
    Integral {
        value,
        error,
        intervals: pieces.len(),
        converged: converged || error <= cfg.abs_tol.max(cfg.rel_tol * abs(value)),
    }
}

/// Integrates over consecutive sub-intervals split at `breaks`, which must
/// be sorted. Useful when the integrand has kinks at known points.
pub fn integrate_pieces(f: impl Fn(f64) -> f64, breaks: &[f64], cfg: &QuadConfig) -> Integral {
    let mut out = Integral { value: 0.0, error: 0.0, intervals: 0, converged: true };
    for w in breaks.windows(2) {
        let r = integrate(&f, w[0], w[1], cfg);
        out.value += r.value;
        out.error += r.error;
        out.intervals += r.intervals;
        out.converged &= r.converged;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{ln, sin, PI};

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|x| x * x * x - 2.0 * x, 0.0, 2.0, &QuadConfig::default());
        assert!((r.value - 0.0).abs() < 1e-14);
        assert!(r.converged);
    }

    #[test]
    fn log_squared_weight() {
        // ∫_ρ^1 r log² r dr = −ρ²/2 log²ρ + ρ²/2 log ρ + (1−ρ²)/4
        let rho: f64 = 0.3;
        let l = ln(rho);
        let exact = -rho * rho / 2.0 * l * l + rho * rho / 2.0 * l + 0.25 * (1.0 - rho * rho);
        let r = integrate(|r| r * ln(r) * ln(r), rho, 1.0, &QuadConfig::default());
        assert!((r.value - exact).abs() < 1e-14, "{} vs {}", r.value, exact);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let cfg = QuadConfig::default();
        let fwd = integrate(sin, 0.0, PI, &cfg).value;
        let back = integrate(sin, PI, 0.0, &cfg).value;
        assert!((fwd - 2.0).abs() < 1e-13);
        assert_eq!(fwd, -back);
    }

    #[test]
    fn kinked_integrand_with_breaks() {
        let f = |x: f64| if x < 0.3 { 0.0 } else { (x - 0.3) * (x - 0.3) };
        let r = integrate_pieces(f, &[0.0, 0.3, 1.0], &QuadConfig::default());
        assert!((r.value - 0.7f64.powi(3) / 3.0).abs() < 1e-15);
    }
}
