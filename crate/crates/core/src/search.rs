//! One-dimensional minimisation on a closed interval: a dense scan guards
//! against spurious local minima, then golden-section search refines the
//! best bracket.

use crate::math::{abs, sqrt};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridGolden {
    /// Number of scan points including both endpoints.
    pub grid_points: usize,
    /// Absolute tolerance on the abscissa.
    pub x_tol: f64,
    pub max_evals: usize,
}

impl Default for GridGolden {
    fn default() -> Self {
        Self { grid_points: 2048, x_tol: 1e-8, max_evals: 200 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
    pub evaluations: usize,
}

/// Golden-section search on `[a, b]`, assuming a single minimum inside.
pub fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, x_tol: f64, max_evals: usize) -> Minimum {
    let inv_phi = (sqrt(5.0) - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut evals = 2;
    while abs(b - a) > x_tol && evals < max_evals {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
        evals += 1;
    }
    if f1 <= f2 {
        Minimum { x: x1, value: f1, evaluations: evals }
    } else {
        Minimum { x: x2, value: f2, evaluations: evals }
    }
}

impl GridGolden {
    /// Global-ish minimiser of `f` on `[lo, hi]`.
    ///
    /// Non-finite samples are treated as `+∞`. The returned point is the
    /// better of the best grid sample and the refined bracket minimum.
    pub fn minimise(&self, f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Minimum {
        let n = self.grid_points.max(3);
        let step = (hi - lo) / (n - 1) as f64;
        let at = |i: usize| if i == n - 1 { hi } else { lo + step * i as f64 };
        let eval = |x: f64| {
            let v = f(x);
            if v.is_nan() {
                f64::INFINITY
            } else {
                v
            }
        };
        let mut best_i = 0;
        let mut best_v = f64::INFINITY;
        for i in 0..n {
            let v = eval(at(i));
            if v < best_v {
                best_v = v;
                best_i = i;
            }
        }
        let a = at(best_i.saturating_sub(1));
        let b = at((best_i + 1).min(n - 1));
        let refined = golden_section(eval, a, b, self.x_tol, self.max_evals);
        if refined.value <= best_v {
            Minimum { evaluations: refined.evaluations + n, ..refined }
        } else {
            Minimum { x: at(best_i), value: best_v, evaluations: refined.evaluations + n }
        }
    }
}
