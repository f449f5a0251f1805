//! Thin `libm` wrappers plus a few cancellation-free special forms.
//!
//! Everything goes through `libm` so results are identical with and
//! without `std`.

pub use core::f64::consts::PI;

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn expm1(x: f64) -> f64 {
    libm::expm1(x)
}

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub fn sinh(x: f64) -> f64 {
    libm::sinh(x)
}

#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

/// `x^k` for small non-negative integer `k`.
#[inline]
pub fn powi(x: f64, k: i32) -> f64 {
    let mut acc = 1.0;
    let mut base = if k < 0 { 1.0 / x } else { x };
    let mut e = k.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

/// Volume of the unit ball in `R^n`, `e_n = π^{n/2} / Γ(n/2 + 1)`.
pub fn unit_ball_volume(n: u32) -> f64 {
    match n {
        1 => 2.0,
        2 => PI,
        3 => 4.0 * PI / 3.0,
        _ => powf(PI, n as f64 / 2.0) / libm::tgamma(n as f64 / 2.0 + 1.0),
    }
}

/// Surface area of the unit sphere `S^{n-1}`, i.e. `n·e_n`.
pub fn unit_sphere_area(n: u32) -> f64 {
    n as f64 * unit_ball_volume(n)
}

/// Tail of the exponential series, `e^x − Σ_{k<order} x^k/k!`.
///
/// Summed directly for small `|x|` where the subtraction would cancel.
pub fn exp_tail(x: f64, order: u32) -> f64 {
    if abs(x) < 0.5 {
        let mut term = 1.0;
        for k in 1..=order {
            term *= x / k as f64;
        }
        let mut sum = 0.0;
        let mut k = order;
        while abs(term) > 1e-18 * abs(sum) || sum == 0.0 {
            sum += term;
            k += 1;
            term *= x / k as f64;
            if term == 0.0 {
                break;
            }
        }
        sum
    } else {
        let mut sum = expm1(x);
        let mut term = 1.0;
        for k in 1..order {
            term *= x / k as f64;
            sum -= term;
        }
        sum
    }
}

/// `sinh(t) − t` without cancellation for small `t`.
pub fn sinh_minus_id(t: f64) -> f64 {
    if abs(t) < 0.5 {
        let t2 = t * t;
        let mut term = t * t2 / 6.0;
        let mut sum = 0.0;
        let mut k = 3u32;
        while abs(term) > 1e-18 * abs(sum) || sum == 0.0 {
            sum += term;
            term *= t2 / ((k + 1) * (k + 2)) as f64;
            k += 2;
            if term == 0.0 {
                break;
            }
        }
        sum
    } else {
        sinh(t) - t
    }
}
