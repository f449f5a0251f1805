//! Minimisers of the biharmonic Alt–Caffarelli functional
//!
//! ```text
//! F_λ(u) = ∫_Ω (Δu)² dx + λ·|{u ≠ 0}|
//! ```
//!
//! on intervals and balls under Navier (`u = φ`, `Δu = 0`) or Dirichlet
//! (`u = φ`, `∂_ν u = ∂_ν φ`) boundary data.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised as:
//!
//! * [`radial`] – exact radial minimisers and their energies (1D interval,
//!   2D disk under Navier and Dirichlet conditions) with an optimal
//!   flat-core radius search.
//! * [`rearrangement`] – the annular symmetric decreasing rearrangement of
//!   discretised functions, rearrangement inequalities, the radial
//!   comparison function `w` and the symmetry certificate built from it.
//! * [`grid`] and [`penalised`] – finite-difference discretisation and a
//!   penalised minimiser used to cross-check the closed forms.
//! * [`diagnostics`] – executable versions of the quantitative bounds.
//!
//! Support modules: [`quadrature`] (adaptive Gauss–Kronrod), [`search`]
//! (grid + golden-section minimisation) and [`banded`] (pentadiagonal
//! symmetric solves).

#![no_std]
#![forbid(unsafe_code)]
// `!(x > 0.0)` rejects NaN along with the out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;

pub mod banded;
pub mod diagnostics;
pub mod error;
pub mod grid;
pub mod math;
pub mod penalised;
pub mod quadrature;
pub mod radial;
pub mod rearrangement;
pub mod search;

pub use error::{Error, Result};

/// Boundary condition family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum BoundaryKind {
    /// `u = u0` and `Δu = 0` on the boundary.
    Navier,
    /// `u = u0` and `∂_r u = 0` on the boundary (constant datum).
    Dirichlet,
}

impl core::fmt::Display for BoundaryKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            BoundaryKind::Navier => f.write_str("navier"),
            BoundaryKind::Dirichlet => f.write_str("dirichlet"),
        }
    }
}

/// Outcome of a check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Verdict {
    Pass,
    Fail,
    /// The check's hypotheses are not met by the input.
    NotApplicable,
}

impl Verdict {
    /// `Pass` and `NotApplicable` are both acceptable outcomes.
    pub fn is_ok(self) -> bool {
        !matches!(self, Verdict::Fail)
    }

    pub fn from_bool(pass: bool) -> Self {
        if pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl core::fmt::Display for Verdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not_applicable",
        })
    }
}

/// The two parts of `F_λ` and their sum.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EnergyBreakdown {
    /// `∫ (Δu)²`.
    pub dirichlet_part: f64,
    /// `λ·|{u ≠ 0}|`.
    pub measure_part: f64,
    /// Always `dirichlet_part + measure_part`.
    pub total: f64,
    pub lambda: f64,
}

impl EnergyBreakdown {
    pub fn new(dirichlet_part: f64, measure_part: f64, lambda: f64) -> Self {
        Self { dirichlet_part, measure_part, total: dirichlet_part + measure_part, lambda }
    }
}
