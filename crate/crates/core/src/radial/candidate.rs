use super::{basis, basis_derivatives};
use crate::error::{require, Error, Result};
use crate::math::{abs, powi, unit_ball_volume, unit_sphere_area};
use crate::quadrature::{integrate, QuadConfig};
use crate::{BoundaryKind, EnergyBreakdown};

/// Radial function vanishing on `|x| ≤ ρ` and equal to
/// `Σ C_k·basis_k(|x|)` on `ρ ≤ |x| ≤ R`.
///
/// With `ρ = 0` and `C1 = C2 = C3 = 0` it is the constant `C4`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RadialCandidate {
    pub n: u32,
    pub rho: f64,
    #[cfg_attr(feature = "serde", serde(rename = "R"))]
    pub outer_radius: f64,
    pub coeffs: [f64; 4],
    pub bc_kind: BoundaryKind,
    pub u0: f64,
}

/// Raw residuals of the four defining conditions.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CandidateResiduals {
    /// `u(ρ⁺)`.
    pub value_at_rho: f64,
    /// `u'(ρ⁺)`.
    pub slope_at_rho: f64,
    /// `u(R) − u0`.
    pub boundary_value: f64,
    /// `Δu(R)` (Navier) or `u'(R)` (Dirichlet).
    pub boundary_condition: f64,
}

impl CandidateResiduals {
    pub fn max_abs(&self) -> f64 {
        abs(self.value_at_rho)
            .max(abs(self.slope_at_rho))
            .max(abs(self.boundary_value))
            .max(abs(self.boundary_condition))
    }
}

impl RadialCandidate {
    /// `u ≡ u0` on `B_R`.
    pub fn constant(n: u32, outer_radius: f64, bc_kind: BoundaryKind, u0: f64) -> Self {
        Self { n, rho: 0.0, outer_radius, coeffs: [0.0, 0.0, 0.0, u0], bc_kind, u0 }
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs[..3].iter().all(|&c| c == 0.0)
    }

    /// Checks the shape of the record (not the defining conditions).
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::domain("n", 0.0, "dimension >= 1"));
        }
        require("R", self.outer_radius, "R > 0", |r| r > 0.0)?;
        require("rho", self.rho, "0 <= rho < R", |r| r >= 0.0 && r < self.outer_radius)?;
        require("u0", self.u0, "u0 > 0", |u| u > 0.0)?;
        for (field, c) in ["C1", "C2", "C3", "C4"].into_iter().zip(self.coeffs) {
            require(field, c, "finite coefficient", |_| true)?;
        }
        if self.rho == 0.0 && !self.is_constant() && self.n >= 2 {
            return Err(Error::domain("rho", 0.0, "rho > 0 for a nonconstant candidate with singular basis"));
        }
        Ok(())
    }

    fn in_core(&self, r: f64) -> bool {
        self.is_constant() || r <= self.rho
    }

    fn combine(&self, b: [f64; 4]) -> f64 {
        self.coeffs.iter().zip(b).map(|(c, v)| if *c == 0.0 { 0.0 } else { c * v }).sum()
    }

    /// Value at radius `r = |x|`.
    pub fn eval(&self, r: f64) -> f64 {
        let r = abs(r);
        if self.is_constant() {
            return self.coeffs[3];
        }
        if r <= self.rho {
            return 0.0;
        }
        basis(self.n, r).map(|b| self.combine(b)).unwrap_or(f64::NAN)
    }

    /// Biharmonic branch `Σ C_k·basis_k(r)` without the flat core; used for
    /// one-sided limits at `ρ`.
    pub fn eval_outer(&self, r: f64) -> f64 {
        if self.is_constant() {
            return self.coeffs[3];
        }
        basis(self.n, r).map(|b| self.combine(b)).unwrap_or(f64::NAN)
    }

    /// First radial derivative of the biharmonic branch at `r`.
    pub fn derivative_outer(&self, r: f64) -> f64 {
        if self.is_constant() {
            return 0.0;
        }
        basis_derivatives(self.n, r).map(|(d1, _)| self.combine(d1)).unwrap_or(f64::NAN)
    }

    /// `u''(r) + (n−1)/r·u'(r)` of the biharmonic branch at `r`.
    pub fn laplacian_outer(&self, r: f64) -> f64 {
        if self.is_constant() {
            return 0.0;
        }
        basis_derivatives(self.n, r)
            .map(|(d1, d2)| self.combine(d2) + (self.n as f64 - 1.0) / r * self.combine(d1))
            .unwrap_or(f64::NAN)
    }

    pub fn derivative(&self, r: f64) -> f64 {
        if self.in_core(r) {
            0.0
        } else {
            self.derivative_outer(r)
        }
    }

    pub fn laplacian(&self, r: f64) -> f64 {
        if self.in_core(r) {
            0.0
        } else {
            self.laplacian_outer(r)
        }
    }

    pub fn residuals(&self) -> CandidateResiduals {
        let r = self.outer_radius;
        let boundary_condition = match self.bc_kind {
            BoundaryKind::Navier => self.laplacian_outer(r),
            BoundaryKind::Dirichlet => self.derivative_outer(r),
        };
        let (value_at_rho, slope_at_rho) =
            if self.is_constant() { (0.0, 0.0) } else { (self.eval_outer(self.rho), self.derivative_outer(self.rho)) };
        CandidateResiduals {
            value_at_rho,
            slope_at_rho,
            boundary_value: self.eval_outer(r) - self.u0,
            boundary_condition,
        }
    }

    /// Energy by adaptive quadrature of `(Δu)²` over the shell `ρ < |x| < R`.
    pub fn energy(&self, lambda: f64, cfg: &QuadConfig) -> Result<EnergyBreakdown> {
        require("lambda", lambda, "lambda > 0", |l| l > 0.0)?;
        self.validate()?;
        let en = unit_ball_volume(self.n);
        let r_out = self.outer_radius;
        let measure = lambda * en * (powi(r_out, self.n as i32) - powi(self.rho, self.n as i32));
        if self.is_constant() {
            return Ok(EnergyBreakdown::new(0.0, measure, lambda));
        }
        let area = unit_sphere_area(self.n);
        let q = integrate(
            |r| {
                let l = self.laplacian_outer(r);
                l * l * powi(r, self.n as i32 - 1)
            },
            self.rho,
            r_out,
            cfg,
        );
        if !q.value.is_finite() {
            return Err(Error::Internal("energy quadrature produced a non-finite value"));
        }
        Ok(EnergyBreakdown::new(area * q.value, measure, lambda))
    }
}
