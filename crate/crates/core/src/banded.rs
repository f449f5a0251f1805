//! Symmetric positive definite pentadiagonal systems.
//!
//! The matrix is stored by diagonals: `d0[i] = A[i][i]`,
//! `d1[i] = A[i][i+1]`, `d2[i] = A[i][i+2]`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Pentadiagonal {
    pub d0: Vec<f64>,
    pub d1: Vec<f64>,
    pub d2: Vec<f64>,
}

impl Pentadiagonal {
    pub fn zeros(n: usize) -> Self {
        Self { d0: vec![0.0; n], d1: vec![0.0; n.saturating_sub(1)], d2: vec![0.0; n.saturating_sub(2)] }
    }

    pub fn len(&self) -> usize {
        self.d0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d0.is_empty()
    }

    /// Adds `v` to `A[i][j]` (and its mirror), `|i − j| ≤ 2`.
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        match hi - lo {
            0 => self.d0[lo] += v,
            1 => self.d1[lo] += v,
            2 => self.d2[lo] += v,
            _ => panic!("entry ({i}, {j}) outside the band"),
        }
    }

    /// Replaces row and column `i` by those of the identity.
    pub fn pin(&mut self, i: usize) {
        let n = self.len();
        self.d0[i] = 1.0;
        if i + 1 < n {
            self.d1[i] = 0.0;
        }
        if i + 2 < n {
            self.d2[i] = 0.0;
        }
        if i >= 1 {
            self.d1[i - 1] = 0.0;
        }
        if i >= 2 {
            self.d2[i - 2] = 0.0;
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut s = self.d0[i] * x[i];
            if i + 1 < n {
                s += self.d1[i] * x[i + 1];
            }
            if i + 2 < n {
                s += self.d2[i] * x[i + 2];
            }
            if i >= 1 {
                s += self.d1[i - 1] * x[i - 1];
            }
            if i >= 2 {
                s += self.d2[i - 2] * x[i - 2];
            }
            y[i] = s;
        }
        y
    }

    /// Solves `A x = b` by an `L D Lᵀ` factorisation.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.len();
        if b.len() != n {
            return Err(Error::Mismatch(alloc::format!("rhs has {} entries, matrix has {n} rows", b.len())));
        }
        // unit lower-triangular L: l1[i] = L[i][i-1], l2[i] = L[i][i-2]
        let mut d = vec![0.0; n];
        let mut l1 = vec![0.0; n];
        let mut l2 = vec![0.0; n];
        for i in 0..n {
            let mut di = self.d0[i];
            if i >= 1 {
                di -= l1[i] * l1[i] * d[i - 1];
            }
            if i >= 2 {
                di -= l2[i] * l2[i] * d[i - 2];
            }
            if !(di > 0.0 && di.is_finite()) {
                return Err(Error::Internal("matrix is not positive definite"));
            }
            d[i] = di;
            if i + 1 < n {
                let mut a = self.d1[i];
                if i >= 1 {
                    a -= l2[i + 1] * l1[i] * d[i - 1];
                }
                l1[i + 1] = a / di;
            }
            if i + 2 < n {
                l2[i + 2] = self.d2[i] / di;
            }
        }
        let mut y = b.to_vec();
        for i in 0..n {
            if i >= 1 {
                y[i] -= l1[i] * y[i - 1];
            }
            if i >= 2 {
                y[i] -= l2[i] * y[i - 2];
            }
        }
        for (yi, di) in y.iter_mut().zip(&d) {
            *yi /= di;
        }
        for i in (0..n).rev() {
            if i + 1 < n {
                y[i] -= l1[i + 1] * y[i + 1];
            }
            if i + 2 < n {
                y[i] -= l2[i + 2] * y[i + 2];
            }
        }
        Ok(y)
    }
}
