//! Truncated complex power series.
//!
//! A [`Series`] of order `N` stores `c_0..=c_N`. Binary operations truncate to
//! the smaller operand order; nothing is ever silently extended.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default truncation degree.
pub const DEFAULT_ORDER: usize = 64;
/// Smallest admissible `|b_0|` for [`Series::div`].
pub const DIV_FLOOR: f64 = 1e-12;
/// Tolerance for "equals 0 / equals 1" preconditions.
pub const TOL_EXACT: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Complex64>", into = "Vec<Complex64>")]
pub struct Series {
    coeffs: Vec<Complex64>,
}

impl TryFrom<Vec<Complex64>> for Series {
    type Error = String;

    fn try_from(coeffs: Vec<Complex64>) -> std::result::Result<Self, Self::Error> {
        if coeffs.is_empty() {
            return Err("a series needs at least one coefficient".into());
        }
        Ok(Self { coeffs })
    }
}

impl From<Series> for Vec<Complex64> {
    fn from(s: Series) -> Self {
        s.coeffs
    }
}

impl Series {
    /// Builds a series from `c_0..=c_N`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Complex64) -> Self {
        Self::new((0..=order).map(f).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![ZERO; order + 1])
    }

    pub fn one(order: usize) -> Self {
        Self::constant(ONE, order)
    }

    pub fn constant(c: Complex64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `z`.
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = ONE;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self::new(self.coeffs[..=order].to_vec())
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::from_fn(order, |k| self.coeffs[k] + other.coeffs[k])
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::from_fn(order, |k| self.coeffs[k] - other.coeffs[k])
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * factor).collect())
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::from_fn(order, |n| {
            (0..=n).map(|k| self.coeffs[k] * other.coeffs[n - k]).sum()
        })
    }

    /// Quotient `self / divisor`, requiring `|divisor_0| > DIV_FLOOR`.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        let b0 = divisor.coeffs[0];
        if b0.norm() <= DIV_FLOOR {
            return Err(Error::DivisionByNearZeroConstant {
                magnitude: b0.norm(),
            });
        }
        let order = self.order().min(divisor.order());
        let inv_b0 = b0.inv();
        let mut out = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let acc: Complex64 = (1..=n).map(|k| divisor.coeffs[k] * out[n - k]).sum();
            out.push((self.coeffs[n] - acc) * inv_b0);
        }
        Ok(Self::new(out))
    }

    /// Termwise derivative; the order drops by one (order 0 stays a zero constant).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::from_fn(self.order() - 1, |k| self.coeffs[k + 1] * (k + 1) as f64)
    }

    /// Series divided by `z`, i.e. the shift `c_{k+1} -> c_k`.
    ///
    /// Requires `c_0 = 0`; the caller guarantees this (checked in debug builds).
    pub fn shift_down(&self) -> Self {
        debug_assert!(self.coeffs[0].norm() <= TOL_EXACT);
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::new(self.coeffs[1..].to_vec())
    }

    /// Series multiplied by `z`; the order grows by one.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ZERO);
        coeffs.extend_from_slice(&self.coeffs);
        Self::new(coeffs)
    }

    /// Principal logarithm of a series with constant term 1; the result has `b_0 = 0`.
    pub fn log_unit(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        if (a0 - ONE).norm() > TOL_EXACT {
            return Err(Error::NotUnitConstantTerm { re: a0.re, im: a0.im });
        }
        // n b_n = n a_n - sum_{k=1}^{n-1} k b_k a_{n-k}
        let order = self.order();
        let mut b = vec![ZERO; order + 1];
        for n in 1..=order {
            let acc: Complex64 = (1..n).map(|k| b[k] * self.coeffs[n - k] * k as f64).sum();
            b[n] = self.coeffs[n] - acc / n as f64;
        }
        Ok(Self::new(b))
    }

    /// Exponential of a series with constant term 0; the result has `b_0 = 1`.
    pub fn exp_zero(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        if a0.norm() > TOL_EXACT {
            return Err(Error::NonzeroConstantTerm { re: a0.re, im: a0.im });
        }
        // n b_n = sum_{k=1}^{n} k a_k b_{n-k}
        let order = self.order();
        let mut b = vec![ZERO; order + 1];
        b[0] = ONE;
        for n in 1..=order {
            let acc: Complex64 = (1..=n).map(|k| self.coeffs[k] * b[n - k] * k as f64).sum();
            b[n] = acc / n as f64;
        }
        Ok(Self::new(b))
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// Values at `z_j = r e^{2 pi i j / m}`, `j = 0..m`.
    pub fn eval_circle(&self, r: f64, m: usize) -> Vec<Complex64> {
        circle_points(r, m).map(|z| self.eval(z)).collect()
    }
}

/// The grid `r e^{2 pi i j / m}`, `j = 0..m`.
pub fn circle_points(r: f64, m: usize) -> impl ExactSizeIterator<Item = Complex64> + Clone {
    (0..m).map(move |j| Complex64::from_polar(r, TAU * j as f64 / m as f64))
}

/// Mercator series `log(1 - u z) = -sum u^k z^k / k`.
pub fn log_one_minus(u: Complex64, order: usize) -> Series {
    let mut power = ONE;
    Series::from_fn(order, |k| {
        if k == 0 {
            return ZERO;
        }
        power *= u;
        -power / k as f64
    })
}
