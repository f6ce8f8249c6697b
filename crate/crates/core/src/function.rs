use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::classes::{AtomicMeasure, ClassSpec};
use crate::error::{Error, Result};
use crate::named::NamedFunction;
use crate::series::{Series, TOL_EXACT};

/// How a [`FunctionSeries`] was produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "via")]
pub enum Provenance {
    Named { function: NamedFunction },
    FromMeasure { measure: AtomicMeasure, spec: ClassSpec },
    /// `a_n = b_n / n` applied to the inner function.
    AlexanderInverse { of: Box<Provenance> },
    /// `b_n = n a_n` applied to the inner function.
    AlexanderForward { of: Box<Provenance> },
    Raw,
}

/// A normalized member of the class A: `f(z) = z + a_2 z^2 + ...`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionSeries {
    series: Series,
    pub(crate) provenance: Provenance,
}

impl FunctionSeries {
    /// Checks `c_0 = 0`, `c_1 = 1` to `TOL_EXACT` and then pins them exactly.
    pub fn new(series: Series, provenance: Provenance) -> Result<Self> {
        if series.order() < 1
            || series.coeff(0).norm() > TOL_EXACT
            || (series.coeff(1) - Complex64::new(1.0, 0.0)).norm() > TOL_EXACT
        {
            return Err(Error::NotNormalized);
        }
        let mut coeffs = series.coeffs().to_vec();
        coeffs[0] = Complex64::new(0.0, 0.0);
        coeffs[1] = Complex64::new(1.0, 0.0);
        Ok(Self {
            series: Series::new(coeffs),
            provenance,
        })
    }

    /// The identity map `f(z) = z`.
    pub fn identity(order: usize) -> Self {
        Self::new(Series::identity(order.max(1)), Provenance::Raw).expect("z is normalized")
    }

    pub fn series(&self) -> &Series {
        &self.series
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    /// `a_n`, zero beyond the truncation order.
    pub fn a(&self, n: usize) -> Complex64 {
        self.series.coeff(n)
    }

    pub(crate) fn require_order(&self, needed: usize) -> Result<()> {
        if needed > self.order() {
            return Err(Error::OrderTooLow {
                order: self.order(),
                needed,
            });
        }
        Ok(())
    }

    /// `f(z) / z` as a series of order `N - 1` with constant term 1.
    pub fn over_z(&self) -> Series {
        self.series.shift_down()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self {
            series: self.series.truncate(order.max(1)),
            provenance: self.provenance.clone(),
        }
    }
}
