//! Closed-form coefficient formulas for the named extremal and example
//! functions. None of these go through the series engine, so they can serve
//! as independent references for it.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::classes::ClassSpec;
use crate::error::{Error, Result};
use crate::function::{FunctionSeries, Provenance};
use crate::series::Series;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "name")]
pub enum NamedFunction {
    /// `z / (1 - z)^2`, `a_n = n`.
    Koebe,
    /// `z / ((1 - e^{-i theta1} z)(1 - e^{-i theta2} z))`.
    TwoPoint { theta1: f64, theta2: f64 },
    /// `log((1 - e^{-i phi} z) / (1 - e^{i phi} z)) / (e^{i phi} - e^{-i phi})`,
    /// `a_n = sin(n phi) / (n sin phi)`.
    LPhi { phi: f64 },
    /// `z / (1 - z)^beta` for complex `beta`, principal branch.
    PowerMap { beta_re: f64, beta_im: f64 },
    /// `(z - z^2/2) / (1 - z)^2`, `a_n = (n + 1) / 2`.
    CHalfExtremal,
    /// `z / sqrt(1 - z^2)`, `a_{2j+1} = binom(2j, j) / 4^j`.
    OddSqrt,
}

impl NamedFunction {
    /// Builds a named function from its name and positional parameters.
    pub fn parse(name: &str, params: &[f64]) -> Result<Self> {
        let arity = |n: usize| -> Result<()> {
            if params.len() != n {
                return Err(Error::InvalidParams {
                    name: name.to_string(),
                    reason: format!("expected {n} parameters, got {}", params.len()),
                });
            }
            Ok(())
        };
        let f = match name {
            "koebe" => {
                arity(0)?;
                NamedFunction::Koebe
            }
            "two_point" => {
                arity(2)?;
                NamedFunction::TwoPoint {
                    theta1: params[0],
                    theta2: params[1],
                }
            }
            "l_phi" => {
                arity(1)?;
                NamedFunction::LPhi { phi: params[0] }
            }
            "power_map" => {
                if params.is_empty() || params.len() > 2 {
                    return Err(Error::InvalidParams {
                        name: name.into(),
                        reason: "expected beta_re and optional beta_im".into(),
                    });
                }
                NamedFunction::PowerMap {
                    beta_re: params[0],
                    beta_im: params.get(1).copied().unwrap_or(0.0),
                }
            }
            "c_half_extremal" => {
                arity(0)?;
                NamedFunction::CHalfExtremal
            }
            "odd_sqrt" => {
                arity(0)?;
                NamedFunction::OddSqrt
            }
            other => return Err(Error::UnknownName(other.to_string())),
        };
        f.validate()?;
        Ok(f)
    }

    /// `z (1 - z)^{2(alpha - 1)}`, the equality case for starlike functions of
    /// non-positive order.
    pub fn starlike_extremal(alpha: f64) -> Self {
        NamedFunction::PowerMap {
            beta_re: 2.0 * (1.0 - alpha),
            beta_im: 0.0,
        }
    }

    /// `z / (1 - z)^beta` with the real exponent `beta = 2 (1 - alpha) cos gamma`.
    pub fn real_power_example(gamma: f64, alpha: f64) -> Self {
        NamedFunction::PowerMap {
            beta_re: 2.0 * (1.0 - alpha) * gamma.cos(),
            beta_im: 0.0,
        }
    }

    /// `z / (1 - z)^B` with `B = 2 (1 - alpha) e^{i gamma} cos gamma`, the
    /// single-atom member of `S_gamma(alpha)`.
    pub fn spiral_power(gamma: f64, alpha: f64) -> Self {
        let b = Complex64::from_polar(gamma.cos(), gamma) * (2.0 * (1.0 - alpha));
        NamedFunction::PowerMap {
            beta_re: b.re,
            beta_im: b.im,
        }
    }

    pub fn id(&self) -> String {
        match *self {
            NamedFunction::Koebe => "koebe".into(),
            NamedFunction::TwoPoint { theta1, theta2 } => format!("two_point({theta1},{theta2})"),
            NamedFunction::LPhi { phi } => format!("l_phi({phi})"),
            NamedFunction::PowerMap { beta_re, beta_im: 0.0 } => format!("power_map({beta_re})"),
            NamedFunction::PowerMap { beta_re, beta_im } => format!("power_map({beta_re},{beta_im})"),
            NamedFunction::CHalfExtremal => "c_half_extremal".into(),
            NamedFunction::OddSqrt => "odd_sqrt".into(),
        }
    }

    fn validate(&self) -> Result<()> {
        let invalid = |reason: &str| Err(Error::InvalidParams {
            name: self.id(),
            reason: reason.into(),
        });
        match *self {
            NamedFunction::TwoPoint { theta1, theta2 } if !(theta1.is_finite() && theta2.is_finite()) => {
                invalid("angles must be finite")
            }
            NamedFunction::LPhi { phi } if !phi.is_finite() || phi.sin().abs() < 1e-12 => {
                invalid("sin(phi) must be nonzero")
            }
            NamedFunction::PowerMap { beta_re, beta_im } if !(beta_re.is_finite() && beta_im.is_finite()) => {
                invalid("exponent must be finite")
            }
            _ => Ok(()),
        }
    }

    /// The class this function is a member of, where one of the supported
    /// kinds applies.
    pub fn natural_spec(&self) -> Option<ClassSpec> {
        match *self {
            NamedFunction::Koebe | NamedFunction::TwoPoint { .. } => ClassSpec::starlike(0.0).ok(),
            NamedFunction::LPhi { .. } => ClassSpec::convex(0.0).ok(),
            NamedFunction::CHalfExtremal | NamedFunction::OddSqrt => Some(ClassSpec::c_half()),
            NamedFunction::PowerMap { beta_re, beta_im } => {
                if beta_re <= 0.0 {
                    return None;
                }
                if beta_im == 0.0 {
                    return ClassSpec::starlike(1.0 - beta_re / 2.0).ok();
                }
                let b = Complex64::new(beta_re, beta_im);
                let gamma = b.arg();
                ClassSpec::spirallike(gamma, 1.0 - b.norm() / (2.0 * gamma.cos())).ok()
            }
        }
    }
}

/// Coefficients of a named function up to `order`, from closed forms.
pub fn named(function: &NamedFunction, order: usize) -> Result<FunctionSeries> {
    function.validate()?;
    let order = order.max(1);
    let zero = Complex64::new(0.0, 0.0);
    let coeffs: Vec<Complex64> = match *function {
        NamedFunction::Koebe => (0..=order).map(|n| Complex64::new(n as f64, 0.0)).collect(),
        NamedFunction::TwoPoint { theta1, theta2 } => {
            let u = Complex64::from_polar(1.0, -theta1);
            let v = Complex64::from_polar(1.0, -theta2);
            // a_n = sum_{j=0}^{n-1} u^j v^{n-1-j}
            (0..=order)
                .map(|n| {
                    if n == 0 {
                        return zero;
                    }
                    (0..n)
                        .map(|j| u.powu(j as u32) * v.powu((n - 1 - j) as u32))
                        .sum()
                })
                .collect()
        }
        NamedFunction::LPhi { phi } => (0..=order)
            .map(|n| {
                if n == 0 {
                    zero
                } else {
                    Complex64::new((n as f64 * phi).sin() / (n as f64 * phi.sin()), 0.0)
                }
            })
            .collect(),
        NamedFunction::PowerMap { beta_re, beta_im } => {
            // a_{n+1} = a_n (n - 1 + beta) / n, a_1 = 1
            let beta = Complex64::new(beta_re, beta_im);
            let mut out = vec![zero; order + 1];
            out[1] = Complex64::new(1.0, 0.0);
            for n in 1..order {
                out[n + 1] = out[n] * (beta + (n - 1) as f64) / n as f64;
            }
            out
        }
        NamedFunction::CHalfExtremal => (0..=order)
            .map(|n| if n == 0 { zero } else { Complex64::new((n + 1) as f64 / 2.0, 0.0) })
            .collect(),
        NamedFunction::OddSqrt => {
            let mut out = vec![zero; order + 1];
            let mut r = 1.0;
            let mut j = 0usize;
            while 2 * j < order {
                out[2 * j + 1] = Complex64::new(r, 0.0);
                r *= (2 * j + 1) as f64 / (2 * j + 2) as f64;
                j += 1;
            }
            out
        }
    };
    FunctionSeries::new(
        Series::new(coeffs),
        Provenance::Named {
            function: *function,
        },
    )
}
