//! Bound evaluators for the successive-coefficient functional, the weighted
//! coefficient inequality for functions with positive real part, the third
//! Lebedev-Milin inequality, and a step-by-step replay of the argument that
//! bounds `| |a_{n+1}| - |a_n| |` for `S_gamma(alpha)`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::classes::{alexander_forward, ClassKind, ClassSpec};
use crate::error::{Error, Result};
use crate::function::FunctionSeries;
use crate::series::Series;

pub const TOL_INEQ: f64 = 1e-8;
/// Grid resolution for maximizing `Re psi` on the unit circle.
pub const PSI_GRID: usize = 8192;
/// Angular tolerance of the golden-section refinement.
pub const PSI_ANGLE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    /// `| |a_{n+1}| - |a_n| | <= exp(-M alpha cos gamma)` on `S_gamma(alpha)`.
    ThmMain,
    /// `<= 1` on `S_gamma(0)`, `n >= 2`.
    CorSpiral,
    /// `|a_{n+1}| - |a_n| <= exp(-M alpha cos gamma) / (n + 1)` on `C_gamma(alpha)`.
    CorConvexGamma,
    /// `<= 1` on `S*`.
    ThmA,
    /// `|a_{n+1}| - |a_n| <= 1 / (n + 1)` on convex functions.
    ThmB,
    /// `<= Gamma(1 - 2 alpha + n) / (Gamma(1 - 2 alpha) Gamma(n + 1))` on `S*(alpha)`, `alpha <= 0`.
    ThmC,
    /// `|a_{n+1}| - |a_n| <= 1` on `C(-1/2)`.
    ThmCHalf,
    /// `| n|a_n| - m|a_m| | <= (n - m)(n + m + 1) / 2` on `C(-1/2)`.
    ThmRobertson,
    /// `cos gamma sum lambda_k |c_k|^2 <= 2 M (1 - alpha)`.
    Lemma31,
    /// `|beta_n|^2 <= exp(sum_{k<=n} (k |alpha_k|^2 - 1/k))`.
    Milin3,
}

impl TheoremId {
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::ThmMain => "thm_main",
            TheoremId::CorSpiral => "cor_spiral",
            TheoremId::CorConvexGamma => "cor_convex_gamma",
            TheoremId::ThmA => "thm_A",
            TheoremId::ThmB => "thm_B",
            TheoremId::ThmC => "thm_C",
            TheoremId::ThmCHalf => "thm_c_half",
            TheoremId::ThmRobertson => "thm_robertson",
            TheoremId::Lemma31 => "lemma31",
            TheoremId::Milin3 => "milin3",
        }
    }

    /// Whether the left-hand side is an absolute value of the difference.
    pub fn two_sided(self) -> bool {
        matches!(
            self,
            TheoremId::ThmMain
                | TheoremId::CorSpiral
                | TheoremId::ThmA
                | TheoremId::ThmC
                | TheoremId::ThmRobertson
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub theorem_id: TheoremId,
    pub n: usize,
    pub m: Option<usize>,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub two_sided: bool,
    pub pass: bool,
}

impl BoundReport {
    pub fn new(theorem_id: TheoremId, n: usize, m: Option<usize>, lhs: f64, rhs: f64) -> Self {
        let slack = rhs - lhs;
        Self {
            theorem_id,
            n,
            m,
            lhs,
            rhs,
            slack,
            two_sided: theorem_id.two_sided(),
            pass: slack >= -TOL_INEQ,
        }
    }
}

/// Right-hand sides of the coefficient bounds. Variants carrying `m_const`
/// take the per-function constant from [`proof_trace`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "theorem")]
pub enum Bound {
    Main { gamma: f64, alpha: f64, m_const: f64 },
    CorSpiral,
    CorConvexGamma { gamma: f64, alpha: f64, m_const: f64 },
    ThmA,
    ThmB,
    ThmC { alpha: f64 },
    CHalf,
    Robertson,
}

impl Bound {
    pub fn theorem_id(&self) -> TheoremId {
        match self {
            Bound::Main { .. } => TheoremId::ThmMain,
            Bound::CorSpiral => TheoremId::CorSpiral,
            Bound::CorConvexGamma { .. } => TheoremId::CorConvexGamma,
            Bound::ThmA => TheoremId::ThmA,
            Bound::ThmB => TheoremId::ThmB,
            Bound::ThmC { .. } => TheoremId::ThmC,
            Bound::CHalf => TheoremId::ThmCHalf,
            Bound::Robertson => TheoremId::ThmRobertson,
        }
    }
}

/// `Gamma(b + n) / (Gamma(b) Gamma(n + 1))` by the product
/// `prod_{k=1}^{n} (b + k - 1) / k`.
pub fn gamma_ratio(b: f64, n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * (b + (k - 1) as f64) / k as f64)
}

pub fn bound_rhs(bound: &Bound, n: usize, m: Option<usize>) -> Result<f64> {
    let invalid = || Err(Error::InvalidIndices { n, m });
    if let Bound::Robertson = bound {
        return match m {
            Some(m) if n > m && m >= 1 => Ok(((n - m) * (n + m + 1)) as f64 / 2.0),
            _ => invalid(),
        };
    }
    if n < 2 {
        return invalid();
    }
    Ok(match *bound {
        Bound::Main { gamma, alpha, m_const } => (-m_const * alpha * gamma.cos()).exp(),
        Bound::CorSpiral | Bound::ThmA | Bound::CHalf => 1.0,
        Bound::CorConvexGamma { gamma, alpha, m_const } => {
            (-m_const * alpha * gamma.cos()).exp() / (n + 1) as f64
        }
        Bound::ThmB => 1.0 / (n + 1) as f64,
        Bound::ThmC { alpha } => gamma_ratio(1.0 - 2.0 * alpha, n),
        Bound::Robertson => unreachable!(),
    })
}

/// `| |a_{n+1}| - |a_n| |`.
pub fn successive_diff(f: &FunctionSeries, n: usize) -> Result<f64> {
    Ok(signed_diff(f, n)?.abs())
}

/// `|a_{n+1}| - |a_n|`.
pub fn signed_diff(f: &FunctionSeries, n: usize) -> Result<f64> {
    f.require_order(n + 1)?;
    Ok(f.a(n + 1).norm() - f.a(n).norm())
}

/// `| n |a_n| - m |a_m| |` against `(n - m)(n + m + 1) / 2`.
pub fn robertson_gap(f: &FunctionSeries, n: usize, m: usize) -> Result<BoundReport> {
    let rhs = bound_rhs(&Bound::Robertson, n, Some(m))?;
    f.require_order(n)?;
    let lhs = (n as f64 * f.a(n).norm() - m as f64 * f.a(m).norm()).abs();
    Ok(BoundReport::new(TheoremId::ThmRobertson, n, Some(m), lhs, rhs))
}

/// Golden-section search for a maximum of `f` on `[a, b]`.
pub fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Maximum of `Re(e^{i gamma} sum_k d_k z^k)` over `|z| = 1`, `d_k = weights[k-1]`.
/// Returns the value and the maximizing angle in `[0, 2 pi)`; ties go to the
/// smallest angle.
pub fn max_re_on_circle(weights: &[Complex64], gamma: f64) -> (f64, f64) {
    let rot = Complex64::from_polar(1.0, gamma);
    let mut poly = Vec::with_capacity(weights.len() + 1);
    poly.push(Complex64::new(0.0, 0.0));
    poly.extend(weights.iter().map(|&w| w * rot));
    let psi = Series::new(poly);
    let value = |t: f64| psi.eval(Complex64::from_polar(1.0, t)).re;

    let m = PSI_GRID;
    let h = TAU / m as f64;
    let grid: Vec<f64> = (0..m).map(|j| value(j as f64 * h)).collect();
    let best_grid = grid.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let spread = best_grid - grid.iter().copied().fold(f64::INFINITY, f64::min);
    if spread <= f64::EPSILON * best_grid.abs().max(1.0) {
        return (grid[0], 0.0);
    }

    // refine every grid-local maximum that could be the global one
    let cutoff = best_grid - 1e-3 * best_grid.abs().max(1.0);
    let mut best = (f64::NEG_INFINITY, 0.0);
    let consider = |v: f64, t: f64, best: &mut (f64, f64)| {
        if v > best.0 || (v == best.0 && t < best.1) {
            *best = (v, t);
        }
    };
    for j in 0..m {
        let v = grid[j];
        if v < cutoff || v < grid[(j + m - 1) % m] || v < grid[(j + 1) % m] {
            continue;
        }
        let t = j as f64 * h;
        consider(v, t, &mut best);
        let (tr, vr) = golden_section_max(value, t - h, t + h, PSI_ANGLE_TOL);
        if vr > v {
            consider(vr, tr.rem_euclid(TAU), &mut best);
        }
    }
    best
}

/// `M = max_{|z|=1} Re psi(z)` for `psi(z) = e^{i gamma} sum_{k=1}^{n} c_k z^k / k`.
pub fn psi_max(c: &[Complex64], n: usize, gamma: f64) -> (f64, f64) {
    let weights: Vec<Complex64> = c.iter().take(n).enumerate().map(|(i, &ck)| ck / (i + 1) as f64).collect();
    max_re_on_circle(&weights, gamma)
}

/// Weighted form: `psi(z) = e^{i gamma} sum lambda_k c_k z^k`.
pub fn psi_max_weighted(c: &[Complex64], lambda: &[f64], gamma: f64) -> (f64, f64) {
    let weights: Vec<Complex64> = c.iter().zip(lambda).map(|(&ck, &l)| ck * l).collect();
    max_re_on_circle(&weights, gamma)
}

/// `cos gamma sum lambda_k |c_k|^2` against `2 M (1 - alpha)`.
pub fn lemma31_check(c: &[Complex64], lambda: &[f64], gamma: f64, alpha: f64, m_const: f64) -> BoundReport {
    let lhs = gamma.cos() * c.iter().zip(lambda).map(|(ck, l)| l * ck.norm_sqr()).sum::<f64>();
    let rhs = 2.0 * m_const * (1.0 - alpha);
    BoundReport::new(TheoremId::Lemma31, c.len().min(lambda.len()), None, lhs, rhs)
}

/// Both sides of the third Lebedev-Milin inequality for
/// `exp(sum alpha_k z^k) = sum beta_k z^k`, where `alpha_seq[k-1] = alpha_k`.
pub fn milin_third(alpha_seq: &[Complex64], n: usize) -> Result<(f64, f64)> {
    if n > alpha_seq.len() {
        return Err(Error::OrderTooLow {
            order: alpha_seq.len(),
            needed: n,
        });
    }
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(Complex64::new(0.0, 0.0));
    coeffs.extend_from_slice(&alpha_seq[..n]);
    let beta = Series::new(coeffs).exp_zero()?;
    let lhs = beta.coeff(n).norm_sqr();
    let exponent: f64 = (1..=n)
        .map(|k| k as f64 * alpha_seq[k - 1].norm_sqr() - 1.0 / k as f64)
        .sum();
    Ok((lhs, exponent.exp()))
}

/// Every quantity in the chain that bounds `| |a_{n+1}| - |a_n| |` for a
/// member of `S_gamma(alpha)`, with the slack of each link.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProofTrace {
    pub n: usize,
    pub gamma: f64,
    pub alpha: f64,
    /// `c_1..c_n` of `phi = 1 + sum c_k z^k`.
    pub c: Vec<Complex64>,
    /// `C_k = e^{i gamma} cos gamma c_k`.
    #[serde(rename = "C")]
    pub big_c: Vec<Complex64>,
    /// `max Re psi` on the unit circle.
    #[serde(rename = "M")]
    pub m_const: f64,
    pub xi0: Complex64,
    /// `sum_{k<=n} (|C_k - xi0^k|^2 / k - 1 / k)`.
    pub milin_exponent: f64,
    /// `|a_{n+1} - xi0 a_n|`.
    pub beta_bound: f64,
    /// `exp(-M alpha cos gamma)`.
    pub final_bound: f64,
    pub successive_diff: f64,
    /// `-2 M alpha cos gamma - milin_exponent`.
    pub slack_exponent: f64,
    /// `exp(milin_exponent) - beta_bound^2`.
    pub slack_milin: f64,
    /// `beta_bound - successive_diff`.
    pub slack_triangle: f64,
    /// `final_bound - successive_diff`.
    pub slack_final: f64,
}

impl ProofTrace {
    /// `|xi0| = 1`, the exponent estimate, the Lebedev-Milin step, and the
    /// final bound, each to their tolerances.
    pub fn holds(&self) -> bool {
        (self.xi0.norm() - 1.0).abs() <= 1e-12
            && self.slack_exponent >= -TOL_INEQ
            && self.slack_milin >= -TOL_INEQ
            && self.slack_triangle >= -TOL_INEQ
            && self.slack_final >= -TOL_INEQ
    }

    pub fn min_slack(&self) -> f64 {
        self.slack_exponent
            .min(self.slack_milin)
            .min(self.slack_triangle)
            .min(self.slack_final)
    }

    pub fn lemma_report(&self) -> BoundReport {
        let lambda: Vec<f64> = (1..=self.n).map(|k| 1.0 / k as f64).collect();
        lemma31_check(&self.c, &lambda, self.gamma, self.alpha, self.m_const)
    }
}

/// Replays the bound for `f` in `S_gamma(alpha)` at index `n`.
///
/// The `c_k` are recovered from `f'/f - 1/z = e^{i gamma} cos gamma sum c_k z^{k-1}`,
/// computed as the log-derivative of `f/z`.
pub fn proof_trace(f: &FunctionSeries, gamma: f64, alpha: f64, n: usize) -> Result<ProofTrace> {
    let cos_g = gamma.cos();
    if cos_g < 1e-9 {
        return Err(Error::DegenerateCosGamma(cos_g));
    }
    if n == 0 {
        return Err(Error::InvalidIndices { n, m: None });
    }
    f.require_order(n + 1)?;
    let p = f.over_z();
    let log_derivative = p.derivative().div(&p)?;
    let factor = Complex64::from_polar(cos_g, gamma);
    let big_c: Vec<Complex64> = (1..=n).map(|k| log_derivative.coeff(k - 1)).collect();
    let c: Vec<Complex64> = big_c.iter().map(|&ck| ck / factor).collect();

    let (m_const, theta) = psi_max(&c, n, gamma);
    // Re psi(conj(xi0)) = M
    let xi0 = Complex64::from_polar(1.0, -theta);

    let mut xi_power = Complex64::new(1.0, 0.0);
    let milin_exponent: f64 = big_c
        .iter()
        .enumerate()
        .map(|(i, &ck)| {
            xi_power *= xi0;
            let k = (i + 1) as f64;
            (ck - xi_power).norm_sqr() / k - 1.0 / k
        })
        .sum();
    let beta_bound = (f.a(n + 1) - xi0 * f.a(n)).norm();
    let final_bound = (-m_const * alpha * cos_g).exp();
    let diff = successive_diff(f, n)?;
    Ok(ProofTrace {
        n,
        gamma,
        alpha,
        c,
        big_c,
        m_const,
        xi0,
        milin_exponent,
        beta_bound,
        final_bound,
        successive_diff: diff,
        slack_exponent: -2.0 * m_const * alpha * cos_g - milin_exponent,
        slack_milin: milin_exponent.exp() - beta_bound * beta_bound,
        slack_triangle: beta_bound - diff,
        slack_final: final_bound - diff,
    })
}

/// The coefficient bound that applies to a member of `spec` at index `n`,
/// with the left-hand side measured on `f`.
///
/// Starlike-type classes use the two-sided difference; convex-type classes
/// the one-sided one. Where the bound depends on `M`, it comes from the proof
/// trace of `f` (or of `z f'` for convex-type classes).
pub fn class_bound(f: &FunctionSeries, spec: &ClassSpec, n: usize) -> Result<BoundReport> {
    let (gamma, alpha) = (spec.gamma(), spec.alpha());
    let bound = match spec.kind() {
        ClassKind::Starlike | ClassKind::Spirallike => {
            if alpha == 0.0 {
                if spec.kind() == ClassKind::Starlike {
                    Bound::ThmA
                } else {
                    Bound::CorSpiral
                }
            } else if alpha < 0.0 {
                Bound::ThmC { alpha }
            } else {
                let trace = proof_trace(f, gamma, alpha, n)?;
                Bound::Main {
                    gamma,
                    alpha,
                    m_const: trace.m_const,
                }
            }
        }
        ClassKind::Convex if alpha == 0.0 => Bound::ThmB,
        ClassKind::Convex | ClassKind::ConvexSpirallike => {
            let m_const = if alpha == 0.0 {
                0.0
            } else {
                proof_trace(&alexander_forward(f), gamma, alpha, n)?.m_const
            };
            Bound::CorConvexGamma { gamma, alpha, m_const }
        }
        ClassKind::CHalf => Bound::CHalf,
    };
    let id = bound.theorem_id();
    let rhs = bound_rhs(&bound, n, None)?;
    let lhs = if id.two_sided() {
        successive_diff(f, n)?
    } else {
        signed_diff(f, n)?
    };
    Ok(BoundReport::new(id, n, None, lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{alexander_inverse, construct, sample_measure, spirallike_from_measure, AtomicMeasure};
    use crate::named::{named, NamedFunction};
    use proptest::prelude::*;

    fn harmonic(n: usize) -> f64 {
        (1..=n).map(|k| 1.0 / k as f64).sum()
    }

    #[test]
    fn koebe_difference_is_one() {
        let k = named(&NamedFunction::Koebe, 60).unwrap();
        for n in 1..=50 {
            assert_eq!(successive_diff(&k, n).unwrap(), 1.0);
        }
    }

    #[test]
    fn c_half_and_cubic_power_differences() {
        let f = named(&NamedFunction::CHalfExtremal, 30).unwrap();
        for n in 1..29 {
            assert_eq!(successive_diff(&f, n).unwrap(), 0.5);
        }
        let g = named(&NamedFunction::PowerMap { beta_re: 3.0, beta_im: 0.0 }, 30).unwrap();
        for n in 1..29 {
            assert_eq!(successive_diff(&g, n).unwrap(), (n + 1) as f64);
        }
    }

    #[test]
    fn successive_diff_needs_order() {
        let k = named(&NamedFunction::Koebe, 5).unwrap();
        assert!(matches!(successive_diff(&k, 5), Err(Error::OrderTooLow { .. })));
    }

    #[test]
    fn bound_rhs_examples() {
        for n in 2..40 {
            let rhs = bound_rhs(&Bound::ThmC { alpha: -0.5 }, n, None).unwrap();
            assert!((rhs - (n + 1) as f64).abs() < 1e-12 * n as f64);
        }
        assert_eq!(bound_rhs(&Bound::ThmB, 4, None).unwrap(), 0.2);
        assert_eq!(bound_rhs(&Bound::Robertson, 5, Some(2)).unwrap(), 12.0);
        assert!(bound_rhs(&Bound::Robertson, 2, Some(2)).is_err());
        assert!(bound_rhs(&Bound::Robertson, 3, None).is_err());
        assert!(bound_rhs(&Bound::ThmA, 1, None).is_err());
        let main = Bound::Main { gamma: 0.0, alpha: 0.5, m_const: 2.0 };
        assert!((bound_rhs(&main, 3, None).unwrap() - (-1.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn gamma_ratio_matches_gamma_function_values() {
        // Gamma(b + n) / (Gamma(b) n!) for b = 2: n + 1; b = 5: C(n + 4, 4)
        for n in 0..20 {
            assert!((gamma_ratio(2.0, n) - (n + 1) as f64).abs() < 1e-12);
            let binom = ((n + 1) * (n + 2) * (n + 3) * (n + 4)) as f64 / 24.0;
            assert!((gamma_ratio(5.0, n) - binom).abs() < 1e-9 * binom);
        }
    }

    #[test]
    fn psi_max_examples() {
        let n = 12;
        let c = vec![Complex64::new(2.0, 0.0); n];
        let (m, t) = psi_max(&c, n, 0.0);
        assert!((m - 2.0 * harmonic(n)).abs() < 1e-12);
        assert_eq!(t, 0.0);
        let (m, t) = psi_max(&vec![Complex64::new(0.0, 0.0); n], n, 0.3);
        assert_eq!((m, t), (0.0, 0.0));
    }

    #[test]
    fn psi_max_refines_off_grid_maximum() {
        // Re(e^{i 0.5} z) peaks at angle -0.5
        let (m, t) = max_re_on_circle(&[Complex64::new(1.0, 0.0)], 0.5);
        assert!((m - 1.0).abs() < 1e-15);
        // a smooth peak pins the angle only to about sqrt(eps)
        assert!((t - (TAU - 0.5)).abs() < 1e-7);
    }

    #[test]
    fn psi_max_single_atom_example_bound() {
        // c_k = 2 (1 - alpha): M = 2 (1 - alpha) H_n <= 2 (1 - alpha)(log n + 1)
        for alpha in [0.25, 0.5] {
            for n in 2..=20 {
                let c = vec![Complex64::new(2.0 * (1.0 - alpha), 0.0); n];
                let (m, _) = psi_max(&c, n, 0.0);
                assert!((m - 2.0 * (1.0 - alpha) * harmonic(n)).abs() < 1e-12);
                assert!(m <= 2.0 * (1.0 - alpha) * ((n as f64).ln() + 1.0));
            }
        }
    }

    #[test]
    fn lemma_examples() {
        let zero = vec![Complex64::new(0.0, 0.0); 5];
        let lambda: Vec<f64> = (1..=5).map(|k| 1.0 / k as f64).collect();
        let r = lemma31_check(&zero, &lambda, 0.0, 0.0, 0.0);
        assert_eq!((r.lhs, r.rhs), (0.0, 0.0));
        assert!(r.pass);

        let n = 15;
        let c = vec![Complex64::new(2.0, 0.0); n];
        let lambda: Vec<f64> = (1..=n).map(|k| 1.0 / k as f64).collect();
        let (m, _) = psi_max(&c, n, 0.0);
        let r = lemma31_check(&c, &lambda, 0.0, 0.0, m);
        assert!((r.lhs - 4.0 * harmonic(n)).abs() < 1e-12);
        assert!((r.slack).abs() < 1e-9);
    }

    #[test]
    fn milin_examples() {
        let koebe_log: Vec<Complex64> = (1..=5).map(|k| Complex64::new(2.0 / k as f64, 0.0)).collect();
        let (lhs, rhs) = milin_third(&koebe_log, 1).unwrap();
        assert!((lhs - 4.0).abs() < 1e-14);
        assert!((rhs - 3f64.exp()).abs() < 1e-12);

        let zero = vec![Complex64::new(0.0, 0.0); 10];
        for n in 1..=10 {
            let (lhs, rhs) = milin_third(&zero, n).unwrap();
            assert_eq!(lhs, 0.0);
            assert!((rhs - (-harmonic(n)).exp()).abs() < 1e-15);
        }
        assert!(milin_third(&zero, 11).is_err());
    }

    #[test]
    fn koebe_trace_is_tight_everywhere() {
        let k = named(&NamedFunction::Koebe, 40).unwrap();
        for n in 1..30 {
            let t = proof_trace(&k, 0.0, 0.0, n).unwrap();
            assert!((t.xi0 - Complex64::new(1.0, 0.0)).norm() < 1e-12);
            assert!((t.final_bound - 1.0).abs() < 1e-15);
            assert!((t.successive_diff - 1.0).abs() < 1e-12);
            assert!(t.milin_exponent.abs() < 1e-10);
            assert!((t.beta_bound - 1.0).abs() < 1e-10);
            assert!(t.holds());
        }
    }

    #[test]
    fn identity_trace() {
        let f = FunctionSeries::identity(4);
        let t = proof_trace(&f, 0.0, 0.3, 1).unwrap();
        assert_eq!(t.m_const, 0.0);
        assert_eq!(t.final_bound, 1.0);
        assert_eq!(t.successive_diff, 1.0);
        assert!(t.holds());
    }

    #[test]
    fn trace_rejects_degenerate_gamma() {
        let f = FunctionSeries::identity(4);
        let err = proof_trace(&f, std::f64::consts::FRAC_PI_2, 0.0, 2).unwrap_err();
        assert!(matches!(err, Error::DegenerateCosGamma(_)));
    }

    #[test]
    fn trace_recovers_measure_coefficients() {
        let spec = ClassSpec::spirallike(0.4, 0.25).unwrap();
        let m = sample_measure(2, 3);
        let f = spirallike_from_measure(&m, &spec, 20).unwrap();
        let t = proof_trace(&f, 0.4, 0.25, 10).unwrap();
        let h = crate::classes::herglotz(&m, 10);
        for k in 1..=10 {
            assert!((t.c[k - 1] - h.coeff(k) * 0.75).norm() < 1e-10);
        }
    }

    #[test]
    fn robertson_examples() {
        let f = named(&NamedFunction::CHalfExtremal, 30).unwrap();
        let r = robertson_gap(&f, 9, 4).unwrap();
        assert!((r.lhs - r.rhs).abs() < 1e-12);
        let id = FunctionSeries::identity(5);
        let r = robertson_gap(&id, 3, 2).unwrap();
        assert_eq!((r.lhs, r.rhs), (0.0, 3.0));
        assert!(matches!(robertson_gap(&id, 2, 3), Err(Error::InvalidIndices { .. })));
    }

    #[test]
    fn report_flags() {
        let r = BoundReport::new(TheoremId::ThmB, 3, None, 0.3, 0.25);
        assert!(!r.pass && !r.two_sided);
        let r = BoundReport::new(TheoremId::ThmA, 3, None, 1.0 + 5e-9, 1.0);
        assert!(r.pass && r.two_sided);
    }

    #[test]
    fn class_bound_selection() {
        let k = named(&NamedFunction::Koebe, 12).unwrap();
        assert_eq!(class_bound(&k, &ClassSpec::starlike(0.0).unwrap(), 5).unwrap().theorem_id, TheoremId::ThmA);
        let l = named(&NamedFunction::LPhi { phi: std::f64::consts::PI / 5.0 }, 12).unwrap();
        let r = class_bound(&l, &ClassSpec::convex(0.0).unwrap(), 5).unwrap();
        assert_eq!(r.theorem_id, TheoremId::ThmB);
        assert!((r.slack).abs() < 1e-12);
        let spec = ClassSpec::convex_spirallike(0.3, 0.4).unwrap();
        let f = construct(&sample_measure(4, 2), &spec, 12).unwrap();
        let r = class_bound(&f, &spec, 6).unwrap();
        assert_eq!(r.theorem_id, TheoremId::CorConvexGamma);
        assert!(r.pass);
    }

    #[test]
    fn convex_gamma_corollary_via_alexander() {
        let spec = ClassSpec::spirallike(-0.6, 0.3).unwrap();
        for seed in 0..40 {
            let g = spirallike_from_measure(&sample_measure(seed, 1 + seed as usize % 5), &spec, 24).unwrap();
            let f = alexander_inverse(&g);
            for n in 2..=20 {
                let m = proof_trace(&g, -0.6, 0.3, n).unwrap().m_const;
                let rhs = bound_rhs(&Bound::CorConvexGamma { gamma: -0.6, alpha: 0.3, m_const: m }, n, None).unwrap();
                assert!(signed_diff(&f, n).unwrap() <= rhs + TOL_INEQ);
            }
        }
    }

    #[test]
    fn starlike_negative_order_respects_hamilton_bound() {
        for alpha in [-0.5, -1.0, -2.0] {
            let spec = ClassSpec::starlike(alpha).unwrap();
            for seed in 0..40 {
                let f = spirallike_from_measure(&sample_measure(seed, 1 + seed as usize % 4), &spec, 24).unwrap();
                for n in 2..=20 {
                    let r = class_bound(&f, &spec, n).unwrap();
                    assert_eq!(r.theorem_id, TheoremId::ThmC);
                    assert!(r.pass, "alpha {alpha} seed {seed} n {n}: {r:?}");
                }
            }
        }
    }

    #[test]
    fn c_half_members_respect_robertson() {
        let spec = ClassSpec::c_half();
        for seed in 0..40 {
            let f = construct(&sample_measure(seed, 3), &spec, 12).unwrap();
            assert!(robertson_gap(&f, 8, 3).unwrap().pass);
        }
        let two = construct(&AtomicMeasure::uniform(&[0.3, 2.0]), &spec, 12).unwrap();
        assert!(robertson_gap(&two, 8, 3).unwrap().pass);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn milin_third_is_universal(
            raw in prop::collection::vec((0.0f64..1.0, 0.0f64..TAU), 1..=30),
        ) {
            let seq: Vec<Complex64> = raw.iter().map(|&(r, t)| Complex64::from_polar(r, t)).collect();
            for n in 1..=seq.len() {
                let (lhs, rhs) = milin_third(&seq, n).unwrap();
                prop_assert!(lhs <= rhs * (1.0 + 1e-12));
            }
        }

        #[test]
        fn spirallike_zero_order_difference_at_most_one(seed in any::<u64>(), k in 1usize..=8, gamma in -1.4f64..1.4) {
            let spec = ClassSpec::spirallike(gamma, 0.0).unwrap();
            let f = spirallike_from_measure(&sample_measure(seed, k), &spec, 32).unwrap();
            for n in 2..=30 {
                prop_assert!(successive_diff(&f, n).unwrap() <= 1.0 + TOL_INEQ);
            }
        }

        #[test]
        fn trace_chain_holds(seed in any::<u64>(), k in 1usize..=6, gamma in -1.2f64..1.2, alpha in 0.0f64..0.9, n in 1usize..=20) {
            let spec = ClassSpec::spirallike(gamma, alpha).unwrap();
            let f = spirallike_from_measure(&sample_measure(seed, k), &spec, 24).unwrap();
            let t = proof_trace(&f, gamma, alpha, n).unwrap();
            prop_assert!(t.holds(), "{t:?}");
            prop_assert!(t.final_bound <= 1.0);
            prop_assert!(t.lemma_report().pass);
        }
    }
}
