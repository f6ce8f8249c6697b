//! Grid certification of the defining real-part conditions.
//!
//! A nonnegative margin corroborates membership at the resolution of the grid
//! and the truncation order; it is a falsification tool, not a proof.

use std::collections::VecDeque;
use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::classes::ClassSpec;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::function::FunctionSeries;
use crate::series::{circle_points, Series, DIV_FLOOR};

pub const TOL_MEMBER: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub radii: Vec<f64>,
    /// Angular resolution.
    pub m: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            radii: vec![0.5, 0.9, 0.99],
            m: 4096,
        }
    }
}

impl Grid {
    pub fn single(r: f64, m: usize) -> Self {
        Self { radii: vec![r], m }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// `Re(e^{-i gamma} z f'/f) - alpha cos gamma`
    Spirallike,
    /// `Re(e^{-i gamma} (1 + z f''/f')) - alpha cos gamma`
    Convex,
    /// Minimum window integral of `Re(1 + z f''/f')`, plus `pi`.
    Kaplan,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub condition: Condition,
    /// Absent for the Kaplan test, which has no class parameters.
    pub spec: Option<ClassSpec>,
    pub margin: f64,
    pub grid: Grid,
    pub worst_point: Complex64,
    /// Whether the series order reaches [`order_for_radius`] for the outermost
    /// radius. Margins from inadequate truncations say nothing about `f`.
    pub truncation_adequate: bool,
}

impl MembershipReport {
    pub fn passes(&self) -> bool {
        self.margin >= -TOL_MEMBER
    }
}

/// Largest truncation-tail proxy `N^2 r^N` we accept before a radius is
/// considered out of reach of a series of order `N`.
const TAIL_FLOOR: f64 = 1e-14;

/// Smallest order `N` with `N^2 r^N` below `1e-14`, so that the truncated
/// polynomial faithfully represents a function with polynomially growing
/// coefficients on `|z| <= r`.
pub fn order_for_radius(r: f64) -> usize {
    assert!(r > 0.0 && r < 1.0, "radius must lie in (0, 1)");
    let mut n = 8usize;
    while (n as f64).powi(2) * r.powi(n as i32) > TAIL_FLOOR {
        n += 8;
    }
    n
}

fn adequate(f: &FunctionSeries, radii: &[f64]) -> bool {
    let r = radii.iter().copied().fold(0.0, f64::max);
    r < 1.0 && f.order() >= order_for_radius(r)
}

fn scan<F>(grid: &Grid, exec: Execution, value_at: F) -> Result<(f64, Complex64)>
where
    F: Fn(Complex64) -> Result<f64> + Sync + Send,
{
    let points: Vec<Complex64> = grid
        .radii
        .iter()
        .flat_map(|&r| circle_points(r, grid.m))
        .collect();
    let values = exec.map_slice(&points, |&z| value_at(z));
    let mut worst = (f64::INFINITY, Complex64::new(0.0, 0.0));
    for (v, z) in values.into_iter().zip(points) {
        let v = v?;
        if v < worst.0 {
            worst = (v, z);
        }
    }
    Ok(worst)
}

pub fn check_spirallike(f: &FunctionSeries, spec: &ClassSpec, grid: &Grid) -> Result<MembershipReport> {
    check_spirallike_with(f, spec, grid, Execution::default())
}

pub fn check_spirallike_with(
    f: &FunctionSeries,
    spec: &ClassSpec,
    grid: &Grid,
    exec: Execution,
) -> Result<MembershipReport> {
    // z f'/f = 1 + z p'/p with p = f/z, which sidesteps the removable 0/0 at z = 0
    let p = f.over_z();
    let dp = p.derivative();
    let rot = Complex64::from_polar(1.0, -spec.gamma());
    let threshold = spec.alpha() * spec.gamma().cos();
    let (margin, worst_point) = scan(grid, exec, |z| {
        let pz = p.eval(z);
        if pz.norm() <= DIV_FLOOR {
            return Err(Error::ZeroOnGrid { re: z.re, im: z.im });
        }
        let w = 1.0 + z * dp.eval(z) / pz;
        Ok((rot * w).re - threshold)
    })?;
    Ok(MembershipReport {
        condition: Condition::Spirallike,
        spec: Some(*spec),
        margin,
        grid: grid.clone(),
        worst_point,
        truncation_adequate: adequate(f, &grid.radii),
    })
}

/// `1 + z f''(z) / f'(z)` evaluated through the two derivative series.
fn convex_expression(d1: &Series, d2: &Series, z: Complex64) -> Result<Complex64> {
    let fp = d1.eval(z);
    if fp.norm() <= DIV_FLOOR {
        return Err(Error::CriticalPointOnGrid { re: z.re, im: z.im });
    }
    Ok(1.0 + z * d2.eval(z) / fp)
}

pub fn check_convex(f: &FunctionSeries, spec: &ClassSpec, grid: &Grid) -> Result<MembershipReport> {
    check_convex_with(f, spec, grid, Execution::default())
}

pub fn check_convex_with(
    f: &FunctionSeries,
    spec: &ClassSpec,
    grid: &Grid,
    exec: Execution,
) -> Result<MembershipReport> {
    let d1 = f.series().derivative();
    let d2 = d1.derivative();
    let rot = Complex64::from_polar(1.0, -spec.gamma());
    let threshold = spec.alpha() * spec.gamma().cos();
    let (margin, worst_point) = scan(grid, exec, |z| {
        Ok((rot * convex_expression(&d1, &d2, z)?).re - threshold)
    })?;
    Ok(MembershipReport {
        condition: Condition::Convex,
        spec: Some(*spec),
        margin,
        grid: grid.clone(),
        worst_point,
        truncation_adequate: adequate(f, &grid.radii),
    })
}

pub fn check_kaplan(f: &FunctionSeries, r: f64, m: usize) -> Result<MembershipReport> {
    check_kaplan_with(f, r, m, Execution::default())
}

/// Minimum over `theta1 < theta2 <= theta1 + 2 pi` (grid angles) of the
/// trapezoid-rule integral of `Re(1 + z f''/f')` on `|z| = r`, plus `pi`.
pub fn check_kaplan_with(f: &FunctionSeries, r: f64, m: usize, exec: Execution) -> Result<MembershipReport> {
    let d1 = f.series().derivative();
    let d2 = d1.derivative();
    let points: Vec<Complex64> = circle_points(r, m).collect();
    let integrand = exec
        .map_slice(&points, |&z| convex_expression(&d1, &d2, z).map(|w| w.re))
        .into_iter()
        .collect::<Result<Vec<f64>>>()?;

    let (min_integral, start) = min_window_integral(&integrand);
    Ok(MembershipReport {
        condition: Condition::Kaplan,
        spec: None,
        margin: min_integral + PI,
        grid: Grid::single(r, m),
        worst_point: points[start],
        truncation_adequate: adequate(f, &[r]),
    })
}

/// Minimum trapezoid window integral over a periodic uniform sample of
/// `[0, 2 pi)`, and the starting grid index of a minimizing window.
/// Windows span 1 to `m` steps. O(m) via prefix sums and a monotone deque.
fn min_window_integral(g: &[f64]) -> (f64, usize) {
    let m = g.len();
    let h = TAU / m as f64;
    let mut prefix = Vec::with_capacity(2 * m + 1);
    prefix.push(0.0);
    for j in 0..2 * m {
        let step = 0.5 * h * (g[j % m] + g[(j + 1) % m]);
        prefix.push(prefix[j] + step);
    }
    // candidates a in [b - m, b - 1] restricted to a < m; deque keeps indices
    // with decreasing prefix values so the front is the window maximum
    let mut deque: VecDeque<usize> = VecDeque::new();
    let mut best = (f64::INFINITY, 0);
    for b in 1..2 * m {
        let a_new = b - 1;
        if a_new < m {
            while deque.back().is_some_and(|&i| prefix[i] <= prefix[a_new]) {
                deque.pop_back();
            }
            deque.push_back(a_new);
        }
        while deque.front().is_some_and(|&i| i + m < b) {
            deque.pop_front();
        }
        if let Some(&a) = deque.front() {
            let v = prefix[b] - prefix[a];
            if v < best.0 {
                best = (v, a);
            }
        }
    }
    best
}
