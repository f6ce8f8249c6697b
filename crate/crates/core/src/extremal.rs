//! Multi-start simplex search over atomic measures for functions that push a
//! coefficient functional toward its bound.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classes::{construct, sample_measure, AtomicMeasure, ClassKind, ClassSpec};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::function::FunctionSeries;
use crate::inequalities::{class_bound, robertson_gap, signed_diff, successive_diff, BoundReport};

pub const MAX_ATOMS: usize = 16;
pub const DEFAULT_RESTARTS: usize = 8;
/// Per-restart convergence tolerance on the spread of simplex values.
pub const SPREAD_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Functional {
    /// `| |a_{n+1}| - |a_n| |`
    TwoSidedDiff,
    /// `|a_{n+1}| - |a_n|`
    OneSidedDiff,
    /// `| n |a_n| - m |a_m| |`
    Robertson { m: usize },
}

impl Functional {
    pub fn evaluate(&self, f: &FunctionSeries, n: usize) -> Result<f64> {
        match *self {
            Functional::TwoSidedDiff => successive_diff(f, n),
            Functional::OneSidedDiff => signed_diff(f, n),
            Functional::Robertson { m } => Ok(robertson_gap(f, n, m)?.lhs),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Goal {
    #[default]
    Maximize,
    /// Exploratory only; nothing is asserted about minima.
    Minimize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchProblem {
    pub spec: ClassSpec,
    pub n: usize,
    pub functional: Functional,
    pub k_atoms: usize,
    /// Total number of functional evaluations across all restarts.
    pub budget: usize,
    #[serde(default = "default_restarts")]
    pub restarts: usize,
    pub seed: u64,
    #[serde(default)]
    pub goal: Goal,
}

fn default_restarts() -> usize {
    DEFAULT_RESTARTS
}

impl SearchProblem {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidProblem(msg));
        if self.k_atoms == 0 || self.k_atoms > MAX_ATOMS {
            return bad(format!("k_atoms = {} must lie in 1..={MAX_ATOMS}", self.k_atoms));
        }
        if self.budget < 100 * self.k_atoms {
            return bad(format!("budget {} is below 100 * k_atoms", self.budget));
        }
        if self.restarts == 0 || self.restarts > self.budget {
            return bad("restarts must lie in 1..=budget".into());
        }
        if self.n < 2 {
            return bad("n must be at least 2".into());
        }
        match self.functional {
            Functional::TwoSidedDiff if self.spec.kind().is_convex_type() => {
                bad("two-sided bounds are only stated for starlike-type classes".into())
            }
            Functional::Robertson { m } if m == 0 || m >= self.n => {
                bad(format!("robertson needs n > m >= 1, got n = {}, m = {m}", self.n))
            }
            Functional::Robertson { .. } if self.spec.kind() != ClassKind::CHalf => {
                bad("the robertson functional is bounded only on c_half".into())
            }
            _ => Ok(()),
        }
    }

    fn order(&self) -> usize {
        (2 * self.n).max(64)
    }

    fn measure_at(&self, x: &[f64]) -> AtomicMeasure {
        let (angles, u) = x.split_at(self.k_atoms);
        AtomicMeasure::from_unconstrained(angles, u)
    }

    /// Functional value of the class member built from `measure`.
    pub fn value(&self, measure: &AtomicMeasure) -> Result<f64> {
        let f = construct(measure, &self.spec, self.order())?;
        self.functional.evaluate(&f, self.n)
    }

    /// The applicable bound evaluated at `measure`.
    pub fn bound(&self, measure: &AtomicMeasure) -> Result<BoundReport> {
        let f = construct(measure, &self.spec, self.order())?;
        match self.functional {
            Functional::Robertson { m } => robertson_gap(&f, self.n, m),
            Functional::OneSidedDiff if !self.spec.kind().is_convex_type() => {
                // the two-sided bound also caps the signed difference
                let mut r = class_bound(&f, &self.spec, self.n)?;
                let lhs = signed_diff(&f, self.n)?;
                r = BoundReport::new(r.theorem_id, r.n, None, lhs, r.rhs);
                Ok(r)
            }
            _ => class_bound(&f, &self.spec, self.n),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistoryPoint {
    pub evaluations: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub best_value: f64,
    pub best_measure: AtomicMeasure,
    /// Incumbent improvements in evaluation order; nondecreasing when
    /// maximizing, nonincreasing when minimizing.
    pub history: Vec<HistoryPoint>,
    pub evaluations_used: usize,
    /// Some restart ran out of evaluations before its simplex converged.
    pub budget_exhausted: bool,
    /// Bound at the best measure, when maximizing. `pass = false` is a red alert.
    pub soundness: Option<BoundReport>,
}

struct RestartOutcome {
    best_x: Vec<f64>,
    best_value: f64,
    history: Vec<HistoryPoint>,
    evaluations: usize,
    exhausted: bool,
}

pub fn search(problem: &SearchProblem) -> Result<SearchResult> {
    search_with(problem, Execution::default())
}

pub fn search_with(problem: &SearchProblem, exec: Execution) -> Result<SearchResult> {
    problem.validate()?;
    let sign = match problem.goal {
        Goal::Maximize => 1.0,
        Goal::Minimize => -1.0,
    };
    let per_restart = problem.budget / problem.restarts;
    let extra = problem.budget % problem.restarts;

    let outcomes = exec.map_indexed(problem.restarts, |i| {
        let budget = per_restart + usize::from(i < extra);
        let mut rng = ChaCha8Rng::seed_from_u64(problem.seed);
        rng.set_stream(i as u64);
        let k = problem.k_atoms;
        let mut x0: Vec<f64> = (0..k).map(|_| rng.random_range(0.0..TAU)).collect();
        x0.extend((0..k).map(|_| rng.random_range(0.2..1.0)));
        let mut steps = vec![0.5; k];
        steps.extend(std::iter::repeat_n(0.25, k));
        run_restart(problem, sign, x0, &steps, budget)
    });

    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut history = Vec::new();
    let mut offset = 0;
    let mut exhausted = false;
    for outcome in outcomes {
        let outcome = outcome?;
        for point in &outcome.history {
            let improves = history
                .last()
                .is_none_or(|last: &HistoryPoint| sign * point.value > sign * last.value);
            if improves {
                history.push(HistoryPoint {
                    evaluations: offset + point.evaluations,
                    value: point.value,
                });
            }
        }
        offset += outcome.evaluations;
        exhausted |= outcome.exhausted;
        if best
            .as_ref()
            .is_none_or(|(v, _)| sign * outcome.best_value > sign * v)
        {
            best = Some((outcome.best_value, outcome.best_x));
        }
    }
    let (best_value, best_x) = best.expect("at least one restart");
    let best_measure = problem.measure_at(&best_x);
    let soundness = match problem.goal {
        Goal::Maximize => Some(problem.bound(&best_measure)?),
        Goal::Minimize => None,
    };
    Ok(SearchResult {
        best_value,
        best_measure,
        history,
        evaluations_used: offset,
        budget_exhausted: exhausted,
        soundness,
    })
}

/// Nelder-Mead on `sign * value`, maximized (i.e. `-sign * value` minimized).
fn run_restart(
    problem: &SearchProblem,
    sign: f64,
    x0: Vec<f64>,
    steps: &[f64],
    budget: usize,
) -> Result<RestartOutcome> {
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;

    let dim = x0.len();
    let mut evaluations = 0usize;
    let mut best_value = f64::NAN;
    let mut best_x = x0.clone();
    let mut history = Vec::new();

    // cost = -sign * value, minimized
    let mut eval = |x: &[f64], evaluations: &mut usize| -> Result<f64> {
        let v = problem.value(&problem.measure_at(x))?;
        *evaluations += 1;
        if best_value.is_nan() || sign * v > sign * best_value {
            best_value = v;
            best_x = x.to_vec();
            history.push(HistoryPoint {
                evaluations: *evaluations,
                value: v,
            });
        }
        Ok(-sign * v)
    };

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    simplex.push(x0.clone());
    for (i, step) in steps.iter().enumerate() {
        let mut v = x0.clone();
        v[i] += step;
        simplex.push(v);
    }
    let mut costs = Vec::with_capacity(dim + 1);
    for v in &simplex {
        if evaluations >= budget {
            break;
        }
        costs.push(eval(v, &mut evaluations)?);
    }
    if costs.len() < simplex.len() {
        return Ok(RestartOutcome {
            best_x,
            best_value,
            history,
            evaluations,
            exhausted: true,
        });
    }

    let mut converged = false;
    while evaluations < budget {
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&a, &b| costs[a].total_cmp(&costs[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        costs = order.iter().map(|&i| costs[i]).collect();

        if costs[dim] - costs[0] <= SPREAD_TOL {
            converged = true;
            break;
        }

        let centroid: Vec<f64> = (0..dim)
            .map(|j| simplex[..dim].iter().map(|v| v[j]).sum::<f64>() / dim as f64)
            .collect();
        let toward = |coef: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[dim])
                .map(|(c, w)| c + coef * (c - w))
                .collect()
        };

        let reflected = toward(REFLECT);
        let f_r = eval(&reflected, &mut evaluations)?;
        if f_r < costs[0] {
            if evaluations >= budget {
                simplex[dim] = reflected;
                costs[dim] = f_r;
                break;
            }
            let expanded = toward(EXPAND);
            let f_e = eval(&expanded, &mut evaluations)?;
            if f_e < f_r {
                simplex[dim] = expanded;
                costs[dim] = f_e;
            } else {
                simplex[dim] = reflected;
                costs[dim] = f_r;
            }
            continue;
        }
        if f_r < costs[dim - 1] {
            simplex[dim] = reflected;
            costs[dim] = f_r;
            continue;
        }
        if evaluations >= budget {
            break;
        }
        let (contracted, outside) = if f_r < costs[dim] {
            (toward(CONTRACT * REFLECT), true)
        } else {
            (toward(-CONTRACT), false)
        };
        let f_c = eval(&contracted, &mut evaluations)?;
        if (outside && f_c <= f_r) || (!outside && f_c < costs[dim]) {
            simplex[dim] = contracted;
            costs[dim] = f_c;
            continue;
        }
        for i in 1..=dim {
            if evaluations >= budget {
                break;
            }
            let shrunk: Vec<f64> = simplex[0]
                .iter()
                .zip(&simplex[i])
                .map(|(b, v)| b + SHRINK * (v - b))
                .collect();
            costs[i] = eval(&shrunk, &mut evaluations)?;
            simplex[i] = shrunk;
        }
    }

    Ok(RestartOutcome {
        best_x,
        best_value,
        history,
        evaluations,
        exhausted: !converged,
    })
}

pub fn certify_never_exceeds(spec: &ClassSpec, n: usize, trials: usize, seed: u64) -> Result<BoundReport> {
    certify_never_exceeds_with(spec, n, trials, seed, &[], Execution::default())
}

/// Evaluates the class bound at `n` on `trials` random measures (1 to 8
/// atoms) plus the given incumbents, and reports the case with the least
/// slack. With nothing to evaluate the report is the vacuous one for `f = z`.
pub fn certify_never_exceeds_with(
    spec: &ClassSpec,
    n: usize,
    trials: usize,
    seed: u64,
    incumbents: &[AtomicMeasure],
    exec: Execution,
) -> Result<BoundReport> {
    let order = (2 * n).max(64);
    let check = |m: &AtomicMeasure| class_bound(&construct(m, spec, order)?, spec, n);
    let sampled = exec.map_indexed(trials, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let k = rng.random_range(1..=8usize);
        check(&sample_measure(rng.random(), k))
    });
    let extra = exec.map_slice(incumbents, check);

    let mut worst: Option<BoundReport> = None;
    for report in sampled.into_iter().chain(extra) {
        let report = report?;
        if worst.is_none_or(|w| report.slack < w.slack) {
            worst = Some(report);
        }
    }
    match worst {
        Some(w) => Ok(w),
        None => class_bound(&FunctionSeries::identity(n + 1), spec, n),
    }
}
