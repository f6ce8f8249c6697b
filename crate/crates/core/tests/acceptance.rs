//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails or overruns its time limit.

use std::f64::consts::{PI, TAU};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use succdiff_core::classes::{construct, herglotz, sample_measure, spirallike_from_measure, AtomicMeasure};
use succdiff_core::extremal::{search, Functional, Goal, SearchProblem};
use succdiff_core::inequalities::{
    bound_rhs, lemma31_check, milin_third, proof_trace, psi_max, robertson_gap, signed_diff,
    successive_diff, Bound,
};
use succdiff_core::membership::{check_convex, check_kaplan, order_for_radius, Grid};
use succdiff_core::{named, ClassSpec, Execution, NamedFunction};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn harmonic(n: usize) -> f64 {
    (1..=n).map(|k| 1.0 / k as f64).sum()
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn koebe_equality_chain() -> Outcome {
    let k = named(&NamedFunction::Koebe, 51).unwrap();
    let worst = (2..=50)
        .map(|n| (successive_diff(&k, n).unwrap() - 1.0).abs())
        .fold(0.0, f64::max);
    outcome(worst <= 1e-12, format!("max |diff - 1| = {worst:.3e} over n = 2..50"))
}

fn starlike_minus_half_equality() -> Outcome {
    // oracle: a_n = n (n + 1) / 2
    let oracle = |n: usize| (n * (n + 1)) as f64 / 2.0;
    let spec = ClassSpec::starlike(-0.5).unwrap();
    let closed = named(&NamedFunction::starlike_extremal(-0.5), 41).unwrap();
    let engine = spirallike_from_measure(&AtomicMeasure::point(0.0), &spec, 41).unwrap();
    let mut worst: f64 = 0.0;
    for n in 2..=40 {
        let expected = (oracle(n + 1) - oracle(n)).abs();
        let rhs = bound_rhs(&Bound::ThmC { alpha: -0.5 }, n, None).unwrap();
        for f in [&closed, &engine] {
            worst = worst.max((successive_diff(f, n).unwrap() - expected).abs());
            worst = worst.max((f.a(n).re - oracle(n)).abs() / oracle(n));
        }
        worst = worst.max((rhs - (n + 1) as f64).abs());
        worst = worst.max((expected - (n + 1) as f64).abs());
    }
    outcome(worst <= 1e-9, format!("max deviation {worst:.3e} over n = 2..40"))
}

fn c_half_equality_function() -> Outcome {
    let order = order_for_radius(0.99);
    let f = named(&NamedFunction::CHalfExtremal, order).unwrap();
    let report = check_convex(&f, &ClassSpec::c_half(), &Grid::single(0.99, 4096)).unwrap();
    let kaplan = check_kaplan(&f, 0.99, 4096).unwrap();
    let diff_exact = (1..30).all(|n| successive_diff(&f, n).unwrap() == 0.5);
    let mut worst: f64 = 0.0;
    for n in 2..=30 {
        for m in 1..n {
            let r = robertson_gap(&f, n, m).unwrap();
            let expected = ((n - m) * (n + m + 1)) as f64 / 2.0;
            worst = worst.max((r.lhs - expected).abs()).max((r.rhs - expected).abs());
        }
    }
    outcome(
        report.margin > 0.0 && report.truncation_adequate && kaplan.margin > 0.0 && diff_exact && worst <= 1e-12,
        format!(
            "convex margin {:.3e} at r = 0.99 (order {order}), kaplan margin {:.3e}, diff = 1/2 exact: {diff_exact}, robertson max dev {worst:.1e}",
            report.margin, kaplan.margin
        ),
    )
}

fn convex_sharpness() -> Outcome {
    let spec = ClassSpec::convex(0.0).unwrap();
    let mut worst: f64 = 0.0;
    for n in 2..=30 {
        let phi = PI / n as f64;
        // oracle: a_k = sin(k phi) / (k sin phi)
        let a = |k: usize| ((k as f64 * phi).sin() / (k as f64 * phi.sin())).abs();
        let target = 1.0 / (n + 1) as f64;
        worst = worst.max((a(n + 1) - a(n) - target).abs());
        let closed = named(&NamedFunction::LPhi { phi }, n + 1).unwrap();
        worst = worst.max((signed_diff(&closed, n).unwrap() - target).abs());
        // the same function via the engine: two half-weight atoms at -phi, phi
        let engine = construct(&AtomicMeasure::uniform(&[TAU - phi, phi]), &spec, n + 1).unwrap();
        worst = worst.max((signed_diff(&engine, n).unwrap() - target).abs());
        worst = worst.max((bound_rhs(&Bound::ThmB, n, None).unwrap() - target).abs());
    }
    outcome(worst <= 1e-12, format!("max |diff - 1/(n+1)| = {worst:.3e} over n = 2..30"))
}

fn spirallike_corollary_suite() -> Outcome {
    let results = Execution::default().map_indexed(1000, |seed| {
        let mut rng = rng_for(5, seed as u64);
        let k = rng.random_range(1..=8usize);
        let gamma = rng.random_range(-1.4..1.4);
        let spec = ClassSpec::spirallike(gamma, 0.0).unwrap();
        let f = spirallike_from_measure(&sample_measure(seed as u64, k), &spec, 64).unwrap();
        (2..=20).map(|n| successive_diff(&f, n).unwrap()).fold(0.0, f64::max)
    });
    let worst = results.iter().copied().fold(0.0, f64::max);
    outcome(worst <= 1.0 + 1e-8, format!("max diff {worst:.12} over 1000 members, n = 2..20"))
}

fn proof_trace_suite() -> Outcome {
    let results = Execution::default().map_indexed(500, |seed| {
        let mut rng = rng_for(6, seed as u64);
        let k = rng.random_range(1..=8usize);
        let gamma = rng.random_range(-1.2..1.2);
        let alpha = rng.random_range(0.0..0.9);
        let spec = ClassSpec::spirallike(gamma, alpha).unwrap();
        let f = spirallike_from_measure(&sample_measure(1000 + seed as u64, k), &spec, 64).unwrap();
        (2..=20)
            .map(|n| {
                let t = proof_trace(&f, gamma, alpha, n).unwrap();
                let unit = (t.xi0.norm() - 1.0).abs() <= 1e-12;
                (unit, t.min_slack())
            })
            .fold((true, f64::INFINITY), |(u, s), (u2, s2)| (u && u2, s.min(s2)))
    });
    let all_unit = results.iter().all(|r| r.0);
    let worst = results.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    outcome(
        all_unit && worst >= -1e-8,
        format!("|xi0| = 1: {all_unit}; min chain slack {worst:.3e} over 500 members, n = 2..20"),
    )
}

fn lemma_suite() -> Outcome {
    let results = Execution::default().map_indexed(1000, |seed| {
        let mut rng = rng_for(7, seed as u64);
        let k = rng.random_range(1..=8usize);
        let n = rng.random_range(1..=20usize);
        let gamma = rng.random_range(-1.4..1.4);
        let alpha = rng.random_range(-1.0..0.95);
        let h = herglotz(&sample_measure(2000 + seed as u64, k), n);
        let c: Vec<Complex64> = (1..=n).map(|j| h.coeff(j) * (1.0 - alpha)).collect();
        let lambda: Vec<f64> = (1..=n).map(|j| 1.0 / j as f64).collect();
        let (m, _) = psi_max(&c, n, gamma);
        lemma31_check(&c, &lambda, gamma, alpha, m).slack
    });
    let worst = results.iter().copied().fold(f64::INFINITY, f64::min);

    let n = 20;
    let c = vec![Complex64::new(2.0, 0.0); n];
    let lambda: Vec<f64> = (1..=n).map(|j| 1.0 / j as f64).collect();
    let (m, _) = psi_max(&c, n, 0.0);
    let koebe = lemma31_check(&c, &lambda, 0.0, 0.0, m);
    let equality = (koebe.lhs - koebe.rhs).abs();
    outcome(
        worst >= -1e-8 && equality <= 1e-9,
        format!("min slack {worst:.3e} over 1000 pairs; Koebe |lhs - rhs| = {equality:.1e} (lhs {:.6})", koebe.lhs),
    )
}

fn milin_suite() -> Outcome {
    let results = Execution::default().map_indexed(1000, |seed| {
        let mut rng = rng_for(8, seed as u64);
        let n = rng.random_range(1..=30usize);
        let seq: Vec<Complex64> = (0..n)
            .map(|_| Complex64::from_polar(rng.random_range(0.0..=1.0), rng.random_range(0.0..TAU)))
            .collect();
        let (lhs, rhs) = milin_third(&seq, n).unwrap();
        (lhs <= rhs, lhs / rhs)
    });
    let all = results.iter().all(|r| r.0);
    let ratio = results.iter().map(|r| r.1).fold(0.0, f64::max);
    outcome(all, format!("lhs <= rhs in all 1000 cases; max lhs/rhs = {ratio:.4}"))
}

fn sharpness_search() -> Outcome {
    let starlike = SearchProblem {
        spec: ClassSpec::starlike(0.0).unwrap(),
        n: 5,
        functional: Functional::TwoSidedDiff,
        k_atoms: 2,
        budget: 5000,
        restarts: 8,
        seed: 2024,
        goal: Goal::Maximize,
    };
    let convex = SearchProblem {
        spec: ClassSpec::convex(0.0).unwrap(),
        n: 4,
        functional: Functional::OneSidedDiff,
        ..starlike.clone()
    };
    let s = search(&starlike).unwrap();
    let c = search(&convex).unwrap();
    let s_ok = (0.999..=1.0 + 1e-8).contains(&s.best_value);
    let c_ok = (0.199..=0.2 + 1e-8).contains(&c.best_value);
    let sound = s.soundness.is_some_and(|r| r.pass) && c.soundness.is_some_and(|r| r.pass);
    outcome(
        s_ok && c_ok && sound,
        format!(
            "starlike n=5 best {:.10}, convex n=4 best {:.10}, both within bounds: {sound}",
            s.best_value, c.best_value
        ),
    )
}

fn single_atom_example() -> Outcome {
    let mut worst_m: f64 = 0.0;
    let mut min_gap = f64::INFINITY;
    let mut min_slack = f64::INFINITY;
    for alpha in [0.25, 0.5] {
        let spec = ClassSpec::starlike(alpha).unwrap();
        let f = spirallike_from_measure(&AtomicMeasure::point(0.0), &spec, 64).unwrap();
        for n in 2..=20 {
            let t = proof_trace(&f, 0.0, alpha, n).unwrap();
            let expected = 2.0 * (1.0 - alpha) * harmonic(n);
            worst_m = worst_m.max((t.m_const - expected).abs());
            min_gap = min_gap.min(2.0 * (1.0 - alpha) * ((n as f64).ln() + 1.0) - t.m_const);
            let bound = (-alpha * t.m_const).exp();
            min_slack = min_slack.min(bound + 1e-8 - successive_diff(&f, n).unwrap());
        }
    }
    outcome(
        worst_m <= 1e-9 && min_gap >= 0.0 && min_slack >= 0.0,
        format!("max |M - 2(1-a)H_n| = {worst_m:.1e}; min (log bound - M) = {min_gap:.4}; min slack {min_slack:.3e}"),
    )
}

fn main() {
    type Criterion = (&'static str, u64, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("AC1  Koebe equality chain", 1, koebe_equality_chain),
        ("AC2  starlike order -1/2 equality", 1, starlike_minus_half_equality),
        ("AC3  C(-1/2) equality function", 2, c_half_equality_function),
        ("AC4  convex sharpness at L_{pi/n}", 1, convex_sharpness),
        ("AC5  spirallike order 0 property suite", 30, spirallike_corollary_suite),
        ("AC6  proof-trace property suite", 60, proof_trace_suite),
        ("AC7  weighted coefficient lemma suite", 30, lemma_suite),
        ("AC8  third Lebedev-Milin suite", 10, milin_suite),
        ("AC9  sharpness search", 120, sharpness_search),
        ("AC10 single-atom example", 5, single_atom_example),
    ];
    let mut failures = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let pass = result.pass && in_time;
        if !pass {
            failures += 1;
        }
        println!(
            "[{}] {name}: {} ({:.3}s, limit {limit}s{})",
            if pass { "PASS" } else { "FAIL" },
            result.detail,
            elapsed.as_secs_f64(),
            if in_time { "" } else { ", OVERRUN" }
        );
    }
    println!("acceptance: {} of {} criteria passed", 10 - failures, 10);
    if failures > 0 {
        std::process::exit(1);
    }
}
