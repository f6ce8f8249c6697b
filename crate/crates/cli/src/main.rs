mod config;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use succdiff_core::classes::{alexander_forward, construct, sample_measure, MeasureDocument};
use succdiff_core::extremal::{search, SearchProblem};
use succdiff_core::inequalities::{class_bound, proof_trace, robertson_gap, ProofTrace};
use succdiff_core::membership::{
    check_convex, check_kaplan, check_spirallike, order_for_radius, Grid, MembershipReport,
};
use succdiff_core::{named, ClassKind, ClassSpec, Execution, FunctionSeries, NamedFunction};

use config::{Command, Format, RunConfig};
use report::{sort_rows, to_csv, Row};

#[derive(Parser)]
#[command(name = "succdiff", version, about = "Successive coefficient bounds for spirallike and convex functions")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Check membership and the class bound for named and sampled functions.
    Verify(Common),
    /// Write the intermediate quantities of the bound argument.
    Trace(Common),
    /// Search atomic measures for large coefficient differences.
    Search(Common),
    /// Draw random measures and write their coefficients.
    Sample(Common),
    /// Print the reference table for the extremal functions.
    Table(Common),
}

#[derive(Args)]
struct Common {
    /// JSON run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Series order used for bounds and sampled coefficients.
    #[arg(long)]
    order: Option<usize>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

enum Outcome {
    Pass,
    Violation,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => {
            eprintln!("bound violation detected");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    let (command, common) = match cli.command {
        Sub::Verify(c) => (Command::Verify, c),
        Sub::Trace(c) => (Command::Trace, c),
        Sub::Search(c) => (Command::Search, c),
        Sub::Sample(c) => (Command::Sample, c),
        Sub::Table(c) => (Command::Table, c),
    };
    let mut cfg = match &common.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(c) = cfg.command {
        if c != command {
            bail!("field `command`: config is for {c:?}, not {command:?}");
        }
    }
    cfg.seed = common.seed.or(cfg.seed);
    cfg.order = common.order.or(cfg.order);
    cfg.out = common.out.or(cfg.out);
    cfg.format = common.format.or(cfg.format);

    match command {
        Command::Verify => verify(&cfg),
        Command::Trace => trace(&cfg),
        Command::Search => run_search(&cfg),
        Command::Sample => sample(&cfg),
        Command::Table => table(&cfg),
    }
}

/// Order for bound computations: at least 64 and past the largest `n`.
fn bound_order(cfg: &RunConfig, n_hi: usize) -> Result<usize> {
    match cfg.order {
        Some(order) if order <= n_hi => bail!("field `order`: {order} must exceed the largest n ({n_hi})"),
        Some(order) => Ok(order),
        None => Ok(64.max(n_hi + 1)),
    }
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// A function under test, with the class it should belong to.
struct Subject {
    id: String,
    seed: Option<u64>,
    spec: ClassSpec,
    source: Source,
}

enum Source {
    Named(NamedFunction),
    Sampled(MeasureDocument),
}

impl Subject {
    fn build(&self, order: usize) -> Result<FunctionSeries> {
        Ok(match &self.source {
            Source::Named(f) => named(f, order)?,
            Source::Sampled(doc) => construct(&doc.measure, &doc.spec, order)?,
        })
    }
}

fn subjects(cfg: &RunConfig) -> Result<Vec<Subject>> {
    let mut out = Vec::new();
    for (i, entry) in cfg.named.iter().enumerate() {
        let f = entry.resolve().with_context(|| format!("field `named[{i}]`"))?;
        let spec = match (entry.spec.or(f.natural_spec()), cfg.spec) {
            (Some(s), _) | (None, Some(s)) => s,
            (None, None) => bail!("field `named[{i}]`: {} has no default class; set `spec`", f.id()),
        };
        out.push(Subject {
            id: f.id(),
            seed: None,
            spec,
            source: Source::Named(f),
        });
    }
    if cfg.trials > 0 {
        let spec = cfg.spec()?;
        let seed = cfg.seed()?;
        let k = cfg.k_atoms()?;
        for i in 0..cfg.trials {
            let s = seed.wrapping_add(i as u64);
            out.push(Subject {
                id: format!("sample-{i:05}"),
                seed: Some(s),
                spec,
                source: Source::Sampled(MeasureDocument {
                    measure: sample_measure(s, k),
                    spec,
                }),
            });
        }
    }
    if out.is_empty() {
        bail!("nothing to do: list functions under `named` or set `trials` with a `spec`");
    }
    Ok(out)
}

fn membership(f: &FunctionSeries, spec: &ClassSpec, grid: &Grid) -> Result<Vec<MembershipReport>> {
    Ok(match spec.kind() {
        ClassKind::Spirallike | ClassKind::Starlike => vec![check_spirallike(f, spec, grid)?],
        ClassKind::Convex | ClassKind::ConvexSpirallike => vec![check_convex(f, spec, grid)?],
        ClassKind::CHalf => grid
            .radii
            .iter()
            .map(|&r| check_kaplan(f, r, grid.m))
            .collect::<succdiff_core::Result<_>>()?,
    })
}

fn bound_rows(subject: &Subject, f: &FunctionSeries, n_range: (usize, usize), m_range: (usize, usize)) -> Result<Vec<Row>> {
    let spec = &subject.spec;
    let mut rows = Vec::new();
    let row = |report| Row {
        function_id: subject.id.clone(),
        seed: subject.seed,
        gamma: spec.gamma(),
        alpha: spec.alpha(),
        report,
    };
    for n in n_range.0.max(2)..=n_range.1 {
        rows.push(row(class_bound(f, spec, n)?));
        if spec.kind() == ClassKind::CHalf {
            for m in m_range.0..n.min(m_range.1.saturating_add(1)) {
                rows.push(row(robertson_gap(f, n, m)?));
            }
        }
    }
    Ok(rows)
}

#[derive(Serialize)]
struct MembershipEntry {
    function_id: String,
    seed: Option<u64>,
    reports: Vec<MembershipReport>,
}

fn verify(cfg: &RunConfig) -> Result<Outcome> {
    let n_range = cfg.n_range()?;
    let m_range = cfg.m_range()?;
    let order = bound_order(cfg, n_range.1)?;
    let grid = cfg.grid()?;
    let r_max = grid.radii.iter().copied().fold(0.0, f64::max);
    let member_order = order.max(order_for_radius(r_max));
    let subjects = subjects(cfg)?;

    let results = Execution::default().map_slice(&subjects, |s| -> Result<_> {
        let f = s.build(member_order).with_context(|| s.id.clone())?;
        let reports = membership(&f, &s.spec, &grid).with_context(|| s.id.clone())?;
        let rows = bound_rows(s, &f.truncate(order), n_range, m_range).with_context(|| s.id.clone())?;
        Ok((
            MembershipEntry {
                function_id: s.id.clone(),
                seed: s.seed,
                reports,
            },
            rows,
        ))
    });

    let mut entries = Vec::new();
    let mut rows = Vec::new();
    for r in results {
        let (entry, mut r) = r?;
        entries.push(entry);
        rows.append(&mut r);
    }
    entries.sort_by(|a, b| a.function_id.cmp(&b.function_id));
    sort_rows(&mut rows);

    let member_ok = entries.iter().all(|e| e.reports.iter().all(|r| r.passes()));
    let bounds_ok = rows.iter().all(|r| r.report.pass);

    match cfg.format.unwrap_or_default() {
        Format::Json => write_output(cfg.out.as_deref(), &to_json(&json!({ "membership": entries, "rows": rows }))?)?,
        Format::Csv => {
            write_output(cfg.out.as_deref(), &to_csv(&rows))?;
            if let Some(out) = &cfg.out {
                let mut side = out.clone().into_os_string();
                side.push(".membership.json");
                std::fs::write(&side, to_json(&entries)?)?;
            }
            for e in &entries {
                for r in &e.reports {
                    eprintln!(
                        "membership {} {:?} margin {} {}",
                        e.function_id,
                        r.condition,
                        report::fmt_num(r.margin),
                        if r.passes() { "pass" } else { "FAIL" }
                    );
                }
            }
        }
    }
    Ok(if member_ok && bounds_ok { Outcome::Pass } else { Outcome::Violation })
}

#[derive(Serialize)]
struct TraceEntry {
    function_id: String,
    seed: Option<u64>,
    spec: ClassSpec,
    traces: Vec<ProofTrace>,
}

fn trace(cfg: &RunConfig) -> Result<Outcome> {
    if cfg.format == Some(Format::Csv) {
        bail!("trace output is JSON only");
    }
    let n_range = cfg.n_range()?;
    let order = bound_order(cfg, n_range.1)?;
    let subjects: Vec<Subject> = subjects(cfg)?
        .into_iter()
        .filter(|s| s.spec.kind() != ClassKind::CHalf)
        .collect();
    if subjects.is_empty() {
        bail!("trace needs spirallike or convex-type functions");
    }
    let results = Execution::default().map_slice(&subjects, |s| -> Result<TraceEntry> {
        let mut f = s.build(order)?;
        if s.spec.kind().is_convex_type() {
            f = alexander_forward(&f);
        }
        let traces = (n_range.0..=n_range.1)
            .map(|n| proof_trace(&f, s.spec.gamma(), s.spec.alpha(), n))
            .collect::<succdiff_core::Result<_>>()
            .with_context(|| s.id.clone())?;
        Ok(TraceEntry {
            function_id: s.id.clone(),
            seed: s.seed,
            spec: s.spec,
            traces,
        })
    });
    let mut entries = results.into_iter().collect::<Result<Vec<_>>>()?;
    entries.sort_by(|a, b| a.function_id.cmp(&b.function_id));
    let ok = entries.iter().all(|e| e.traces.iter().all(ProofTrace::holds));
    write_output(cfg.out.as_deref(), &to_json(&entries)?)?;
    Ok(if ok { Outcome::Pass } else { Outcome::Violation })
}

fn run_search(cfg: &RunConfig) -> Result<Outcome> {
    if cfg.format == Some(Format::Csv) {
        bail!("search output is JSON lines only");
    }
    let section = cfg.search.as_ref().context("field `search` is required for this command")?;
    let problem = SearchProblem {
        spec: cfg.spec()?,
        n: section.n,
        functional: section.functional,
        k_atoms: section.k_atoms,
        budget: section.budget,
        restarts: section.restarts,
        seed: cfg.seed()?,
        goal: section.goal,
    };
    problem.validate().context("field `search`")?;
    let result = search(&problem)?;
    let mut text = String::new();
    for point in &result.history {
        text.push_str(&serde_json::to_string(point)?);
        text.push('\n');
    }
    text.push_str(&serde_json::to_string(&json!({ "result": result }))?);
    text.push('\n');
    write_output(cfg.out.as_deref(), &text)?;
    let sound = result.soundness.is_none_or(|r| r.pass);
    Ok(if sound { Outcome::Pass } else { Outcome::Violation })
}

#[derive(Serialize)]
struct SampleEntry {
    function_id: String,
    seed: u64,
    #[serde(flatten)]
    document: MeasureDocument,
    coefficients: Vec<[f64; 2]>,
}

fn sample(cfg: &RunConfig) -> Result<Outcome> {
    let spec = cfg.spec()?;
    let seed = cfg.seed()?;
    let k = cfg.k_atoms()?;
    if cfg.trials == 0 {
        bail!("field `trials` must be positive for sample");
    }
    let order = cfg.order.unwrap_or(64);
    let entries = Execution::default().map_indexed(cfg.trials, |i| -> Result<SampleEntry> {
        let s = seed.wrapping_add(i as u64);
        let measure = sample_measure(s, k);
        let f = construct(&measure, &spec, order)?;
        Ok(SampleEntry {
            function_id: format!("sample-{i:05}"),
            seed: s,
            document: MeasureDocument { measure, spec },
            coefficients: f.series().coeffs().iter().map(|c| [c.re, c.im]).collect(),
        })
    });
    let entries = entries.into_iter().collect::<Result<Vec<_>>>()?;
    let text = match cfg.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&entries)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["function_id", "seed", "n", "re", "im"])?;
            for e in &entries {
                for (n, c) in e.coefficients.iter().enumerate() {
                    w.write_record([
                        e.function_id.clone(),
                        e.seed.to_string(),
                        n.to_string(),
                        report::fmt_num(c[0]),
                        report::fmt_num(c[1]),
                    ])?;
                }
            }
            String::from_utf8(w.into_inner()?)?
        }
    };
    write_output(cfg.out.as_deref(), &text)?;
    Ok(Outcome::Pass)
}

const TABLE_NOTES: [&str; 3] = [
    "odd_sqrt: coefficients are binom(2j, j) / 4^j = Gamma(j + 1/2) / (sqrt(pi) Gamma(j + 1)); \
     the constant in front is 1/sqrt(pi), without an extra factor of pi",
    "power_map(beta) with real beta is starlike of order 1 - beta/2; the spirallike members with \
     gamma != 0 use the complex exponent 2 (1 - alpha) e^{i gamma} cos(gamma), whose coefficients differ",
    "thm_main rows use the constant M computed from each function's own trace; \
     no bound uniform over the class is implied by these values",
];

fn table(cfg: &RunConfig) -> Result<Outcome> {
    let n_range = cfg.n_range()?;
    let m_range = cfg.m_range()?;
    let order = bound_order(cfg, n_range.1)?;
    let gamma = 0.5;
    let entries: Vec<(String, NamedFunction)> = vec![
        ("koebe".into(), NamedFunction::Koebe),
        ("l_phi(pi/3)".into(), NamedFunction::LPhi { phi: std::f64::consts::FRAC_PI_3 }),
        ("c_half_extremal".into(), NamedFunction::CHalfExtremal),
        ("odd_sqrt".into(), NamedFunction::OddSqrt),
        ("power_map(3)".into(), NamedFunction::PowerMap { beta_re: 3.0, beta_im: 0.0 }),
        ("starlike_extremal(0.25)".into(), NamedFunction::starlike_extremal(0.25)),
        ("starlike_extremal(0.5)".into(), NamedFunction::starlike_extremal(0.5)),
        ("spiral_power(0.5,0.25)".into(), NamedFunction::spiral_power(gamma, 0.25)),
    ];
    let subjects: Vec<Subject> = entries
        .into_iter()
        .map(|(id, f)| -> Result<Subject> {
            let spec = f.natural_spec().with_context(|| format!("{id} has no class"))?;
            Ok(Subject {
                id,
                seed: None,
                spec,
                source: Source::Named(f),
            })
        })
        .collect::<Result<_>>()?;
    let results = Execution::default().map_slice(&subjects, |s| -> Result<Vec<Row>> {
        bound_rows(s, &s.build(order)?, n_range, m_range)
    });
    let mut rows = Vec::new();
    for r in results {
        rows.append(&mut r?);
    }
    sort_rows(&mut rows);
    let ok = rows.iter().all(|r| r.report.pass);
    match cfg.format.unwrap_or_default() {
        Format::Json => write_output(cfg.out.as_deref(), &to_json(&json!({ "rows": rows, "notes": TABLE_NOTES }))?)?,
        Format::Csv => {
            write_output(cfg.out.as_deref(), &to_csv(&rows))?;
            for note in TABLE_NOTES {
                eprintln!("note: {note}");
            }
        }
    }
    Ok(if ok { Outcome::Pass } else { Outcome::Violation })
}
