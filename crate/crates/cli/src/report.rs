use serde::Serialize;
use succdiff_core::inequalities::BoundReport;

/// One line of a bound table.
#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub function_id: String,
    pub seed: Option<u64>,
    pub gamma: f64,
    pub alpha: f64,
    #[serde(flatten)]
    pub report: BoundReport,
}

pub const CSV_HEADER: &str = "theorem_id,function_id,seed,gamma,alpha,n,m,lhs,rhs,slack,pass";

/// Plain decimal with 12 significant digits; scientific outside `1e-6..1e15`.
pub fn fmt_num(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let magnitude = v.abs().log10().floor() as i32;
    if (-6..15).contains(&magnitude) {
        let decimals = (11 - magnitude).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{v:.11e}")
    }
}

pub fn sort_rows(rows: &mut [Row]) {
    rows.sort_by(|a, b| {
        a.function_id
            .cmp(&b.function_id)
            .then(a.report.n.cmp(&b.report.n))
            .then(a.report.theorem_id.cmp(&b.report.theorem_id))
            .then(a.report.m.cmp(&b.report.m))
    });
}

pub fn to_csv(rows: &[Row]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER.split(',')).expect("in-memory write");
    for row in rows {
        let r = &row.report;
        let record = [
            r.theorem_id.as_str().to_string(),
            row.function_id.clone(),
            row.seed.map(|s| s.to_string()).unwrap_or_default(),
            fmt_num(row.gamma),
            fmt_num(row.alpha),
            r.n.to_string(),
            r.m.map(|m| m.to_string()).unwrap_or_default(),
            fmt_num(r.lhs),
            fmt_num(r.rhs),
            fmt_num(r.slack),
            r.pass.to_string(),
        ];
        w.write_record(&record).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}
