//! CSV writers for traces, summaries and policy comparisons.

use std::io::{self, Write};

use cmab_core::Strategy;

use crate::harness::{Comparison, Summary, TraceRow};

/// Formats a real like C's `%.9g`: 9 significant digits, trailing zeros
/// dropped, exponent form below 1e-4 or at 1e9 and above.
pub fn fmt_sig9(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    // Rounding to 9 digits fixes the decimal exponent.
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..9).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (8 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `i1|i2|...`
pub fn strategy_field(s: &Strategy) -> String {
    s.arms()
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join("|")
}

fn writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

fn csv_err(e: csv::Error) -> io::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => e,
        other => io::Error::other(format!("{other:?}")),
    }
}

pub fn write_trace<W: Write>(out: W, rows: &[TraceRow]) -> io::Result<()> {
    let mut w = writer(out);
    w.write_record([
        "replication",
        "t",
        "strategy",
        "reward",
        "cum_reward",
        "avg_regret",
        "avg_beta_regret",
    ])
    .map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.replication.to_string(),
            r.t.to_string(),
            strategy_field(&r.strategy),
            fmt_sig9(r.reward),
            fmt_sig9(r.cum_reward),
            fmt_sig9(r.avg_regret),
            fmt_sig9(r.avg_beta_regret),
        ])
        .map_err(csv_err)?;
    }
    w.flush()
}

/// The metadata record preceding the summary header.
pub fn summary_metadata(s: &Summary) -> String {
    format!(
        "# lambda1={},beta={},scale={},policy={},oracle={}",
        fmt_sig9(s.lambda1),
        fmt_sig9(s.beta),
        fmt_sig9(s.scale),
        s.policy.as_str(),
        s.oracle.as_str()
    )
}

pub fn write_summary<W: Write>(mut out: W, s: &Summary) -> io::Result<()> {
    writeln!(out, "{}", summary_metadata(s))?;
    let mut w = writer(out);
    w.write_record(["t", "mean_avg_regret", "mean_avg_beta_regret"])
        .map_err(csv_err)?;
    for r in &s.rows {
        w.write_record([
            r.t.to_string(),
            fmt_sig9(r.mean_avg_regret),
            fmt_sig9(r.mean_avg_beta_regret),
        ])
        .map_err(csv_err)?;
    }
    w.flush()
}

/// Joined summary: one regret and one β-regret column per policy.
pub fn write_comparison<W: Write>(mut out: W, c: &Comparison) -> io::Result<()> {
    let first = &c.summaries[0];
    let names: Vec<&str> = c.policies.iter().map(|p| p.as_str()).collect();
    writeln!(
        out,
        "# lambda1={},beta={},scale={},oracle={},policies={}",
        fmt_sig9(first.lambda1),
        fmt_sig9(first.beta),
        fmt_sig9(first.scale),
        first.oracle.as_str(),
        names.join("|")
    )?;
    let mut header = vec!["t".to_string()];
    header.extend(names.iter().map(|p| format!("mean_avg_regret_{p}")));
    header.extend(names.iter().map(|p| format!("mean_avg_beta_regret_{p}")));
    let mut w = writer(out);
    w.write_record(&header).map_err(csv_err)?;
    for (i, row) in first.rows.iter().enumerate() {
        let mut rec = vec![row.t.to_string()];
        rec.extend(
            c.summaries
                .iter()
                .map(|s| fmt_sig9(s.rows[i].mean_avg_regret)),
        );
        rec.extend(
            c.summaries
                .iter()
                .map(|s| fmt_sig9(s.rows[i].mean_avg_beta_regret)),
        );
        w.write_record(&rec).map_err(csv_err)?;
    }
    w.flush()
}
