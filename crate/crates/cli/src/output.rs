//! Writers for reports, record streams and zero tables.

use crate::Format;
use g0bound_core::bound::BoundReport;
use g0bound_core::numerics::format_complex;
use g0bound_core::verify::{csv_row, Summary, VerificationRecord, CSV_COLUMNS};
use serde_json::Value;
use std::io::Write;

/// Report fields as `(name, text)` in serialization order.
fn report_fields(report: &BoundReport) -> anyhow::Result<Vec<(String, String)>> {
    let Value::Object(map) = serde_json::to_value(report)? else { unreachable!("a report serializes to an object") };
    let order = [
        "z",
        "rho",
        "J",
        "exponent_thm",
        "exponent_intermediate",
        "bound",
        "lower",
        "mid",
        "chain_ok",
        "slack",
        "j_path",
        "j_error",
        "j_zero_sum",
        "rho_star",
        "warnings",
    ];
    let mut out = Vec::new();
    for key in order {
        let text = match (key, map.get(key)) {
            ("z", _) => format_complex(report.z),
            (_, None) => continue,
            (_, Some(Value::Null)) => "inf".into(),
            (_, Some(Value::String(s))) => s.clone(),
            (_, Some(Value::Array(a))) => a.iter().filter_map(|w| w.as_str()).collect::<Vec<_>>().join("; "),
            (_, Some(v)) => v.to_string(),
        };
        out.push((key.to_string(), text));
    }
    Ok(out)
}

pub fn write_report(out: &mut dyn Write, model_id: &str, report: &BoundReport, fmt: Format) -> anyhow::Result<()> {
    match fmt {
        Format::Json => writeln!(out, "{}", serde_json::to_string(report)?)?,
        Format::Csv => {
            let fields = report_fields(report)?;
            let mut w = csv::Writer::from_writer(out);
            w.write_record(std::iter::once("model").chain(fields.iter().map(|(k, _)| k.as_str())))?;
            w.write_record(std::iter::once(model_id).chain(fields.iter().map(|(_, v)| v.as_str())))?;
            w.flush()?;
        }
        Format::Text => {
            let fields = report_fields(report)?;
            let width = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0).max(5);
            writeln!(out, "{:<width$}  {model_id}", "model")?;
            for (k, v) in fields {
                writeln!(out, "{k:<width$}  {v}")?;
            }
        }
    }
    Ok(())
}

fn summary_line(s: &Summary) -> String {
    format!("summary total={} passed={} failed={}", s.total, s.passed, s.failed)
}

/// Records, then the summary: a `{"summary": …}` line for JSON, a `#`
/// comment line for CSV, a footer for text.
pub fn write_records(
    out: &mut dyn Write,
    records: &[VerificationRecord],
    summary: &Summary,
    fmt: Format,
) -> anyhow::Result<()> {
    match fmt {
        Format::Json => {
            for r in records {
                writeln!(out, "{}", serde_json::to_string(r)?)?;
            }
            writeln!(out, "{}", serde_json::json!({ "summary": summary }))?;
        }
        Format::Csv => {
            {
                let mut w = csv::Writer::from_writer(&mut *out);
                w.write_record(CSV_COLUMNS)?;
                for r in records {
                    w.write_record(csv_row(r))?;
                }
                w.flush()?;
            }
            writeln!(out, "# {}", summary_line(summary))?;
        }
        Format::Text => {
            let name_w = records.iter().map(|r| r.check_name.len()).max().unwrap_or(0).max(5);
            let model_w = records.iter().map(|r| r.model_id.len()).max().unwrap_or(0).max(5);
            writeln!(
                out,
                "{:<name_w$}  {:<model_w$}  {:<4}  {:>24}  {:>8}  inputs",
                "check", "model", "pass", "rel_error", "tol"
            )?;
            for r in records {
                writeln!(
                    out,
                    "{:<name_w$}  {:<model_w$}  {:<4}  {:>24}  {:>8e}  {}",
                    r.check_name,
                    r.model_id,
                    if r.pass { "ok" } else { "FAIL" },
                    format!("{:?}", r.rel_error),
                    r.tolerance,
                    r.inputs_text()
                )?;
            }
            writeln!(out, "{}", summary_line(summary))?;
            for (check, worst) in &summary.worst_rel_error {
                writeln!(out, "  worst {check:<name_w$} {worst:?}")?;
            }
        }
    }
    Ok(())
}

/// `n`, `z_n` and `Σ_{k≤n} 1/z_k`.
pub fn write_zeros(out: &mut dyn Write, zeros: &[f64], fmt: Format) -> anyhow::Result<()> {
    let mut sum = 0.0;
    let rows: Vec<(usize, f64, f64)> = zeros
        .iter()
        .enumerate()
        .map(|(k, &z)| {
            sum += 1.0 / z;
            (k + 1, z, sum)
        })
        .collect();
    match fmt {
        Format::Json => {
            for (n, z, s) in rows {
                writeln!(out, "{}", serde_json::json!({ "n": n, "z": z, "partial_sum": s }))?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["n", "z", "partial_sum"])?;
            for (n, z, s) in rows {
                w.write_record([n.to_string(), format!("{z:?}"), format!("{s:?}")])?;
            }
            w.flush()?;
        }
        Format::Text => {
            writeln!(out, "{:>6}  {:>24}  {:>24}", "n", "z_n", "sum 1/z_k")?;
            for (n, z, s) in rows {
                writeln!(out, "{n:>6}  {:>24}  {:>24}", format!("{z:?}"), format!("{s:?}"))?;
            }
        }
    }
    Ok(())
}
