//! Report serialization. Every number leaves as a decimal string at the
//! context's digit count, so output is byte-stable across runs.

use serde_json::{json, Map, Value};

use super::Format;
use crate::error::{Error, Result};
use crate::explorer::{Cell, Table};
use crate::inequalities::{
    CheckId, CheckResult, Direction, ParamValue, SharpnessReport, SweepReport, SweepRow,
};
use crate::numerics::{PrecisionContext, Real};

/// Columns of a CSV check report.
pub const CSV_HEADER: [&str; 10] = [
    "check",
    "params",
    "x",
    "lhs",
    "rhs",
    "margin",
    "ratio",
    "status",
    "err_bound",
    "error",
];

fn csv_err(e: csv::Error) -> Error {
    Error::usage(format!("cannot write CSV: {e}"))
}

fn finish_json(out: &mut Vec<u8>, v: &Value) {
    out.extend_from_slice(
        serde_json::to_string_pretty(v)
            .expect("serializable")
            .as_bytes(),
    );
    out.push(b'\n');
}

fn param_text(v: &ParamValue, ctx: &PrecisionContext) -> String {
    match v {
        ParamValue::Int(i) => i.to_string(),
        ParamValue::Real(r) => ctx.format(r),
        ParamValue::Name(s) => s.to_string(),
    }
}

fn params_json(id: &CheckId, ctx: &PrecisionContext) -> Value {
    let mut m = Map::new();
    for (k, v) in id.params.entries() {
        m.insert(k.to_string(), Value::String(param_text(&v, ctx)));
    }
    Value::Object(m)
}

fn params_inline(id: &CheckId, ctx: &PrecisionContext) -> String {
    id.params
        .entries()
        .iter()
        .map(|(k, v)| format!("{k}={}", param_text(v, ctx)))
        .collect::<Vec<_>>()
        .join(";")
}

fn x_text(id: &CheckId, ctx: &PrecisionContext) -> String {
    id.params
        .x
        .as_ref()
        .map(|x| ctx.format(x))
        .unwrap_or_default()
}

/// One check result in the fixed key order
/// `check, params, x, lhs, rhs, margin, ratio, status, err_bound`.
pub fn check_record_json(r: &CheckResult, ctx: &PrecisionContext) -> Value {
    json!({
        "check": r.id.kind.name(),
        "params": params_json(&r.id, ctx),
        "x": x_text(&r.id, ctx),
        "lhs": ctx.format(&r.lhs),
        "rhs": ctx.format(&r.rhs),
        "margin": ctx.format(&r.margin),
        "ratio": r.ratio.as_ref().map(|v| ctx.format(v)),
        "status": r.status.label(),
        "err_bound": ctx.format(&r.err_bound),
    })
}

fn row_json(row: &SweepRow, ctx: &PrecisionContext) -> Value {
    match row {
        Ok(r) => check_record_json(r, ctx),
        Err(e) => json!({
            "check": e.id.kind.name(),
            "params": params_json(&e.id, ctx),
            "x": x_text(&e.id, ctx),
            "lhs": null,
            "rhs": null,
            "margin": null,
            "ratio": null,
            "status": "ERROR",
            "err_bound": null,
            "error": e.error.to_string(),
        }),
    }
}

pub(super) fn write_sweep(
    out: &mut Vec<u8>,
    format: Format,
    ctx: &PrecisionContext,
    rep: &SweepReport,
) -> Result<()> {
    match format {
        Format::Json => {
            let rows: Vec<Value> = rep.rows.iter().map(|r| row_json(r, ctx)).collect();
            finish_json(out, &Value::Array(rows));
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER).map_err(csv_err)?;
            for row in &rep.rows {
                let rec: Vec<String> = match row {
                    Ok(r) => vec![
                        r.id.kind.name().to_string(),
                        params_inline(&r.id, ctx),
                        x_text(&r.id, ctx),
                        ctx.format(&r.lhs),
                        ctx.format(&r.rhs),
                        ctx.format(&r.margin),
                        r.ratio.as_ref().map(|v| ctx.format(v)).unwrap_or_default(),
                        r.status.label().to_string(),
                        ctx.format(&r.err_bound),
                        String::new(),
                    ],
                    Err(e) => {
                        let mut rec = vec![
                            e.id.kind.name().to_string(),
                            params_inline(&e.id, ctx),
                            x_text(&e.id, ctx),
                        ];
                        rec.extend(std::iter::repeat(String::new()).take(4));
                        rec.extend(["ERROR".to_string(), String::new(), e.error.to_string()]);
                        rec
                    }
                };
                w.write_record(&rec).map_err(csv_err)?;
            }
            out.extend(w.into_inner().map_err(|e| Error::usage(e.to_string()))?);
        }
        Format::Text => {
            for row in &rep.rows {
                let line = match row {
                    Ok(r) => format!(
                        "{:<5} {} {} x={} margin={} err_bound={}\n",
                        r.status.label(),
                        r.id.kind,
                        params_inline(&r.id, ctx),
                        x_text(&r.id, ctx),
                        short(&r.margin),
                        short(&r.err_bound),
                    ),
                    Err(e) => format!(
                        "ERROR {} {} x={}: {}\n",
                        e.id.kind,
                        params_inline(&e.id, ctx),
                        x_text(&e.id, ctx),
                        e.error
                    ),
                };
                out.extend_from_slice(line.as_bytes());
            }
        }
    }
    Ok(())
}

fn short(v: &Real) -> String {
    crate::numerics::format_real(v, 6)
}

pub(super) fn write_eval(
    out: &mut Vec<u8>,
    format: Format,
    ctx: &PrecisionContext,
    quantity: &str,
    params: &[(&str, String)],
    x: &Real,
    value: &Real,
) -> Result<()> {
    let err = ctx.err_bound(value);
    match format {
        Format::Json => {
            let mut p = Map::new();
            for (k, v) in params {
                p.insert(k.to_string(), Value::String(v.clone()));
            }
            finish_json(
                out,
                &json!({
                    "quantity": quantity,
                    "params": p,
                    "x": ctx.format(x),
                    "value": ctx.format(value),
                    "err_bound": short(&err),
                }),
            );
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["quantity", "params", "x", "value", "err_bound"])
                .map_err(csv_err)?;
            let p = params
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(";");
            w.write_record([
                quantity,
                &p,
                &ctx.format(x),
                &ctx.format(value),
                &short(&err),
            ])
            .map_err(csv_err)?;
            out.extend(w.into_inner().map_err(|e| Error::usage(e.to_string()))?);
        }
        Format::Text => {
            out.extend_from_slice(format!("{} ± {}\n", ctx.format(value), short(&err)).as_bytes());
        }
    }
    Ok(())
}

pub(super) fn write_sharpness(
    out: &mut Vec<u8>,
    format: Format,
    ctx: &PrecisionContext,
    r: &SharpnessReport,
) -> Result<()> {
    let dir = match r.direction {
        Direction::ToZero => "zero",
        Direction::ToInfinity => "inf",
    };
    match format {
        Format::Json => {
            let samples: Vec<Value> = r
                .samples
                .iter()
                .map(|(x, q)| json!({"x": ctx.format(x), "ratio": ctx.format(q)}))
                .collect();
            finish_json(
                out,
                &json!({
                    "check": r.id.kind.name(),
                    "params": params_json(&r.id, ctx),
                    "direction": dir,
                    "estimate": ctx.format(&r.estimate),
                    "expected": ctx.format(&r.expected),
                    "abs_error": short(&r.abs_error()),
                    "method": r.method,
                    "samples": samples,
                    "extrapolants": r.extrapolants.iter().map(|v| ctx.format(v)).collect::<Vec<_>>(),
                }),
            );
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["x", "ratio", "extrapolant"])
                .map_err(csv_err)?;
            for ((x, q), e) in r.samples.iter().zip(&r.extrapolants) {
                w.write_record([ctx.format(x), ctx.format(q), ctx.format(e)])
                    .map_err(csv_err)?;
            }
            out.extend(w.into_inner().map_err(|e| Error::usage(e.to_string()))?);
        }
        Format::Text => {
            let est = r.estimate.to_f64();
            let head = if r.method == "richardson" {
                format!("{est:.6} ± 1e-6")
            } else {
                format!("{est:.3} ± 1e-3")
            };
            let text = format!(
                "{head}\nexpected {}\nmethod {}\ncheck {} {} x -> {dir}\n",
                ctx.format(&r.expected),
                r.method,
                r.id.kind,
                params_inline(&r.id, ctx)
            );
            out.extend_from_slice(text.as_bytes());
        }
    }
    Ok(())
}

fn cell_json(c: &Cell, ctx: &PrecisionContext) -> Value {
    match c {
        Cell::Real(v) => Value::String(ctx.format(v)),
        Cell::Int(i) => Value::String(i.to_string()),
        Cell::Text(s) => Value::String(s.clone()),
        Cell::Bool(b) => Value::Bool(*b),
        Cell::Empty => Value::Null,
    }
}

fn cell_text(c: &Cell, ctx: &PrecisionContext) -> String {
    match c {
        Cell::Real(v) => ctx.format(v),
        Cell::Int(i) => i.to_string(),
        Cell::Text(s) => s.clone(),
        Cell::Bool(b) => b.to_string(),
        Cell::Empty => String::new(),
    }
}

pub(super) fn write_table(
    out: &mut Vec<u8>,
    format: Format,
    ctx: &PrecisionContext,
    t: &Table,
) -> Result<()> {
    match format {
        Format::Json => {
            let mut summary = Map::new();
            for (k, v) in &t.summary {
                summary.insert(k.clone(), cell_json(v, ctx));
            }
            let rows: Vec<Value> = t
                .rows
                .iter()
                .map(|r| Value::Array(r.iter().map(|c| cell_json(c, ctx)).collect()))
                .collect();
            finish_json(
                out,
                &json!({
                    "problem": t.problem,
                    "title": t.title,
                    "notes": t.notes,
                    "summary": summary,
                    "columns": t.columns,
                    "rows": rows,
                }),
            );
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            if t.columns.is_empty() {
                w.write_record(["key", "value"]).map_err(csv_err)?;
                for (k, v) in &t.summary {
                    w.write_record([k.clone(), cell_text(v, ctx)])
                        .map_err(csv_err)?;
                }
            } else {
                w.write_record(&t.columns).map_err(csv_err)?;
                for r in &t.rows {
                    w.write_record(r.iter().map(|c| cell_text(c, ctx)))
                        .map_err(csv_err)?;
                }
            }
            out.extend(w.into_inner().map_err(|e| Error::usage(e.to_string()))?);
        }
        Format::Text => {
            let mut s = format!("problem {}: {}\n", t.problem, t.title);
            for n in &t.notes {
                s.push_str(&format!("  note: {n}\n"));
            }
            for (k, v) in &t.summary {
                let shown = match v {
                    Cell::Real(r) => short(r),
                    other => cell_text(other, ctx),
                };
                s.push_str(&format!("  {k} = {shown}\n"));
            }
            if !t.columns.is_empty() {
                s.push_str(&t.columns.join("\t"));
                s.push('\n');
                for r in &t.rows {
                    let cells: Vec<String> = r
                        .iter()
                        .map(|c| match c {
                            Cell::Real(v) => short(v),
                            other => cell_text(other, ctx),
                        })
                        .collect();
                    s.push_str(&cells.join("\t"));
                    s.push('\n');
                }
            }
            out.extend_from_slice(s.as_bytes());
        }
    }
    Ok(())
}
