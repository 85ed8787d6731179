//! Deterministic text, JSON, and CSV renderings of generators, codes,
//! invariant reports, and reference-table rows.
//!
//! Every JSON document carries a top-level `"schema"` tag so downstream
//! consumers can dispatch on shape.

use crate::arith::MixedWord;
use crate::code::{AdditiveCode, GrayCode};
use crate::construct::GeneratorMatrix;
use crate::error::Result;
use crate::invariants::InvariantReport;
use crate::table::ReferenceRow;
use serde_json::json;
use std::fmt::Write as _;

/// One mixed word as text: `Z_p` symbols, then ` | `, then `Z_{p^2}`
/// symbols (the separator is omitted when either side is empty).
pub fn mixed_word_text(w: &MixedWord) -> String {
    let left = w
        .zp()
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    let right = w
        .zp2()
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    match (left.is_empty(), right.is_empty()) {
        (false, false) => format!("{left} | {right}"),
        (true, false) => right,
        _ => left,
    }
}

/// Generator matrix as JSON: parameters, row orders, and both halves of
/// every row.
pub fn generator_json(gen: &GeneratorMatrix) -> serde_json::Value {
    let ct = gen.code_type();
    json!({
        "schema": "generator/1",
        "p": gen.p().get(),
        "type": {
            "alpha1": ct.alpha1,
            "alpha2": ct.alpha2,
            "t1": ct.t1,
            "t2": ct.t2,
            "t": ct.t,
        },
        "length": ct.length(),
        "size": ct.size(),
        "row_orders": gen.row_orders(),
        "rows": gen
            .rows()
            .iter()
            .map(|r| json!({"zp": r.zp(), "zp2": r.zp2()}))
            .collect::<Vec<_>>(),
    })
}

/// Additive code as text, one codeword per line in enumeration order.
pub fn additive_code_text(code: &AdditiveCode) -> String {
    let mut out = String::new();
    for w in code.words() {
        out.push_str(&mixed_word_text(w));
        out.push('\n');
    }
    out
}

/// Code over `Z_p` as text, one codeword per line, symbols unseparated.
pub fn gray_code_text(code: &GrayCode) -> String {
    let mut out = String::with_capacity(code.size() * (code.length() + 1));
    for w in code.words() {
        for &s in w {
            // symbols are single digits for every supported prime below 11;
            // keep wider alphabets unambiguous with spacing
            if code.p().get() <= 7 {
                let _ = write!(out, "{s}");
            } else {
                let _ = write!(out, "{s} ");
            }
        }
        while out.ends_with(' ') {
            out.pop();
        }
        out.push('\n');
    }
    out
}

/// Code over `Z_p` as JSON with its source parameters when known.
pub fn gray_code_json(code: &GrayCode) -> serde_json::Value {
    let source = code.source_type().map(|ct| {
        json!({
            "alpha1": ct.alpha1,
            "alpha2": ct.alpha2,
            "t1": ct.t1,
            "t2": ct.t2,
            "t": ct.t,
        })
    });
    json!({
        "schema": "code/1",
        "p": code.p().get(),
        "length": code.length(),
        "size": code.size(),
        "source_type": source,
        "words": code.words(),
    })
}

/// Rows of a normalized matrix (as produced from a verified code) as CSV:
/// no header, one row per line, symbols comma-separated.
pub fn matrix_csv(rows: &[Vec<u8>]) -> String {
    let mut out = String::new();
    for row in rows {
        let line = row
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(",");
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Invariant report as JSON.
pub fn report_json(report: &InvariantReport) -> serde_json::Value {
    json!({
        "schema": "report/1",
        "p": report.p,
        "type": {
            "alpha1": report.code_type.alpha1,
            "alpha2": report.code_type.alpha2,
            "t1": report.code_type.t1,
            "t2": report.code_type.t2,
            "t": report.code_type.t,
        },
        "length": report.length,
        "size": report.size,
        "min_distance": report.min_distance,
        "rank": report.rank,
        "kernel_dim": report.kernel_dim,
        "linear": report.linear,
        "gh": report.gh,
        "gh_lambda": report.gh_lambda,
        "gh_mode": report.gh_mode,
        "weight_distribution": report.weight_distribution,
    })
}

/// Invariant report as human-readable text.
pub fn report_text(report: &InvariantReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "code type       {}", report.code_type);
    let _ = writeln!(out, "alphabet        Z_{}", report.p);
    let _ = writeln!(out, "length          {}", report.length);
    let _ = writeln!(out, "size            {}", report.size);
    let _ = writeln!(out, "min distance    {}", report.min_distance);
    let _ = writeln!(out, "rank            {}", report.rank);
    let _ = writeln!(out, "kernel dim      {}", report.kernel_dim);
    let _ = writeln!(out, "linear          {}", report.linear);
    let gh = match (report.gh, report.gh_lambda) {
        (true, Some(l)) => format!("yes (lambda = {l}, {:?} check)", report.gh_mode),
        (true, None) => "yes".to_string(),
        (false, _) => "no".to_string(),
    };
    let _ = writeln!(out, "hadamard        {gh}");
    let dist = report
        .weight_distribution
        .iter()
        .map(|(w, c)| format!("{w}:{c}"))
        .collect::<Vec<_>>()
        .join(" ");
    let _ = writeln!(out, "weights         {dist}");
    out
}

/// CSV header shared by [`report_csv_row`] consumers.
pub const REPORT_CSV_HEADER: &str =
    "p,alpha1,alpha2,t1,t2,t,length,size,min_distance,rank,kernel_dim,linear,gh,gh_lambda";

/// One invariant report as a CSV data row matching [`REPORT_CSV_HEADER`].
pub fn report_csv_row(report: &InvariantReport) -> String {
    let ct = report.code_type;
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        report.p,
        ct.alpha1,
        ct.alpha2,
        ct.t1,
        ct.t2,
        ct.t,
        report.length,
        report.size,
        report.min_distance,
        report.rank,
        report.kernel_dim,
        report.linear,
        report.gh,
        report
            .gh_lambda
            .map(|l| l.to_string())
            .unwrap_or_default()
    )
}

/// Status of one computed table row relative to the published values.
#[derive(Copy, Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum RowStatus {
    /// Computed values match the published ones.
    Pass,
    /// Computed values contradict the published ones.
    Fail,
    /// No published values exist for these parameters; computed only.
    Computed,
    /// Skipped (typically because the work would exceed the budget).
    Skipped,
}

impl RowStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RowStatus::Pass => "PASS",
            RowStatus::Fail => "FAIL",
            RowStatus::Computed => "COMPUTED",
            RowStatus::Skipped => "SKIPPED",
        }
    }
}

/// One row of classification output: parameters, computed invariants where
/// available, and the comparison status.
#[derive(Clone, Debug, serde::Serialize)]
pub struct TableRow {
    pub t: u32,
    pub alpha1: u64,
    pub alpha2: u64,
    pub t1: u32,
    pub t2: u32,
    pub rank: Option<u32>,
    pub kernel_dim: Option<u32>,
    pub linear: Option<bool>,
    pub gh: Option<bool>,
    pub status: RowStatus,
}

pub const TABLE_CSV_HEADER: &str = "t,alpha1,alpha2,t1,t2,r,k,linear,gh,status";

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// One table row as CSV matching [`TABLE_CSV_HEADER`].
pub fn table_csv_row(row: &TableRow) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        row.t,
        row.alpha1,
        row.alpha2,
        row.t1,
        row.t2,
        opt(row.rank),
        opt(row.kernel_dim),
        opt(row.linear),
        opt(row.gh),
        row.status.as_str()
    )
}

/// Table rows as aligned text with a header line.
pub fn table_text(rows: &[TableRow]) -> String {
    let mut cells: Vec<[String; 10]> = vec![[
        "t".into(),
        "alpha1".into(),
        "alpha2".into(),
        "t1".into(),
        "t2".into(),
        "r".into(),
        "k".into(),
        "linear".into(),
        "gh".into(),
        "status".into(),
    ]];
    for row in rows {
        cells.push([
            row.t.to_string(),
            row.alpha1.to_string(),
            row.alpha2.to_string(),
            row.t1.to_string(),
            row.t2.to_string(),
            opt(row.rank),
            opt(row.kernel_dim),
            opt(row.linear),
            opt(row.gh),
            row.status.as_str().to_string(),
        ]);
    }
    let mut widths = [0usize; 10];
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    for row in &cells {
        let line = row
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Table rows as a JSON document.
pub fn table_json(p: u32, rows: &[TableRow]) -> serde_json::Value {
    json!({
        "schema": "table/1",
        "p": p,
        "rows": rows,
    })
}

/// Reference rows as a JSON document.
pub fn reference_json(p: u32, rows: &[ReferenceRow]) -> serde_json::Value {
    json!({
        "schema": "reference/1",
        "p": p,
        "rows": rows,
    })
}

/// Writes `content` to `path`, or to standard output when `path` is `None`.
pub fn emit(path: Option<&std::path::Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => {
            std::fs::write(p, content).map_err(|e| {
                crate::error::Error::Internal(format!("cannot write {}: {e}", p.display()))
            })?;
        }
        None => print!("{content}"),
    }
    Ok(())
}
