use std::fmt::{Display, Write as _};

use rayon::prelude::*;
use serde::Serialize;

use super::{OutputFormat, RunConfig, Show, View};
use crate::claims::{verify_order, ClaimReport, Verdict};
use crate::designs::{classify_design, to_incidence};
use crate::error::{Error, Result};
use crate::graphs::{adjacency_graph, export_graph, graph_stats, levi_graph, ExportFormat, GraphStats};
use crate::matrixgen::{apply_signs, build_base, sign_matrix};
use crate::orthogonality::{exact_determinant, profile};

type Rendered = Result<(String, bool)>;

/// Space-separated, right-aligned to a common width, one row per line.
fn matrix_text<T: Display>(rows: &[Vec<T>]) -> String {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    for row in cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

fn json<T: Serialize>(records: &[T], single: bool) -> String {
    let mut text = if single {
        serde_json::to_string_pretty(&records[0])
    } else {
        serde_json::to_string_pretty(records)
    }
    .expect("records serialize");
    text.push('\n');
    text
}

fn header(config: &RunConfig, n: usize) -> String {
    format!("# type {}, n = {n}, convention {}\n", config.rule, config.convention)
}

fn join<T: Display>(values: &[T]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct GenRecord {
    n: usize,
    #[serde(rename = "type")]
    matrix_type: u8,
    convention: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    signs: Option<Vec<Vec<i8>>>,
}

pub(super) fn gen(config: &RunConfig, orders: &[usize], show: Show) -> Rendered {
    let mut records = Vec::with_capacity(orders.len());
    for &n in orders {
        let table = build_base(config.rule, n)?;
        let signs = apply_signs(&table, config.convention);
        records.push(GenRecord {
            n,
            matrix_type: config.rule.number(),
            convention: config.convention.to_string(),
            table: (show != Show::Signs).then(|| table.to_rows()),
            signs: (show != Show::Table).then(|| signs.to_rows()),
        });
    }
    let text = match config.format {
        OutputFormat::Json => json(&records, orders.len() == 1),
        _ => {
            let mut out = String::new();
            for (idx, r) in records.iter().enumerate() {
                if idx > 0 {
                    out.push('\n');
                }
                out.push_str(&header(config, r.n));
                if let Some(t) = &r.table {
                    out.push_str("table:\n");
                    out.push_str(&matrix_text(t));
                }
                if let Some(s) = &r.signs {
                    out.push_str("signs:\n");
                    out.push_str(&matrix_text(s));
                }
            }
            out
        }
    };
    Ok((text, false))
}

#[derive(Serialize)]
struct CheckRecord {
    claim: String,
    status: &'static str,
    detail: Option<String>,
}

impl CheckRecord {
    fn from_report(r: &ClaimReport) -> Self {
        let (status, detail) = match &r.verdict {
            Verdict::Pass => ("PASS", None),
            Verdict::Fail(d) => ("FAIL", Some(d.clone())),
            Verdict::Skip(d) => ("SKIP", Some(d.clone())),
        };
        CheckRecord {
            claim: r.claim.to_string(),
            status,
            detail,
        }
    }

    fn line(&self) -> String {
        match &self.detail {
            None => format!("{} {}", self.claim, self.status),
            Some(d) if self.status == "FAIL" => format!("{} FAIL: {d}", self.claim),
            Some(d) => format!("{} {} ({d})", self.claim, self.status),
        }
    }
}

#[derive(Serialize)]
struct AnalyzeRecord {
    n: usize,
    #[serde(rename = "type")]
    matrix_type: u8,
    convention: String,
    trivial_value: i64,
    distinct_values: Vec<i64>,
    multiplicities: Vec<usize>,
    /// `[i, j, g]` with `i < j`, row labels from 1.
    pairs: Vec<[i64; 3]>,
    checks: Vec<CheckRecord>,
    determinant: String,
    determinant_predicted: Option<String>,
    determinant_match: Option<bool>,
}

pub(super) fn analyze(config: &RunConfig, orders: &[usize]) -> Rendered {
    let records = orders
        .par_iter()
        .map(|&n| {
            let m = sign_matrix(config.rule, n, config.convention)?;
            let p = profile(&m);
            let det = exact_determinant(&m);
            let checks = verify_order(config.rule, n, config.convention)?
                .iter()
                .map(CheckRecord::from_report)
                .collect();
            Ok(AnalyzeRecord {
                n,
                matrix_type: config.rule.number(),
                convention: config.convention.to_string(),
                trivial_value: p.trivial_value,
                distinct_values: p.distinct_values.clone(),
                multiplicities: p.multiplicities.clone(),
                pairs: p
                    .pair_values
                    .iter()
                    .map(|(&(i, j), &g)| [i as i64, j as i64, g])
                    .collect(),
                checks,
                determinant: det.value.to_string(),
                determinant_predicted: det.predicted.as_ref().map(ToString::to_string),
                determinant_match: det.matches,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let failed = records
        .iter()
        .any(|r| r.checks.iter().any(|c| c.status == "FAIL") || r.determinant_match == Some(false));

    let text = match config.format {
        OutputFormat::Json => json(&records, orders.len() == 1),
        _ => {
            let mut out = String::new();
            for (idx, r) in records.iter().enumerate() {
                if idx > 0 {
                    out.push('\n');
                }
                out.push_str(&header(config, r.n));
                let _ = writeln!(out, "trivial orthogonal number: {}", r.trivial_value);
                let values: Vec<String> = r
                    .distinct_values
                    .iter()
                    .zip(&r.multiplicities)
                    .map(|(g, m)| format!("{g} (x{m})"))
                    .collect();
                let _ = writeln!(out, "orthogonal numbers: {}", values.join(", "));
                out.push_str("pairs:\n");
                for [i, j, g] in &r.pairs {
                    let _ = writeln!(out, "  <R{i},R{j}> = {g}");
                }
                out.push_str("checks:\n");
                for c in &r.checks {
                    let _ = writeln!(out, "  {}", c.line());
                }
                let _ = writeln!(out, "determinant: {}", r.determinant);
                match (&r.determinant_predicted, r.determinant_match) {
                    (Some(p), Some(true)) => {
                        let _ = writeln!(out, "predicted determinant: {p} (match)");
                    }
                    (Some(p), _) => {
                        let _ = writeln!(out, "predicted determinant: {p} (MISMATCH)");
                    }
                    (None, _) => out.push_str("predicted determinant: none\n"),
                }
            }
            out
        }
    };
    Ok((text, failed))
}

#[derive(Serialize)]
struct DesignRecord {
    n: usize,
    #[serde(rename = "type")]
    matrix_type: u8,
    convention: String,
    v: usize,
    b: usize,
    r: Option<usize>,
    k: Option<usize>,
    lambdas: Vec<u64>,
    class_sizes: Option<Vec<usize>>,
    kind: String,
    m_classes: usize,
    scheme_valid: Option<bool>,
    witness: Option<String>,
    /// `p_matrices[i][j][k]` is `p^{i+1}_{j+1,k+1}`.
    p_matrices: Option<Vec<Vec<Vec<usize>>>>,
    concurrence_identity: Option<bool>,
}

pub(super) fn design(config: &RunConfig, orders: &[usize]) -> Rendered {
    let records = orders
        .par_iter()
        .map(|&n| {
            let m = sign_matrix(config.rule, n, config.convention)?;
            let d = classify_design(&to_incidence(&m));
            let scheme = d.scheme.as_ref();
            Ok(DesignRecord {
                n,
                matrix_type: config.rule.number(),
                convention: config.convention.to_string(),
                v: d.v,
                b: d.b,
                r: d.r,
                k: d.k,
                lambdas: d.lambdas.clone(),
                class_sizes: d.class_sizes.clone(),
                kind: d.kind.to_string(),
                m_classes: d.lambdas.len(),
                scheme_valid: scheme.map(|s| s.valid),
                witness: scheme.and_then(|s| s.witness.as_ref()).map(ToString::to_string),
                p_matrices: scheme
                    .and_then(|s| s.intersections.as_ref())
                    .map(|p| (0..p.classes()).map(|i| p.matrix(i)).collect()),
                concurrence_identity: d.concurrence_identity_holds(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let text = match config.format {
        OutputFormat::Json => json(&records, orders.len() == 1),
        _ => {
            let opt = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
            let mut out = String::new();
            for (idx, r) in records.iter().enumerate() {
                if idx > 0 {
                    out.push('\n');
                }
                out.push_str(&header(config, r.n));
                let _ = writeln!(out, "design: {}", r.kind);
                let _ = writeln!(out, "v = {}, b = {}, r = {}, k = {}", r.v, r.b, opt(r.r), opt(r.k));
                let _ = writeln!(out, "lambda: {}", join(&r.lambdas));
                match &r.class_sizes {
                    Some(sizes) => {
                        let _ = writeln!(out, "class sizes: {}", join(sizes));
                    }
                    None => out.push_str("class sizes: -\n"),
                }
                match (r.scheme_valid, &r.witness) {
                    (Some(true), _) => out.push_str("scheme: valid\n"),
                    (Some(false), Some(w)) => {
                        let _ = writeln!(out, "scheme: invalid ({w})");
                    }
                    _ => out.push_str("scheme: -\n"),
                }
                if let Some(holds) = r.concurrence_identity {
                    let _ = writeln!(out, "sum n_i lambda_i = r(k-1): {holds}");
                }
                for (i, p) in r.p_matrices.iter().flatten().enumerate() {
                    let _ = writeln!(out, "P{}:", i + 1);
                    for line in matrix_text(p).lines() {
                        let _ = writeln!(out, "  {line}");
                    }
                }
            }
            out
        }
    };
    Ok((text, false))
}

#[derive(Serialize)]
struct StatsRecord<'a> {
    n: usize,
    view: &'static str,
    #[serde(flatten)]
    stats: &'a GraphStats,
}

pub(super) fn graph(config: &RunConfig, n: usize, view: View, stats: bool) -> Rendered {
    let m = sign_matrix(config.rule, n, config.convention)?;
    let incidence = to_incidence(&m);
    let (graph_stats, exported) = match view {
        View::Adjacency => {
            let g = adjacency_graph(&incidence)?;
            (graph_stats(&g), export(&g, config.format))
        }
        View::Levi => {
            let g = levi_graph(&incidence);
            (graph_stats(&g), export(&g, config.format))
        }
    };
    if !stats {
        return Ok((exported, false));
    }
    let view_name = match view {
        View::Adjacency => "adjacency",
        View::Levi => "levi",
    };
    let text = match config.format {
        OutputFormat::Json => json(
            &[StatsRecord {
                n,
                view: view_name,
                stats: &graph_stats,
            }],
            true,
        ),
        _ => {
            let s = &graph_stats;
            let mut out = header(config, n);
            let _ = writeln!(out, "view: {view_name}");
            let _ = writeln!(out, "vertices: {}", s.vertex_count);
            let _ = writeln!(out, "edges: {}", s.edge_count);
            let _ = writeln!(out, "degrees: {}", join(&s.degree_sequence));
            let _ = writeln!(out, "regular: {}", s.regular);
            let _ = writeln!(out, "bipartite: {}", s.bipartite);
            let _ = writeln!(out, "components: {}", s.components);
            let _ = writeln!(out, "girth: {}", s.girth.map_or("-".to_string(), |g| g.to_string()));
            out
        }
    };
    Ok((text, false))
}

fn export<G: crate::graphs::Exportable>(g: &G, format: OutputFormat) -> String {
    let format = match format {
        OutputFormat::Json => ExportFormat::Json,
        _ => ExportFormat::Dot,
    };
    export_graph(g, format)
}

#[derive(Serialize)]
struct VerifyRecord {
    n: usize,
    #[serde(flatten)]
    check: CheckRecord,
}

#[derive(Serialize)]
struct VerifySummary {
    #[serde(rename = "type")]
    matrix_type: u8,
    convention: String,
    orders: Vec<usize>,
    reports: Vec<VerifyRecord>,
    pass: usize,
    fail: usize,
    skip: usize,
}

pub(super) fn verify(config: &RunConfig, orders: &[usize]) -> Rendered {
    let per_order = orders
        .par_iter()
        .map(|&n| verify_order(config.rule, n, config.convention))
        .collect::<Result<Vec<_>>>()?;
    let reports: Vec<VerifyRecord> = per_order
        .iter()
        .flatten()
        .map(|r| VerifyRecord {
            n: r.n,
            check: CheckRecord::from_report(r),
        })
        .collect();
    let count = |status| reports.iter().filter(|r| r.check.status == status).count();
    let summary = VerifySummary {
        matrix_type: config.rule.number(),
        convention: config.convention.to_string(),
        orders: orders.to_vec(),
        pass: count("PASS"),
        fail: count("FAIL"),
        skip: count("SKIP"),
        reports,
    };
    let failed = summary.fail > 0;
    let text = match config.format {
        OutputFormat::Json => json(&[summary], true),
        _ => {
            let mut out = String::new();
            for r in &summary.reports {
                let _ = writeln!(out, "n={} {}", r.n, r.check.line());
            }
            let _ = writeln!(
                out,
                "summary: {} orders, {} pass, {} fail, {} skip",
                summary.orders.len(),
                summary.pass,
                summary.fail,
                summary.skip
            );
            out
        }
    };
    Ok((text, failed))
}

/// One `scan` row; field order is the CSV column order.
#[derive(Debug, Serialize)]
struct ScanRow {
    n: usize,
    #[serde(rename = "type")]
    matrix_type: u8,
    convention: String,
    det: String,
    det_predicted: Option<String>,
    det_match: Option<bool>,
    distinct_g: String,
    design_kind: String,
    m_classes: usize,
    scheme_valid: Option<bool>,
}

const SCAN_COLUMNS: [&str; 10] = [
    "n",
    "type",
    "convention",
    "det",
    "det_predicted",
    "det_match",
    "distinct_g",
    "design_kind",
    "m_classes",
    "scheme_valid",
];

impl ScanRow {
    fn cells(&self) -> [String; 10] {
        let opt = |x: Option<String>| x.unwrap_or_default();
        [
            self.n.to_string(),
            self.matrix_type.to_string(),
            self.convention.clone(),
            self.det.clone(),
            opt(self.det_predicted.clone()),
            opt(self.det_match.map(|b| b.to_string())),
            self.distinct_g.clone(),
            self.design_kind.clone(),
            self.m_classes.to_string(),
            opt(self.scheme_valid.map(|b| b.to_string())),
        ]
    }
}

pub(super) fn scan(config: &RunConfig, orders: &[usize]) -> Rendered {
    let rows = orders
        .par_iter()
        .map(|&n| {
            let m = sign_matrix(config.rule, n, config.convention)?;
            let det = exact_determinant(&m);
            let p = profile(&m);
            let d = classify_design(&to_incidence(&m));
            Ok(ScanRow {
                n,
                matrix_type: config.rule.number(),
                convention: config.convention.to_string(),
                det: det.value.to_string(),
                det_predicted: det.predicted.as_ref().map(ToString::to_string),
                det_match: det.matches,
                distinct_g: join(&p.distinct_values),
                design_kind: d.kind.to_string(),
                m_classes: d.lambdas.len(),
                scheme_valid: d.scheme.as_ref().map(|s| s.valid),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let failed = rows.iter().any(|r| r.det_match == Some(false));

    let text = match config.format {
        OutputFormat::Json => json(&rows, false),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(SCAN_COLUMNS).map_err(csv_error)?;
            for row in &rows {
                w.write_record(row.cells()).map_err(csv_error)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Error::Usage(e.to_string()))?)
                .expect("csv output is utf-8")
        }
        _ => {
            let table: Vec<[String; 10]> = std::iter::once(SCAN_COLUMNS.map(String::from))
                .chain(rows.iter().map(ScanRow::cells))
                .collect();
            let widths: Vec<usize> = (0..SCAN_COLUMNS.len())
                .map(|c| table.iter().map(|r| r[c].len()).max().unwrap_or(0))
                .collect();
            let mut out = String::new();
            for row in &table {
                let line: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(cell, &w)| format!("{cell:<w$}"))
                    .collect();
                out.push_str(line.join("  ").trim_end());
                out.push('\n');
            }
            out
        }
    };
    Ok((text, failed))
}

fn csv_error(e: csv::Error) -> Error {
    Error::Usage(format!("csv: {e}"))
}
