//! CSV and JSON outputs. Column layouts are listed in `docs/formats.md`.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use hyperrec_core::analytics::{AlphaRow, CurveData, Quartiles};
use hyperrec_core::axioms::MatrixCell;
use hyperrec_core::ArcReciprocity;
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Csv { path: String, source: csv::Error },
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
}

fn create(path: &Path) -> Result<BufWriter<File>, ReportError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|source| ReportError::Io { path: path.display().to_string(), source })
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<(), ReportError> {
    let json_err = |source| ReportError::Json { path: path.display().to_string(), source };
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(json_err)?;
    writeln!(w)
        .and_then(|_| w.flush())
        .map_err(|source| ReportError::Io { path: path.display().to_string(), source })
}

pub fn write_csv<T: Serialize>(path: &Path, rows: impl IntoIterator<Item = T>) -> Result<(), ReportError> {
    let csv_err = |source| ReportError::Csv { path: path.display().to_string(), source };
    let mut w = csv::Writer::from_writer(create(path)?);
    for row in rows {
        w.serialize(row).map_err(csv_err)?;
    }
    w.flush().map_err(|source| ReportError::Io { path: path.display().to_string(), source })
}

/// One line of the per-arc CSV. `r` is empty for arcs whose search failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArcRow {
    pub arc_id: u32,
    pub r: Option<f64>,
    pub omega: Option<usize>,
    pub psi: Option<usize>,
    pub searched: Option<u64>,
    /// Reciprocal set as space-separated arc ids.
    pub reciprocal_set: String,
    pub error: String,
}

impl ArcRow {
    pub fn ok(a: &ArcReciprocity) -> Self {
        Self {
            arc_id: a.arc.0,
            r: Some(a.value),
            omega: Some(a.omega),
            psi: Some(a.psi),
            searched: Some(a.searched),
            reciprocal_set: a.reciprocal_set.iter().map(|k| k.0.to_string()).collect::<Vec<_>>().join(" "),
            error: String::new(),
        }
    }

    pub fn failed(arc_id: u32, error: String) -> Self {
        Self { arc_id, r: None, omega: None, psi: None, searched: None, reciprocal_set: String::new(), error }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaTableRow {
    pub alpha: f64,
    pub r_g: f64,
    pub r_g_percent: f64,
}

impl From<&AlphaRow> for AlphaTableRow {
    fn from(r: &AlphaRow) -> Self {
        Self { alpha: r.alpha, r_g: r.value, r_g_percent: r.percent() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveRow {
    pub balance: f64,
    pub r_raw: f64,
    pub r_smooth: f64,
    pub nodes: usize,
}

pub fn curve_rows(c: &CurveData) -> Vec<CurveRow> {
    (0..c.xs.len())
        .map(|i| CurveRow { balance: c.xs[i], r_raw: c.ys_raw[i], r_smooth: c.ys_smooth[i], nodes: c.counts[i] })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixRow {
    pub alpha: f64,
    pub measure: &'static str,
    pub axiom: &'static str,
    pub satisfied: bool,
    pub checked: usize,
    pub violations: usize,
    pub evidence: String,
}

impl MatrixRow {
    pub fn new(alpha: f64, c: &MatrixCell) -> Self {
        Self {
            alpha,
            measure: c.measure,
            axiom: c.axiom,
            satisfied: c.satisfied,
            checked: c.checked,
            violations: c.violations,
            evidence: c.evidence.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuartileSummary {
    pub n: usize,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

impl QuartileSummary {
    pub fn of(n: usize, q: &Quartiles) -> Self {
        Self { n, min: q.min, q1: q.q1, median: q.median, q3: q.q3, max: q.max }
    }
}

/// `✓`/`✗` grid, one row per measure, for printing.
pub fn matrix_table(cells: &[MatrixCell]) -> String {
    let mut axioms: Vec<&str> = Vec::new();
    let mut measures: Vec<&str> = Vec::new();
    for c in cells {
        if !axioms.contains(&c.axiom) {
            axioms.push(c.axiom);
        }
        if !measures.contains(&c.measure) {
            measures.push(c.measure);
        }
    }
    let mut out = format!("{:<10}", "measure");
    for a in &axioms {
        out.push_str(&format!(" {a:>3}"));
    }
    out.push('\n');
    for m in &measures {
        out.push_str(&format!("{m:<10}"));
        for a in &axioms {
            let mark = match cells.iter().find(|c| c.measure == *m && c.axiom == *a) {
                Some(c) if c.satisfied => "✓",
                Some(_) => "✗",
                None => "-",
            };
            out.push_str(&format!("   {mark}"));
        }
        out.push('\n');
    }
    out
}
