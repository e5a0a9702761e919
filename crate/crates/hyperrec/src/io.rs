//! Reading and writing hypergraph files.
//!
//! TSV: one arc per line, `head<TAB>tail`, each side a comma-separated list
//! of node labels. Blank lines and lines starting with `#` are skipped.
//!
//! JSON: `{"nodes": [...], "arcs": [{"head": [...], "tail": [...]}]}` where
//! labels are strings or integers and `nodes` is optional. Listing nodes
//! fixes their ids and keeps isolated nodes.
//!
//! Labels are mapped to dense ids in order of first appearance (the `nodes`
//! list first, then heads before tails, arc by arc).

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use hyperrec_core::hypergraph::{Added, OverlapPolicy};
use hyperrec_core::{DirectedHypergraph, HypergraphBuilder, NodeId};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File { path: PathBuf, source: std::io::Error },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: {source}")]
    Invalid { line: usize, source: hyperrec_core::Error },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("json arc {index}: {message}")]
    JsonArc { index: usize, message: String },

    #[error("cannot tell the format of {0}; use a .tsv or .json extension")]
    UnknownFormat(PathBuf),

    #[error(transparent)]
    Write(#[from] std::io::Error),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Tsv,
    Json,
}

impl Format {
    pub fn from_path(path: &Path) -> Result<Self, IoError> {
        match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
            Some("tsv" | "txt") => Ok(Format::Tsv),
            Some("json") => Ok(Format::Json),
            _ => Err(IoError::UnknownFormat(path.to_path_buf())),
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            Format::Tsv => "tsv",
            Format::Json => "json",
        }
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct IngestOptions {
    pub overlap: OverlapPolicy,
    /// Drop arcs with more head nodes than this.
    pub max_head_size: Option<usize>,
}

/// A hypergraph plus the original node labels.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    pub graph: DirectedHypergraph,
    /// `labels[v]` is the label of node `v`.
    pub labels: Vec<String>,
    /// Repeated arcs dropped during ingestion.
    pub duplicates: usize,
    /// Arcs dropped by the head-size filter.
    pub filtered: usize,
}

impl Dataset {
    /// Labels `0..n` for a hypergraph built from ids.
    pub fn unlabeled(graph: DirectedHypergraph) -> Self {
        let labels = (0..graph.num_nodes()).map(|v| v.to_string()).collect();
        Self { graph, labels, duplicates: 0, filtered: 0 }
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v.index()]
    }
}

#[derive(Default)]
struct Labels {
    ids: HashMap<String, u32>,
    names: Vec<String>,
}

impl Labels {
    fn id(&mut self, label: &str) -> NodeId {
        if let Some(&id) = self.ids.get(label) {
            return NodeId(id);
        }
        let id = self.names.len() as u32;
        self.ids.insert(label.to_owned(), id);
        self.names.push(label.to_owned());
        NodeId(id)
    }
}

struct Ingest {
    builder: HypergraphBuilder,
    labels: Labels,
}

impl Ingest {
    fn new(opts: &IngestOptions) -> Self {
        Self {
            builder: HypergraphBuilder::new().overlap_policy(opts.overlap).max_head_size(opts.max_head_size),
            labels: Labels::default(),
        }
    }

    fn add(&mut self, head: &[String], tail: &[String]) -> Result<Added, hyperrec_core::Error> {
        let h: Vec<NodeId> = head.iter().map(|l| self.labels.id(l)).collect();
        let t: Vec<NodeId> = tail.iter().map(|l| self.labels.id(l)).collect();
        self.builder.add(h, t)
    }

    fn finish(self) -> Dataset {
        let duplicates = self.builder.duplicates();
        let filtered = self.builder.filtered();
        let graph = self.builder.with_nodes(self.labels.names.len()).build();
        Dataset { graph, labels: self.labels.names, duplicates, filtered }
    }
}

fn split_side(field: &str, line: usize) -> Result<Vec<String>, IoError> {
    let field = field.trim();
    if field.is_empty() {
        return Ok(Vec::new());
    }
    field
        .split(',')
        .map(|s| {
            let s = s.trim();
            if s.is_empty() {
                Err(IoError::Parse { line, message: format!("empty node label in {field:?}") })
            } else {
                Ok(s.to_owned())
            }
        })
        .collect()
}

pub fn read_tsv<R: BufRead>(reader: R, opts: &IngestOptions) -> Result<Dataset, IoError> {
    let mut ingest = Ingest::new(opts);
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        let trimmed = line.trim_end_matches(['\r', '\n']);
        if trimmed.trim().is_empty() || trimmed.trim_start().starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split('\t').collect();
        if fields.len() != 2 {
            return Err(IoError::Parse {
                line: line_no,
                message: format!("expected 2 tab-separated fields, found {}", fields.len()),
            });
        }
        let head = split_side(fields[0], line_no)?;
        let tail = split_side(fields[1], line_no)?;
        ingest.add(&head, &tail).map_err(|source| IoError::Invalid { line: line_no, source })?;
    }
    Ok(ingest.finish())
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonLabel {
    Int(i64),
    Str(String),
}

impl JsonLabel {
    fn into_string(self) -> String {
        match self {
            JsonLabel::Int(i) => i.to_string(),
            JsonLabel::Str(s) => s,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonArcIn {
    head: Vec<JsonLabel>,
    tail: Vec<JsonLabel>,
}

#[derive(Deserialize)]
struct JsonIn {
    #[serde(default)]
    nodes: Vec<JsonLabel>,
    arcs: Vec<JsonArcIn>,
}

pub fn read_json<R: Read>(reader: R, opts: &IngestOptions) -> Result<Dataset, IoError> {
    let doc: JsonIn = serde_json::from_reader(reader)?;
    let mut ingest = Ingest::new(opts);
    for n in doc.nodes {
        ingest.labels.id(&n.into_string());
    }
    for (index, arc) in doc.arcs.into_iter().enumerate() {
        let head: Vec<String> = arc.head.into_iter().map(JsonLabel::into_string).collect();
        let tail: Vec<String> = arc.tail.into_iter().map(JsonLabel::into_string).collect();
        ingest.add(&head, &tail).map_err(|e| IoError::JsonArc { index, message: e.to_string() })?;
    }
    Ok(ingest.finish())
}

fn open(path: &Path) -> Result<File, IoError> {
    File::open(path).map_err(|source| IoError::File { path: path.to_path_buf(), source })
}

/// Reads `path`, choosing the format from `format` or the extension.
pub fn read_path(path: &Path, format: Option<Format>, opts: &IngestOptions) -> Result<Dataset, IoError> {
    let format = match format {
        Some(f) => f,
        None => Format::from_path(path)?,
    };
    let file = open(path)?;
    match format {
        Format::Tsv => read_tsv(BufReader::new(file), opts),
        Format::Json => read_json(BufReader::new(file), opts),
    }
}

/// Environment variable naming the default data directory.
pub const DATA_DIR_VAR: &str = "HYPERREC_DATA_DIR";

/// `path` itself if it exists, else `$HYPERREC_DATA_DIR/path` for relative
/// paths when that exists. Falls back to `path` so errors name what was asked.
pub fn resolve_input(path: &Path) -> PathBuf {
    if path.exists() || path.is_absolute() {
        return path.to_path_buf();
    }
    if let Some(dir) = std::env::var_os(DATA_DIR_VAR) {
        let candidate = Path::new(&dir).join(path);
        if candidate.exists() {
            return candidate;
        }
    }
    path.to_path_buf()
}

pub fn write_tsv<W: Write>(data: &Dataset, mut w: W) -> std::io::Result<()> {
    for arc in data.graph.arcs() {
        let side = |nodes: &[NodeId]| nodes.iter().map(|&v| data.label(v)).collect::<Vec<_>>().join(",");
        writeln!(w, "{}\t{}", side(arc.head()), side(arc.tail()))?;
    }
    w.flush()
}

#[derive(Serialize)]
struct JsonArcOut<'a> {
    head: Vec<&'a str>,
    tail: Vec<&'a str>,
}

#[derive(Serialize)]
struct JsonOut<'a> {
    nodes: &'a [String],
    arcs: Vec<JsonArcOut<'a>>,
}

pub fn write_json<W: Write>(data: &Dataset, mut w: W) -> Result<(), IoError> {
    let doc = JsonOut {
        nodes: &data.labels,
        arcs: data
            .graph
            .arcs()
            .iter()
            .map(|a| JsonArcOut {
                head: a.head().iter().map(|&v| data.label(v)).collect(),
                tail: a.tail().iter().map(|&v| data.label(v)).collect(),
            })
            .collect(),
    };
    serde_json::to_writer(&mut w, &doc)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

pub fn write_path(data: &Dataset, path: &Path, format: Format) -> Result<(), IoError> {
    let file = File::create(path).map_err(|source| IoError::File { path: path.to_path_buf(), source })?;
    let w = BufWriter::new(file);
    match format {
        Format::Tsv => write_tsv(data, w).map_err(|source| IoError::File { path: path.to_path_buf(), source }),
        Format::Json => write_json(data, w),
    }
}
