//! File formats: edge, relevance and relevance-matrix CSV in; result JSON,
//! long-form result CSV and Graphviz DOT out.
//!
//! * edges: header `source,target,weight`; the weight column is optional. A
//!   row with an empty target (`X,,`) declares an isolated vertex.
//! * relevance: header `vertex,relevance`; unlisted vertices default to 1.
//! * matrix: a header row of vertex labels after one leading cell, then one
//!   row per vertex starting with its label.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::fs::File;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::centrality::{element_label, round_significant, CentralityReport, Element, Metric};
use crate::error::{Error, Result};
use crate::graph::{EdgeRecord, Graph, GraphBuilder};
use crate::relevance::{FMatrix, RelevanceVector};

pub const TOOL_NAME: &str = "relcent";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

fn open_csv(path: &Path) -> Result<csv::Reader<File>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    Ok(csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(file))
}

fn malformed(path: &Path, line: u64, message: impl Into<String>) -> Error {
    Error::MalformedRow {
        path: path.to_owned(),
        line,
        message: message.into(),
    }
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    malformed(path, line, e.to_string())
}

fn check_header(path: &Path, headers: &csv::StringRecord, expected: &[&str], optional: usize) -> Result<()> {
    let got: Vec<&str> = headers.iter().collect();
    let required = &expected[..expected.len() - optional];
    if got.len() < required.len() || got.len() > expected.len() || got[..] != expected[..got.len()] {
        return Err(malformed(
            path,
            1,
            format!("expected header {:?}, found {:?}", expected.join(","), got.join(",")),
        ));
    }
    Ok(())
}

fn parse_float(path: &Path, line: u64, field: &str, what: &str) -> Result<f64> {
    field
        .parse::<f64>()
        .map_err(|_| malformed(path, line, format!("invalid {what} {field:?}")))
}

/// Parsed edge file: vertex declarations and edges in file order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EdgeList {
    pub items: Vec<EdgeItem>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EdgeItem {
    Vertex { label: String, line: u64 },
    Edge { record: EdgeRecord, line: u64 },
}

impl EdgeList {
    pub fn records(&self) -> impl Iterator<Item = &EdgeRecord> {
        self.items.iter().filter_map(|it| match it {
            EdgeItem::Edge { record, .. } => Some(record),
            EdgeItem::Vertex { .. } => None,
        })
    }
}

pub fn load_edge_csv(path: &Path) -> Result<EdgeList> {
    let mut rdr = open_csv(path)?;
    let headers = rdr.headers().map_err(|e| csv_error(path, e))?.clone();
    check_header(path, &headers, &["source", "target", "weight"], 1)?;
    let mut list = EdgeList::default();
    for row in rdr.records() {
        let row = row.map_err(|e| csv_error(path, e))?;
        let line = row.position().map_or(0, |p| p.line());
        if row.len() > 3 {
            return Err(malformed(path, line, format!("expected at most 3 fields, found {}", row.len())));
        }
        let field = |i: usize| row.get(i).unwrap_or("");
        let (source, target, weight) = (field(0), field(1), field(2));
        if source.is_empty() {
            return Err(malformed(path, line, "empty source label"));
        }
        if target.is_empty() {
            if !weight.is_empty() {
                return Err(malformed(path, line, "weight given without a target"));
            }
            list.items.push(EdgeItem::Vertex {
                label: source.to_owned(),
                line,
            });
            continue;
        }
        let weight = if weight.is_empty() {
            None
        } else {
            Some(parse_float(path, line, weight, "weight")?)
        };
        list.items.push(EdgeItem::Edge {
            record: EdgeRecord {
                source: source.to_owned(),
                target: target.to_owned(),
                weight,
            },
            line,
        });
    }
    Ok(list)
}

/// Builds a graph from a parsed edge file, reporting validation failures
/// against the offending line.
pub fn graph_from_edge_list(path: &Path, list: &EdgeList) -> Result<Graph> {
    let mut builder = GraphBuilder::default();
    for item in &list.items {
        let (res, line) = match item {
            EdgeItem::Vertex { label, line } => (builder.add_vertex(label).map(|_| ()), *line),
            EdgeItem::Edge { record, line } => (builder.add_edge(record), *line),
        };
        res.map_err(|e| malformed(path, line, e.to_string()))?;
    }
    Ok(builder.finish())
}

pub fn load_graph(path: &Path) -> Result<Graph> {
    graph_from_edge_list(path, &load_edge_csv(path)?)
}

/// Relevance per vertex of `g`; vertices absent from the file get 1.
pub fn load_relevance_csv(path: &Path, g: &Graph) -> Result<RelevanceVector> {
    let mut rdr = open_csv(path)?;
    let headers = rdr.headers().map_err(|e| csv_error(path, e))?.clone();
    check_header(path, &headers, &["vertex", "relevance"], 0)?;
    let mut values = vec![1.0; g.vertex_count()];
    let mut seen = HashSet::new();
    for row in rdr.records() {
        let row = row.map_err(|e| csv_error(path, e))?;
        let line = row.position().map_or(0, |p| p.line());
        if row.len() != 2 {
            return Err(malformed(path, line, format!("expected 2 fields, found {}", row.len())));
        }
        let label = &row[0];
        let v = g.index_of(label).map_err(|_| Error::UnknownVertexInRelevance {
            path: path.to_owned(),
            line,
            label: label.to_owned(),
        })?;
        if !seen.insert(v) {
            return Err(malformed(path, line, format!("duplicate relevance for {label:?}")));
        }
        let value = parse_float(path, line, &row[1], "relevance")?;
        if !(value.is_finite() && value > 0.0) {
            return Err(malformed(
                path,
                line,
                format!("relevance {value} must be strictly positive and finite"),
            ));
        }
        values[v] = value;
    }
    RelevanceVector::new(values)
}

/// Dense relevance matrix, reordered to the graph's internal indices.
pub fn load_f_matrix_csv(path: &Path, g: &Graph) -> Result<FMatrix> {
    let mut rdr = open_csv(path)?;
    let headers = rdr.headers().map_err(|e| csv_error(path, e))?.clone();
    let n = g.vertex_count();
    let columns: Vec<usize> = headers
        .iter()
        .skip(1)
        .map(|label| {
            g.index_of(label)
                .map_err(|_| Error::MatrixShapeMismatch(format!("unknown column vertex {label:?}")))
        })
        .collect::<Result<_>>()?;
    if columns.len() != n || columns.iter().collect::<HashSet<_>>().len() != n {
        return Err(Error::MatrixShapeMismatch(format!(
            "header lists {} distinct vertices, graph has {n}",
            columns.iter().collect::<HashSet<_>>().len()
        )));
    }
    let mut rows: Vec<Option<Vec<f64>>> = vec![None; n];
    for row in rdr.records() {
        let row = row.map_err(|e| csv_error(path, e))?;
        let line = row.position().map_or(0, |p| p.line());
        if row.len() != n + 1 {
            return Err(Error::MatrixShapeMismatch(format!(
                "line {line}: expected {} fields, found {}",
                n + 1,
                row.len()
            )));
        }
        let s = g
            .index_of(&row[0])
            .map_err(|_| Error::MatrixShapeMismatch(format!("line {line}: unknown row vertex {:?}", &row[0])))?;
        if rows[s].is_some() {
            return Err(malformed(path, line, format!("duplicate row for {:?}", &row[0])));
        }
        let mut values = vec![0.0; n];
        for (j, field) in row.iter().skip(1).enumerate() {
            let value = parse_float(path, line, field, "matrix entry")?;
            if !(value.is_finite() && value >= 0.0) {
                return Err(malformed(path, line, format!("matrix entry {value} must be finite and non-negative")));
            }
            values[columns[j]] = value;
        }
        if values[s] != 0.0 {
            return Err(Error::NonzeroDiagonal {
                label: row[0].to_owned(),
                value: values[s],
            });
        }
        rows[s] = Some(values);
    }
    let rows: Vec<Vec<f64>> = rows
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            r.ok_or_else(|| Error::MatrixShapeMismatch(format!("missing row for {:?}", g.label(i))))
        })
        .collect::<Result<_>>()?;
    FMatrix::from_rows(rows)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

/// Edge CSV text for `g`. Isolated vertices are written as `label,,`.
pub fn edge_csv_string(g: &Graph) -> String {
    let mut out = String::from(if g.is_weighted() { "source,target,weight\n" } else { "source,target\n" });
    for v in g.isolated_vertices() {
        let _ = writeln!(out, "{},,", quote(g.label(v)));
    }
    for e in g.edges() {
        let (u, v) = (quote(g.label(e.u)), quote(g.label(e.v)));
        if g.is_weighted() {
            let _ = writeln!(out, "{u},{v},{}", e.weight);
        } else {
            let _ = writeln!(out, "{u},{v}");
        }
    }
    out
}

pub fn save_edge_csv(g: &Graph, path: &Path) -> Result<()> {
    write_file(path, edge_csv_string(g).as_bytes())
}

pub fn relevance_csv_string(g: &Graph, r: &RelevanceVector) -> String {
    let mut out = String::from("vertex,relevance\n");
    for (v, value) in r.as_slice().iter().enumerate() {
        let _ = writeln!(out, "{},{value}", quote(g.label(v)));
    }
    out
}

pub fn save_relevance_csv(g: &Graph, r: &RelevanceVector, path: &Path) -> Result<()> {
    write_file(path, relevance_csv_string(g, r).as_bytes())
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n', '#']) || s != s.trim() {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

/// Everything a `compute` run reports.
#[derive(Debug, Clone)]
pub struct ResultDocument<'a> {
    pub graph_name: String,
    pub function: String,
    pub relevance_source: String,
    pub engine: String,
    pub graph: &'a Graph,
    pub reports: Vec<CentralityReport>,
}

fn num(x: f64) -> Value {
    json!(round_significant(x))
}

impl ResultDocument<'_> {
    pub fn to_value(&self) -> Value {
        let g = self.graph;
        let mut vertices: Vec<Map<String, Value>> = (0..g.vertex_count())
            .map(|v| {
                let mut m = Map::new();
                m.insert("id".into(), json!(g.label(v)));
                m.insert("index".into(), json!(v));
                m
            })
            .collect();
        let mut edges: Vec<Map<String, Value>> = g
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let mut m = Map::new();
                m.insert("id".into(), json!(g.edge_label(i)));
                m.insert("source".into(), json!(g.label(e.u)));
                m.insert("target".into(), json!(g.label(e.v)));
                m.insert("weight".into(), num(e.weight));
                m
            })
            .collect();
        let mut rankings = BTreeMap::new();
        for rep in &self.reports {
            let table = match rep.element() {
                Element::Vertex => &mut vertices,
                Element::Edge => &mut edges,
            };
            for (row, &value) in table.iter_mut().zip(&rep.values) {
                row.insert(rep.metric.name().into(), num(value));
            }
            let order: Vec<String> = rep
                .ranking
                .iter()
                .map(|&i| element_label(g, rep.element(), i))
                .collect();
            rankings.insert(rep.metric.name(), order);
        }
        json!({
            "metadata": {
                "graph": self.graph_name,
                "function": self.function,
                "relevance": self.relevance_source,
                "engine": self.engine,
                "weighted": g.is_weighted(),
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "metrics": self.reports.iter().map(|r| r.metric.name()).collect::<Vec<_>>(),
                "tool": TOOL_NAME,
                "version": TOOL_VERSION,
            },
            "vertices": vertices,
            "edges": edges,
            "rankings": rankings,
        })
    }

    /// Pretty-printed JSON with sorted keys and values rounded to 12
    /// significant digits.
    pub fn to_json(&self) -> Result<Vec<u8>> {
        let mut bytes = serde_json::to_vec_pretty(&self.to_value())?;
        bytes.push(b'\n');
        Ok(bytes)
    }

    /// Long-form CSV: `element,id,metric,value,rank`.
    pub fn to_csv(&self) -> String {
        let g = self.graph;
        let mut out = String::from("element,id,metric,value,rank\n");
        for rep in &self.reports {
            let mut rank_of = vec![0; rep.values.len()];
            for (pos, &i) in rep.ranking.iter().enumerate() {
                rank_of[i] = pos + 1;
            }
            let kind = match rep.element() {
                Element::Vertex => "vertex",
                Element::Edge => "edge",
            };
            for (i, &value) in rep.values.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{kind},{},{},{},{}",
                    quote(&element_label(g, rep.element(), i)),
                    rep.metric,
                    round_significant(value),
                    rank_of[i]
                );
            }
        }
        out
    }

    /// DOT using vertex betweenness (or the first vertex metric) for node size
    /// and edge betweenness for edge color.
    pub fn to_dot(&self) -> String {
        let vertex = self
            .reports
            .iter()
            .find(|r| r.metric == Metric::VertexBetweenness)
            .or_else(|| self.reports.iter().find(|r| r.element() == Element::Vertex));
        let edge = self.reports.iter().find(|r| r.element() == Element::Edge);
        export_dot(self.graph, vertex, edge)
    }
}

/// Min-max normalisation to `[0, 1]`; constant inputs map to 0.5.
fn normalise(values: &[f64]) -> Vec<f64> {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = round_significant(hi) - round_significant(lo);
    values
        .iter()
        .map(|&v| if span > 0.0 { ((v - lo) / (hi - lo)).clamp(0.0, 1.0) } else { 0.5 })
        .collect()
}

const MIN_WIDTH: f64 = 0.3;
const MAX_WIDTH: f64 = 1.5;

/// Graphviz text. Node width grows linearly from 0.3 to 1.5 with the vertex
/// value; edge color runs from cyan (minimum) to black (maximum).
pub fn export_dot(g: &Graph, vertex: Option<&CentralityReport>, edge: Option<&CentralityReport>) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle, fixedsize=true];\n");
    let widths = vertex.map(|r| normalise(&r.values));
    for v in 0..g.vertex_count() {
        let _ = write!(out, "  \"{}\"", escape(g.label(v)));
        if let (Some(w), Some(rep)) = (&widths, vertex) {
            let _ = write!(
                out,
                " [width={:.3}, tooltip=\"{}={}\"]",
                MIN_WIDTH + w[v] * (MAX_WIDTH - MIN_WIDTH),
                rep.metric,
                round_significant(rep.values[v])
            );
        }
        out.push_str(";\n");
    }
    let shades = edge.map(|r| normalise(&r.values));
    for (i, e) in g.edges().iter().enumerate() {
        let _ = write!(out, "  \"{}\" -- \"{}\"", escape(g.label(e.u)), escape(g.label(e.v)));
        if let (Some(s), Some(rep)) = (&shades, edge) {
            // cyan (0,255,255) at the minimum, black at the maximum
            let c = ((1.0 - s[i]) * 255.0).round() as u8;
            let _ = write!(
                out,
                " [color=\"#00{c:02x}{c:02x}\", tooltip=\"{}={}\"]",
                rep.metric,
                round_significant(rep.values[i])
            );
        }
        out.push_str(";\n");
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
