//! Graph model and CSV ingestion.
//!
//! Node order is first-appearance order and defines the row index used by
//! every position and force matrix in the crate.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct NodeRecord {
    pub id: String,
    pub label: String,
    pub attributes: BTreeMap<String, String>,
    /// Total degree (in + out). A self-loop counts twice.
    pub degree: usize,
}

impl NodeRecord {
    fn new(id: &str) -> Self {
        Self {
            id: id.to_owned(),
            label: id.to_owned(),
            attributes: BTreeMap::new(),
            degree: 0,
        }
    }
}

/// A weighted edge between two node rows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub weight: f64,
}

impl Edge {
    pub fn is_self_loop(&self) -> bool {
        self.source == self.target
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Graph {
    nodes: Vec<NodeRecord>,
    edges: Vec<Edge>,
    directed: bool,
    index: HashMap<String, usize>,
}

impl Graph {
    /// Build a graph from node ids and `(source, target, weight)` triples
    /// given as row indices. Duplicate pairs are merged by summing weights.
    pub fn from_parts<S: AsRef<str>>(
        ids: &[S],
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
        directed: bool,
    ) -> Result<Self> {
        let mut builder = Builder::new(directed);
        for id in ids {
            builder.node(id.as_ref())?;
        }
        for (s, t, w) in edges {
            if s >= builder.graph.nodes.len() || t >= builder.graph.nodes.len() {
                return Err(Error::UnknownNode(format!("#{}", s.max(t))));
            }
            if w.is_nan() || w < 0.0 {
                return Err(Error::InvalidParam(format!(
                    "edge weight {w} must be non-negative"
                )));
            }
            builder.edge(s, t, w);
        }
        Ok(builder.finish())
    }

    pub fn nodes(&self) -> &[NodeRecord] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Same nodes and edges, flagged as undirected. Only affects rendering.
    pub fn into_undirected(mut self) -> Self {
        self.directed = false;
        self
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn node(&self, id: &str) -> Option<&NodeRecord> {
        self.index_of(id).map(|i| &self.nodes[i])
    }

    pub fn ids(&self) -> impl ExactSizeIterator<Item = &str> {
        self.nodes.iter().map(|n| n.id.as_str())
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.nodes.iter().map(|n| n.degree).collect()
    }

    /// Total degree of a node. See [`NodeRecord::degree`].
    pub fn degree(&self, id: &str) -> Result<usize> {
        self.node(id)
            .map(|n| n.degree)
            .ok_or_else(|| Error::UnknownNode(id.to_owned()))
    }

    /// Serialize as an edge-list CSV accepted by [`parse_edge_list`].
    ///
    /// Isolated nodes have no representation in this format and are lost.
    pub fn to_edge_list_csv(&self) -> String {
        let mut out = String::from("source,target,weight\n");
        for e in &self.edges {
            out.push_str(&format!(
                "{},{},{}\n",
                csv_field(&self.nodes[e.source].id),
                csv_field(&self.nodes[e.target].id),
                e.weight
            ));
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) || s.starts_with('#') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

struct Builder {
    graph: Graph,
    pairs: HashMap<(usize, usize), usize>,
}

impl Builder {
    fn new(directed: bool) -> Self {
        Self {
            graph: Graph {
                directed,
                ..Graph::default()
            },
            pairs: HashMap::new(),
        }
    }

    /// Register a node that must be new.
    fn node(&mut self, id: &str) -> Result<usize> {
        if self.graph.index.contains_key(id) {
            return Err(Error::DuplicateLabel(id.to_owned()));
        }
        Ok(self.intern(id))
    }

    fn intern(&mut self, id: &str) -> usize {
        if let Some(&i) = self.graph.index.get(id) {
            return i;
        }
        let i = self.graph.nodes.len();
        self.graph.nodes.push(NodeRecord::new(id));
        self.graph.index.insert(id.to_owned(), i);
        i
    }

    fn edge(&mut self, source: usize, target: usize, weight: f64) {
        match self.pairs.get(&(source, target)) {
            Some(&k) => self.graph.edges[k].weight += weight,
            None => {
                self.pairs.insert((source, target), self.graph.edges.len());
                self.graph.edges.push(Edge {
                    source,
                    target,
                    weight,
                });
                self.graph.nodes[source].degree += 1;
                self.graph.nodes[target].degree += 1;
            }
        }
    }

    fn finish(self) -> Graph {
        self.graph
    }
}

fn csv_reader(text: &str, has_headers: bool) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .has_headers(has_headers)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes())
}

fn record_line(record: &csv::StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line())
}

/// Parse an edge-list CSV with header `source,target[,weight]`.
///
/// Nodes are registered in first-appearance order; a missing weight column
/// means weight 1. Repeated `(source, target)` pairs are merged by summing
/// their weights. The resulting graph is directed.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut reader = csv_reader(text, true);
    let headers = reader.headers()?.clone();
    if headers.is_empty() || headers.iter().all(str::is_empty) {
        return Err(Error::MissingHeader);
    }
    let (mut src_col, mut dst_col, mut w_col) = (None, None, None);
    for (i, h) in headers.iter().enumerate() {
        match h.to_ascii_lowercase().as_str() {
            "source" if src_col.is_none() => src_col = Some(i),
            "target" if dst_col.is_none() => dst_col = Some(i),
            "weight" if w_col.is_none() => w_col = Some(i),
            _ => return Err(Error::UnknownHeader(h.to_owned())),
        }
    }
    let (Some(src_col), Some(dst_col)) = (src_col, dst_col) else {
        return Err(Error::MissingHeader);
    };
    let width = headers.len();

    let mut builder = Builder::new(true);
    for record in reader.records() {
        let record = record?;
        let line = record_line(&record);
        if record.len() != width {
            return Err(Error::MalformedRow {
                line,
                message: format!("expected {width} fields, found {}", record.len()),
            });
        }
        let source = &record[src_col];
        let target = &record[dst_col];
        if source.is_empty() || target.is_empty() {
            return Err(Error::MalformedRow {
                line,
                message: "empty node id".into(),
            });
        }
        let weight = match w_col {
            Some(c) => {
                let raw = &record[c];
                let w: f64 = raw.parse().map_err(|_| Error::MalformedRow {
                    line,
                    message: format!("weight {raw:?} is not a number"),
                })?;
                if w < 0.0 {
                    return Err(Error::NegativeWeight { line });
                }
                if !w.is_finite() {
                    return Err(Error::MalformedRow {
                        line,
                        message: format!("weight {raw:?} is not finite"),
                    });
                }
                w
            }
            None => 1.0,
        };
        let s = builder.intern(source);
        let t = builder.intern(target);
        builder.edge(s, t, weight);
    }
    Ok(builder.finish())
}

/// Parse a square weight matrix whose first row and column hold node labels.
///
/// Entry `(i, j) > 0` becomes the directed edge `i -> j`; the diagonal is
/// ignored. Zero entries produce no edge. Thresholding, if wanted, belongs
/// upstream.
pub fn parse_weight_matrix(text: &str) -> Result<Graph> {
    let mut reader = csv_reader(text, false);
    let mut rows: Vec<csv::StringRecord> = Vec::new();
    for record in reader.records() {
        let record = record?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        rows.push(record);
    }
    let Some(header) = rows.first() else {
        return Err(Error::MissingHeader);
    };
    let corner = header.get(0).unwrap_or("");
    if !(corner.is_empty() || corner.eq_ignore_ascii_case("id")) {
        return Err(Error::UnknownHeader(corner.to_owned()));
    }
    let labels: Vec<&str> = header.iter().skip(1).collect();
    let n = labels.len();
    let data_rows = rows.len() - 1;
    if data_rows != n || rows.iter().skip(1).any(|r| r.len() != n + 1) {
        let cols = rows
            .iter()
            .skip(1)
            .map(|r| r.len().saturating_sub(1))
            .find(|&c| c != n)
            .unwrap_or(n);
        return Err(Error::NonSquare {
            rows: data_rows,
            cols,
        });
    }

    let mut builder = Builder::new(true);
    for label in &labels {
        builder.node(label)?;
    }
    for (i, row) in rows.iter().skip(1).enumerate() {
        if row[0] != *labels[i] {
            return Err(Error::MalformedRow {
                line: record_line(row),
                message: format!(
                    "row label {:?} does not match column label {:?}",
                    &row[0], labels[i]
                ),
            });
        }
        for j in 0..n {
            let cell = &row[j + 1];
            let value: f64 = if cell.is_empty() {
                0.0
            } else {
                cell.parse().map_err(|_| Error::NonNumeric {
                    row: i + 1,
                    col: j + 1,
                    value: cell.to_owned(),
                })?
            };
            if !value.is_finite() {
                return Err(Error::NonNumeric {
                    row: i + 1,
                    col: j + 1,
                    value: cell.to_owned(),
                });
            }
            if i == j {
                continue;
            }
            if value < 0.0 {
                return Err(Error::NegativeEntry {
                    row: i + 1,
                    col: j + 1,
                });
            }
            if value > 0.0 {
                builder.edge(i, j, value);
            }
        }
    }
    Ok(builder.finish())
}

/// Attach attributes from a CSV with header `id[,label],attr...`.
///
/// Empty cells leave the attribute unset. A `label` column replaces the
/// display label.
pub fn parse_node_attributes(text: &str, mut graph: Graph) -> Result<Graph> {
    if text.trim().is_empty() {
        return Ok(graph);
    }
    let mut reader = csv_reader(text, true);
    let headers = reader.headers()?.clone();
    let Some(id_col) = headers.iter().position(|h| h == "id") else {
        return Err(Error::MissingHeader);
    };
    for record in reader.records() {
        let record = record?;
        let line = record_line(&record);
        if record.len() != headers.len() {
            return Err(Error::MalformedRow {
                line,
                message: format!("expected {} fields, found {}", headers.len(), record.len()),
            });
        }
        let id = &record[id_col];
        let idx = graph
            .index_of(id)
            .ok_or_else(|| Error::UnknownNode(id.to_owned()))?;
        let node = &mut graph.nodes[idx];
        for (col, (name, value)) in headers.iter().zip(record.iter()).enumerate() {
            if col == id_col || value.is_empty() {
                continue;
            }
            if name == "label" {
                node.label = value.to_owned();
            } else {
                node.attributes.insert(name.to_owned(), value.to_owned());
            }
        }
    }
    Ok(graph)
}
