//! Position matrices and the layout TSV format.

use std::collections::HashMap;
use std::ops::{Deref, DerefMut};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub type Point = [f64; 2];

/// N×2 position matrix; row `i` belongs to node `i` of the graph.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LayoutMatrix(pub Vec<Point>);

impl LayoutMatrix {
    pub fn new(rows: Vec<Point>) -> Self {
        Self(rows)
    }

    pub fn into_inner(self) -> Vec<Point> {
        self.0
    }

    /// Mean of all rows, `None` for an empty layout.
    pub fn centroid(&self) -> Option<Point> {
        if self.0.is_empty() {
            return None;
        }
        let n = self.0.len() as f64;
        let (sx, sy) = self
            .0
            .iter()
            .fold((0.0, 0.0), |(x, y), p| (x + p[0], y + p[1]));
        Some([sx / n, sy / n])
    }

    /// `(min, max)` corners of the axis-aligned bounding box.
    pub fn bounds(&self) -> Option<(Point, Point)> {
        let first = *self.0.first()?;
        Some(self.0.iter().fold((first, first), |(lo, hi), p| {
            (
                [lo[0].min(p[0]), lo[1].min(p[1])],
                [hi[0].max(p[0]), hi[1].max(p[1])],
            )
        }))
    }

    /// Largest pairwise distance.
    pub fn diameter(&self) -> f64 {
        let mut best = 0.0f64;
        for (i, a) in self.0.iter().enumerate() {
            for b in &self.0[i + 1..] {
                best = best.max(distance(*a, *b));
            }
        }
        best
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|p| p[0].is_finite() && p[1].is_finite())
    }
}

impl Deref for LayoutMatrix {
    type Target = [Point];

    fn deref(&self) -> &[Point] {
        &self.0
    }
}

impl DerefMut for LayoutMatrix {
    fn deref_mut(&mut self) -> &mut [Point] {
        &mut self.0
    }
}

impl From<Vec<Point>> for LayoutMatrix {
    fn from(rows: Vec<Point>) -> Self {
        Self(rows)
    }
}

pub fn distance(a: Point, b: Point) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Rows of a layout TSV, in file order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LayoutRows(pub Vec<(String, Point)>);

impl LayoutRows {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn lookup(&self) -> HashMap<&str, Point> {
        self.0.iter().map(|(id, p)| (id.as_str(), *p)).collect()
    }

    pub fn positions(&self) -> LayoutMatrix {
        LayoutMatrix(self.0.iter().map(|(_, p)| *p).collect())
    }

    /// Same ids in the same order with new positions.
    pub fn with_positions(&self, layout: &LayoutMatrix) -> Result<Self> {
        if layout.len() != self.len() {
            return Err(Error::RowCountMismatch {
                expected: self.len(),
                actual: layout.len(),
            });
        }
        Ok(Self(
            self.0
                .iter()
                .zip(layout.iter())
                .map(|((id, _), p)| (id.clone(), *p))
                .collect(),
        ))
    }

    /// Rows in their current order, in the same format as [`write_layout_tsv`].
    pub fn to_tsv(&self) -> String {
        tsv_rows(self.0.iter().map(|(id, p)| (id.as_str(), *p)))
    }

    /// Order rows to match `graph`. Every graph node needs exactly one row
    /// and every row must name a graph node.
    pub fn align_to(&self, graph: &Graph) -> Result<LayoutMatrix> {
        let by_id = self.lookup();
        let mut missing = Vec::new();
        let mut rows = Vec::with_capacity(graph.node_count());
        for id in graph.ids() {
            match by_id.get(id) {
                Some(p) => rows.push(*p),
                None => missing.push(id.to_owned()),
            }
        }
        let extra: Vec<String> = self
            .0
            .iter()
            .filter(|(id, _)| graph.index_of(id).is_none())
            .map(|(id, _)| id.clone())
            .collect();
        if !missing.is_empty() || !extra.is_empty() || self.len() != graph.node_count() {
            return Err(Error::LayoutMismatch {
                expected: graph.node_count(),
                actual: self.len(),
                missing,
                extra,
            });
        }
        Ok(LayoutMatrix(rows))
    }
}

/// Parse `node_id<TAB>x<TAB>y` rows. Blank lines and `#` comments are skipped.
pub fn read_layout_tsv(text: &str) -> Result<LayoutRows> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line_no = lineno as u64 + 1;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(Error::MalformedRow {
                line: line_no,
                message: format!("expected 3 tab-separated fields, found {}", fields.len()),
            });
        }
        let coord = |s: &str| -> Result<f64> {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::MalformedRow {
                    line: line_no,
                    message: format!("{s:?} is not a finite number"),
                })
        };
        rows.push((fields[0].to_owned(), [coord(fields[1])?, coord(fields[2])?]));
    }
    Ok(LayoutRows(rows))
}

/// Write one row per node in graph order with 17 significant digits.
pub fn write_layout_tsv(graph: &Graph, layout: &LayoutMatrix) -> Result<String> {
    if graph.node_count() != layout.len() {
        return Err(Error::RowCountMismatch {
            expected: graph.node_count(),
            actual: layout.len(),
        });
    }
    Ok(tsv_rows(graph.ids().zip(layout.iter().copied())))
}

fn tsv_rows<'a>(rows: impl ExactSizeIterator<Item = (&'a str, Point)>) -> String {
    let mut out = String::with_capacity(rows.len() * 56);
    for (id, p) in rows {
        out.push_str(&format!("{id}\t{:.16e}\t{:.16e}\n", p[0], p[1]));
    }
    out
}
