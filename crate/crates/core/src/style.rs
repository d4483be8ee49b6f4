//! Node colors, edge colors and node sizes derived from attributes.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A `#rrggbb` sRGB color, stored lowercase.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Color(String);

impl Color {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn black() -> Self {
        Self("#000000".into())
    }

    pub fn fallback_gray() -> Self {
        Self("#808080".into())
    }
}

impl FromStr for Color {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let ok =
            s.len() == 7 && s.starts_with('#') && s[1..].bytes().all(|b| b.is_ascii_hexdigit());
        if ok {
            Ok(Self(s.to_ascii_lowercase()))
        } else {
            Err(Error::InvalidColor(s.to_owned()))
        }
    }
}

impl TryFrom<String> for Color {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Color> for String {
    fn from(c: Color) -> String {
        c.0
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Ordered, nonempty list of colors.
#[derive(Debug, Clone, PartialEq)]
pub struct Palette(Vec<Color>);

impl Palette {
    pub fn new(colors: Vec<Color>) -> Result<Self> {
        if colors.is_empty() {
            return Err(Error::InvalidParam("palette must not be empty".into()));
        }
        Ok(Self(colors))
    }

    pub fn colors(&self) -> &[Color] {
        &self.0
    }

    /// The `i`-th color, cycling past the end.
    pub fn get(&self, i: usize) -> &Color {
        &self.0[i % self.0.len()]
    }
}

impl Default for Palette {
    /// Continent scheme: blue, purple, pink, orange, green, red (CSS named
    /// color values).
    fn default() -> Self {
        Self(
            [
                "#0000ff", "#800080", "#ffc0cb", "#ffa500", "#008000", "#ff0000",
            ]
            .into_iter()
            .map(|c| Color(c.into()))
            .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct StyleMap {
    pub node_colors: BTreeMap<String, Color>,
    /// Keyed by edge index in graph order.
    pub edge_colors: BTreeMap<usize, Color>,
    pub node_sizes: BTreeMap<String, f64>,
}

impl StyleMap {
    /// Every node gets `color`.
    pub fn uniform(graph: &Graph, color: &Color) -> Self {
        Self {
            node_colors: graph
                .ids()
                .map(|id| (id.to_owned(), color.clone()))
                .collect(),
            ..Self::default()
        }
    }
}

/// Color nodes by the distinct values of `attribute`, binding values to
/// palette colors in first-appearance order.
pub fn assign_node_colors(graph: &Graph, attribute: &str, palette: &Palette) -> Result<StyleMap> {
    assign_node_colors_with(
        graph,
        attribute,
        palette,
        &BTreeMap::new(),
        &Color::fallback_gray(),
    )
}

/// Like [`assign_node_colors`], with explicit value colors taking precedence.
/// Values absent from `overrides` take palette colors in first-appearance
/// order; nodes lacking the attribute get `fallback`.
pub fn assign_node_colors_with(
    graph: &Graph,
    attribute: &str,
    palette: &Palette,
    overrides: &BTreeMap<String, Color>,
    fallback: &Color,
) -> Result<StyleMap> {
    if !graph
        .nodes()
        .iter()
        .any(|n| n.attributes.contains_key(attribute))
    {
        return Err(Error::MissingAttribute(attribute.to_owned()));
    }
    let mut bound: HashMap<&str, Color> = HashMap::new();
    let mut next = 0;
    let mut node_colors = BTreeMap::new();
    for node in graph.nodes() {
        let color = match node.attributes.get(attribute) {
            None => fallback.clone(),
            Some(value) => bound
                .entry(value.as_str())
                .or_insert_with(|| match overrides.get(value) {
                    Some(c) => c.clone(),
                    None => {
                        next += 1;
                        palette.get(next - 1).clone()
                    }
                })
                .clone(),
        };
        node_colors.insert(node.id.clone(), color);
    }
    Ok(StyleMap {
        node_colors,
        ..StyleMap::default()
    })
}

/// Each edge takes its source node's color.
pub fn assign_edge_colors(graph: &Graph, style: &StyleMap) -> Result<StyleMap> {
    let mut out = style.clone();
    out.edge_colors.clear();
    for (i, e) in graph.edges().iter().enumerate() {
        let id = &graph.nodes()[e.source].id;
        let color = style
            .node_colors
            .get(id)
            .ok_or_else(|| Error::MissingColor(id.clone()))?;
        out.edge_colors.insert(i, color.clone());
    }
    Ok(out)
}

/// Linear rescale of a numeric attribute onto `[min_size, max_size]`. A
/// constant attribute puts every node at `min_size`.
pub fn size_from_attribute(
    graph: &Graph,
    attribute: &str,
    min_size: f64,
    max_size: f64,
) -> Result<StyleMap> {
    if !(min_size >= 0.0 && min_size <= max_size && max_size.is_finite()) {
        return Err(Error::InvalidParam(format!(
            "size range [{min_size}, {max_size}] is invalid"
        )));
    }
    let mut values = Vec::with_capacity(graph.node_count());
    for node in graph.nodes() {
        let raw = node
            .attributes
            .get(attribute)
            .map(String::as_str)
            .unwrap_or("");
        let value = raw
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite() && *v >= 0.0)
            .ok_or_else(|| Error::NonNumericAttribute {
                node: node.id.clone(),
                attribute: attribute.to_owned(),
                value: raw.to_owned(),
            })?;
        values.push(value);
    }
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let node_sizes = graph
        .ids()
        .zip(&values)
        .map(|(id, &v)| {
            let size = if hi > lo {
                min_size + (v - lo) / (hi - lo) * (max_size - min_size)
            } else {
                min_size
            };
            (id.to_owned(), size)
        })
        .collect();
    Ok(StyleMap {
        node_sizes,
        ..StyleMap::default()
    })
}

/// JSON style file: `{"attribute": ..., "mapping": {value: "#rrggbb"}, "fallback": "#808080"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StyleFile {
    pub attribute: String,
    #[serde(default)]
    pub mapping: BTreeMap<String, Color>,
    #[serde(default = "Color::fallback_gray")]
    pub fallback: Color,
    /// Replaces the default palette for values without a mapping.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub palette: Option<Vec<Color>>,
}

impl StyleFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Node colors plus origin-based edge colors.
    pub fn apply(&self, graph: &Graph) -> Result<StyleMap> {
        let palette = match &self.palette {
            Some(colors) => Palette::new(colors.clone())?,
            None => Palette::default(),
        };
        let nodes = assign_node_colors_with(
            graph,
            &self.attribute,
            &palette,
            &self.mapping,
            &self.fallback,
        )?;
        assign_edge_colors(graph, &nodes)
    }
}
