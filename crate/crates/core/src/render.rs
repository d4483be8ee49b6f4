//! Standalone SVG rendering of a styled layout.
//!
//! The layout's bounding box is fitted into the canvas minus margins with
//! aspect ratio preserved, and layout +y points up on screen. Edges are
//! drawn first, then nodes, then labels. No axes, frame or background.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::layout::{LayoutMatrix, Point};
use crate::style::{Color, StyleMap};

/// Rendering knobs. Defaults follow the `easyplot` conventions: label size
/// 3, vertex size 3, arrow size 0.2, black labels, 2000×2000 canvas.
#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    /// Label font size in `em`.
    pub label_size: f64,
    /// Node size used when the style map has none for a node.
    pub vertex_size: f64,
    pub edge_arrow_size: f64,
    pub vertex_label_color: Color,
    /// Overrides every edge color.
    pub edge_color: Option<Color>,
    pub width: u32,
    pub height: u32,
    /// Fraction of each canvas dimension left empty on each side.
    pub margin: f64,
    /// Node radius in pixels is `size * min(width, height) / size_divisor`.
    pub size_divisor: f64,
    pub edge_width: f64,
    pub show_labels: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        Self {
            label_size: 3.0,
            vertex_size: 3.0,
            edge_arrow_size: 0.2,
            vertex_label_color: Color::black(),
            edge_color: None,
            width: 2000,
            height: 2000,
            margin: 0.05,
            size_divisor: 200.0,
            edge_width: 2.0,
            show_labels: true,
        }
    }
}

impl RenderSpec {
    fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::InvalidParam("canvas must be non-empty".into()));
        }
        let sizes = [
            self.label_size,
            self.vertex_size,
            self.edge_arrow_size,
            self.edge_width,
        ];
        if sizes.iter().any(|s| !(*s >= 0.0 && s.is_finite())) {
            return Err(Error::InvalidParam("sizes must be non-negative".into()));
        }
        if !(0.0..0.5).contains(&self.margin) {
            return Err(Error::InvalidParam(format!(
                "margin {} must lie in [0, 0.5)",
                self.margin
            )));
        }
        if self.size_divisor.is_nan() || self.size_divisor <= 0.0 {
            return Err(Error::InvalidParam("size divisor must be positive".into()));
        }
        Ok(())
    }

    /// Pixels per unit of vertex size.
    pub fn size_unit(&self) -> f64 {
        f64::from(self.width.min(self.height)) / self.size_divisor
    }
}

/// Layout-space rectangle mapped onto the canvas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub min: Point,
    pub max: Point,
}

impl Viewport {
    pub fn of(layout: &LayoutMatrix) -> Option<Self> {
        layout.bounds().map(|(min, max)| Self { min, max })
    }

    pub fn union(self, other: Self) -> Self {
        Self {
            min: [self.min[0].min(other.min[0]), self.min[1].min(other.min[1])],
            max: [self.max[0].max(other.max[0]), self.max[1].max(other.max[1])],
        }
    }
}

/// Uniform scale plus translation from layout to screen coordinates, with y
/// flipped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitTransform {
    scale: f64,
    center: Point,
    screen_center: Point,
}

impl FitTransform {
    pub fn new(viewport: Viewport, spec: &RenderSpec) -> Self {
        let (w, h) = (f64::from(spec.width), f64::from(spec.height));
        let avail_w = w * (1.0 - 2.0 * spec.margin);
        let avail_h = h * (1.0 - 2.0 * spec.margin);
        let bw = viewport.max[0] - viewport.min[0];
        let bh = viewport.max[1] - viewport.min[1];
        let scale = match (bw > 0.0, bh > 0.0) {
            (true, true) => (avail_w / bw).min(avail_h / bh),
            (true, false) => avail_w / bw,
            (false, true) => avail_h / bh,
            (false, false) => 1.0,
        };
        Self {
            scale,
            center: [
                (viewport.min[0] + viewport.max[0]) / 2.0,
                (viewport.min[1] + viewport.max[1]) / 2.0,
            ],
            screen_center: [w / 2.0, h / 2.0],
        }
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn apply(&self, p: Point) -> Point {
        [
            self.screen_center[0] + (p[0] - self.center[0]) * self.scale,
            self.screen_center[1] - (p[1] - self.center[1]) * self.scale,
        ]
    }
}

pub fn render_svg(
    graph: &Graph,
    layout: &LayoutMatrix,
    style: &StyleMap,
    spec: &RenderSpec,
) -> Result<String> {
    let viewport = Viewport::of(layout).unwrap_or(Viewport {
        min: [0.0, 0.0],
        max: [0.0, 0.0],
    });
    render_svg_in(graph, layout, style, spec, viewport)
}

/// Render with an explicit viewport instead of the layout's own bounds.
pub fn render_svg_in(
    graph: &Graph,
    layout: &LayoutMatrix,
    style: &StyleMap,
    spec: &RenderSpec,
    viewport: Viewport,
) -> Result<String> {
    spec.validate()?;
    if layout.len() != graph.node_count() {
        return Err(Error::RowCountMismatch {
            expected: graph.node_count(),
            actual: layout.len(),
        });
    }
    let node_colors = graph
        .ids()
        .map(|id| {
            style
                .node_colors
                .get(id)
                .ok_or_else(|| Error::MissingColor(id.to_owned()))
        })
        .collect::<Result<Vec<_>>>()?;
    let unit = spec.size_unit();
    let radii: Vec<f64> = graph
        .ids()
        .map(|id| {
            style
                .node_sizes
                .get(id)
                .copied()
                .unwrap_or(spec.vertex_size)
                * unit
        })
        .collect();
    let fit = FitTransform::new(viewport, spec);
    let screen: Vec<Point> = layout.iter().map(|&p| fit.apply(p)).collect();

    let mut svg = String::new();
    // fmt::Write on String cannot fail
    let _ = writeln!(
        svg,
        r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#
    );
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = spec.width,
        h = spec.height
    );

    let _ = writeln!(
        svg,
        r#"<g class="edges" fill="none" stroke-width="{}">"#,
        num(spec.edge_width)
    );
    let arrow_len = spec.edge_arrow_size * 10.0 * unit;
    for (i, e) in graph.edges().iter().enumerate() {
        let color = spec
            .edge_color
            .as_ref()
            .or_else(|| style.edge_colors.get(&i))
            .unwrap_or(node_colors[e.source]);
        let (a, b) = (screen[e.source], screen[e.target]);
        if e.is_self_loop() {
            let r = radii[e.source].max(1.0);
            let _ = writeln!(
                svg,
                r#"<path class="edge" d="M{} {} C{} {} {} {} {} {}" stroke="{color}"/>"#,
                num(a[0]),
                num(a[1] - r),
                num(a[0] - 2.0 * r),
                num(a[1] - 3.0 * r),
                num(a[0] + 2.0 * r),
                num(a[1] - 3.0 * r),
                num(a[0]),
                num(a[1] - r),
            );
            continue;
        }
        let dx = b[0] - a[0];
        let dy = b[1] - a[1];
        let len = dx.hypot(dy);
        let arrow = graph.is_directed() && arrow_len > 0.0 && len > radii[e.target] + arrow_len;
        let end = if arrow {
            let (ux, uy) = (dx / len, dy / len);
            let tip = [b[0] - ux * radii[e.target], b[1] - uy * radii[e.target]];
            let base = [tip[0] - ux * arrow_len, tip[1] - uy * arrow_len];
            let half = arrow_len * 0.5;
            let _ = writeln!(
                svg,
                r#"<polygon class="arrow" points="{},{} {},{} {},{}" fill="{color}"/>"#,
                num(tip[0]),
                num(tip[1]),
                num(base[0] - uy * half),
                num(base[1] + ux * half),
                num(base[0] + uy * half),
                num(base[1] - ux * half),
            );
            base
        } else {
            b
        };
        let _ = writeln!(
            svg,
            r#"<path class="edge" d="M{} {} L{} {}" stroke="{color}"/>"#,
            num(a[0]),
            num(a[1]),
            num(end[0]),
            num(end[1])
        );
    }
    svg.push_str("</g>\n<g class=\"nodes\">\n");
    for ((p, r), color) in screen.iter().zip(&radii).zip(&node_colors) {
        let _ = writeln!(
            svg,
            r#"<circle class="node" cx="{}" cy="{}" r="{}" fill="{color}"/>"#,
            num(p[0]),
            num(p[1]),
            num(*r)
        );
    }
    svg.push_str("</g>\n");
    if spec.show_labels {
        let _ = writeln!(
            svg,
            r#"<g class="labels" font-family="sans-serif" font-size="{}em" fill="{}" text-anchor="middle" dominant-baseline="central">"#,
            num(spec.label_size),
            spec.vertex_label_color
        );
        for (node, p) in graph.nodes().iter().zip(&screen) {
            let _ = writeln!(
                svg,
                r#"<text x="{}" y="{}">{}</text>"#,
                num(p[0]),
                num(p[1]),
                escape(&node.label)
            );
        }
        svg.push_str("</g>\n");
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// One SVG per snapshot, all sharing the union bounding box of every
/// snapshot so motion between frames is visible.
pub fn render_snapshots(
    graph: &Graph,
    snapshots: &[(usize, LayoutMatrix)],
    style: &StyleMap,
    spec: &RenderSpec,
) -> Result<Vec<(usize, String)>> {
    let Some(viewport) = snapshots
        .iter()
        .filter_map(|(_, l)| Viewport::of(l))
        .reduce(Viewport::union)
    else {
        return snapshots
            .iter()
            .map(|(k, l)| render_svg(graph, l, style, spec).map(|s| (*k, s)))
            .collect();
    };
    snapshots
        .iter()
        .map(|(k, l)| render_svg_in(graph, l, style, spec, viewport).map(|s| (*k, s)))
        .collect()
}

/// `basename_iter<k>.svg`
pub fn snapshot_file_name(basename: &str, iteration: usize) -> String {
    format!("{basename}_iter{iteration}.svg")
}

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    match s.trim_end_matches('0').trim_end_matches('.') {
        "-0" | "" => "0".into(),
        t => t.to_owned(),
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}
