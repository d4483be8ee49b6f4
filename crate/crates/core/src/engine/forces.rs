//! Repulsion, attraction and gravity.
//!
//! Repulsion is exact pairwise. Each node's row is accumulated over the other
//! nodes in index order, so the result does not depend on how rows are split
//! across workers.

use rayon::prelude::*;

use crate::engine::params::Fa2Params;
use crate::graph::Graph;
use crate::layout::Point;

/// Lower bound on the distance used in the repulsion denominator.
pub const MIN_DISTANCE: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq)]
pub struct ForceField {
    pub repulsion: Vec<Point>,
    pub attraction: Vec<Point>,
    pub gravity: Vec<Point>,
    pub net: Vec<Point>,
}

impl ForceField {
    pub fn compute(graph: &Graph, positions: &[Point], params: &Fa2Params, parallel: bool) -> Self {
        let masses = masses(graph);
        let repulsion = repulsion(&masses, positions, params.scaling, parallel);
        let attraction = attraction(graph, positions, AttractionMode::from_params(params));
        let gravity = if params.strong_gravity {
            gravity(graph, positions, params.gravity, params.center)
        } else {
            vec![[0.0, 0.0]; positions.len()]
        };
        let net = repulsion
            .iter()
            .zip(&attraction)
            .zip(&gravity)
            .map(|((r, a), g)| [r[0] + a[0] + g[0], r[1] + a[1] + g[1]])
            .collect();
        Self {
            repulsion,
            attraction,
            gravity,
            net,
        }
    }
}

fn masses(graph: &Graph) -> Vec<f64> {
    graph
        .nodes()
        .iter()
        .map(|n| n.degree as f64 + 1.0)
        .collect()
}

/// Pairwise repulsion `S (deg(a)+1)(deg(b)+1) / d`, pushing each pair apart.
pub fn repulsion_forces(graph: &Graph, positions: &[Point], scaling: f64) -> Vec<Point> {
    repulsion(&masses(graph), positions, scaling, true)
}

fn repulsion(masses: &[f64], positions: &[Point], scaling: f64, parallel: bool) -> Vec<Point> {
    let row = |i: usize| -> Point {
        let [px, py] = positions[i];
        let mi = masses[i];
        let (mut fx, mut fy) = (0.0, 0.0);
        for (j, (q, &mj)) in positions.iter().zip(masses).enumerate() {
            if j == i {
                continue;
            }
            let dx = px - q[0];
            let dy = py - q[1];
            let d = (dx * dx + dy * dy).sqrt();
            if d == 0.0 {
                continue;
            }
            // magnitude S mi mj / max(d, MIN_DISTANCE) along (dx, dy) / d;
            // (mi * mj) keeps the pair factor bit-identical from both sides.
            let f = scaling * (mi * mj) / (d * d.max(MIN_DISTANCE));
            fx += dx * f;
            fy += dy * f;
        }
        [fx, fy]
    };
    if parallel {
        (0..positions.len()).into_par_iter().map(row).collect()
    } else {
        (0..positions.len()).map(row).collect()
    }
}

#[derive(Debug, Clone, Copy)]
struct AttractionMode {
    linlog: bool,
    use_weight: bool,
}

impl AttractionMode {
    fn from_params(p: &Fa2Params) -> Self {
        let weighted = p.edge_weight_influence == 1;
        Self {
            linlog: p.linlog,
            use_weight: weighted && (!p.linlog || p.linlog_weighted),
        }
    }
}

/// Per-edge attraction pulling endpoints together: `w^δ d` in the default
/// model, `log(1 + d)` in LinLog mode. Self-loops contribute nothing.
pub fn attraction_forces(
    graph: &Graph,
    positions: &[Point],
    edge_weight_influence: u8,
    linlog: bool,
) -> Vec<Point> {
    let mode = AttractionMode {
        linlog,
        use_weight: edge_weight_influence == 1 && !linlog,
    };
    attraction(graph, positions, mode)
}

fn attraction(graph: &Graph, positions: &[Point], mode: AttractionMode) -> Vec<Point> {
    let mut out = vec![[0.0, 0.0]; positions.len()];
    for e in graph.edges() {
        if e.is_self_loop() {
            continue;
        }
        let (s, t) = (e.source, e.target);
        let dx = positions[t][0] - positions[s][0];
        let dy = positions[t][1] - positions[s][1];
        let w = if mode.use_weight { e.weight } else { 1.0 };
        // factor * (dx, dy) has magnitude F_a along the unit vector s -> t
        let factor = if mode.linlog {
            let d = (dx * dx + dy * dy).sqrt();
            if d == 0.0 {
                continue;
            }
            w * d.ln_1p() / d
        } else {
            w
        };
        let (fx, fy) = (dx * factor, dy * factor);
        out[s][0] += fx;
        out[s][1] += fy;
        out[t][0] -= fx;
        out[t][1] -= fy;
    }
    out
}

/// Strong gravity: magnitude `k_g log(deg + 1)` toward `center`, independent
/// of distance. When `enabled` is false the result is all zeros.
pub fn gravity_forces(
    graph: &Graph,
    positions: &[Point],
    k_g: f64,
    center: Point,
    enabled: bool,
) -> Vec<Point> {
    if enabled {
        gravity(graph, positions, k_g, center)
    } else {
        vec![[0.0, 0.0]; positions.len()]
    }
}

fn gravity(graph: &Graph, positions: &[Point], k_g: f64, center: Point) -> Vec<Point> {
    graph
        .nodes()
        .iter()
        .zip(positions)
        .map(|(node, p)| {
            let dx = center[0] - p[0];
            let dy = center[1] - p[1];
            let d = (dx * dx + dy * dy).sqrt();
            if d == 0.0 {
                return [0.0, 0.0];
            }
            let f = k_g * (node.degree as f64).ln_1p() / d;
            [dx * f, dy * f]
        })
        .collect()
}
