//! Straightforward double-loop evaluation of the ForceAtlas2 forces, written
//! from the formulas without sharing code with the engine.
//!
//! Repulsion:  S (deg a + 1)(deg b + 1) / d, along the line between a and b.
//! Attraction: w^δ d (default) or ln(1 + d) (LinLog), toward the other end.
//! Gravity:    k_g ln(deg + 1), toward the center.

pub struct OracleInput<'a> {
    pub n: usize,
    pub edges: &'a [(usize, usize, f64)],
    pub positions: &'a [[f64; 2]],
    pub scaling: f64,
    pub delta: u8,
    pub linlog: bool,
    pub gravity: Option<(f64, [f64; 2])>,
}

pub fn degrees(n: usize, edges: &[(usize, usize, f64)]) -> Vec<f64> {
    let mut deg = vec![0.0; n];
    for &(s, t, _) in edges {
        deg[s] += 1.0;
        deg[t] += 1.0;
    }
    deg
}

fn unit(from: [f64; 2], to: [f64; 2]) -> Option<[f64; 2]> {
    let dx = to[0] - from[0];
    let dy = to[1] - from[1];
    let d = (dx * dx + dy * dy).sqrt();
    (d > 0.0).then(|| [dx / d, dy / d])
}

/// Net force per node together with the gross force (sum of the magnitudes
/// of every contribution) on that node.
pub fn net_forces(inp: &OracleInput) -> (Vec<[f64; 2]>, Vec<f64>) {
    let deg = degrees(inp.n, inp.edges);
    let p = inp.positions;
    let mut f = vec![[0.0f64; 2]; inp.n];
    let mut gross = vec![0.0f64; inp.n];
    for a in 0..inp.n {
        for b in 0..inp.n {
            if a >= b {
                continue;
            }
            let Some(u) = unit(p[b], p[a]) else { continue };
            let d = ((p[a][0] - p[b][0]).powi(2) + (p[a][1] - p[b][1]).powi(2))
                .sqrt()
                .max(1e-4);
            let mag = inp.scaling * (deg[a] + 1.0) * (deg[b] + 1.0) / d;
            gross[a] += mag;
            gross[b] += mag;
            f[a][0] += mag * u[0];
            f[a][1] += mag * u[1];
            f[b][0] -= mag * u[0];
            f[b][1] -= mag * u[1];
        }
    }
    for &(s, t, w) in inp.edges {
        if s == t {
            continue;
        }
        let Some(u) = unit(p[s], p[t]) else { continue };
        let d = ((p[s][0] - p[t][0]).powi(2) + (p[s][1] - p[t][1]).powi(2)).sqrt();
        let mag = if inp.linlog {
            (1.0 + d).ln()
        } else {
            w.powi(i32::from(inp.delta)) * d
        };
        gross[s] += mag;
        gross[t] += mag;
        f[s][0] += mag * u[0];
        f[s][1] += mag * u[1];
        f[t][0] -= mag * u[0];
        f[t][1] -= mag * u[1];
    }
    if let Some((kg, c)) = inp.gravity {
        for i in 0..inp.n {
            if let Some(u) = unit(p[i], c) {
                let mag = kg * (deg[i] + 1.0).ln();
                gross[i] += mag;
                f[i][0] += mag * u[0];
                f[i][1] += mag * u[1];
            }
        }
    }
    (f, gross)
}
