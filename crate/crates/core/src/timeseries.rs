//! Warm-start chaining of layouts across a sequence of periods.
//!
//! Each period after the first starts from the previous period's final
//! layout, matched by node id. Nodes new to a period are placed randomly;
//! nodes that left are dropped.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::engine::{init_positions, run_layout, Fa2Params, LayoutRun};
use crate::error::{Error, Result};
use crate::graph::{parse_edge_list, parse_node_attributes, parse_weight_matrix, Graph};
use crate::layout::{distance, LayoutMatrix, LayoutRows, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphFormat {
    #[default]
    Edgelist,
    Matrix,
}

impl GraphFormat {
    pub fn parse(self, text: &str) -> Result<Graph> {
        match self {
            GraphFormat::Edgelist => parse_edge_list(text),
            GraphFormat::Matrix => parse_weight_matrix(text),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeriodEntry {
    pub label: String,
    pub graph: PathBuf,
    #[serde(default)]
    pub format: GraphFormat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attributes: Option<PathBuf>,
}

/// `{"periods":[{"label":..,"graph":..}, ..],"params":{..},"chain":true}`.
/// Relative paths resolve against the manifest's directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub periods: Vec<PeriodEntry>,
    #[serde(default)]
    pub params: Fa2Params,
    #[serde(default = "default_chain")]
    pub chain: bool,
}

fn default_chain() -> bool {
    true
}

impl Manifest {
    pub fn from_json(text: &str) -> Result<Self> {
        let m: Manifest = serde_json::from_str(text)?;
        if m.periods.is_empty() {
            return Err(Error::InvalidParam("manifest lists no periods".into()));
        }
        m.params.validate()?;
        Ok(m)
    }

    /// Read every period's graph (and attributes), resolving paths against
    /// `base_dir`. Errors carry the period label.
    pub fn load_graphs(&self, base_dir: &Path) -> Result<Vec<(String, Graph)>> {
        self.periods
            .iter()
            .map(|p| {
                let load = || -> Result<Graph> {
                    let graph = p.format.parse(&read(&base_dir.join(&p.graph))?)?;
                    match &p.attributes {
                        Some(a) => parse_node_attributes(&read(&base_dir.join(a))?, graph),
                        None => Ok(graph),
                    }
                };
                load()
                    .map(|g| (p.label.clone(), g))
                    .map_err(|e| Error::Period {
                        label: p.label.clone(),
                        source: Box::new(e),
                    })
            })
            .collect()
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::File {
        path: path.display().to_string(),
        source: Box::new(e.into()),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodLayout {
    pub label: String,
    pub run: LayoutRun,
}

/// Movement of one node between consecutive periods.
#[derive(Debug, Clone, PartialEq)]
pub struct Displacement {
    pub from: String,
    pub to: String,
    pub node_id: String,
    pub distance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionSummary {
    pub mean_displacement: f64,
    /// Diameter of the earlier period's layout.
    pub diameter: f64,
    pub nodes: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeriesRun {
    pub periods: Vec<PeriodLayout>,
    pub displacements: Vec<Displacement>,
}

impl TimeSeriesRun {
    /// Per-transition mean displacement over the nodes present in both
    /// periods.
    pub fn transitions(&self, graphs: &[(String, Graph)]) -> Vec<TransitionSummary> {
        graphs
            .windows(2)
            .zip(self.periods.windows(2))
            .map(|(g, p)| transition(&g[0].1, &p[0].run.positions, &g[1].1, &p[1].run.positions))
            .collect()
    }

    /// `from_period,to_period,node_id,displacement`
    pub fn displacement_csv(&self) -> String {
        let mut out = String::from("from_period,to_period,node_id,displacement\n");
        for d in &self.displacements {
            out.push_str(&format!(
                "{},{},{},{}\n",
                csv_escape(&d.from),
                csv_escape(&d.to),
                csv_escape(&d.node_id),
                d.distance
            ));
        }
        out
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

fn transition(g0: &Graph, l0: &LayoutMatrix, g1: &Graph, l1: &LayoutMatrix) -> TransitionSummary {
    let (sum, nodes) = g1
        .ids()
        .zip(l1.iter())
        .filter_map(|(id, p)| g0.index_of(id).map(|i| distance(l0[i], *p)))
        .fold((0.0, 0usize), |(s, k), d| (s + d, k + 1));
    TransitionSummary {
        mean_displacement: if nodes > 0 { sum / nodes as f64 } else { 0.0 },
        diameter: l0.diameter(),
        nodes,
    }
}

/// Start positions for `graph`: rows found in `known` by id, random (from
/// `seed`) for the rest.
pub fn match_positions(
    graph: &Graph,
    known: &HashMap<&str, Point>,
    seed: Option<u64>,
) -> Result<LayoutMatrix> {
    let mut start = init_positions(graph.node_count(), seed, None)?;
    for (row, id) in start.iter_mut().zip(graph.ids()) {
        if let Some(p) = known.get(id) {
            *row = *p;
        }
    }
    Ok(start)
}

/// Lay out every period in order. Period `k` uses seed `params.seed + k`.
/// With `chain` the previous final layout seeds the next period; without it
/// every period starts from its own random positions. `start` optionally
/// provides initial positions for the first period.
pub fn run_timeseries(
    periods: &[(String, Graph)],
    params: &Fa2Params,
    chain: bool,
    start: Option<&LayoutRows>,
) -> Result<TimeSeriesRun> {
    if periods.is_empty() {
        return Err(Error::InvalidParam("no periods to lay out".into()));
    }
    let mut out: Vec<PeriodLayout> = Vec::with_capacity(periods.len());
    let mut displacements = Vec::new();
    for (k, (label, graph)) in periods.iter().enumerate() {
        let seed = params.seed.map(|s| s.wrapping_add(k as u64));
        let period_params = Fa2Params {
            seed,
            ..params.clone()
        };
        let warm = match (k, chain, out.last(), start) {
            (0, _, _, Some(rows)) => Some(match_positions(graph, &rows.lookup(), seed)?),
            (_, true, Some(prev), _) => {
                let prev_graph = &periods[k - 1].1;
                let known: HashMap<&str, Point> = prev_graph
                    .ids()
                    .zip(prev.run.positions.iter().copied())
                    .collect();
                Some(match_positions(graph, &known, seed)?)
            }
            _ => None,
        };
        let run =
            run_layout(graph, &period_params, warm.as_deref()).map_err(|e| Error::Period {
                label: label.clone(),
                source: Box::new(e),
            })?;
        if let Some(prev) = out.last() {
            let prev_graph = &periods[k - 1].1;
            for (id, p) in graph.ids().zip(run.positions.iter()) {
                if let Some(i) = prev_graph.index_of(id) {
                    displacements.push(Displacement {
                        from: prev.label.clone(),
                        to: label.clone(),
                        node_id: id.to_owned(),
                        distance: distance(prev.run.positions[i], *p),
                    });
                }
            }
        }
        out.push(PeriodLayout {
            label: label.clone(),
            run,
        });
    }
    Ok(TimeSeriesRun {
        periods: out,
        displacements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::erdos_renyi;

    fn params() -> Fa2Params {
        Fa2Params {
            seed: Some(5),
            plotstep: 0,
            iterations: 60,
            ..Default::default()
        }
    }

    #[test]
    fn single_period_matches_plain_layout() {
        let g = erdos_renyi(30, 4.0, 1);
        let ts = run_timeseries(&[("only".into(), g.clone())], &params(), true, None).unwrap();
        let plain = run_layout(&g, &params(), None).unwrap();
        assert_eq!(ts.periods[0].run, plain);
        assert!(ts.displacements.is_empty());
    }

    #[test]
    fn chaining_beats_fresh_start_on_identical_periods() {
        let g = erdos_renyi(40, 4.0, 2);
        let periods = vec![("p1".to_string(), g.clone()), ("p2".to_string(), g)];
        let chained = run_timeseries(&periods, &params(), true, None).unwrap();
        let fresh = run_timeseries(&periods, &params(), false, None).unwrap();
        let c = chained.transitions(&periods)[0].mean_displacement;
        let f = fresh.transitions(&periods)[0].mean_displacement;
        assert!(c < f, "chained {c} vs fresh {f}");
    }

    #[test]
    fn new_node_is_random_others_warm() {
        let g1 = Graph::from_parts(&["a", "b"], [(0, 1, 1.0)], true).unwrap();
        let g2 = Graph::from_parts(&["a", "b", "z"], [(0, 1, 1.0), (1, 2, 1.0)], true).unwrap();
        let p = params();
        let ts = run_timeseries(
            &[("1".into(), g1.clone()), ("2".into(), g2.clone())],
            &p,
            true,
            None,
        )
        .unwrap();
        let prev: HashMap<&str, Point> = g1
            .ids()
            .zip(ts.periods[0].run.positions.iter().copied())
            .collect();
        let start = match_positions(&g2, &prev, p.seed.map(|s| s + 1)).unwrap();
        assert_eq!(start[0], ts.periods[0].run.positions[0]);
        assert_eq!(start[1], ts.periods[0].run.positions[1]);
        let expected_z = init_positions(3, Some(6), None).unwrap()[2];
        assert_eq!(start[2], expected_z);
        let second = run_layout(&g2, &Fa2Params { seed: Some(6), ..p }, Some(&start)).unwrap();
        assert_eq!(ts.periods[1].run, second);
        // z is not in the displacement report
        assert_eq!(ts.displacements.len(), 2);
    }

    #[test]
    fn departed_nodes_are_dropped() {
        let g1 = Graph::from_parts(&["a", "b", "c"], [(0, 1, 1.0), (1, 2, 1.0)], true).unwrap();
        let g2 = Graph::from_parts(&["c", "b"], [(0, 1, 1.0)], true).unwrap();
        let ts =
            run_timeseries(&[("1".into(), g1), ("2".into(), g2)], &params(), true, None).unwrap();
        assert_eq!(ts.periods[1].run.positions.len(), 2);
        let ids: Vec<&str> = ts
            .displacements
            .iter()
            .map(|d| d.node_id.as_str())
            .collect();
        assert_eq!(ids, ["c", "b"]);
        assert!(ts
            .displacement_csv()
            .starts_with("from_period,to_period,node_id,displacement\n1,2,c,"));
    }

    #[test]
    fn manifest_parsing() {
        let m = Manifest::from_json(
            r#"{"periods":[{"label":"2008-08-22","graph":"p1.csv"},{"label":"2008-08-25","graph":"p2.csv","format":"matrix"}],"params":{"iterations":50}}"#,
        )
        .unwrap();
        assert!(m.chain);
        assert_eq!(m.params.iterations, 50);
        assert_eq!(m.periods[1].format, GraphFormat::Matrix);
        assert!(Manifest::from_json(r#"{"periods":[]}"#).is_err());
        assert!(Manifest::from_json(
            r#"{"periods":[{"label":"x","graph":"a"}],"params":{"iterations":0}}"#
        )
        .is_err());
    }

    #[test]
    fn missing_period_file_names_label() {
        let m =
            Manifest::from_json(r#"{"periods":[{"label":"day-2","graph":"nope.csv"}]}"#).unwrap();
        let err = m.load_graphs(Path::new("/nonexistent-dir")).unwrap_err();
        assert!(err.to_string().starts_with("period day-2:"), "{err}");
    }
}
