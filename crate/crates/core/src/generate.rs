//! Seeded random graph models used by the benchmark harness and tests.
//!
//! All generators draw from ChaCha8 seeded with `seed_from_u64`, visiting
//! unordered pairs `(i, j)` with `i < j` in row-major order. Edges are stored
//! as `i -> j` with weight 1 in an undirected graph. Node ids are `n0`, `n1`, ...

use std::collections::HashSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

fn ids(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("n{i}")).collect()
}

/// G(n, p) with `p = mean_degree / (n - 1)`.
pub fn erdos_renyi(n: usize, mean_degree: f64, seed: u64) -> Graph {
    let p = if n > 1 {
        (mean_degree / (n - 1) as f64).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((i, j, 1.0));
            }
        }
    }
    Graph::from_parts(&ids(n), edges, false).expect("generated edges are valid")
}

/// Planted partition with consecutive blocks of the given sizes. Returns the
/// graph and each node's block index.
pub fn planted_partition(sizes: &[usize], p_in: f64, p_out: f64, seed: u64) -> (Graph, Vec<usize>) {
    let blocks: Vec<usize> = sizes
        .iter()
        .enumerate()
        .flat_map(|(b, &k)| std::iter::repeat_n(b, k))
        .collect();
    let n = blocks.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let p = if blocks[i] == blocks[j] { p_in } else { p_out };
            if rng.gen::<f64>() < p {
                edges.push((i, j, 1.0));
            }
        }
    }
    let g = Graph::from_parts(&ids(n), edges, false).expect("generated edges are valid");
    (g, blocks)
}

/// Re-draw `round(fraction * E)` edges: that many existing edges are removed
/// and the same number of absent pairs are added, keeping node order and the
/// edge count. Weights of new edges are 1.
pub fn rewire(graph: &Graph, fraction: f64, seed: u64) -> Graph {
    let n = graph.node_count();
    let e = graph.edge_count();
    let k = ((fraction * e as f64).round() as usize).min(e);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let removed: HashSet<usize> = sample(&mut rng, e, k).into_iter().collect();
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut present: HashSet<(usize, usize)> = graph
        .edges()
        .iter()
        .map(|x| key(x.source, x.target))
        .collect();
    let mut edges: Vec<(usize, usize, f64)> = graph
        .edges()
        .iter()
        .enumerate()
        .filter(|(i, _)| !removed.contains(i))
        .map(|(_, x)| (x.source, x.target, x.weight))
        .collect();
    let capacity = n * n.saturating_sub(1) / 2;
    let mut added = 0;
    while added < k && present.len() < capacity {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b || !present.insert(key(a, b)) {
            continue;
        }
        edges.push((a.min(b), a.max(b), 1.0));
        added += 1;
    }
    let ids: Vec<&str> = graph.ids().collect();
    Graph::from_parts(&ids, edges, graph.is_directed()).expect("rewired edges are valid")
}
