//! The ForceAtlas2 solver.
//!
//! Each iteration computes the net force on every node, derives swinging and
//! traction against the previous iteration's forces, sets a global speed and
//! per-node speeds from them, and moves every node by `speed * force`.

pub mod forces;
pub mod params;
pub mod speed;

use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::layout::{LayoutMatrix, Point};

pub use forces::{attraction_forces, gravity_forces, repulsion_forces, ForceField};
pub use params::Fa2Params;
pub use speed::{
    apply_displacement, global_speed, local_speeds, swinging_and_traction, GlobalSpeed,
};

/// Half-width of the square random initial positions are drawn from.
pub const INITIAL_EXTENT: f64 = 500.0;

/// Initial positions: `warm_start` verbatim when given, otherwise uniform on
/// `[-500, 500]²` from a ChaCha8 stream seeded with `seed` (x then y per
/// node). Without a seed the generator is seeded from OS entropy.
pub fn init_positions(
    n: usize,
    seed: Option<u64>,
    warm_start: Option<&[Point]>,
) -> Result<LayoutMatrix> {
    if let Some(start) = warm_start {
        if start.len() != n {
            return Err(Error::RowCountMismatch {
                expected: n,
                actual: start.len(),
            });
        }
        if let Some(i) = start
            .iter()
            .position(|p| !(p[0].is_finite() && p[1].is_finite()))
        {
            return Err(Error::NonFiniteInput(i));
        }
        return Ok(LayoutMatrix(start.to_vec()));
    }
    let mut rng = match seed {
        Some(s) => ChaCha8Rng::seed_from_u64(s),
        None => ChaCha8Rng::from_entropy(),
    };
    let axis = Uniform::new_inclusive(-INITIAL_EXTENT, INITIAL_EXTENT);
    Ok(LayoutMatrix(
        (0..n)
            .map(|_| [axis.sample(&mut rng), axis.sample(&mut rng)])
            .collect(),
    ))
}

/// Evolving solver state between iterations.
#[derive(Debug, Clone, PartialEq)]
pub struct LayoutState {
    pub positions: LayoutMatrix,
    pub prev_forces: Vec<Point>,
    pub prev_global_speed: f64,
    pub iteration: usize,
}

impl LayoutState {
    pub fn new(positions: LayoutMatrix) -> Self {
        let n = positions.len();
        Self {
            positions,
            prev_forces: vec![[0.0, 0.0]; n],
            prev_global_speed: 0.0,
            iteration: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationDiagnostics {
    pub iteration: usize,
    pub swinging: Vec<f64>,
    pub traction: Vec<f64>,
    pub global_swinging: f64,
    pub global_traction: f64,
    pub global_speed: f64,
    pub local_speeds: Vec<f64>,
    pub effective_tolerance: f64,
}

/// Forces evaluated at the start of an iteration plus the resulting
/// diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub forces: ForceField,
    pub diagnostics: IterationDiagnostics,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub iteration: usize,
    pub positions: LayoutMatrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LayoutRun {
    pub positions: LayoutMatrix,
    pub trace: Vec<IterationDiagnostics>,
    pub snapshots: Vec<Snapshot>,
}

/// Steps a [`LayoutState`] one iteration at a time.
pub struct Solver<'g> {
    graph: &'g Graph,
    params: Fa2Params,
    degrees: Vec<usize>,
    state: LayoutState,
    pool: Option<rayon::ThreadPool>,
}

impl<'g> Solver<'g> {
    pub fn new(graph: &'g Graph, params: Fa2Params, warm_start: Option<&[Point]>) -> Result<Self> {
        params.validate()?;
        if graph.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let positions = init_positions(graph.node_count(), params.seed, warm_start)?;
        let pool = match params.workers {
            Some(w) if w > 1 => Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(w)
                    .build()
                    .map_err(|e| Error::InvalidParam(format!("cannot start {w} workers: {e}")))?,
            ),
            _ => None,
        };
        Ok(Self {
            graph,
            degrees: graph.degrees(),
            params,
            state: LayoutState::new(positions),
            pool,
        })
    }

    pub fn state(&self) -> &LayoutState {
        &self.state
    }

    pub fn params(&self) -> &Fa2Params {
        &self.params
    }

    pub fn into_state(self) -> LayoutState {
        self.state
    }

    fn forces(&self) -> ForceField {
        let positions = &self.state.positions;
        match (&self.pool, self.params.workers) {
            (Some(pool), _) => {
                pool.install(|| ForceField::compute(self.graph, positions, &self.params, true))
            }
            (None, Some(1)) => ForceField::compute(self.graph, positions, &self.params, false),
            (None, _) => ForceField::compute(self.graph, positions, &self.params, true),
        }
    }

    /// Run one iteration and advance the state.
    pub fn step(&mut self) -> Result<Step> {
        let forces = self.forces();
        let (swinging, traction) = swinging_and_traction(&forces.net, &self.state.prev_forces);
        let global = global_speed(
            &swinging,
            &traction,
            &self.degrees,
            self.params.tolerance,
            self.params.adaptive_tolerance,
            self.state.prev_global_speed,
        );
        let local = local_speeds(global.speed, &swinging, self.params.speed_constant);
        let iteration = self.state.iteration + 1;
        let moved =
            apply_displacement(&self.state.positions, &forces.net, &local).map_err(|i| {
                Error::NonFinitePosition {
                    node: self.graph.nodes()[i].id.clone(),
                    iteration,
                }
            })?;

        self.state.positions = LayoutMatrix(moved);
        self.state.prev_forces.clone_from(&forces.net);
        self.state.prev_global_speed = global.speed;
        self.state.iteration = iteration;

        Ok(Step {
            forces,
            diagnostics: IterationDiagnostics {
                iteration,
                swinging,
                traction,
                global_swinging: global.global_swinging,
                global_traction: global.global_traction,
                global_speed: global.speed,
                local_speeds: local,
                effective_tolerance: global.effective_tolerance,
            },
        })
    }
}

/// Run `params.iterations` iterations from `warm_start` (or a seeded random
/// start), collecting a snapshot every `params.plotstep` iterations.
pub fn run_layout(
    graph: &Graph,
    params: &Fa2Params,
    warm_start: Option<&[Point]>,
) -> Result<LayoutRun> {
    let mut solver = Solver::new(graph, params.clone(), warm_start)?;
    let mut trace = Vec::with_capacity(params.iterations);
    let mut snapshots = Vec::new();
    for _ in 0..params.iterations {
        let step = solver.step()?;
        trace.push(step.diagnostics);
        let r = solver.state.iteration;
        if params.plotstep > 0 && r % params.plotstep == 0 {
            snapshots.push(Snapshot {
                iteration: r,
                positions: solver.state.positions.clone(),
            });
        }
    }
    Ok(LayoutRun {
        positions: solver.into_state().positions,
        trace,
        snapshots,
    })
}

/// Diagnostics CSV with one row per iteration.
pub fn diagnostics_csv(trace: &[IterationDiagnostics]) -> String {
    let mut out = String::from(
        "iteration,global_swinging,global_traction,global_speed,effective_tolerance\n",
    );
    for d in trace {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            d.iteration,
            d.global_swinging,
            d.global_traction,
            d.global_speed,
            d.effective_tolerance
        ));
    }
    out
}
