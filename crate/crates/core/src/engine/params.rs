use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::layout::Point;

/// Solver tunables. Defaults match Gephi's ForceAtlas2 settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Fa2Params {
    /// Repulsion constant S.
    pub scaling: f64,
    /// Edge weight influence δ, either 0 or 1.
    pub edge_weight_influence: u8,
    /// Swinging tolerance τ (`jittertol`).
    pub tolerance: f64,
    /// Local speed constant k_s.
    pub speed_constant: f64,
    /// Gravity constant k_g, only used with `strong_gravity`.
    pub gravity: f64,
    pub linlog: bool,
    /// Multiply LinLog attraction by `w^δ`. Off by default: plain LinLog
    /// attraction is `log(1 + d)` regardless of weight.
    pub linlog_weighted: bool,
    pub strong_gravity: bool,
    pub iterations: usize,
    pub seed: Option<u64>,
    /// Gravity attraction point.
    pub center: Point,
    /// Snapshot interval in iterations; 0 disables snapshots.
    pub plotstep: usize,
    /// Density-based τ with a 1.5× growth cap on global speed. When false,
    /// τ is used as given.
    pub adaptive_tolerance: bool,
    /// Worker threads for force accumulation. `None` uses the global pool,
    /// `Some(1)` runs on the calling thread.
    pub workers: Option<usize>,
}

impl Default for Fa2Params {
    fn default() -> Self {
        Self {
            scaling: 10.0,
            edge_weight_influence: 1,
            tolerance: 1.0,
            speed_constant: 1.0,
            gravity: 1.0,
            linlog: false,
            linlog_weighted: false,
            strong_gravity: false,
            iterations: 100,
            seed: None,
            center: [0.0, 0.0],
            plotstep: 10,
            adaptive_tolerance: true,
            workers: None,
        }
    }
}

impl Fa2Params {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParam(msg));
        if !(self.scaling > 0.0 && self.scaling.is_finite()) {
            return bad(format!("scaling must be positive, got {}", self.scaling));
        }
        if self.edge_weight_influence > 1 {
            return bad(format!(
                "edge weight influence must be 0 or 1, got {}",
                self.edge_weight_influence
            ));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return bad(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            ));
        }
        if !(self.speed_constant > 0.0 && self.speed_constant.is_finite()) {
            return bad(format!(
                "speed constant must be positive, got {}",
                self.speed_constant
            ));
        }
        if !(self.gravity >= 0.0 && self.gravity.is_finite()) {
            return bad(format!(
                "gravity must be non-negative, got {}",
                self.gravity
            ));
        }
        if self.iterations == 0 {
            return bad("iterations must be at least 1".into());
        }
        if !(self.center[0].is_finite() && self.center[1].is_finite()) {
            return bad("center must be finite".into());
        }
        if self.workers == Some(0) {
            return bad("workers must be at least 1".into());
        }
        Ok(())
    }
}
