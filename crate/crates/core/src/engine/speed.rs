//! Swinging, traction and the adaptive speed controller.

use crate::layout::Point;

/// Growth cap on global speed between iterations in adaptive mode.
pub const MAX_SPEED_RISE: f64 = 1.5;
/// Global speed multiplier of τ used when nothing swings.
pub const NO_SWING_SPEED_FACTOR: f64 = 10.0;

const ADAPTIVE_TAU_MIN: f64 = 0.05;
const ADAPTIVE_TAU_MAX: f64 = 10.0;
const ADAPTIVE_TAU_SCALE: f64 = 0.05;

/// Per-node swinging `|F_t - F_{t-1}|` and traction `|F_t + F_{t-1}| / 2`.
pub fn swinging_and_traction(net: &[Point], prev_net: &[Point]) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(net.len(), prev_net.len(), "force matrices differ in length");
    net.iter()
        .zip(prev_net)
        .map(|(f, g)| {
            let swg = (f[0] - g[0]).hypot(f[1] - g[1]);
            let tra = (f[0] + g[0]).hypot(f[1] + g[1]) / 2.0;
            (swg, tra)
        })
        .unzip()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlobalSpeed {
    pub global_swinging: f64,
    pub global_traction: f64,
    pub speed: f64,
    pub effective_tolerance: f64,
}

/// Global speed `τ tra(G) / swg(G)` with (deg+1)-weighted sums.
///
/// In adaptive mode τ is scaled by `clamp(0.05 √N tra(G) / N², 0.05, 10)` and
/// the result may grow at most 1.5× over `prev_speed` (when that is
/// positive). With zero global swinging the speed falls back to
/// `min(10 τ, 1.5 prev_speed)`.
pub fn global_speed(
    swinging: &[f64],
    traction: &[f64],
    degrees: &[usize],
    tolerance: f64,
    adaptive: bool,
    prev_speed: f64,
) -> GlobalSpeed {
    let n = degrees.len();
    assert!(n >= 1, "global speed needs at least one node");
    let (mut swg_g, mut tra_g) = (0.0, 0.0);
    for ((&s, &t), &d) in swinging.iter().zip(traction).zip(degrees) {
        let w = d as f64 + 1.0;
        swg_g += w * s;
        tra_g += w * t;
    }

    let tau = if adaptive {
        let nf = n as f64;
        let density = ADAPTIVE_TAU_SCALE * nf.sqrt() * tra_g / (nf * nf);
        tolerance * density.clamp(ADAPTIVE_TAU_MIN, ADAPTIVE_TAU_MAX)
    } else {
        tolerance
    };

    let cap = (prev_speed > 0.0).then_some(MAX_SPEED_RISE * prev_speed);
    let speed = if swg_g > 0.0 {
        let candidate = tau * tra_g / swg_g;
        match cap {
            Some(c) if adaptive => candidate.min(c),
            _ => candidate,
        }
    } else {
        let fallback = tau * NO_SWING_SPEED_FACTOR;
        cap.map_or(fallback, |c| fallback.min(c))
    };

    GlobalSpeed {
        global_swinging: swg_g,
        global_traction: tra_g,
        speed,
        effective_tolerance: tau,
    }
}

/// Local speeds `k_s s(G) / (1 + s(G) √swg(n))`.
pub fn local_speeds(global: f64, swinging: &[f64], speed_constant: f64) -> Vec<f64> {
    swinging
        .iter()
        .map(|&s| speed_constant * global / (1.0 + global * s.sqrt()))
        .collect()
}

/// `p + s(n) F(n)` per node. Returns the index of the first node whose new
/// position is not finite.
pub fn apply_displacement(
    positions: &[Point],
    net: &[Point],
    speeds: &[f64],
) -> Result<Vec<Point>, usize> {
    positions
        .iter()
        .zip(net)
        .zip(speeds)
        .enumerate()
        .map(|(i, ((p, f), &s))| {
            let q = [p[0] + s * f[0], p[1] + s * f[1]];
            if q[0].is_finite() && q[1].is_finite() {
                Ok(q)
            } else {
                Err(i)
            }
        })
        .collect()
}
