//! Test-only helpers shared by the integration targets.

#![allow(dead_code)]

pub mod oracle;

use fa2_core::layout::{distance, LayoutMatrix};

/// Largest row-wise deviation relative to the largest row norm of `expect`.
pub fn matrix_rel_err(got: &[[f64; 2]], expect: &[[f64; 2]]) -> f64 {
    assert_eq!(got.len(), expect.len());
    let scale = expect.iter().map(|p| p[0].hypot(p[1])).fold(0.0, f64::max);
    let err = got
        .iter()
        .zip(expect)
        .map(|(a, b)| (a[0] - b[0]).hypot(a[1] - b[1]))
        .fold(0.0, f64::max);
    if scale == 0.0 {
        err
    } else {
        err / scale
    }
}

pub fn mean_distance_to(layout: &LayoutMatrix, c: [f64; 2]) -> f64 {
    layout.iter().map(|p| distance(*p, c)).sum::<f64>() / layout.len() as f64
}

/// Largest row-wise deviation, each row measured relative to its own gross
/// force. A sum of terms is only determined to rounding relative to the terms
/// themselves, so this is the scale that stays meaningful near equilibrium.
pub fn gross_rel_err(got: &[[f64; 2]], expect: &[[f64; 2]], gross: &[f64]) -> f64 {
    got.iter()
        .zip(expect)
        .zip(gross)
        .map(|((a, b), &g)| {
            let e = (a[0] - b[0]).hypot(a[1] - b[1]);
            if g > 0.0 {
                e / g
            } else {
                e
            }
        })
        .fold(0.0, f64::max)
}
