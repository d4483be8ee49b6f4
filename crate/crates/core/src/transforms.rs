//! Scaling, rotation and recentering of finished layouts.
//!
//! Scale and rotate anchor at the layout centroid unless a pivot is given.

use crate::error::{Error, Result};
use crate::layout::{LayoutMatrix, Point};

/// Map every point `p` to `c + factor (p - c)`.
pub fn scale_positions(
    layout: &LayoutMatrix,
    factor: f64,
    pivot: Option<Point>,
) -> Result<LayoutMatrix> {
    if !(factor > 0.0 && factor.is_finite()) {
        return Err(Error::InvalidParam(format!(
            "scale factor must be positive, got {factor}"
        )));
    }
    let Some(c) = pivot.or_else(|| layout.centroid()) else {
        return Ok(layout.clone());
    };
    Ok(layout
        .iter()
        .map(|p| [c[0] + factor * (p[0] - c[0]), c[1] + factor * (p[1] - c[1])])
        .collect::<Vec<_>>()
        .into())
}

/// Counterclockwise rotation by `degrees`.
pub fn rotate_positions(layout: &LayoutMatrix, degrees: f64, pivot: Option<Point>) -> LayoutMatrix {
    let Some(c) = pivot.or_else(|| layout.centroid()) else {
        return layout.clone();
    };
    let (sin, cos) = degrees.to_radians().sin_cos();
    layout
        .iter()
        .map(|p| {
            let dx = p[0] - c[0];
            let dy = p[1] - c[1];
            [c[0] + cos * dx - sin * dy, c[1] + sin * dx + cos * dy]
        })
        .collect::<Vec<_>>()
        .into()
}

/// Shift the layout so its centroid lands on `target`.
pub fn translate_to(layout: &LayoutMatrix, target: Point) -> LayoutMatrix {
    let Some(c) = layout.centroid() else {
        return layout.clone();
    };
    let (dx, dy) = (target[0] - c[0], target[1] - c[1]);
    if dx == 0.0 && dy == 0.0 {
        return layout.clone();
    }
    layout
        .iter()
        .map(|p| [p[0] + dx, p[1] + dy])
        .collect::<Vec<_>>()
        .into()
}

/// One step of a transform pipeline, applied left to right.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Transform {
    Scale(f64),
    Rotate(f64),
    Center(Point),
}

impl Transform {
    pub fn apply(&self, layout: &LayoutMatrix) -> Result<LayoutMatrix> {
        match *self {
            Transform::Scale(f) => scale_positions(layout, f, None),
            Transform::Rotate(deg) => Ok(rotate_positions(layout, deg, None)),
            Transform::Center(c) => Ok(translate_to(layout, c)),
        }
    }
}

pub fn apply_all(layout: &LayoutMatrix, steps: &[Transform]) -> Result<LayoutMatrix> {
    steps
        .iter()
        .try_fold(layout.clone(), |acc, t| t.apply(&acc))
}
