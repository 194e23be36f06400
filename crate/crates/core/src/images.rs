//! Classical reflected paths on the segment: image targets `y_r`,
//! per-endpoint bounce counting, the auxiliary phase attached to each
//! path, and polyline unfolding for plotting.
//!
//! The phase of a path is always COMPUTED as a product of per-reflection
//! factors. The closed-form patterns ((-1)^r for two Dirichlet walls, the
//! mod-4 pattern for mixed walls) appear only in tests, as consequences
//! to be verified rather than data to be tabulated.

use alloc::vec::Vec;
use num_complex::Complex64;

#[allow(unused_imports)]
use num_traits::Float;

use crate::config::BoundaryKind;
use crate::error::{Error, Result};

/// Per-endpoint reflection factors. Dirichlet contributes -1 per bounce,
/// Neumann +1; the general form admits any unit phase `e^{-i theta}` so
/// the same machinery extends to soft walls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseRule {
    left_phase: Complex64,
    right_phase: Complex64,
}

impl PhaseRule {
    /// Rule for hard walls: -1 per Dirichlet bounce, +1 per Neumann.
    pub fn from_boundaries(left: BoundaryKind, right: BoundaryKind) -> Self {
        PhaseRule {
            left_phase: left.reflection_phase(),
            right_phase: right.reflection_phase(),
        }
    }

    /// General rule from explicit unit phases.
    pub fn new(left_phase: Complex64, right_phase: Complex64) -> Result<Self> {
        for phase in [left_phase, right_phase] {
            let modulus = phase.norm();
            if (modulus - 1.0).abs() > 1e-12 {
                return Err(Error::NonUnitPhase { modulus });
            }
        }
        Ok(PhaseRule {
            left_phase,
            right_phase,
        })
    }

    /// Same soft-wall phase `e^{-i theta}` at both endpoints.
    pub fn uniform(theta: f64) -> Self {
        let phase = Complex64::new(theta.cos(), -theta.sin());
        PhaseRule {
            left_phase: phase,
            right_phase: phase,
        }
    }

    pub fn left_phase(&self) -> Complex64 {
        self.left_phase
    }

    pub fn right_phase(&self) -> Complex64 {
        self.right_phase
    }
}

/// One classical reflected path, identified by its image index `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImagePath {
    /// Image index; `r = 0` is the direct path.
    pub r: i64,
    /// Unfolded target position `y_r`.
    pub y_r: f64,
    /// Number of reflections off `x = 0`.
    pub bounces_left: u32,
    /// Number of reflections off `x = L`.
    pub bounces_right: u32,
    /// Product of per-reflection phase factors; always unit modulus.
    pub epsilon: Complex64,
}

/// Unfolded image of the arrival point: `rL + y` for even `r`,
/// `(r+1)L - y` for odd `r`.
pub fn image_point(r: i64, y: f64, length: f64) -> f64 {
    if r.rem_euclid(2) == 0 {
        r as f64 * length + y
    } else {
        (r + 1) as f64 * length - y
    }
}

/// Reflections per endpoint for the path to image `r`, as
/// `(left, right)`.
///
/// The unfolded straight segment to `y_r` crosses the boundary lines
/// `x = jL` with `j = 1..=r` (rightward paths) or `j = 0, -1, ..., r+1`
/// (leftward). Odd multiples of `L` fold onto the right endpoint and
/// even multiples onto the left, so a path with `r > 0` alternates
/// starting at the right wall and one with `r < 0` starts at the left.
pub fn bounce_counts(r: i64) -> (u32, u32) {
    let total = r.unsigned_abs();
    let leading = total.div_ceil(2) as u32;
    let trailing = (total / 2) as u32;
    if r >= 0 {
        (trailing, leading)
    } else {
        (leading, trailing)
    }
}

/// Auxiliary phase of image `r`: the product of one factor per bounce.
pub fn phase(rule: &PhaseRule, r: i64) -> Complex64 {
    let (left, right) = bounce_counts(r);
    rule.left_phase.powu(left) * rule.right_phase.powu(right)
}

/// Bundles index, target, bounce counts and phase for image `r`.
pub fn image_path(rule: &PhaseRule, r: i64, y: f64, length: f64) -> ImagePath {
    let (bounces_left, bounces_right) = bounce_counts(r);
    ImagePath {
        r,
        y_r: image_point(r, y, length),
        bounces_left,
        bounces_right,
        epsilon: phase(rule, r),
    }
}

/// Vertex list `(t, x)` of the classical path to image `r`, folded back
/// into the segment.
///
/// The path moves at the constant speed `|y_r - x| / (t1 - t0)`, starts
/// at `(t0, x)`, ends at `(t1, y)` and has `|r|` interior vertices, one
/// per bounce, alternating between the endpoints.
pub fn classical_path(
    r: i64,
    x: f64,
    y: f64,
    t0: f64,
    t1: f64,
    length: f64,
) -> Result<Vec<(f64, f64)>> {
    for pos in [x, y] {
        if !(0.0..=length).contains(&pos) {
            return Err(Error::OutsideSegment { x: pos, length });
        }
    }
    if !t0.is_finite() || !t1.is_finite() || t1 <= t0 {
        return Err(Error::InvalidTimeOrder { t0, t1 });
    }
    let target = image_point(r, y, length);
    let span = target - x;
    let mut vertices = Vec::with_capacity(r.unsigned_abs() as usize + 2);
    vertices.push((t0, x));
    if r != 0 {
        if span == 0.0 {
            return Err(Error::DegeneratePath { r });
        }
        let duration = t1 - t0;
        // Boundary lines crossed by the unfolded segment, in time order.
        let crossings: Vec<i64> = if r > 0 {
            (1..=r).collect()
        } else {
            (r + 1..=0).rev().collect()
        };
        for j in crossings {
            let t = t0 + (j as f64 * length - x) / span * duration;
            let endpoint = if j.rem_euclid(2) == 1 { length } else { 0.0 };
            vertices.push((t, endpoint));
        }
    }
    vertices.push((t1, y));
    Ok(vertices)
}
