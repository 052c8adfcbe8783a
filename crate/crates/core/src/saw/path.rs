use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::lattice::{hex_directions, is_hex_vertex};

/// A self-avoiding walk on the hexagonal lattice, as exact vertex positions.
///
/// `head` and `tail` are optional half-edges: the walk then starts (ends) at
/// the midpoint of the edge leaving the first (last) vertex in that direction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SawPath {
    pub points: Vec<Point>,
    /// Unit direction from the start midpoint's far endpoint into `points[0]`.
    pub head: Option<Point>,
    /// Unit direction from the last vertex towards the end midpoint.
    pub tail: Option<Point>,
    /// Total turning angle in units of `π/3`.
    pub turning_thirds: i32,
}

/// `+1` for a left turn from `d1` to `d2`, `-1` for a right turn, `0` straight.
pub(crate) fn turn(d1: Point, d2: Point) -> i32 {
    d1.cross(d2).signum()
}

impl SawPath {
    /// Builds a walk, validating lattice steps and self-avoidance.
    pub fn new(points: Vec<Point>, head: Option<Point>, tail: Option<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::invalid("a walk needs at least one vertex"));
        }
        for &p in &points {
            if !is_hex_vertex(p) {
                return Err(Error::invalid("walk leaves the hexagonal lattice"));
            }
        }
        let mut seen = std::collections::HashSet::new();
        if !points.iter().all(|p| seen.insert(*p)) {
            return Err(Error::invalid("walk is not self-avoiding"));
        }
        for w in points.windows(2) {
            if !hex_directions(w[0]).contains(&(w[1] - w[0])) {
                return Err(Error::invalid("consecutive vertices are not adjacent"));
            }
        }
        if let Some(h) = head {
            if !hex_directions(points[0]).contains(&-h) {
                return Err(Error::invalid("head half-edge is not a lattice edge"));
            }
        }
        if let Some(t) = tail {
            if !hex_directions(*points.last().unwrap()).contains(&t) {
                return Err(Error::invalid("tail half-edge is not a lattice edge"));
            }
        }
        let mut path = SawPath { points, head, tail, turning_thirds: 0 };
        path.turning_thirds = path.recompute_turning();
        Ok(path)
    }

    /// `|γ|`: number of vertices visited.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Direction vectors of every drawn step, half-edges included.
    pub fn directions(&self) -> Vec<Point> {
        let mut d = Vec::with_capacity(self.points.len() + 1);
        d.extend(self.head);
        d.extend(self.points.windows(2).map(|w| w[1] - w[0]));
        d.extend(self.tail);
        d
    }

    /// Turning angle recomputed from the embedding.
    pub fn recompute_turning(&self) -> i32 {
        self.directions().windows(2).map(|w| turn(w[0], w[1])).sum()
    }

    /// Doubled heights of the vertices.
    pub fn heights(&self) -> Vec<i64> {
        self.points.iter().map(|p| p.y.a).collect()
    }
}

/// `T(γ)` in units of `π/3`: final direction minus initial direction, unwound.
pub fn turning_angle(path: &SawPath) -> Result<i32> {
    let checked = SawPath::new(path.points.clone(), path.head, path.tail)?;
    Ok(checked.turning_thirds)
}
