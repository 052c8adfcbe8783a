//! The trapezoidal SAW domains `M_{h,v}` of the hexagonal lattice.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;

use super::builders::{hex_class, hex_directions};
use super::patch::{EdgeId, Family, LatticePatch, PatchBuilder, VertexId};

pub type MidpointId = EdgeId;

/// Boundary class of a midpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MidClass {
    Interior,
    /// The distinguished start midpoint `a` on the bottom side.
    Start,
    /// Bottom side except `a`.
    L,
    /// Right side.
    TPlus,
    /// Left side.
    TMinus,
    /// Top side.
    U,
}

/// `M_{h,v}`: `S` is a stack of `v` levels, each a row of type-B vertices
/// (two upward edges) capped by a row of type-A vertices; level `j` has
/// `2h+j+1` B vertices and `2h+j+2` A vertices, so the sides lean outward.
///
/// The start `a` is the midpoint of the edge from `(0,0)` to `(0,1)`.
#[derive(Debug, Clone)]
pub struct Region {
    /// Vertices of `S` plus the outer endpoints of boundary edges. Every edge is
    /// one midpoint.
    pub base: LatticePatch,
    pub h: usize,
    pub v: usize,
    pub inside: Vec<bool>,
    pub classes: Vec<MidClass>,
    pub start: MidpointId,
}

impl Region {
    pub fn num_midpoints(&self) -> usize {
        self.base.num_edges()
    }

    /// Midpoint position with quadrupled coordinates (`p + q` of doubled endpoints).
    pub fn midpoint_x4(&self, m: MidpointId) -> Point {
        let (a, b) = self.base.segment(m);
        a + b
    }

    /// Euclidean midpoint.
    pub fn midpoint(&self, m: MidpointId) -> (f64, f64) {
        let (x, y) = self.midpoint_x4(m).to_f64();
        (x / 2.0, y / 2.0)
    }

    pub fn class_members(&self, class: MidClass) -> Vec<MidpointId> {
        (0..self.classes.len() as MidpointId).filter(|&m| self.classes[m as usize] == class).collect()
    }

    pub fn inside_vertices(&self) -> Vec<VertexId> {
        (0..self.base.num_vertices() as VertexId).filter(|&v| self.inside[v as usize]).collect()
    }

    /// The vertex of `S` on the start edge.
    pub fn start_vertex(&self) -> VertexId {
        let e = self.base.edge(self.start);
        if self.inside[e.u as usize] {
            e.u
        } else {
            e.v
        }
    }
}

pub fn build_region(h: usize, v: usize) -> Result<Region> {
    if h == 0 || v == 0 {
        return Err(Error::invalid("region parameters h and v must be positive"));
    }
    let (hh, vv) = (h as i64, v as i64);
    let mut s = Vec::new();
    for j in 0..vv {
        for t in 0..=2 * hh + j {
            s.push(Point::hex(-2 * hh - j + 2 * t, 2 + 3 * j));
        }
        for t in 0..=2 * hh + j + 1 {
            s.push(Point::hex(-2 * hh - j - 1 + 2 * t, 3 + 3 * j));
        }
    }
    let set: std::collections::HashSet<Point> = s.iter().copied().collect();
    let mut b = PatchBuilder::new(Family::Hexagonal);
    for &p in &s {
        for d in hex_directions(p) {
            b.edge(p, p + d, hex_class(p, p + d))?;
        }
    }
    let base = b.finish();
    let inside: Vec<bool> = base.positions().iter().map(|p| set.contains(p)).collect();
    let a_edge = base
        .vertex_at(Point::hex(0, 0))
        .zip(base.vertex_at(Point::hex(0, 2)))
        .and_then(|(u, w)| base.neighbors(u).iter().find(|&&(x, _)| x == w).map(|&(_, e)| e))
        .ok_or_else(|| Error::Invariant("start edge missing".into()))?;
    let mut classes = Vec::with_capacity(base.num_edges());
    for (i, e) in base.edges().iter().enumerate() {
        let (iu, iv) = (inside[e.u as usize], inside[e.v as usize]);
        let class = if iu && iv {
            MidClass::Interior
        } else if i as EdgeId == a_edge {
            MidClass::Start
        } else {
            let (s_end, out) = if iu { (e.u, e.v) } else { (e.v, e.u) };
            let d = base.position(out) - base.position(s_end);
            match (d.x.signum(), d.y.signum()) {
                (0, -1) => MidClass::L,
                (0, 1) => MidClass::U,
                (-1, _) => MidClass::TMinus,
                (1, _) => MidClass::TPlus,
                _ => return Err(Error::Invariant("unexpected boundary direction".into())),
            }
        };
        classes.push(class);
    }
    Ok(Region { base, h, v, inside, classes, start: a_edge })
}
