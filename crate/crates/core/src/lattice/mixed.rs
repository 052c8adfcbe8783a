//! Square/triangular mixed lattices on a horizontal cylinder.
//!
//! A mixed lattice is a stack of rows of `width` vertices. Consecutive rows are
//! joined by a vertical layer (`V`, height 1, unit vertical edges) or a
//! triangular layer (`T`, height 3/2, edges of length √3). Every row carries
//! horizontal edges of length √3, wrapping around the cylinder.
//!
//! Edge classes: 0 horizontal, 1 vertical, 2 right edge of an upward triangle,
//! 3 left edge of an upward triangle.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;

use super::patch::{EdgeId, Family, LatticePatch, PatchBuilder, VertexId};

pub const HORIZONTAL: u8 = 0;
pub const VERTICAL: u8 = 1;
pub const RIGHT: u8 = 2;
pub const LEFT: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Layer {
    V,
    T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Row {
    /// Doubled height.
    pub ay: i64,
    /// 0 or 1: vertex `k` sits at `x = (2k + offset)·√3/2`.
    pub offset: i64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixedLattice {
    pub patch: LatticePatch,
    pub layers: Vec<Layer>,
    pub width: usize,
    pub rows: Vec<Row>,
    vids: Vec<Vec<VertexId>>,
    edge_index: HashMap<(VertexId, VertexId), EdgeId>,
}

/// Builds `V^interface_height T^(height - interface_height)` on a cylinder with
/// `width` vertices per row.
pub fn build_mixed_lattice(interface_height: usize, width: usize, height: usize) -> Result<MixedLattice> {
    if interface_height > height {
        return Err(Error::invalid(format!(
            "interface height {interface_height} outside 0..={height}"
        )));
    }
    let mut layers = vec![Layer::V; interface_height];
    layers.extend(std::iter::repeat(Layer::T).take(height - interface_height));
    MixedLattice::from_layers(&layers, width)
}

impl MixedLattice {
    pub fn from_layers(layers: &[Layer], width: usize) -> Result<Self> {
        if width < 3 {
            return Err(Error::invalid("a mixed cylinder needs at least 3 vertices per row"));
        }
        if layers.is_empty() {
            return Err(Error::invalid("a mixed lattice needs at least one layer"));
        }
        let mut rows = vec![Row { ay: 0, offset: 0 }];
        for &l in layers {
            let last = *rows.last().unwrap();
            rows.push(match l {
                Layer::V => Row { ay: last.ay + 2, offset: last.offset },
                Layer::T => Row { ay: last.ay + 3, offset: 1 - last.offset },
            });
        }
        let w = width as i64;
        let wrap = Point::hex(2 * w, 0);
        let pos = |r: &Row, k: i64| Point::hex(2 * k.rem_euclid(w) + r.offset, r.ay);
        // wrap vector for an edge drawn towards the unreduced index `to`
        let wrap_of = |to: i64| Point::new(wrap.x * to.div_euclid(w), wrap.y);
        let mut b = PatchBuilder::new(Family::Mixed).periodic();
        for r in &rows {
            for k in 0..w {
                b.wrapped_edge(pos(r, k), pos(r, k + 1), wrap_of(k + 1), HORIZONTAL)?;
            }
        }
        for (i, &l) in layers.iter().enumerate() {
            let (lo, hi) = (rows[i], rows[i + 1]);
            for k in 0..w {
                match l {
                    Layer::V => b.edge(pos(&lo, k), pos(&hi, k), VERTICAL)?,
                    Layer::T => {
                        let ur = k + lo.offset;
                        let ul = k + lo.offset - 1;
                        b.wrapped_edge(pos(&lo, k), pos(&hi, ur), wrap_of(ur), LEFT)?;
                        b.wrapped_edge(pos(&lo, k), pos(&hi, ul), wrap_of(ul), RIGHT)?;
                    }
                }
            }
        }
        let patch = b.finish();
        let vids: Vec<Vec<VertexId>> = rows
            .iter()
            .map(|r| (0..w).map(|k| patch.vertex_at(pos(r, k)).expect("row vertex")).collect())
            .collect();
        let edge_index = patch
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| ((e.u.min(e.v), e.u.max(e.v)), i as EdgeId))
            .collect();
        Ok(MixedLattice { patch, layers: layers.to_vec(), width, rows, vids, edge_index })
    }

    /// Number of leading vertical layers (the square part below the interface).
    pub fn interface_height(&self) -> usize {
        self.layers.iter().take_while(|&&l| l == Layer::V).count()
    }

    /// Number of triangular layers directly above the interface.
    pub fn triangular_layers(&self) -> usize {
        self.layers[self.interface_height()..].iter().take_while(|&&l| l == Layer::T).count()
    }

    /// Vertical layers displaced to the top by earlier downward steps.
    pub fn top_vertical(&self) -> usize {
        self.layers.len() - self.interface_height() - self.triangular_layers()
    }

    /// Euclidean height of the interface row.
    pub fn interface_y(&self) -> f64 {
        self.rows[self.interface_height()].ay as f64 / 2.0
    }

    /// Circumference of the cylinder.
    pub fn circumference(&self) -> f64 {
        self.width as f64 * 3f64.sqrt()
    }

    pub fn vertex(&self, row: usize, k: i64) -> VertexId {
        self.vids[row][k.rem_euclid(self.width as i64) as usize]
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.edge_index.get(&(u.min(v), u.max(v))).copied()
    }

    /// Edge joining `(row_a, ka)` and `(row_b, kb)`.
    pub fn edge_at(&self, row_a: usize, ka: i64, row_b: usize, kb: i64) -> EdgeId {
        self.edge_between(self.vertex(row_a, ka), self.vertex(row_b, kb))
            .unwrap_or_else(|| panic!("no edge ({row_a},{ka})-({row_b},{kb})"))
    }

    /// Row index of each vertex.
    pub fn row_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.patch.num_vertices()];
        for (r, ids) in self.vids.iter().enumerate() {
            for &v in ids {
                out[v as usize] = r;
            }
        }
        out
    }
}

/// Direction of an interface move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepDirection {
    Down,
    Up,
}

/// One star–triangle pass exchanging two adjacent layers, with edges addressed
/// by id in the source and target lattices.
///
/// Triangles list their edges opposite the triangle's vertices 0, 1, 2; stars
/// list the two star arms they gather (triangle index, arm slot) and their own
/// surviving edge; outputs are the three triangle edges created from each
/// star, opposite its vertices 0, 1, 2.
#[derive(Debug, Clone)]
pub struct SwapPlan {
    pub lower_layer: usize,
    pub triangles: Vec<[EdgeId; 3]>,
    pub stars: Vec<StarPlan>,
    /// `(target edge, triangle)`: star arm 0 of the triangle becomes this edge.
    pub spokes: Vec<(EdgeId, usize)>,
    /// `(target edge, source edge)` for every untouched edge.
    pub copies: Vec<(EdgeId, EdgeId)>,
    pub target_edges: usize,
}

#[derive(Debug, Clone)]
pub struct StarPlan {
    /// Source edge serving as star arm 0.
    pub own: EdgeId,
    /// Arm 1 is arm `slot` of triangle `tri`.
    pub arm1: (usize, usize),
    pub arm2: (usize, usize),
    pub out: [EdgeId; 3],
}

/// Full interface move: the chain of lattices and the swaps between them.
#[derive(Debug, Clone)]
pub struct StepPlan {
    pub direction: StepDirection,
    pub lattices: Vec<MixedLattice>,
    pub swaps: Vec<SwapPlan>,
}

impl StepPlan {
    pub fn source(&self) -> &MixedLattice {
        &self.lattices[0]
    }

    pub fn target(&self) -> &MixedLattice {
        self.lattices.last().unwrap()
    }
}

impl MixedLattice {
    /// Plans a downward move (`Sd∘Tu`): the vertical layer under the interface
    /// is exchanged with each triangular layer in turn, ending on top.
    /// An upward move (`Su∘Td`) is the reverse, pulling a top vertical layer
    /// down to the interface.
    pub fn plan_step(&self, direction: StepDirection) -> Result<StepPlan> {
        let k = self.interface_height();
        let m = self.triangular_layers();
        let c = self.top_vertical();
        if m == 0 {
            return Err(Error::invalid("no triangular part: interface at the top boundary"));
        }
        let mut lattices = vec![self.clone()];
        let mut swaps = Vec::with_capacity(m);
        let pairs: Vec<usize> = match direction {
            StepDirection::Down => {
                if k == 0 {
                    return Err(Error::invalid("no square part: interface at the bottom boundary"));
                }
                (k - 1..k - 1 + m).collect()
            }
            StepDirection::Up => {
                if c == 0 {
                    return Err(Error::invalid("no displaced vertical layer to pull down"));
                }
                (k..k + m).rev().collect()
            }
        };
        for lower in pairs {
            let cur = lattices.last().unwrap();
            let mut layers = cur.layers.clone();
            layers.swap(lower, lower + 1);
            let next = MixedLattice::from_layers(&layers, self.width)?;
            let plan = match direction {
                StepDirection::Down => plan_swap_down(cur, &next, lower),
                StepDirection::Up => plan_swap_up(cur, &next, lower),
            };
            swaps.push(plan);
            lattices.push(next);
        }
        Ok(StepPlan { direction, lattices, swaps })
    }
}

fn copies_outside_row(src: &MixedLattice, dst: &MixedLattice, row: usize) -> Vec<(EdgeId, EdgeId)> {
    let dst_rows = dst.row_of();
    let mut out = Vec::new();
    for (i, e) in dst.patch.edges().iter().enumerate() {
        if dst_rows[e.u as usize] == row || dst_rows[e.v as usize] == row {
            continue;
        }
        let pu = src.patch.vertex_at(dst.patch.position(e.u)).expect("shared vertex");
        let pv = src.patch.vertex_at(dst.patch.position(e.v)).expect("shared vertex");
        out.push((i as EdgeId, src.edge_between(pu, pv).expect("shared edge")));
    }
    out
}

/// `(V, T)` at `(lower, lower+1)` becomes `(T, V)`; row `lower+1` is replaced
/// by the triangle centres.
fn plan_swap_down(src: &MixedLattice, dst: &MixedLattice, lower: usize) -> SwapPlan {
    let (r, w) = (lower, src.width as i64);
    let o = src.rows[r].offset;
    let mid = r + 1;
    let top = r + 2;
    // upward triangle i: base (mid,i)-(mid,i+1), apex (top,i+o);
    // vertex 0 apex, 1 the left base vertex, 2 the right one
    let triangles = (0..w)
        .map(|i| {
            [
                src.edge_at(mid, i, mid, i + 1),
                src.edge_at(mid, i + 1, top, i + o),
                src.edge_at(mid, i, top, i + o),
            ]
        })
        .collect();
    let centre = |i: i64| i + o;
    let mut stars = Vec::new();
    let mut spokes = Vec::new();
    for i in 0..w {
        // star at (mid,i): arms to (r,i), centre(i) (arm 1 of triangle i), centre(i-1) (arm 2 of triangle i-1)
        stars.push(StarPlan {
            own: src.edge_at(r, i, mid, i),
            arm1: (i as usize, 1),
            arm2: ((i - 1).rem_euclid(w) as usize, 2),
            out: [
                dst.edge_at(mid, centre(i - 1), mid, centre(i)),
                dst.edge_at(r, i, mid, centre(i - 1)),
                dst.edge_at(r, i, mid, centre(i)),
            ],
        });
        spokes.push((dst.edge_at(mid, centre(i), top, i + o), i as usize));
    }
    SwapPlan {
        lower_layer: lower,
        triangles,
        stars,
        spokes,
        copies: copies_outside_row(src, dst, mid),
        target_edges: dst.patch.num_edges(),
    }
}

/// `(T, V)` at `(lower, lower+1)` becomes `(V, T)`, the mirror image of
/// [`plan_swap_down`] using downward triangles.
fn plan_swap_up(src: &MixedLattice, dst: &MixedLattice, lower: usize) -> SwapPlan {
    let (r, w) = (lower, src.width as i64);
    let o = src.rows[r].offset;
    let mid = r + 1;
    let top = r + 2;
    // downward triangle j: base (mid,j)-(mid,j+1), apex (r, j+1-o);
    // vertex 0 apex, 1 the right base vertex, 2 the left one
    let triangles = (0..w)
        .map(|j| {
            [
                src.edge_at(mid, j, mid, j + 1),
                src.edge_at(mid, j, r, j + 1 - o),
                src.edge_at(mid, j + 1, r, j + 1 - o),
            ]
        })
        .collect();
    let centre = |j: i64| j + 1 - o;
    let mut stars = Vec::new();
    let mut spokes = Vec::new();
    for j in 0..w {
        // star at (mid,j): arms to (top,j), centre(j-1) (arm 1 of triangle j-1), centre(j) (arm 2 of triangle j)
        stars.push(StarPlan {
            own: src.edge_at(mid, j, top, j),
            arm1: ((j - 1).rem_euclid(w) as usize, 1),
            arm2: (j as usize, 2),
            out: [
                dst.edge_at(mid, centre(j - 1), mid, centre(j)),
                dst.edge_at(top, j, mid, centre(j)),
                dst.edge_at(top, j, mid, centre(j - 1)),
            ],
        });
        spokes.push((dst.edge_at(r, j + 1 - o, mid, centre(j)), j as usize));
    }
    SwapPlan {
        lower_layer: lower,
        triangles,
        stars,
        spokes,
        copies: copies_outside_row(src, dst, mid),
        target_edges: dst.patch.num_edges(),
    }
}
