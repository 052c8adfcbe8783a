//! Graph-file format shared by the CLI and the tests.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point, Surd};

use super::patch::{assemble, Edge, Family, LatticePatch, VertexId};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GraphFile {
    pub family: Family,
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<EdgeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<Vec<VertexId>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct VertexRecord {
    pub id: VertexId,
    pub axial: [i64; 2],
    /// `[[a, b], [a, b]]`: each axis is `a/2 + b·√3/2`.
    pub embed: [[i64; 2]; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EdgeRecord {
    pub u: VertexId,
    pub v: VertexId,
    pub class: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wrap: Option<[[i64; 2]; 2]>,
}

fn embed(p: Point) -> [[i64; 2]; 2] {
    [[p.x.a, p.x.b], [p.y.a, p.y.b]]
}

fn point(e: [[i64; 2]; 2]) -> Point {
    Point::new(Surd::new(e[0][0], e[0][1]), Surd::new(e[1][0], e[1][1]))
}

impl GraphFile {
    pub fn from_patch(patch: &LatticePatch) -> Self {
        let mut order: Vec<VertexId> = (0..patch.num_vertices() as VertexId).collect();
        order.sort_by_key(|&v| (patch.position(v).axial(), v));
        let mut rank = vec![0; order.len()];
        for (i, &v) in order.iter().enumerate() {
            rank[v as usize] = i as VertexId;
        }
        let vertices = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let p = patch.position(v);
                VertexRecord { id: i as VertexId, axial: p.axial(), embed: embed(p) }
            })
            .collect();
        let edges = patch
            .edges()
            .iter()
            .map(|e| EdgeRecord {
                u: rank[e.u as usize],
                v: rank[e.v as usize],
                class: e.class,
                wrap: (e.wrap != Point::default()).then(|| embed(e.wrap)),
            })
            .collect();
        let boundary = if patch.boundary().is_empty() {
            None
        } else {
            let mut b: Vec<VertexId> = patch.boundary().iter().map(|&v| rank[v as usize]).collect();
            b.sort_unstable();
            Some(b)
        };
        GraphFile { family: patch.family, vertices, edges, boundary }
    }

    pub fn to_patch(&self) -> Result<LatticePatch> {
        let n = self.vertices.len();
        let mut positions = vec![Point::default(); n];
        let mut seen = vec![false; n];
        for r in &self.vertices {
            let i = r.id as usize;
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::invalid(format!("vertex ids must be 0..{n} without repeats")));
            }
            positions[i] = point(r.embed);
            if positions[i].axial() != r.axial {
                return Err(Error::invalid(format!("vertex {i}: axial coordinates disagree with embedding")));
            }
        }
        let mut periodic = false;
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            if e.u as usize >= n || e.v as usize >= n {
                return Err(Error::invalid("edge endpoint out of range"));
            }
            let wrap = e.wrap.map(point).unwrap_or_default();
            periodic |= wrap != Point::default();
            edges.push(Edge { u: e.u, v: e.v, class: e.class, wrap });
        }
        let patch = assemble(self.family, positions, edges, periodic, None);
        patch.validate()?;
        Ok(match &self.boundary {
            Some(b) => patch.with_boundary(b.clone()),
            None => patch,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("bad graph file: {e}")))
    }
}
