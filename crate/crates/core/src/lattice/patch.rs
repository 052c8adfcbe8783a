use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{segments_cross_improperly, Point, Surd};

pub type VertexId = u32;
pub type EdgeId = u32;

/// Default cap on the number of vertices a builder will produce.
pub const DEFAULT_MAX_VERTICES: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Square,
    Triangular,
    Hexagonal,
    #[serde(rename = "archimedean-3-12-2")]
    Archimedean3122,
    Mixed,
}

impl Family {
    /// Degree of every vertex of the infinite lattice (`None` for mixed lattices).
    pub fn lattice_degree(self) -> Option<usize> {
        match self {
            Family::Square => Some(4),
            Family::Triangular => Some(6),
            Family::Hexagonal | Family::Archimedean3122 => Some(3),
            Family::Mixed => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Square => "square",
            Family::Triangular => "triangular",
            Family::Hexagonal => "hexagonal",
            Family::Archimedean3122 => "archimedean-3-12-2",
            Family::Mixed => "mixed",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "square" | "sq" => Ok(Family::Square),
            "triangular" | "tri" => Ok(Family::Triangular),
            "hexagonal" | "hex" | "honeycomb" => Ok(Family::Hexagonal),
            "archimedean-3-12-2" | "fisher" | "3-12-12" => Ok(Family::Archimedean3122),
            "mixed" => Ok(Family::Mixed),
            other => Err(Error::invalid(format!("unknown lattice family {other:?}"))),
        }
    }
}

/// Parallel-class label of an edge. The meaning is family specific:
///
/// * square: 0 horizontal, 1 vertical
/// * triangular: 0 horizontal, 1 right edge of an upward triangle, 2 left edge
/// * hexagonal: 0 vertical, 1 rising to the right (angle π/6), 2 rising to the left (5π/6)
/// * archimedean-3-12-2: 0 triangular, 1 non-triangular
/// * mixed: 0 horizontal, 1 vertical, 2 right edge of an upward triangle, 3 left edge
pub type EdgeClass = u8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub class: EdgeClass,
    /// Translation applied to `v` when drawing the edge from `u`; zero unless the
    /// edge wraps around a periodic direction.
    pub wrap: Point,
}

impl Edge {
    pub fn other(&self, w: VertexId) -> VertexId {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// A finite embedded piece of a planar lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticePatch {
    pub family: Family,
    positions: Vec<Point>,
    edges: Vec<Edge>,
    adj_start: Vec<u32>,
    adj: Vec<(VertexId, EdgeId)>,
    /// Vertex standing for the outer face of a planar dual, if any.
    pub outer: Option<VertexId>,
    /// Declared boundary vertices (used by wired and partition boundary conditions).
    boundary: Vec<VertexId>,
    periodic: bool,
    /// Darts leaving each vertex in anticlockwise order (`2e` leaves `e.u`,
    /// `2e+1` leaves `e.v`); set for combinatorially embedded patches.
    pub(crate) rotation: Option<Vec<Vec<u32>>>,
    sorted: bool,
}

impl LatticePatch {
    pub fn num_vertices(&self) -> usize {
        self.positions.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn position(&self, v: VertexId) -> Point {
        self.positions[v as usize]
    }

    pub fn positions(&self) -> &[Point] {
        &self.positions
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e as usize]
    }

    /// `(neighbour, edge)` pairs at `v`.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        let s = self.adj_start[v as usize] as usize;
        let t = self.adj_start[v as usize + 1] as usize;
        &self.adj[s..t]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    pub fn boundary(&self) -> &[VertexId] {
        &self.boundary
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    pub fn vertex_at(&self, p: Point) -> Option<VertexId> {
        if !self.sorted {
            return self.positions.iter().position(|&q| q == p).map(|i| i as VertexId);
        }
        self.positions
            .binary_search_by(|q| q.axial().cmp(&p.axial()))
            .ok()
            .filter(|&i| self.positions[i] == p)
            .map(|i| i as VertexId)
    }

    /// Endpoints of `e` as drawn, `u` first.
    pub fn segment(&self, e: EdgeId) -> (Point, Point) {
        let ed = &self.edges[e as usize];
        (self.position(ed.u), self.position(ed.v) + ed.wrap)
    }

    /// Drawn displacement from `from` along edge `e` to its other endpoint.
    pub fn displacement(&self, e: EdgeId, from: VertexId) -> Point {
        let (a, b) = self.segment(e);
        if self.edges[e as usize].u == from {
            b - a
        } else {
            a - b
        }
    }

    /// Replaces the declared boundary set.
    pub fn with_boundary(mut self, mut boundary: Vec<VertexId>) -> Self {
        boundary.sort_unstable();
        boundary.dedup();
        self.boundary = boundary;
        self
    }

    pub fn is_connected(&self) -> bool {
        let n = self.num_vertices();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0u32]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &(w, _) in self.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }

    /// Graph distances from `source`.
    pub fn distances_from(&self, source: VertexId) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.num_vertices()];
        dist[source as usize] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v as usize].unwrap();
            for &(w, _) in self.neighbors(v) {
                if dist[w as usize].is_none() {
                    dist[w as usize] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Vertex closest to the centre of the bounding box (ties broken by id).
    pub fn central_vertex(&self) -> VertexId {
        let (mut lo, mut hi) = ((f64::MAX, f64::MAX), (f64::MIN, f64::MIN));
        for p in &self.positions {
            let (x, y) = p.to_f64();
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        let c = ((lo.0 + hi.0) / 2.0, (lo.1 + hi.1) / 2.0);
        let mut best = (f64::MAX, 0);
        for (i, p) in self.positions.iter().enumerate() {
            let (x, y) = p.to_f64();
            let d = (x - c.0).powi(2) + (y - c.1).powi(2);
            if d < best.0 - 1e-12 {
                best = (d, i as VertexId);
            }
        }
        best.1
    }

    /// Checks connectivity, simplicity and edge lengths.
    ///
    /// Allowed edge lengths are 1 and √3 (and √2 for rotated tori). Parallel
    /// edges are accepted only on periodic patches and planar duals.
    pub fn validate(&self) -> Result<()> {
        if !self.is_connected() {
            return Err(Error::Invariant("patch is not connected".into()));
        }
        let mut seen = HashSet::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.u == e.v && e.wrap == Point::default() {
                return Err(Error::Invariant(format!("edge {i} is a self-loop")));
            }
            let key = (e.u.min(e.v), e.u.max(e.v));
            if !seen.insert(key) && !self.periodic && self.outer.is_none() {
                return Err(Error::Invariant(format!("edge {i} is parallel to another")));
            }
            if self.outer.is_some() {
                continue;
            }
            let (a, b) = self.segment(i as EdgeId);
            let len = (b - a).norm2_x4();
            if ![Surd::int(4), Surd::int(12), Surd::int(8)].contains(&len) {
                return Err(Error::Invariant(format!("edge {i} has length² {}", len.to_f64() / 4.0)));
            }
        }
        Ok(())
    }

    /// Embedded edges meet only at shared endpoints (exact arithmetic, quadratic time).
    pub fn check_planarity(&self) -> Result<()> {
        if self.periodic {
            return Err(Error::invalid("periodic patches have no planar embedding"));
        }
        let segs: Vec<(Point, Point)> = (0..self.edges.len() as EdgeId)
            .filter(|&e| {
                let ed = self.edge(e);
                Some(ed.u) != self.outer && Some(ed.v) != self.outer
            })
            .map(|e| self.segment(e))
            .collect();
        for i in 0..segs.len() {
            for j in i + 1..segs.len() {
                let (p1, p2) = segs[i];
                let (q1, q2) = segs[j];
                if segments_cross_improperly(p1, p2, q1, q2) {
                    return Err(Error::Invariant(format!("edges {i} and {j} cross")));
                }
            }
        }
        Ok(())
    }

    /// Edge classes present, sorted.
    pub fn classes(&self) -> Vec<EdgeClass> {
        let mut c: Vec<_> = self.edges.iter().map(|e| e.class).collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    /// Number of distinct class labels the family uses.
    pub fn class_count(&self) -> usize {
        match self.family {
            Family::Square | Family::Archimedean3122 => 2,
            Family::Triangular | Family::Hexagonal => 3,
            Family::Mixed => 4,
        }
    }
}

/// Incremental builder that deduplicates vertices by position.
#[derive(Debug)]
pub struct PatchBuilder {
    family: Family,
    points: Vec<Point>,
    index: HashMap<Point, VertexId>,
    edges: Vec<(VertexId, VertexId, EdgeClass, Point)>,
    edge_keys: HashSet<(VertexId, VertexId, Point)>,
    max_vertices: usize,
    periodic: bool,
    allow_multi: bool,
}

impl PatchBuilder {
    pub fn new(family: Family) -> Self {
        PatchBuilder {
            family,
            points: Vec::new(),
            index: HashMap::new(),
            edges: Vec::new(),
            edge_keys: HashSet::new(),
            max_vertices: DEFAULT_MAX_VERTICES,
            periodic: false,
            allow_multi: false,
        }
    }

    pub fn max_vertices(mut self, max: usize) -> Self {
        self.max_vertices = max;
        self
    }

    pub fn periodic(mut self) -> Self {
        self.periodic = true;
        self
    }

    /// Keeps parallel edges distinct even without wrap vectors.
    pub fn multigraph(mut self) -> Self {
        self.allow_multi = true;
        self
    }

    pub fn vertex(&mut self, p: Point) -> Result<VertexId> {
        if let Some(&id) = self.index.get(&p) {
            return Ok(id);
        }
        if self.points.len() >= self.max_vertices {
            return Err(Error::invalid(format!(
                "patch would exceed the configured maximum of {} vertices",
                self.max_vertices
            )));
        }
        let id = self.points.len() as VertexId;
        self.points.push(p);
        self.index.insert(p, id);
        Ok(id)
    }

    pub fn edge(&mut self, a: Point, b: Point, class: EdgeClass) -> Result<()> {
        self.wrapped_edge(a, b, Point::default(), class)
    }

    /// Edge from `a` to the vertex at `b`, drawn as ending at `b + wrap`.
    pub fn wrapped_edge(&mut self, a: Point, b: Point, wrap: Point, class: EdgeClass) -> Result<()> {
        let u = self.vertex(a)?;
        let v = self.vertex(b)?;
        self.edge_ids(u, v, wrap, class);
        Ok(())
    }

    pub fn edge_ids(&mut self, u: VertexId, v: VertexId, wrap: Point, class: EdgeClass) {
        let key = if (u, wrap.axial()) <= (v, (-wrap).axial()) { (u, v, wrap) } else { (v, u, -wrap) };
        if self.allow_multi || self.edge_keys.insert(key) {
            self.edges.push((u, v, class, wrap));
        }
    }

    pub fn has_point(&self, p: Point) -> bool {
        self.index.contains_key(&p)
    }

    /// Sorts vertices lexicographically by axial coordinates and freezes the patch.
    pub fn finish(self) -> LatticePatch {
        let mut order: Vec<usize> = (0..self.points.len()).collect();
        order.sort_by_key(|&i| self.points[i].axial());
        let mut remap = vec![0u32; self.points.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new as VertexId;
        }
        let positions: Vec<Point> = order.iter().map(|&i| self.points[i]).collect();
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|&(u, v, class, wrap)| {
                let (nu, nv) = (remap[u as usize], remap[v as usize]);
                if nu <= nv {
                    Edge { u: nu, v: nv, class, wrap }
                } else {
                    Edge { u: nv, v: nu, class, wrap: -wrap }
                }
            })
            .collect();
        if !self.allow_multi {
            edges.sort_by_key(|e| (e.u, e.v, e.wrap.axial()));
        }
        let mut patch = assemble(self.family, positions, edges, self.periodic, None);
        patch.sorted = true;
        patch
    }
}

pub(crate) fn assemble(
    family: Family,
    positions: Vec<Point>,
    edges: Vec<Edge>,
    periodic: bool,
    outer: Option<VertexId>,
) -> LatticePatch {
    let n = positions.len();
    let mut deg = vec![0u32; n + 1];
    for e in &edges {
        deg[e.u as usize] += 1;
        deg[e.v as usize] += 1;
    }
    let mut adj_start = vec![0u32; n + 1];
    for v in 0..n {
        adj_start[v + 1] = adj_start[v] + deg[v];
    }
    let mut fill = adj_start.clone();
    let mut adj = vec![(0u32, 0u32); adj_start[n] as usize];
    for (i, e) in edges.iter().enumerate() {
        adj[fill[e.u as usize] as usize] = (e.v, i as EdgeId);
        fill[e.u as usize] += 1;
        adj[fill[e.v as usize] as usize] = (e.u, i as EdgeId);
        fill[e.v as usize] += 1;
    }
    let mut patch = LatticePatch {
        family,
        positions,
        edges,
        adj_start,
        adj,
        outer,
        boundary: Vec::new(),
        periodic,
        rotation: None,
        sorted: false,
    };
    if let Some(full) = family.lattice_degree() {
        if !periodic {
            patch.boundary = (0..n as VertexId).filter(|&v| patch.degree(v) < full).collect();
        }
    }
    patch
}
