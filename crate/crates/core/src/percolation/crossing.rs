//! Open crossings of rectangles and the square-lattice duality check.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::lattice::{EdgeId, Family, LatticePatch, PatchBuilder, VertexId};
use crate::report::{proportion_se, ExperimentReport};
use crate::rng::{run_replicas, stream_rng};
use crate::scalar::Scalar;

use super::config::{class_probabilities, fill_bits, BondConfig};

const EPS: f64 = 1e-9;

/// Closed axis-parallel rectangle `[x0, x1] × [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Rect {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        Rect { x0, y0, x1, y1 }
    }

    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    pub fn contains(&self, (x, y): (f64, f64)) -> bool {
        x >= self.x0 - EPS && x <= self.x1 + EPS && y >= self.y0 - EPS && y <= self.y1 + EPS
    }

    /// Grows (or, for negative `d`, shrinks) the rectangle by `dx` horizontally
    /// and `dy` vertically on each side.
    pub fn expand(&self, dx: f64, dy: f64) -> Rect {
        Rect::new(self.x0 - dx, self.y0 - dy, self.x1 + dx, self.y1 + dy)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.x0, self.y0, self.x1, self.y1].iter().all(|v| v.is_finite());
        if !finite || self.width() <= EPS || self.height() <= EPS {
            return Err(Error::invalid(format!("degenerate rectangle {self:?}")));
        }
        if (self.width() - self.height()).abs() <= EPS {
            return Err(Error::invalid(format!("square rectangle {self:?} has no longer direction")));
        }
        Ok(())
    }
}

impl std::fmt::Display for Rect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{}]x[{},{}]", self.x0, self.x1, self.y0, self.y1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// Left side to right side.
    Horizontal,
    /// Bottom side to top side.
    Vertical,
}

impl std::str::FromStr for Orientation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "h" | "horizontal" => Ok(Orientation::Horizontal),
            "v" | "vertical" => Ok(Orientation::Vertical),
            _ => Err(Error::invalid(format!("unknown orientation {s:?}"))),
        }
    }
}

/// Precomputed geometry of one rectangle in one patch: which vertices lie in
/// the closed rectangle, which lie on the two target sides, and which edges
/// leave the rectangle through those sides.
#[derive(Debug, Clone)]
pub struct RectIndex {
    pub rect: Rect,
    pub orientation: Orientation,
    inside: Vec<bool>,
    /// 1 on the start side, 2 on the end side, 3 on both.
    side: Vec<u8>,
    /// `(inside vertex, edge)` leaving through the start/end side.
    start_exits: Vec<(VertexId, EdgeId)>,
    end_exits: Vec<(VertexId, EdgeId)>,
    /// Edges with both ends inside, as local adjacency.
    adj: Vec<Vec<(VertexId, EdgeId)>>,
    inside_edges: Vec<EdgeId>,
    vertices: Vec<VertexId>,
}

impl RectIndex {
    pub fn new(patch: &LatticePatch, rect: Rect, orientation: Orientation) -> Result<Self> {
        rect.validate()?;
        let pos: Vec<(f64, f64)> = patch.positions().iter().map(|p| p.to_f64()).collect();
        let (mut lo, mut hi) = ((f64::INFINITY, f64::INFINITY), (f64::NEG_INFINITY, f64::NEG_INFINITY));
        for &(x, y) in &pos {
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        if rect.x0 < lo.0 - EPS || rect.x1 > hi.0 + EPS || rect.y0 < lo.1 - EPS || rect.y1 > hi.1 + EPS {
            return Err(Error::invalid(format!("rectangle {rect} leaves the patch")));
        }
        let n = patch.num_vertices();
        let inside: Vec<bool> = pos.iter().map(|&p| rect.contains(p)).collect();
        // along: coordinate in the crossing direction; across: the other one
        let split = |(x, y): (f64, f64)| match orientation {
            Orientation::Horizontal => (x, y),
            Orientation::Vertical => (y, x),
        };
        let (a0, a1, c0, c1) = match orientation {
            Orientation::Horizontal => (rect.x0, rect.x1, rect.y0, rect.y1),
            Orientation::Vertical => (rect.y0, rect.y1, rect.x0, rect.x1),
        };
        let side: Vec<u8> = (0..n)
            .map(|v| {
                if !inside[v] {
                    return 0;
                }
                let (a, _) = split(pos[v]);
                ((a - a0).abs() <= EPS) as u8 | (((a - a1).abs() <= EPS) as u8) << 1
            })
            .collect();
        let mut adj = vec![Vec::new(); n];
        let mut inside_edges = Vec::new();
        let mut start_exits = Vec::new();
        let mut end_exits = Vec::new();
        for (id, e) in patch.edges().iter().enumerate() {
            let id = id as EdgeId;
            if e.wrap != Point::default() {
                continue;
            }
            let (iu, iv) = (inside[e.u as usize], inside[e.v as usize]);
            if iu && iv {
                adj[e.u as usize].push((e.v, id));
                adj[e.v as usize].push((e.u, id));
                inside_edges.push(id);
                continue;
            }
            if iu == iv {
                continue;
            }
            let (w, out) = if iu { (e.u, e.v) } else { (e.v, e.u) };
            let (aw, cw) = split(pos[w as usize]);
            let (ao, co) = split(pos[out as usize]);
            for (line, list) in [(a0, &mut start_exits), (a1, &mut end_exits)] {
                // the segment must reach the side line within the side's extent
                if (aw - line) * (ao - line) > 0.0 || (ao - aw).abs() <= EPS {
                    continue;
                }
                let t = (line - aw) / (ao - aw);
                let c = cw + t * (co - cw);
                if t > EPS && c >= c0 - EPS && c <= c1 + EPS {
                    list.push((w, id));
                }
            }
        }
        let vertices = (0..n as VertexId).filter(|&v| inside[v as usize]).collect();
        Ok(RectIndex { rect, orientation, inside, side, start_exits, end_exits, adj, inside_edges, vertices })
    }

    pub fn is_inside(&self, v: VertexId) -> bool {
        self.inside[v as usize]
    }

    pub fn inside_vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Edges of the patch with both endpoints in the rectangle.
    pub fn inside_edges(&self) -> &[EdgeId] {
        &self.inside_edges
    }

    /// Edges that can end a crossing by leaving through a target side.
    pub fn exit_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.start_exits.iter().chain(&self.end_exits).map(|&(_, e)| e)
    }

    /// Inside vertices on a target side: bit 0 start, bit 1 end.
    pub fn sides(&self) -> impl Iterator<Item = (VertexId, u8)> + '_ {
        self.vertices.iter().map(|&v| (v, self.side[v as usize])).filter(|&(_, s)| s != 0)
    }

    /// `(inside vertex, edge, leaves through the end side)`.
    pub fn exits(&self) -> impl Iterator<Item = (VertexId, EdgeId, bool)> + '_ {
        let start = self.start_exits.iter().map(|&(v, e)| (v, e, false));
        start.chain(self.end_exits.iter().map(|&(v, e)| (v, e, true)))
    }

    fn sources(&self, open: &[bool]) -> Vec<VertexId> {
        let mut s: Vec<VertexId> = self.vertices.iter().copied().filter(|&v| self.side[v as usize] & 1 != 0).collect();
        s.extend(self.start_exits.iter().filter(|&&(_, e)| open[e as usize]).map(|&(v, _)| v));
        s
    }

    fn targets(&self, open: &[bool]) -> Vec<bool> {
        let mut t: Vec<bool> = self.side.iter().map(|s| s & 2 != 0).collect();
        for &(v, e) in &self.end_exits {
            if open[e as usize] {
                t[v as usize] = true;
            }
        }
        t
    }

    /// Whether `open` contains a crossing.
    pub fn crosses(&self, open: &[bool]) -> bool {
        self.crossing_path(open).is_some()
    }

    /// Vertices of one open crossing, from the start side to the end side.
    pub fn crossing_path(&self, open: &[bool]) -> Option<Vec<VertexId>> {
        let targets = self.targets(open);
        let mut parent: Vec<u32> = vec![u32::MAX; self.inside.len()];
        let mut queue = VecDeque::new();
        for v in self.sources(open) {
            if parent[v as usize] == u32::MAX {
                parent[v as usize] = v;
                queue.push_back(v);
            }
        }
        while let Some(v) = queue.pop_front() {
            if targets[v as usize] {
                let mut path = vec![v];
                let mut cur = v;
                while parent[cur as usize] != cur {
                    cur = parent[cur as usize];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &(w, e) in &self.adj[v as usize] {
                if open[e as usize] && parent[w as usize] == u32::MAX {
                    parent[w as usize] = v;
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

/// Whether `config` has an open crossing of `rect` in `orientation`.
pub fn has_crossing(config: &BondConfig<'_>, rect: Rect, orientation: Orientation) -> Result<bool> {
    Ok(RectIndex::new(config.patch, rect, orientation)?.crosses(&config.open))
}

/// Primal horizontal crossing of `[0, n+1] × [0, n]` against vertical crossing
/// of the dual rectangle `[1/2, n+1/2] × [-1/2, n+1/2]` by dual edges open
/// exactly where the primal edge they cross is closed.
#[derive(Debug, Clone)]
pub struct DualityChecker {
    pub n: usize,
    primal: RectIndex,
    dual_patch: LatticePatch,
    dual: RectIndex,
    /// Primal edge crossed by each dual edge.
    dual_to_primal: Vec<EdgeId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualityOutcome {
    pub primal: bool,
    pub dual: bool,
}

impl DualityOutcome {
    pub fn exclusive(&self) -> bool {
        self.primal != self.dual
    }
}

impl DualityChecker {
    pub fn new(patch: &LatticePatch) -> Result<Self> {
        let n = duality_size(patch)?;
        let ni = n as i64;
        let primal = RectIndex::new(
            patch,
            Rect::new(0.0, 0.0, (n + 1) as f64, n as f64),
            Orientation::Horizontal,
        )?;
        let mut b = PatchBuilder::new(Family::Square);
        let at = |i: i64, j: i64| Point::half(2 * i + 1, 2 * j + 1);
        for i in 0..=ni {
            for j in -1..=ni {
                b.vertex(at(i, j))?;
            }
        }
        for i in 0..=ni {
            for j in 0..=ni {
                // crosses the horizontal primal edge (i,j)-(i+1,j)
                b.edge(at(i, j - 1), at(i, j), 1)?;
            }
        }
        for i in 1..=ni {
            for j in 0..ni {
                // crosses the vertical primal edge (i,j)-(i,j+1)
                b.edge(at(i - 1, j), at(i, j), 0)?;
            }
        }
        let dual_patch = b.finish();
        let mut by_mid: HashMap<Point, EdgeId> = HashMap::new();
        for (id, e) in patch.edges().iter().enumerate() {
            by_mid.insert(patch.position(e.u) + patch.position(e.v), id as EdgeId);
        }
        let dual_to_primal = dual_patch
            .edges()
            .iter()
            .map(|e| {
                by_mid
                    .get(&(dual_patch.position(e.u) + dual_patch.position(e.v)))
                    .copied()
                    .ok_or_else(|| Error::Invariant("dual edge without primal partner".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let dual = RectIndex::new(
            &dual_patch,
            Rect::new(0.5, -0.5, n as f64 + 0.5, n as f64 + 0.5),
            Orientation::Vertical,
        )?;
        Ok(DualityChecker { n, primal, dual_patch, dual, dual_to_primal })
    }

    pub fn dual_patch(&self) -> &LatticePatch {
        &self.dual_patch
    }

    /// `ω_★(e_★) = 1 - ω(e)`.
    pub fn dual_bits(&self, open: &[bool]) -> Vec<bool> {
        self.dual_to_primal.iter().map(|&e| !open[e as usize]).collect()
    }

    pub fn check(&self, open: &[bool]) -> DualityOutcome {
        DualityOutcome { primal: self.primal.crosses(open), dual: self.dual.crosses(&self.dual_bits(open)) }
    }
}

/// `n` such that `patch` is the square lattice on `[0, n+1] × [0, n]`.
fn duality_size(patch: &LatticePatch) -> Result<usize> {
    let wrong = || Error::invalid("duality check needs the square patch [0, n+1] × [0, n]");
    if patch.family != Family::Square || patch.is_periodic() || patch.num_vertices() == 0 {
        return Err(wrong());
    }
    let mut max = (i64::MIN, i64::MIN);
    for p in patch.positions() {
        let [x, y] = p.axial();
        if x < 0 || y < 0 || x % 2 != 0 || y % 2 != 0 {
            return Err(wrong());
        }
        max = (max.0.max(x / 2), max.1.max(y / 2));
    }
    let n = max.1;
    let expected_edges = (n + 1) * (n + 1) + (n + 2) * n;
    if n < 1 || max.0 != n + 1 || patch.num_vertices() as i64 != (n + 2) * (n + 1)
        || patch.num_edges() as i64 != expected_edges
    {
        return Err(wrong());
    }
    Ok(n as usize)
}

/// Whether exactly one of the primal and dual crossings occurs.
pub fn check_crossing_duality(config: &BondConfig<'_>) -> Result<bool> {
    Ok(DualityChecker::new(config.patch)?.check(&config.open).exclusive())
}

/// Samples per replica job; fixed so results do not depend on the worker count.
pub(crate) const CHUNK: usize = 1024;

/// Splits `samples` into fixed chunks, runs `f(first, count)` on each and
/// returns the results in order.
pub(crate) fn chunked<T: Send>(samples: usize, workers: usize, f: impl Fn(usize, usize) -> T + Sync + Send) -> Vec<T> {
    let chunks = samples.div_ceil(CHUNK);
    run_replicas(chunks, workers, |c| {
        let first = c * CHUNK;
        f(first, CHUNK.min(samples - first))
    })
}

/// Monte Carlo crossing probability; sample `s` uses stream `s` of `seed`.
pub fn estimate_crossing_prob<T: Scalar>(
    patch: &LatticePatch,
    class_probs: &[T],
    rect: Rect,
    orientation: Orientation,
    samples: usize,
    seed: u64,
    workers: usize,
) -> Result<ExperimentReport> {
    if samples == 0 {
        return Err(Error::invalid("samples must be at least 1"));
    }
    let probs = class_probabilities(patch, class_probs)?;
    let index = RectIndex::new(patch, rect, orientation)?;
    let hits: usize = chunked(samples, workers, |first, count| {
        let mut open = Vec::new();
        let mut hits = 0;
        for s in first..first + count {
            fill_bits(patch, &probs, &mut stream_rng(seed, s as u64), &mut open);
            hits += index.crosses(&open) as usize;
        }
        hits
    })
    .into_iter()
    .sum();
    let est = hits as f64 / samples as f64;
    Ok(ExperimentReport::statistical(est, proportion_se(est, samples as u64), samples as u64, seed)
        .param("family", patch.family.name())
        .param("class_probs", probs)
        .param("rect", rect.to_string())
        .param("orientation", format!("{orientation:?}").to_lowercase()))
}

/// Crossing of `[0, n+1] × [0, n]` at density `p` with the primal/dual
/// exclusive-or checked on every sample.
pub fn duality_experiment(n: usize, p: f64, samples: usize, seed: u64, workers: usize) -> Result<ExperimentReport> {
    if samples == 0 {
        return Err(Error::invalid("samples must be at least 1"));
    }
    let patch = crate::lattice::square_rect(n + 1, n)?;
    let checker = DualityChecker::new(&patch)?;
    let probs = class_probabilities(&patch, &[p, p])?;
    let (hits, failures) = chunked(samples, workers, |first, count| {
        let mut open = Vec::new();
        let (mut hits, mut failures) = (0usize, 0usize);
        for s in first..first + count {
            fill_bits(&patch, &probs, &mut stream_rng(seed, s as u64), &mut open);
            let o = checker.check(&open);
            hits += o.primal as usize;
            failures += !o.exclusive() as usize;
        }
        (hits, failures)
    })
    .into_iter()
    .fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let est = hits as f64 / samples as f64;
    Ok(ExperimentReport::statistical(est, proportion_se(est, samples as u64), samples as u64, seed)
        .param("n", n)
        .param("p", p)
        .metric("xor_failures", failures))
}
