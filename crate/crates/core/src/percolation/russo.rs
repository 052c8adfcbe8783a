//! Pivotal edges of crossing events and Russo's formula.

use std::collections::VecDeque;

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::lattice::{EdgeId, LatticePatch};
use crate::report::{ExperimentReport, MeanAcc};
use crate::rng::stream_rng;
use crate::scalar::check_probability;

use super::config::BondConfig;
use super::crossing::{chunked, Orientation, Rect, RectIndex};

/// Undirected multigraph on the rectangle's vertices plus a source `S` (start
/// side) and sink `T` (end side); `None` marks the side attachments.
struct Augmented {
    s: usize,
    t: usize,
    adj: Vec<Vec<(usize, usize)>>,
    ends: Vec<(usize, usize, Option<EdgeId>)>,
}

impl Augmented {
    fn new(index: &RectIndex, patch: &LatticePatch, open: &[bool]) -> Self {
        let n = patch.num_vertices();
        let (s, t) = (n, n + 1);
        let mut g = Augmented { s, t, adj: vec![Vec::new(); n + 2], ends: Vec::new() };
        for &e in index.inside_edges() {
            if open[e as usize] {
                let ed = patch.edge(e);
                g.push(ed.u as usize, ed.v as usize, Some(e));
            }
        }
        for (v, side) in index.sides() {
            if side & 1 != 0 {
                g.push(s, v as usize, None);
            }
            if side & 2 != 0 {
                g.push(v as usize, t, None);
            }
        }
        for (v, e, end) in index.exits() {
            if open[e as usize] {
                if end {
                    g.push(v as usize, t, Some(e));
                } else {
                    g.push(s, v as usize, Some(e));
                }
            }
        }
        g
    }

    fn push(&mut self, a: usize, b: usize, e: Option<EdgeId>) {
        let id = self.ends.len();
        self.ends.push((a, b, e));
        self.adj[a].push((b, id));
        self.adj[b].push((a, id));
    }

    fn reach(&self, from: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        let mut q = VecDeque::from([from]);
        seen[from] = true;
        while let Some(v) = q.pop_front() {
            for &(w, _) in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
        seen
    }

    /// Edge ids on one `S`–`T` path, if any.
    fn path(&self) -> Option<Vec<usize>> {
        let mut via = vec![usize::MAX; self.adj.len()];
        let mut q = VecDeque::from([self.s]);
        via[self.s] = usize::MAX - 1;
        while let Some(v) = q.pop_front() {
            if v == self.t {
                let mut out = Vec::new();
                let mut cur = v;
                while cur != self.s {
                    let id = via[cur];
                    out.push(id);
                    let (a, b, _) = self.ends[id];
                    cur = if a == cur { b } else { a };
                }
                return Some(out);
            }
            for &(w, id) in &self.adj[v] {
                if via[w] == usize::MAX {
                    via[w] = id;
                    q.push_back(w);
                }
            }
        }
        None
    }

    /// Bridges of the component of `S`, by iterative lowpoint search.
    fn bridges(&self) -> Vec<bool> {
        let n = self.adj.len();
        let mut is_bridge = vec![false; self.ends.len()];
        let mut disc = vec![u32::MAX; n];
        let mut low = vec![0u32; n];
        let mut timer = 0;
        // frame: (vertex, edge used to enter, next neighbour index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(self.s, usize::MAX, 0)];
        disc[self.s] = 0;
        low[self.s] = 0;
        while let Some(&mut (v, pe, ref mut i)) = stack.last_mut() {
            if *i < self.adj[v].len() {
                let (w, id) = self.adj[v][*i];
                *i += 1;
                if id == pe {
                    continue;
                }
                if disc[w] == u32::MAX {
                    timer += 1;
                    disc[w] = timer;
                    low[w] = timer;
                    stack.push((w, id, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(u, _, _)) = stack.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] > disc[u] {
                        is_bridge[pe] = true;
                    }
                }
            }
        }
        is_bridge
    }
}

/// Edges whose state flip toggles the crossing event of `index`.
pub fn pivotal_edges(index: &RectIndex, patch: &LatticePatch, open: &[bool]) -> Vec<EdgeId> {
    let g = Augmented::new(index, patch, open);
    let mut out = Vec::new();
    if let Some(path) = g.path() {
        let bridges = g.bridges();
        out.extend(path.into_iter().filter(|&id| bridges[id]).filter_map(|id| g.ends[id].2));
    } else {
        let (from_s, from_t) = (g.reach(g.s), g.reach(g.t));
        let joins = |a: usize, b: usize| (from_s[a] && from_t[b]) || (from_s[b] && from_t[a]);
        for &e in index.inside_edges() {
            let ed = patch.edge(e);
            if !open[e as usize] && joins(ed.u as usize, ed.v as usize) {
                out.push(e);
            }
        }
        for (v, e, end) in index.exits() {
            let hit = if end { from_s[v as usize] } else { from_t[v as usize] };
            if !open[e as usize] && hit {
                out.push(e);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Number of pivotal edges for the crossing of `rect`.
pub fn russo_pivotal_count(config: &BondConfig<'_>, rect: Rect, orientation: Orientation) -> Result<usize> {
    let index = RectIndex::new(config.patch, rect, orientation)?;
    Ok(pivotal_edges(&index, config.patch, &config.open).len())
}

/// Mean pivotal count at homogeneous density `p`, with the coupled central
/// difference `[P_{p+δ}(A) - P_{p-δ}(A)] / 2δ` on the same uniforms as a
/// cross-check (metrics `finite_difference`, `finite_difference_se`).
#[allow(clippy::too_many_arguments)]
pub fn estimate_russo_derivative(
    patch: &LatticePatch,
    p: f64,
    rect: Rect,
    orientation: Orientation,
    delta: f64,
    samples: usize,
    seed: u64,
    workers: usize,
) -> Result<ExperimentReport> {
    check_probability(&p, "p")?;
    if samples == 0 || !(delta > 0.0) || p - delta < 0.0 || p + delta > 1.0 {
        return Err(Error::invalid("need samples >= 1 and 0 <= p - δ < p + δ <= 1"));
    }
    let index = RectIndex::new(patch, rect, orientation)?;
    let parts = chunked(samples, workers, |first, count| {
        let (mut piv, mut fd, mut hits) = (MeanAcc::default(), MeanAcc::default(), 0usize);
        let mut u = Vec::with_capacity(patch.num_edges());
        for s in first..first + count {
            let mut rng = stream_rng(seed, s as u64);
            u.clear();
            u.extend((0..patch.num_edges()).map(|_| rng.random::<f64>()));
            let at = |q: f64| u.iter().map(|&x| x < q).collect::<Vec<bool>>();
            let open = at(p);
            piv.push(pivotal_edges(&index, patch, &open).len() as f64);
            let hi = index.crosses(&at(p + delta));
            let lo = index.crosses(&at(p - delta));
            fd.push((hi as i32 - lo as i32) as f64);
            hits += index.crosses(&open) as usize;
        }
        (piv, fd, hits)
    });
    let (mut piv, mut fd, mut hits) = (MeanAcc::default(), MeanAcc::default(), 0);
    for (a, b, h) in &parts {
        piv.merge(a);
        fd.merge(b);
        hits += h;
    }
    Ok(ExperimentReport::statistical(piv.mean(), piv.se(), samples as u64, seed)
        .param("family", patch.family.name())
        .param("p", p)
        .param("delta", delta)
        .param("rect", rect.to_string())
        .metric("finite_difference", fd.mean() / (2.0 * delta))
        .metric("finite_difference_se", fd.se() / (2.0 * delta))
        .metric("crossing_probability", hits as f64 / samples as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::square_rect;
    use crate::percolation::sample_config;

    fn brute(index: &RectIndex, open: &[bool]) -> Vec<EdgeId> {
        let base = index.crosses(open);
        let mut v = open.to_vec();
        (0..open.len() as EdgeId)
            .filter(|&e| {
                v[e as usize] = !v[e as usize];
                let flipped = index.crosses(&v);
                v[e as usize] = !v[e as usize];
                flipped != base
            })
            .collect()
    }

    #[test]
    fn pivotals_match_brute_force() {
        let patch = square_rect(7, 6).unwrap();
        for (rect, o) in [
            (Rect::new(0.0, 0.0, 7.0, 6.0), Orientation::Horizontal),
            (Rect::new(0.5, 0.5, 6.5, 3.5), Orientation::Horizontal),
            (Rect::new(1.0, 0.0, 4.5, 6.0), Orientation::Vertical),
        ] {
            let index = RectIndex::new(&patch, rect, o).unwrap();
            for s in 0..150 {
                let c = sample_config(&patch, &[0.5, 0.5], 21, s).unwrap();
                assert_eq!(pivotal_edges(&index, &patch, &c.open), brute(&index, &c.open), "sample {s}");
            }
        }
    }

    #[test]
    fn all_open_has_no_pivotal_in_wide_rect() {
        let patch = square_rect(5, 4).unwrap();
        let c = BondConfig::all(&patch, true);
        assert_eq!(russo_pivotal_count(&c, Rect::new(0.0, 0.0, 5.0, 4.0), Orientation::Horizontal).unwrap(), 0);
        // a one-row strip: every horizontal edge is a cut edge
        let strip = square_rect(5, 1).unwrap();
        let c = BondConfig::all(&strip, true);
        let r = Rect::new(0.0, 0.0, 5.0, 0.5);
        let index = RectIndex::new(&strip, r, Orientation::Horizontal).unwrap();
        assert_eq!(pivotal_edges(&index, &strip, &c.open).len(), 5);
    }
}
