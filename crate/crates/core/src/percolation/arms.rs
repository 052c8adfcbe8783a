//! Arm events in square-lattice annuli, cluster radii and the box-crossing
//! threshold `n₀` of a lattice.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::lattice::{lattice_ball, square_box, EdgeId, Family, LatticePatch, VertexId};
use crate::report::{proportion_se, ExperimentReport};
use crate::rng::stream_rng;
use crate::scalar::{check_probability, Scalar};

use super::config::{class_probabilities, fill_bits, label_open, BondConfig};
use super::crossing::{chunked, Orientation, Rect, RectIndex};

/// Colours (1 primal open, 0 dual open) of arms crossing `Λ_n ∖ Λ_{N-1}`,
/// listed anticlockwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArmSpec {
    pub colours: Vec<u8>,
    pub inner: usize,
    pub outer: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArmClass {
    Monochromatic(u8),
    /// Colours alternate around the circle (even length).
    Alternating,
    /// Neither; not supported by the detector.
    Polychromatic,
}

impl ArmSpec {
    pub fn new(colours: Vec<u8>, inner: usize, outer: usize) -> Result<Self> {
        if colours.is_empty() || colours.iter().any(|&c| c > 1) {
            return Err(Error::invalid("arm colours must be a non-empty sequence of 0s and 1s"));
        }
        if inner == 0 || inner >= outer {
            return Err(Error::invalid(format!("need 1 <= N < n, got N={inner}, n={outer}")));
        }
        Ok(ArmSpec { colours, inner, outer })
    }

    pub fn alternating(k: usize, inner: usize, outer: usize) -> Result<Self> {
        Self::new((0..k).map(|i| (1 - i % 2) as u8).collect(), inner, outer)
    }

    pub fn classify(&self) -> ArmClass {
        let c = &self.colours;
        if c.iter().all(|&x| x == c[0]) {
            ArmClass::Monochromatic(c[0])
        } else if c.len() % 2 == 0 && (0..c.len()).all(|i| c[i] != c[(i + 1) % c.len()]) {
            ArmClass::Alternating
        } else {
            ArmClass::Polychromatic
        }
    }
}

fn sup(p: Point) -> i64 {
    let [x, y] = p.axial();
    x.abs().max(y.abs())
}

/// Primal and dual graphs of an annulus with their boundary rings. Coordinates
/// are doubled, so the primal annulus is `2N <= |v|∞ <= 2n`.
#[derive(Debug, Clone)]
pub struct Annulus {
    pub spec: ArmSpec,
    /// Primal edges with both ends in the annulus, and their dual vertices.
    primal_edges: Vec<(EdgeId, VertexId, VertexId, usize, usize)>,
    primal_ring: Vec<u8>,
    dual_ring: Vec<u8>,
    vertices: usize,
}

impl Annulus {
    pub fn new(patch: &LatticePatch, spec: ArmSpec) -> Result<Self> {
        if patch.family != Family::Square || patch.is_periodic() {
            return Err(Error::invalid("arm events are defined on a square-lattice box"));
        }
        let (lo, hi) = (2 * spec.inner as i64, 2 * spec.outer as i64);
        let present = patch.positions().iter().filter(|&&p| sup(p) <= hi).count() as i64;
        if present != (hi + 1) * (hi + 1) {
            return Err(Error::invalid(format!("patch does not contain the box Λ_{}", spec.outer)));
        }
        let ring = |p: Point, a: i64, b: i64| -> u8 {
            let s = sup(p);
            (s == a) as u8 | ((s == b) as u8) << 1
        };
        let primal_ring: Vec<u8> = patch.positions().iter().map(|&p| ring(p, lo, hi)).collect();
        let mut faces: HashMap<Point, usize> = HashMap::new();
        let mut dual_ring = Vec::new();
        let mut face = |p: Point| {
            *faces.entry(p).or_insert_with(|| {
                dual_ring.push(ring(p, lo - 1, hi + 1));
                dual_ring.len() - 1
            })
        };
        let mut primal_edges = Vec::new();
        for (id, e) in patch.edges().iter().enumerate() {
            let (a, b) = (patch.position(e.u), patch.position(e.v));
            if ![a, b].iter().all(|&p| (lo..=hi).contains(&sup(p))) {
                continue;
            }
            let d = b - a;
            let normal = Point::new(d.y, -d.x);
            let mid = a + b;
            // face centres, doubled: (a + b)/2 ± normal/2
            let centre = |sgn: i64| Point::half((mid.x.a + sgn * normal.x.a) / 2, (mid.y.a + sgn * normal.y.a) / 2);
            let f1 = face(centre(1));
            let f2 = face(centre(-1));
            primal_edges.push((id as EdgeId, e.u, e.v, f1, f2));
        }
        Ok(Annulus { spec, primal_edges, primal_ring, dual_ring, vertices: patch.num_vertices() })
    }

    /// `(u, v)` pairs of the open graph of `colour`.
    fn graph(&self, open: &[bool], colour: u8) -> (usize, Vec<(usize, usize)>, &[u8]) {
        if colour == 1 {
            let e = self.primal_edges.iter().filter(|x| open[x.0 as usize]).map(|x| (x.1 as usize, x.2 as usize));
            (self.vertices, e.collect(), &self.primal_ring)
        } else {
            let e = self.primal_edges.iter().filter(|x| !open[x.0 as usize]).map(|x| (x.3, x.4));
            (self.dual_ring.len(), e.collect(), &self.dual_ring)
        }
    }

    /// Number of vertex-disjoint arms of `colour`, capped at `cap`.
    pub fn disjoint_arms(&self, open: &[bool], colour: u8, cap: usize) -> usize {
        let (n, edges, ring) = self.graph(open, colour);
        let mut f = Flow::new(2 * n + 2);
        let (s, t) = (2 * n, 2 * n + 1);
        for v in 0..n {
            f.add(2 * v, 2 * v + 1);
            if ring[v] & 1 != 0 {
                f.add(s, 2 * v);
            }
            if ring[v] & 2 != 0 {
                f.add(2 * v + 1, t);
            }
        }
        for (u, v) in edges {
            f.add(2 * u + 1, 2 * v);
            f.add(2 * v + 1, 2 * u);
        }
        f.max_flow(s, t, cap)
    }

    /// Open clusters of `colour` meeting both rings.
    pub fn crossing_clusters(&self, open: &[bool], colour: u8) -> usize {
        let (n, edges, ring) = self.graph(open, colour);
        let labels = label_open(n, edges.into_iter().map(|(u, v)| (u as u32, v as u32)));
        let mut hits = vec![0u8; n];
        for v in 0..n {
            hits[labels.label(v as u32) as usize] |= ring[v];
        }
        hits.iter().filter(|&&h| h == 3).count()
    }

    pub fn occurs(&self, open: &[bool]) -> Result<bool> {
        let k = self.spec.colours.len();
        match self.spec.classify() {
            ArmClass::Monochromatic(c) => Ok(self.disjoint_arms(open, c, k) >= k),
            ArmClass::Alternating if k == 2 => {
                Ok(self.crossing_clusters(open, 1) >= 1 && self.crossing_clusters(open, 0) >= 1)
            }
            // distinct crossing clusters are separated by dual crossings, and
            // conversely arms split by dual arms lie in distinct clusters
            ArmClass::Alternating => Ok(self.crossing_clusters(open, 1) >= k / 2),
            ArmClass::Polychromatic => Err(Error::invalid(format!(
                "colour sequence {:?} is neither monochromatic nor alternating",
                self.spec.colours
            ))),
        }
    }
}

/// Unit-capacity residual graph.
struct Flow {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u8>,
}

impl Flow {
    fn new(n: usize) -> Self {
        Flow { head: vec![Vec::new(); n], to: Vec::new(), cap: Vec::new() }
    }

    fn add(&mut self, a: usize, b: usize) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(1);
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    fn max_flow(&mut self, s: usize, t: usize, cap: usize) -> usize {
        let mut flow = 0;
        while flow < cap {
            let mut via = vec![usize::MAX; self.head.len()];
            let mut q = VecDeque::from([s]);
            let mut found = false;
            while let Some(v) = q.pop_front() {
                if v == t {
                    found = true;
                    break;
                }
                for &a in &self.head[v] {
                    let w = self.to[a];
                    if self.cap[a] > 0 && via[w] == usize::MAX && w != s {
                        via[w] = a;
                        q.push_back(w);
                    }
                }
            }
            if !found {
                break;
            }
            let mut v = t;
            while v != s {
                let a = via[v];
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                v = self.to[a ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

/// Whether `config` (on a square box containing `Λ_n`) has the arm event.
pub fn arm_event_occurs(config: &BondConfig<'_>, arms: &ArmSpec) -> Result<bool> {
    Annulus::new(config.patch, arms.clone())?.occurs(&config.open)
}

/// Monte Carlo probability of the arm event at homogeneous density `p` on `Λ_n`.
pub fn estimate_arm_prob(arms: &ArmSpec, p: f64, samples: usize, seed: u64, workers: usize) -> Result<ExperimentReport> {
    check_probability(&p, "p")?;
    if samples == 0 {
        return Err(Error::invalid("samples must be at least 1"));
    }
    let patch = square_box(arms.outer)?;
    let annulus = Annulus::new(&patch, arms.clone())?;
    annulus.occurs(&vec![true; patch.num_edges()])?;
    let probs = [p, p];
    let hits: usize = chunked(samples, workers, |first, count| {
        let mut open = Vec::new();
        let mut hits = 0;
        for s in first..first + count {
            fill_bits(&patch, &probs, &mut stream_rng(seed, s as u64), &mut open);
            hits += annulus.occurs(&open).unwrap_or(false) as usize;
        }
        hits
    })
    .into_iter()
    .sum();
    let est = hits as f64 / samples as f64;
    Ok(ExperimentReport::statistical(est, proportion_se(est, samples as u64), samples as u64, seed)
        .param("colours", arms.colours.clone())
        .param("inner", arms.inner)
        .param("outer", arms.outer)
        .param("p", p))
}

/// Empirical law of the sup-norm radius of the cluster at the patch centre.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusHistogram {
    /// `counts[r]`: samples with radius `r` whose cluster stayed off the boundary.
    pub counts: Vec<u64>,
    /// Samples whose cluster reached the patch boundary (radius censored).
    pub censored: u64,
    pub samples: u64,
    pub seed: u64,
}

impl RadiusHistogram {
    /// `P(rad >= r)`, counting censored samples as surviving every radius.
    pub fn survival(&self, r: usize) -> f64 {
        let tail: u64 = self.counts.iter().skip(r).sum::<u64>() + self.censored;
        tail as f64 / self.samples as f64
    }

    /// Least-squares slope of `log P(rad >= r)` against `log r` over `r >= 1`
    /// with positive survival.
    pub fn log_log_slope(&self) -> Option<f64> {
        let pts: Vec<(f64, f64)> = (1..self.counts.len())
            .map(|r| (r as f64, self.survival(r)))
            .filter(|&(_, s)| s > 0.0)
            .map(|(r, s)| (r.ln(), s.ln()))
            .collect();
        if pts.len() < 2 {
            return None;
        }
        let n = pts.len() as f64;
        let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        Some(sxy / sxx)
    }
}

/// Radius of the open cluster of the patch's central vertex, and whether it
/// touched the boundary.
pub fn origin_radius(patch: &LatticePatch, open: &[bool]) -> (usize, bool) {
    let o = patch.central_vertex();
    let (ox, oy) = patch.position(o).to_f64();
    let boundary: Vec<bool> = {
        let mut b = vec![false; patch.num_vertices()];
        for &v in patch.boundary() {
            b[v as usize] = true;
        }
        b
    };
    let mut seen = vec![false; patch.num_vertices()];
    seen[o as usize] = true;
    let mut q = VecDeque::from([o]);
    let (mut rad, mut censored) = (0.0f64, false);
    while let Some(v) = q.pop_front() {
        let (x, y) = patch.position(v).to_f64();
        rad = rad.max((x - ox).abs().max((y - oy).abs()));
        censored |= boundary[v as usize];
        for &(w, e) in patch.neighbors(v) {
            if open[e as usize] && !seen[w as usize] {
                seen[w as usize] = true;
                q.push_back(w);
            }
        }
    }
    ((rad + 1e-9).floor() as usize, censored)
}

pub fn radius_distribution<T: Scalar>(
    patch: &LatticePatch,
    class_probs: &[T],
    samples: usize,
    seed: u64,
    workers: usize,
) -> Result<RadiusHistogram> {
    let probs = class_probabilities(patch, class_probs)?;
    let parts = chunked(samples, workers, |first, count| {
        let mut open = Vec::new();
        let mut out = Vec::with_capacity(count);
        for s in first..first + count {
            fill_bits(patch, &probs, &mut stream_rng(seed, s as u64), &mut open);
            out.push(origin_radius(patch, &open));
        }
        out
    });
    let mut h = RadiusHistogram { counts: Vec::new(), censored: 0, samples: samples as u64, seed };
    for (r, c) in parts.into_iter().flatten() {
        if h.counts.len() <= r {
            h.counts.resize(r + 1, 0);
        }
        if c {
            h.censored += 1;
        } else {
            h.counts[r] += 1;
        }
    }
    Ok(h)
}

/// Translation period `(x, y)` of a family's embedding.
fn period(family: Family) -> Result<(f64, f64)> {
    let s3 = 3f64.sqrt();
    match family {
        Family::Square => Ok((1.0, 1.0)),
        Family::Triangular => Ok((s3, 3.0)),
        Family::Hexagonal => Ok((s3, 3.0)),
        Family::Archimedean3122 => Ok((3.0 * s3, 9.0)),
        Family::Mixed => Err(Error::invalid("the mixed lattice is not translation invariant")),
    }
}

/// Smallest `n₀ <= n_max` such that every translate of `[0, ρn]×[0, n]` and
/// `[0, n]×[0, ρn]`, for every `n₀ <= n <= n_max`, is crossed in the fully open
/// lattice. Translations are sampled on a `grid × grid` mesh of one period cell.
pub fn n0_search(family: Family, rho: f64, n_max: usize, grid: usize) -> Result<usize> {
    if !(rho > 1.0) || n_max == 0 || grid == 0 {
        return Err(Error::invalid("need ρ > 1, n_max >= 1 and grid >= 1"));
    }
    let (px, py) = period(family)?;
    let reach = rho * n_max as f64 + px.max(py) + 2.0;
    let patch = match family {
        Family::Square => square_box(reach.ceil() as usize)?,
        _ => lattice_ball(family, (4.0 * reach).ceil() as usize + 4)?,
    };
    let open = vec![true; patch.num_edges()];
    let crossed = |n: usize| -> Result<bool> {
        let (long, short) = (rho * n as f64, n as f64);
        for i in 0..grid {
            for j in 0..grid {
                let (tx, ty) = (px * i as f64 / grid as f64 - long / 2.0, py * j as f64 / grid as f64 - long / 2.0);
                let h = Rect::new(tx, ty, tx + long, ty + short);
                let v = Rect::new(tx, ty, tx + short, ty + long);
                if !RectIndex::new(&patch, h, Orientation::Horizontal)?.crosses(&open)
                    || !RectIndex::new(&patch, v, Orientation::Vertical)?.crosses(&open)
                {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    };
    let mut n0 = None;
    for n in (1..=n_max).rev() {
        if crossed(n)? {
            n0 = Some(n);
        } else {
            break;
        }
    }
    n0.ok_or_else(|| Error::invalid(format!("no crossings up to n = {n_max}; raise n_max")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_arm_events() {
        let patch = square_box(6).unwrap();
        let open = BondConfig::all(&patch, true);
        let closed = BondConfig::all(&patch, false);
        let one = ArmSpec::new(vec![1], 2, 6).unwrap();
        let zero = ArmSpec::new(vec![0], 2, 6).unwrap();
        assert!(arm_event_occurs(&open, &one).unwrap());
        assert!(!arm_event_occurs(&open, &zero).unwrap());
        assert!(arm_event_occurs(&closed, &zero).unwrap());
        let four_open = ArmSpec::new(vec![1; 4], 2, 6).unwrap();
        assert!(arm_event_occurs(&open, &four_open).unwrap());
        assert!(ArmSpec::new(vec![1], 3, 3).is_err());
        let odd = ArmSpec::new(vec![1, 1, 0], 1, 3).unwrap();
        assert_eq!(odd.classify(), ArmClass::Polychromatic);
        assert!(arm_event_occurs(&open, &odd).is_err());
    }

    #[test]
    fn ring_capacity_limits_disjoint_arms() {
        // the primal inner ring of Λ_1 has 8 vertices, the dual one 4 faces
        let patch = square_box(3).unwrap();
        let a = Annulus::new(&patch, ArmSpec::new(vec![1], 1, 3).unwrap()).unwrap();
        let open = vec![true; patch.num_edges()];
        assert_eq!(a.disjoint_arms(&open, 1, 100), 8);
        assert_eq!(a.disjoint_arms(&vec![false; patch.num_edges()], 0, 100), 4);
    }

    #[test]
    fn four_arms_on_a_cross() {
        // open x axis and upper y axis; removing the origin leaves three arms
        let patch = square_box(4).unwrap();
        let mut c = BondConfig::all(&patch, false);
        for (i, e) in patch.edges().iter().enumerate() {
            let (a, b) = (patch.position(e.u), patch.position(e.v));
            if (a.x.a == 0 && b.x.a == 0 && a.y.a >= 0 && b.y.a >= 0) || (a.y.a == 0 && b.y.a == 0) {
                c.open[i] = true;
            }
        }
        assert!(arm_event_occurs(&c, &ArmSpec::alternating(6, 1, 4).unwrap()).unwrap());
        assert!(!arm_event_occurs(&c, &ArmSpec::alternating(8, 1, 4).unwrap()).unwrap());
        assert!(!arm_event_occurs(&c, &ArmSpec::new(vec![1; 4], 1, 4).unwrap()).unwrap());
        assert!(arm_event_occurs(&c, &ArmSpec::new(vec![1; 3], 1, 4).unwrap()).unwrap());
        assert!(arm_event_occurs(&c, &ArmSpec::new(vec![1, 0], 1, 4).unwrap()).unwrap());
    }

    #[test]
    fn radius_extremes() {
        let patch = square_box(5).unwrap();
        let h0 = radius_distribution(&patch, &[0.0, 0.0], 20, 1, 1).unwrap();
        assert_eq!(h0.counts, vec![20]);
        let h1 = radius_distribution(&patch, &[1.0, 1.0], 20, 1, 1).unwrap();
        assert_eq!((h1.censored, h1.counts.len()), (20, 6));
        assert_eq!(h1.survival(5), 1.0);
    }

    #[test]
    fn n0_values() {
        assert_eq!(n0_search(Family::Square, 2.0, 4, 6).unwrap(), 1);
        let tri = n0_search(Family::Triangular, 2.0, 5, 6).unwrap();
        let hex = n0_search(Family::Hexagonal, 2.0, 5, 6).unwrap();
        assert!(tri <= hex && hex <= 5);
    }
}
