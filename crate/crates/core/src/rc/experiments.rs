//! Monte Carlo experiments driven by the heat-bath sampler.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{build_torus, square_box, LatticePatch, LiftedRect, VertexId};
use crate::percolation::{label_open, ArmSpec, Annulus, Orientation, Rect, RectIndex};
use crate::report::{ExperimentReport, MeanAcc};
use crate::rng::run_replicas;

use super::model::{self_dual_point, BoundaryCondition, RcParams};
use super::sampler::{HeatBath, ScanOrder, DEFAULT_BURN_IN};

/// Independent chains, each on its own stream; every chain records its state
/// after each post-burn-in sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainOptions {
    pub chains: usize,
    /// Recorded sweeps per chain.
    pub sweeps: usize,
    pub burn_in: usize,
    pub seed: u64,
    pub workers: usize,
    pub order: ScanOrder,
}

impl Default for ChainOptions {
    fn default() -> Self {
        ChainOptions { chains: 8, sweeps: 1000, burn_in: DEFAULT_BURN_IN, seed: 0, workers: 1, order: ScanOrder::Sequential }
    }
}

impl ChainOptions {
    fn validate(&self) -> Result<()> {
        if self.chains == 0 || self.sweeps == 0 {
            return Err(Error::invalid("chains and sweeps must be at least 1"));
        }
        Ok(())
    }

    pub fn samples(&self) -> u64 {
        (self.chains * self.sweeps) as u64
    }
}

/// Mean and standard error of one observable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainStat {
    pub mean: f64,
    pub se: f64,
    pub total: f64,
}

const BATCHES_PER_CHAIN: usize = 10;

/// Runs the chains and averages each observable written by `observe`.
/// Errors of the mean come from batch means pooled over chains, floored at
/// the value for independent indicator samples.
pub fn run_chains<F>(
    patch: &LatticePatch,
    params: &RcParams<f64>,
    bc: &BoundaryCondition,
    opts: &ChainOptions,
    observables: usize,
    observe: F,
) -> Result<Vec<ChainStat>>
where
    F: Fn(&[bool], &mut [f64]) + Sync,
{
    opts.validate()?;
    let batches = BATCHES_PER_CHAIN.min(opts.sweeps);
    let per = opts.sweeps / batches;
    let runs = run_replicas(opts.chains, opts.workers, |c| -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
        let mut chain = HeatBath::new(patch, params.clone(), bc.clone(), opts.seed, c as u64)?.with_order(opts.order);
        for _ in 0..opts.burn_in {
            chain.sweep();
        }
        let mut batch = vec![vec![0.0; observables]; batches];
        let mut total = vec![0.0; observables];
        let mut buf = vec![0.0; observables];
        for s in 0..opts.sweeps {
            chain.sweep();
            buf.iter_mut().for_each(|x| *x = 0.0);
            observe(chain.open(), &mut buf);
            let b = s / per;
            for i in 0..observables {
                total[i] += buf[i];
                if b < batches {
                    batch[b][i] += buf[i] / per as f64;
                }
            }
        }
        Ok((batch, total))
    });
    let n = opts.samples() as f64;
    let mut stats = Vec::with_capacity(observables);
    let runs: Vec<_> = runs.into_iter().collect::<Result<_>>()?;
    for i in 0..observables {
        let total: f64 = runs.iter().map(|r| r.1[i]).sum();
        let mut acc = MeanAcc::default();
        runs.iter().flat_map(|r| r.0.iter()).for_each(|b| acc.push(b[i]));
        let mean = total / n;
        let floor = (mean * (1.0 - mean)).max(0.0) / n;
        stats.push(ChainStat { mean, se: acc.se().max(floor.sqrt()), total });
    }
    Ok(stats)
}

/// Whether open links join the left and right columns of a lifted rectangle.
pub fn lifted_crosses(rect: &LiftedRect, open: &[bool]) -> bool {
    let edges = rect.links.iter().filter(|l| open[l.2 as usize]).map(|l| (l.0, l.1));
    let labels = label_open(rect.sites.len(), edges);
    let mut hit = vec![false; rect.sites.len()];
    for &s in &rect.left {
        hit[labels.label(s) as usize] = true;
    }
    rect.right.iter().any(|&s| hit[labels.label(s) as usize])
}

/// Horizontal crossing of the drawn rectangle `[0, 3n/2) × [0, n)` on the
/// `m`-torus with periodic boundary condition.
pub fn torus_crossing(n: usize, m: usize, params: &RcParams<f64>, rotated: bool, opts: &ChainOptions) -> Result<ExperimentReport> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if 2 * m <= 3 * n {
        return Err(Error::invalid(format!("torus side {m} must exceed 3n/2 = {}", 3.0 * n as f64 / 2.0)));
    }
    let torus = build_torus(m, rotated)?;
    let rect = torus.lift_rect(0, 0, (3 * n).div_ceil(2) as i64, n as i64)?;
    let stats = run_chains(&torus.patch, params, &BoundaryCondition::Periodic, opts, 1, |open, out| {
        out[0] = lifted_crosses(&rect, open) as u8 as f64;
    })?;
    Ok(ExperimentReport::statistical(stats[0].mean, stats[0].se, opts.samples(), opts.seed)
        .param("n", n)
        .param("m", m)
        .param("p", params.p)
        .param("q", params.q)
        .param("rotated", rotated)
        .param("chains", opts.chains)
        .param("sweeps", opts.sweeps)
        .param("burn_in", opts.burn_in))
}

/// Crossing at the self-dual point on the `m`-torus (`m = 2n` if not given).
pub fn estimate_crossing_at_sd(n: usize, q: f64, m: Option<usize>, opts: &ChainOptions) -> Result<ExperimentReport> {
    let params = RcParams::new(self_dual_point(q)?, q)?;
    torus_crossing(n, m.unwrap_or(2 * n), &params, false, opts)
}

fn pow3(k: u32) -> i64 {
    3i64.pow(k)
}

/// The five rectangles whose crossings force the event: four around the
/// annulus `3^k < |x| ≤ 3^{k+1}` and one from the inner box to the boundary.
pub fn annulus_rectangles(k: u32) -> [(Rect, Orientation); 5] {
    let (s, l, b) = (pow3(k) as f64, pow3(k + 1) as f64, pow3(k + 2) as f64);
    [
        (Rect::new(-l, -l, -s - 1.0, l), Orientation::Vertical),
        (Rect::new(s + 1.0, -l, l, l), Orientation::Vertical),
        (Rect::new(-l, -l, l, -s - 1.0), Orientation::Horizontal),
        (Rect::new(-l, s + 1.0, l, l), Orientation::Horizontal),
        (Rect::new(s, -s, b, s), Orientation::Horizontal),
    ]
}

/// Holds `A_k`: an open circuit in the annulus `3^k < |x| ≤ 3^{k+1}` joined
/// to the boundary of `[-3^{k+2}, 3^{k+2}]²`.
pub struct AnnulusEvent {
    pub k: u32,
    pub patch: LatticePatch,
    annulus: Annulus,
    rects: Vec<RectIndex>,
}

impl AnnulusEvent {
    pub fn new(k: u32) -> Result<Self> {
        if !(1..=3).contains(&k) {
            return Err(Error::invalid(format!("k = {k} outside 1..=3")));
        }
        let patch = square_box(pow3(k + 2) as usize)?;
        let annulus = Annulus::new(&patch, ArmSpec::new(vec![0], pow3(k) as usize + 1, pow3(k + 1) as usize)?)?;
        let rects = annulus_rectangles(k)
            .into_iter()
            .map(|(r, o)| RectIndex::new(&patch, r, o))
            .collect::<Result<_>>()?;
        Ok(AnnulusEvent { k, patch, annulus, rects })
    }

    /// Open edges of the cluster of the boundary.
    fn boundary_cluster(&self, open: &[bool]) -> Vec<bool> {
        let p = &self.patch;
        let edges = p.edges().iter().zip(open).filter(|x| *x.1).map(|x| (x.0.u, x.0.v));
        let labels = label_open(p.num_vertices(), edges);
        let mut hit = vec![false; p.num_vertices()];
        for &v in p.boundary() {
            hit[labels.label(v) as usize] = true;
        }
        let on = |v: VertexId| hit[labels.label(v) as usize];
        p.edges().iter().zip(open).map(|(e, &o)| o && on(e.u)).collect()
    }

    /// The event itself: the boundary cluster contains a circuit of the
    /// annulus, i.e. no dual path crosses it once other clusters are removed.
    pub fn occurs(&self, open: &[bool]) -> bool {
        self.annulus.disjoint_arms(&self.boundary_cluster(open), 0, 1) == 0
    }

    /// An open circuit of the annulus, whether or not it reaches the boundary.
    pub fn has_circuit(&self, open: &[bool]) -> bool {
        self.annulus.disjoint_arms(open, 0, 1) == 0
    }

    pub fn crossings(&self, open: &[bool]) -> [bool; 5] {
        std::array::from_fn(|i| self.rects[i].crosses(open))
    }
}

/// Frequency of `A_k` under the wired measure, with the five-rectangle
/// sufficient condition and its ingredients.
pub fn annulus_event_estimate(k: u32, params: &RcParams<f64>, opts: &ChainOptions) -> Result<ExperimentReport> {
    let ev = AnnulusEvent::new(k)?;
    let stats = run_chains(&ev.patch, params, &BoundaryCondition::Wired, opts, 8, |open, out| {
        let a = ev.occurs(open);
        let c = ev.crossings(open);
        let all = c.iter().all(|&x| x);
        out[0] = a as u8 as f64;
        out[1] = all as u8 as f64;
        out[2] = (all && !a) as u8 as f64;
        for i in 0..5 {
            out[3 + i] = c[i] as u8 as f64;
        }
    })?;
    let singles: Vec<f64> = stats[3..].iter().map(|s| s.mean).collect();
    let single_se: Vec<f64> = stats[3..].iter().map(|s| s.se).collect();
    let product: f64 = singles.iter().product();
    Ok(ExperimentReport::statistical(stats[0].mean, stats[0].se, opts.samples(), opts.seed)
        .param("k", k)
        .param("p", params.p)
        .param("q", params.q)
        .param("chains", opts.chains)
        .param("sweeps", opts.sweeps)
        .param("burn_in", opts.burn_in)
        .metric("sufficient", stats[1].mean)
        .metric("sufficient_se", stats[1].se)
        .metric("violations", stats[2].total.round())
        .metric("crossings", singles)
        .metric("crossings_se", single_se)
        .metric("crossing_product", product))
}

/// `P(0 ↔ ∂B_n)` under the wired measure on `[-n, n]²`.
pub fn theta_proxy(n: usize, params: &RcParams<f64>, opts: &ChainOptions) -> Result<ExperimentReport> {
    let patch = square_box(n)?;
    let origin = patch
        .vertex_at(crate::geometry::Point::half(0, 0))
        .ok_or_else(|| Error::Invariant("box without origin".into()))?;
    let stats = run_chains(&patch, params, &BoundaryCondition::Wired, opts, 1, |open, out| {
        let edges = patch.edges().iter().zip(open).filter(|x| *x.1).map(|x| (x.0.u, x.0.v));
        let labels = label_open(patch.num_vertices(), edges);
        let l = labels.label(origin);
        out[0] = patch.boundary().iter().any(|&v| labels.label(v) == l) as u8 as f64;
    })?;
    Ok(ExperimentReport::statistical(stats[0].mean, stats[0].se, opts.samples(), opts.seed)
        .param("n", n)
        .param("p", params.p)
        .param("q", params.q)
        .param("chains", opts.chains)
        .param("sweeps", opts.sweeps)
        .param("burn_in", opts.burn_in))
}
