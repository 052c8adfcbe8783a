//! Single-edge heat-bath dynamics for the random-cluster measure.

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{EdgeId, LatticePatch};
use crate::report::MeanAcc;
use crate::rng::{stream_rng, Rng};
use crate::scalar::Scalar;

use super::model::{BoundaryCondition, Identification, RcConfig, RcParams};

pub const DEFAULT_BURN_IN: usize = 200;

/// Probability that an edge is open given the rest of the configuration,
/// where `connected` says whether its endpoints are joined off it.
pub fn conditional_open_probability<T: Scalar>(params: &RcParams<T>, connected: bool) -> T {
    let p = params.p.clone();
    if connected || p.is_zero() {
        p
    } else {
        p.clone() / (p.clone() + params.q.clone() * p.complement())
    }
}

fn open_probability(params: &RcParams<f64>, connected: bool) -> f64 {
    conditional_open_probability(params, connected)
}

/// Resamples edge `e` of `config` from its conditional law using `uniform`.
/// Connectivity off `e` is recomputed with a union-find over the other open edges.
pub fn heat_bath_step(config: &mut RcConfig<'_>, params: &RcParams<f64>, edge: EdgeId, uniform: f64) -> Result<()> {
    if edge as usize >= config.open.len() {
        return Err(Error::invalid(format!("edge {edge} out of range")));
    }
    if !(0.0..1.0).contains(&uniform) {
        return Err(Error::invalid("uniform must lie in [0, 1)"));
    }
    let patch = config.patch;
    let mut uf = config.identification().forest();
    for (i, e) in patch.edges().iter().enumerate() {
        if i != edge as usize && config.open[i] {
            uf.union(e.u, e.v);
        }
    }
    let ed = patch.edge(edge);
    let connected = uf.find(ed.u) == uf.find(ed.v);
    let old = config.open[edge as usize];
    let new = uniform < open_probability(params, connected);
    let mut k = config.cluster_count();
    if !connected && old != new {
        k = if new { k - 1 } else { k + 1 };
    }
    let mut open = std::mem::take(&mut config.open);
    open[edge as usize] = new;
    config.set_cached(open, k);
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanOrder {
    /// Edges in id order (rows of the patch, left to right).
    #[default]
    Sequential,
    /// Uniformly random edges, `|E|` per sweep.
    Random,
}

/// Heat-bath chain. Connectivity off an edge is decided by two breadth-first
/// searches grown alternately from its endpoints, stopping when they meet or
/// one of them runs out.
#[derive(Debug, Clone)]
pub struct HeatBath<'a> {
    pub patch: &'a LatticePatch,
    pub params: RcParams<f64>,
    pub bc: BoundaryCondition,
    pub order: ScanOrder,
    ident: Identification,
    members: Vec<Vec<u32>>,
    open: Vec<bool>,
    k: usize,
    rng: Rng,
    mark: Vec<u32>,
    epoch: u32,
    qa: Vec<u32>,
    qb: Vec<u32>,
}

impl<'a> HeatBath<'a> {
    /// Chain started from the all-closed configuration.
    pub fn new(
        patch: &'a LatticePatch,
        params: RcParams<f64>,
        bc: BoundaryCondition,
        seed: u64,
        stream: u64,
    ) -> Result<Self> {
        let ident = Identification::new(patch, &bc)?;
        let mut members = vec![Vec::new(); ident.classes];
        for (v, c) in ident.class_of.iter().enumerate() {
            if let Some(c) = c {
                members[*c as usize].push(v as u32);
            }
        }
        let open = vec![false; patch.num_edges()];
        let k = ident.cluster_count(std::iter::empty());
        let nodes = patch.num_vertices() + ident.classes;
        Ok(HeatBath {
            patch,
            params,
            bc,
            order: ScanOrder::Sequential,
            ident,
            members,
            open,
            k,
            rng: stream_rng(seed, stream),
            mark: vec![0; nodes],
            epoch: 0,
            qa: Vec::new(),
            qb: Vec::new(),
        })
    }

    pub fn with_order(mut self, order: ScanOrder) -> Self {
        self.order = order;
        self
    }

    pub fn open(&self) -> &[bool] {
        &self.open
    }

    pub fn cluster_count(&self) -> usize {
        self.k
    }

    pub fn config(&self) -> Result<RcConfig<'a>> {
        RcConfig::new(self.patch, self.open.clone(), self.bc.clone())
    }

    /// Replaces the state, e.g. to start from the all-open configuration.
    pub fn set_open(&mut self, open: Vec<bool>) -> Result<()> {
        if open.len() != self.open.len() {
            return Err(Error::invalid("one bit per edge required"));
        }
        let p = self.patch;
        self.k = self.ident.cluster_count(p.edges().iter().zip(&open).filter(|x| *x.1).map(|x| (x.0.u, x.0.v)));
        self.open = open;
        Ok(())
    }

    fn neighbours(&self, x: u32, skip: EdgeId, out: &mut Vec<u32>) {
        out.clear();
        let n = self.ident.vertices;
        if (x as usize) < n {
            for &(w, e) in self.patch.neighbors(x) {
                if e != skip && self.open[e as usize] {
                    out.push(w);
                }
            }
            if let Some(c) = self.ident.class_of[x as usize] {
                out.push((n + c as usize) as u32);
            }
        } else {
            out.extend_from_slice(&self.members[x as usize - n]);
        }
    }

    /// Whether the endpoints of `e` are joined by open edges other than `e`.
    pub fn connected_off(&mut self, e: EdgeId) -> bool {
        let ed = self.patch.edge(e);
        let (a, b) = (ed.u, ed.v);
        if a == b {
            return true;
        }
        // marks: 2·epoch from a's side, 2·epoch+1 from b's side
        if self.epoch >= u32::MAX / 2 - 1 {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.epoch = 0;
        }
        self.epoch += 1;
        let (ma, mb) = (2 * self.epoch, 2 * self.epoch + 1);
        let mut qa = std::mem::take(&mut self.qa);
        let mut qb = std::mem::take(&mut self.qb);
        qa.clear();
        qb.clear();
        qa.push(a);
        qb.push(b);
        self.mark[a as usize] = ma;
        self.mark[b as usize] = mb;
        let (mut ia, mut ib) = (0, 0);
        let mut buf = Vec::new();
        let result = loop {
            if ia == qa.len() || ib == qb.len() {
                break false;
            }
            let x = qa[ia];
            ia += 1;
            self.neighbours(x, e, &mut buf);
            let mut met = false;
            for &w in &buf {
                let m = self.mark[w as usize];
                if m == mb {
                    met = true;
                    break;
                }
                if m != ma {
                    self.mark[w as usize] = ma;
                    qa.push(w);
                }
            }
            if met {
                break true;
            }
            std::mem::swap(&mut qa, &mut qb);
            std::mem::swap(&mut ia, &mut ib);
            let (ma2, mb2) = (mb, ma);
            // continue from the other side with roles exchanged
            let x = match qa.get(ia) {
                Some(&x) => x,
                None => break false,
            };
            ia += 1;
            self.neighbours(x, e, &mut buf);
            for &w in &buf {
                let m = self.mark[w as usize];
                if m == mb2 {
                    met = true;
                    break;
                }
                if m != ma2 {
                    self.mark[w as usize] = ma2;
                    qa.push(w);
                }
            }
            std::mem::swap(&mut qa, &mut qb);
            std::mem::swap(&mut ia, &mut ib);
            if met {
                break true;
            }
        };
        self.qa = qa;
        self.qb = qb;
        result
    }

    /// Heat-bath update of edge `e` with the given uniform.
    pub fn update(&mut self, e: EdgeId, uniform: f64) {
        let connected = self.connected_off(e);
        let new = uniform < open_probability(&self.params, connected);
        let old = std::mem::replace(&mut self.open[e as usize], new);
        if !connected && old != new {
            if new {
                self.k -= 1;
            } else {
                self.k += 1;
            }
        }
    }

    pub fn sweep(&mut self) {
        let m = self.open.len();
        for i in 0..m {
            let e = match self.order {
                ScanOrder::Sequential => i,
                ScanOrder::Random => self.rng.random_range(0..m),
            };
            let u = self.rng.random::<f64>();
            self.update(e as EdgeId, u);
        }
    }
}

/// Summary of one heat-bath run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RcSample {
    pub sweeps: usize,
    pub burn_in: usize,
    pub seed: u64,
    pub marginals: Vec<f64>,
    pub marginal_se: Vec<f64>,
    /// Frequency of every configuration (bit `e` = edge `e`), for at most 16 edges.
    pub config_freq: Option<Vec<f64>>,
    pub config_se: Option<Vec<f64>>,
    pub mean_clusters: f64,
}

const BATCHES: usize = 50;

/// Runs `burn_in` discarded sweeps, then records the state after each of
/// `sweeps` sweeps. Standard errors come from batch means.
pub fn sample_rc(
    patch: &LatticePatch,
    params: &RcParams<f64>,
    bc: &BoundaryCondition,
    sweeps: usize,
    burn_in: usize,
    seed: u64,
) -> Result<RcSample> {
    if sweeps == 0 {
        return Err(Error::invalid("sweeps must be at least 1"));
    }
    let mut chain = HeatBath::new(patch, params.clone(), bc.clone(), seed, 0)?;
    for _ in 0..burn_in {
        chain.sweep();
    }
    let m = patch.num_edges();
    let track = m <= 16;
    let batches = BATCHES.min(sweeps);
    let per = sweeps / batches;
    let mut edge_batches = vec![vec![0u32; m]; batches];
    let mut cfg_batches = if track { vec![vec![0u32; 1 << m]; batches] } else { Vec::new() };
    let mut clusters = MeanAcc::default();
    let mut edge_tot = vec![0u64; m];
    let mut cfg_tot = if track { vec![0u64; 1 << m] } else { Vec::new() };
    for s in 0..sweeps {
        chain.sweep();
        let b = (s / per.max(1)).min(batches - 1);
        let mut mask = 0usize;
        for e in 0..m {
            if chain.open[e] {
                edge_tot[e] += 1;
                if s < per * batches {
                    edge_batches[b][e] += 1;
                }
                mask |= 1 << e.min(63);
            }
        }
        if track {
            cfg_tot[mask] += 1;
            if s < per * batches {
                cfg_batches[b][mask] += 1;
            }
        }
        clusters.push(chain.k as f64);
    }
    // SE of the mean from batch means, floored at the iid value
    let se_of = |means: Vec<f64>, mean: f64| {
        let mut acc = MeanAcc::default();
        means.iter().for_each(|&x| acc.push(x));
        acc.se().max((mean * (1.0 - mean) / sweeps as f64).sqrt())
    };
    let marginals: Vec<f64> = edge_tot.iter().map(|&c| c as f64 / sweeps as f64).collect();
    let marginal_se = (0..m)
        .map(|e| se_of(edge_batches.iter().map(|b| b[e] as f64 / per as f64).collect(), marginals[e]))
        .collect();
    let (config_freq, config_se) = if track {
        let f: Vec<f64> = cfg_tot.iter().map(|&c| c as f64 / sweeps as f64).collect();
        let se = (0..1 << m)
            .map(|c| se_of(cfg_batches.iter().map(|b| b[c] as f64 / per as f64).collect(), f[c]))
            .collect();
        (Some(f), Some(se))
    } else {
        (None, None)
    };
    Ok(RcSample { sweeps, burn_in, seed, marginals, marginal_se, config_freq, config_se, mean_clusters: clusters.mean() })
}
