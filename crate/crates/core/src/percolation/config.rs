//! Bond configurations and open-cluster labelings.

use crate::error::{Error, Result};
use crate::lattice::{LatticePatch, VertexId};
use crate::rng::stream_rng;
use crate::scalar::{check_probability, Scalar};

/// One open/closed bit per edge of `patch`.
#[derive(Debug, Clone)]
pub struct BondConfig<'a> {
    pub patch: &'a LatticePatch,
    pub open: Vec<bool>,
    pub seed: Option<u64>,
    pub stream: Option<u64>,
}

/// Same patch (by identity) and same bits.
impl PartialEq for BondConfig<'_> {
    fn eq(&self, o: &Self) -> bool {
        std::ptr::eq(self.patch, o.patch) && self.open == o.open
    }
}

impl<'a> BondConfig<'a> {
    pub fn new(patch: &'a LatticePatch, open: Vec<bool>) -> Result<Self> {
        if open.len() != patch.num_edges() {
            return Err(Error::invalid(format!(
                "{} bits for {} edges",
                open.len(),
                patch.num_edges()
            )));
        }
        Ok(BondConfig { patch, open, seed: None, stream: None })
    }

    pub fn all(patch: &'a LatticePatch, state: bool) -> Self {
        BondConfig { patch, open: vec![state; patch.num_edges()], seed: None, stream: None }
    }

    pub fn is_open(&self, e: u32) -> bool {
        self.open[e as usize]
    }

    pub fn open_count(&self) -> usize {
        self.open.iter().filter(|&&b| b).count()
    }

    /// The complementary configuration `1 - ω`.
    pub fn flipped(&self) -> Self {
        BondConfig {
            patch: self.patch,
            open: self.open.iter().map(|b| !b).collect(),
            seed: None,
            stream: None,
        }
    }
}

/// Validates one probability per edge class and converts them to `f64`.
pub fn class_probabilities<T: Scalar>(patch: &LatticePatch, class_probs: &[T]) -> Result<Vec<f64>> {
    let needed = patch.class_count();
    if class_probs.len() != needed {
        return Err(Error::invalid(format!(
            "{} class probabilities given, patch has {} edge classes",
            class_probs.len(),
            needed
        )));
    }
    class_probs
        .iter()
        .enumerate()
        .map(|(i, p)| {
            check_probability(p, &format!("probability of class {i}"))?;
            Ok(p.to_f64_lossy())
        })
        .collect()
}

/// The same probability for every edge class of `patch`.
pub fn homogeneous<T: Scalar>(patch: &LatticePatch, p: T) -> Vec<T> {
    vec![p; patch.class_count().max(1)]
}

/// Fills `open` with independent bits, edge `e` open with probability `probs[class(e)]`.
pub(crate) fn fill_bits(patch: &LatticePatch, probs: &[f64], rng: &mut impl rand::Rng, open: &mut Vec<bool>) {
    open.clear();
    open.extend(patch.edges().iter().map(|e| rng.random::<f64>() < probs[e.class as usize]));
}

/// Product-measure sample, reproducible from `(seed, stream)`.
pub fn sample_config<'a, T: Scalar>(
    patch: &'a LatticePatch,
    class_probs: &[T],
    seed: u64,
    stream: u64,
) -> Result<BondConfig<'a>> {
    let probs = class_probabilities(patch, class_probs)?;
    let mut rng = stream_rng(seed, stream);
    let mut open = Vec::with_capacity(patch.num_edges());
    fill_bits(patch, &probs, &mut rng, &mut open);
    Ok(BondConfig { patch, open, seed: Some(seed), stream: Some(stream) })
}

/// Disjoint-set forest with union by size and path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let g = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = g;
            x = g;
        }
        x
    }

    /// Returns false if already joined.
    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a as usize] < self.size[b as usize] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b as usize] = a;
        self.size[a as usize] += self.size[b as usize];
        true
    }
}

/// Open clusters. A cluster's label is its smallest vertex id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterLabeling {
    labels: Vec<VertexId>,
    sizes: Vec<u32>,
    count: usize,
}

impl ClusterLabeling {
    pub fn label(&self, v: VertexId) -> VertexId {
        self.labels[v as usize]
    }

    pub fn labels(&self) -> &[VertexId] {
        &self.labels
    }

    pub fn connected(&self, a: VertexId, b: VertexId) -> bool {
        self.labels[a as usize] == self.labels[b as usize]
    }

    /// `|C_v|`.
    pub fn cluster_size(&self, v: VertexId) -> usize {
        self.sizes[self.labels[v as usize] as usize] as usize
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Sizes of all clusters, ordered by label.
    pub fn sizes(&self) -> Vec<usize> {
        (0..self.labels.len())
            .filter(|&v| self.labels[v] as usize == v)
            .map(|v| self.sizes[v] as usize)
            .collect()
    }

    pub fn members(&self, v: VertexId) -> Vec<VertexId> {
        let l = self.label(v);
        (0..self.labels.len() as VertexId).filter(|&w| self.labels[w as usize] == l).collect()
    }
}

pub fn label_clusters(config: &BondConfig<'_>) -> ClusterLabeling {
    label_open(config.patch.num_vertices(), config.patch.edges().iter().zip(&config.open).filter(|p| *p.1).map(|p| (p.0.u, p.0.v)))
}

/// Labels the components of `n` vertices joined by `edges`.
pub fn label_open(n: usize, edges: impl Iterator<Item = (VertexId, VertexId)>) -> ClusterLabeling {
    let mut uf = UnionFind::new(n);
    for (u, v) in edges {
        uf.union(u, v);
    }
    let mut min_of_root = vec![u32::MAX; n];
    for v in 0..n as u32 {
        let r = uf.find(v) as usize;
        min_of_root[r] = min_of_root[r].min(v);
    }
    let mut labels = vec![0; n];
    let mut sizes = vec![0u32; n];
    let mut count = 0;
    for v in 0..n as u32 {
        let l = min_of_root[uf.find(v) as usize];
        labels[v as usize] = l;
        if l == v {
            count += 1;
        }
        sizes[l as usize] += 1;
    }
    ClusterLabeling { labels, sizes, count }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_torus, square_rect};

    #[test]
    fn extremes() {
        let patch = square_rect(4, 3).unwrap();
        let closed = sample_config(&patch, &[0.0, 0.0], 1, 0).unwrap();
        assert_eq!(closed.open_count(), 0);
        assert_eq!(label_clusters(&closed).count(), patch.num_vertices());
        let open = sample_config(&patch, &[1.0, 1.0], 1, 0).unwrap();
        let l = label_clusters(&open);
        assert_eq!(l.count(), 1);
        assert_eq!(l.cluster_size(7), patch.num_vertices());
    }

    #[test]
    fn reproducible() {
        let patch = square_rect(6, 6).unwrap();
        let a = sample_config(&patch, &[0.5, 0.5], 9, 3).unwrap();
        let b = sample_config(&patch, &[0.5, 0.5], 9, 3).unwrap();
        let c = sample_config(&patch, &[0.5, 0.5], 9, 4).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.open, c.open);
    }

    #[test]
    fn open_fraction_is_binomial() {
        let torus = build_torus(100, false).unwrap();
        let mut open = 0usize;
        let mut total = 0usize;
        for s in 0..5 {
            let c = sample_config(&torus.patch, &[0.5, 0.5], 11, s).unwrap();
            open += c.open_count();
            total += c.open.len();
        }
        assert!(total >= 100_000);
        let sd = (total as f64 * 0.25).sqrt();
        assert!((open as f64 - total as f64 / 2.0).abs() < 3.0 * sd);
    }

    #[test]
    fn rejects_bad_probabilities() {
        let patch = square_rect(2, 2).unwrap();
        assert!(sample_config(&patch, &[0.5], 0, 0).is_err());
        assert!(sample_config(&patch, &[0.5, 1.5], 0, 0).is_err());
        assert!(BondConfig::new(&patch, vec![true]).is_err());
    }
}
