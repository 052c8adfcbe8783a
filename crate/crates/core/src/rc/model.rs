//! Parameters, boundary conditions and configurations of the random-cluster model.

use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{LatticePatch, VertexId};
use crate::percolation::UnionFind;
use crate::scalar::{check_probability, powi, Scalar};

/// Edge density `p ∈ [0, 1]` and cluster weight `q >= 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RcParams<T> {
    pub p: T,
    pub q: T,
}

impl<T: Scalar> RcParams<T> {
    pub fn new(p: T, q: T) -> Result<Self> {
        check_probability(&p, "p")?;
        if q < T::one() {
            return Err(Error::invalid(format!("q must be at least 1, got {q:?}")));
        }
        Ok(RcParams { p, q })
    }

    pub fn to_f64(&self) -> RcParams<f64> {
        RcParams { p: self.p.to_f64_lossy(), q: self.q.to_f64_lossy() }
    }
}

/// `p_sd(q) = √q / (1 + √q)`.
pub fn self_dual_point<T: Float>(q: T) -> Result<T> {
    if !(q >= T::one()) {
        return Err(Error::invalid("q must be at least 1"));
    }
    let s = q.sqrt();
    Ok(s / (T::one() + s))
}

/// The `p★` with `p/(1-p) · p★/(1-p★) = q`.
pub fn dual_parameter<T: Scalar>(p: T, q: T) -> Result<T> {
    if p <= T::zero() || p >= T::one() {
        return Err(Error::invalid("dual parameter needs 0 < p < 1"));
    }
    if q < T::one() {
        return Err(Error::invalid("q must be at least 1"));
    }
    let a = q * p.complement();
    Ok(a.clone() / (p + a))
}

/// Which boundary vertices are identified when counting clusters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryCondition {
    Free,
    /// The whole boundary counts as one vertex.
    Wired,
    /// Toroidal connectivity; the patch must be periodic.
    Periodic,
    /// Classes of boundary vertices merged into one vertex each.
    Partition(Vec<Vec<VertexId>>),
}

/// Boundary classes as extra vertices `n, n+1, ...` joined to their members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identification {
    pub vertices: usize,
    /// Class of each vertex, if it is identified with others.
    pub class_of: Vec<Option<u32>>,
    pub classes: usize,
}

impl Identification {
    pub fn new(patch: &LatticePatch, bc: &BoundaryCondition) -> Result<Self> {
        let n = patch.num_vertices();
        let mut class_of = vec![None; n];
        let mut classes = 0;
        match bc {
            BoundaryCondition::Free => {}
            BoundaryCondition::Periodic => {
                if !patch.is_periodic() {
                    return Err(Error::invalid("periodic boundary condition needs a periodic patch"));
                }
            }
            BoundaryCondition::Wired => {
                if !patch.boundary().is_empty() {
                    for &v in patch.boundary() {
                        class_of[v as usize] = Some(0);
                    }
                    classes = 1;
                }
            }
            BoundaryCondition::Partition(parts) => {
                let mut on_boundary = vec![false; n];
                for &v in patch.boundary() {
                    on_boundary[v as usize] = true;
                }
                for part in parts.iter().filter(|p| !p.is_empty()) {
                    for &v in part {
                        if v as usize >= n || !on_boundary[v as usize] {
                            return Err(Error::invalid(format!("vertex {v} is not a boundary vertex")));
                        }
                        if class_of[v as usize].replace(classes as u32).is_some() {
                            return Err(Error::invalid(format!("vertex {v} lies in two classes")));
                        }
                    }
                    classes += 1;
                }
            }
        }
        Ok(Identification { vertices: n, class_of, classes })
    }

    /// Union-find over vertices and class vertices with the classes merged.
    pub fn forest(&self) -> UnionFind {
        let mut uf = UnionFind::new(self.vertices + self.classes);
        for (v, c) in self.class_of.iter().enumerate() {
            if let Some(c) = c {
                uf.union(v as u32, (self.vertices + *c as usize) as u32);
            }
        }
        uf
    }

    /// `k(ω)` for the edges `(u, v)` that are open.
    pub fn cluster_count(&self, open_edges: impl Iterator<Item = (VertexId, VertexId)>) -> usize {
        let mut uf = self.forest();
        let mut k = self.vertices + self.classes - self.classes_in_use();
        for (u, v) in open_edges {
            if uf.union(u, v) {
                k -= 1;
            }
        }
        k
    }

    /// Each identified vertex joins its class vertex, removing one component.
    fn classes_in_use(&self) -> usize {
        self.class_of.iter().filter(|c| c.is_some()).count()
    }

    /// Boundary labels: vertices in the same class get the same label, others their own id.
    fn labels(&self) -> Vec<usize> {
        (0..self.vertices)
            .map(|v| self.class_of[v].map_or(v, |c| self.vertices + c as usize))
            .collect()
    }
}

/// Whether `low` is finer than `high` (`v ξ w ⇒ v ξ' w`) on `patch`.
pub fn finer_than(patch: &LatticePatch, low: &BoundaryCondition, high: &BoundaryCondition) -> Result<bool> {
    let periodic = |b: &BoundaryCondition| matches!(b, BoundaryCondition::Periodic);
    if periodic(low) || periodic(high) {
        return Ok(low == high);
    }
    let (a, b) = (Identification::new(patch, low)?.labels(), Identification::new(patch, high)?.labels());
    let n = a.len();
    let mut image = std::collections::HashMap::new();
    for v in 0..n {
        if *image.entry(a[v]).or_insert(b[v]) != b[v] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Random-cluster configuration with its boundary condition and cached `k(ω)`.
#[derive(Debug, Clone)]
pub struct RcConfig<'a> {
    pub patch: &'a LatticePatch,
    pub open: Vec<bool>,
    pub bc: BoundaryCondition,
    ident: Identification,
    k: usize,
}

impl<'a> RcConfig<'a> {
    pub fn new(patch: &'a LatticePatch, open: Vec<bool>, bc: BoundaryCondition) -> Result<Self> {
        if open.len() != patch.num_edges() {
            return Err(Error::invalid("one bit per edge required"));
        }
        let ident = Identification::new(patch, &bc)?;
        let mut c = RcConfig { patch, open, bc, ident, k: 0 };
        c.k = c.recount();
        Ok(c)
    }

    pub fn cluster_count(&self) -> usize {
        self.k
    }

    pub fn identification(&self) -> &Identification {
        &self.ident
    }

    /// `k(ω)` recomputed from scratch.
    pub fn recount(&self) -> usize {
        let p = self.patch;
        self.ident
            .cluster_count(p.edges().iter().zip(&self.open).filter(|x| *x.1).map(|x| (x.0.u, x.0.v)))
    }

    pub(crate) fn set_cached(&mut self, open: Vec<bool>, k: usize) {
        self.open = open;
        self.k = k;
    }

    pub fn open_count(&self) -> usize {
        self.open.iter().filter(|&&b| b).count()
    }
}

/// `Π p^{ω(e)} (1-p)^{1-ω(e)} · q^{k(ω)}`.
pub fn rc_weight<T: Scalar>(config: &RcConfig<'_>, params: &RcParams<T>) -> T {
    let open = config.open_count();
    let closed = config.open.len() - open;
    powi(&params.p, open) * powi(&params.p.complement(), closed) * powi(&params.q, config.cluster_count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{square_rect, PatchBuilder, Family};
    use crate::geometry::Point;
    use crate::scalar::{ratio, Rational};

    fn single_edge() -> LatticePatch {
        let mut b = PatchBuilder::new(Family::Square);
        b.edge(Point::half(0, 0), Point::half(2, 0), 0).unwrap();
        b.finish()
    }

    #[test]
    fn weights() {
        let g = single_edge();
        let params = RcParams::new(ratio(1, 3), ratio(2, 1)).unwrap();
        let closed = RcConfig::new(&g, vec![false], BoundaryCondition::Free).unwrap();
        assert_eq!(rc_weight(&closed, &params), ratio(2, 3) * ratio(4, 1));
        let grid = square_rect(2, 2).unwrap();
        let p = ratio(2, 5);
        for bc in [BoundaryCondition::Free, BoundaryCondition::Wired] {
            let all = RcConfig::new(&grid, vec![true; grid.num_edges()], bc).unwrap();
            let w: Rational = rc_weight(&all, &RcParams::new(p.clone(), ratio(3, 1)).unwrap());
            assert_eq!(w, powi(&p, grid.num_edges()) * ratio(3, 1));
        }
        let free = RcConfig::new(&grid, vec![false; grid.num_edges()], BoundaryCondition::Free).unwrap();
        let wired = RcConfig::new(&grid, vec![false; grid.num_edges()], BoundaryCondition::Wired).unwrap();
        assert_eq!(free.cluster_count(), 9);
        assert_eq!(wired.cluster_count(), 2);
    }

    #[test]
    fn parameters() {
        assert!(RcParams::new(0.5, 0.9).is_err());
        assert!((self_dual_point(2.0f64).unwrap() - 0.585786437626905).abs() < 1e-12);
        assert_eq!(self_dual_point(1.0f64).unwrap(), 0.5);
        assert_eq!(dual_parameter(ratio(3, 10), ratio(2, 1)).unwrap(), ratio(14, 17));
        assert!(dual_parameter(0.0, 2.0).is_err());
        for q in [1.0, 1.5, 2.0, 4.0, 9.0] {
            let p = self_dual_point(q).unwrap();
            assert!((dual_parameter(p, q).unwrap() - p).abs() < 1e-12);
            let x = dual_parameter(dual_parameter(0.3, q).unwrap(), q).unwrap();
            assert!((x - 0.3).abs() < 1e-12);
        }
    }

    #[test]
    fn partitions() {
        let grid = square_rect(2, 2).unwrap();
        let b = grid.boundary().to_vec();
        let free = BoundaryCondition::Free;
        let wired = BoundaryCondition::Wired;
        let part = BoundaryCondition::Partition(vec![vec![b[0], b[1]], vec![b[2], b[3]]]);
        assert!(finer_than(&grid, &free, &part).unwrap());
        assert!(finer_than(&grid, &part, &wired).unwrap());
        assert!(!finer_than(&grid, &wired, &part).unwrap());
        let other = BoundaryCondition::Partition(vec![vec![b[1], b[2]]]);
        assert!(!finer_than(&grid, &part, &other).unwrap());
        let interior = grid.central_vertex();
        assert!(RcConfig::new(&grid, vec![false; 12], BoundaryCondition::Partition(vec![vec![interior, b[0]]])).is_err());
        assert!(RcConfig::new(&grid, vec![false; 12], BoundaryCondition::Periodic).is_err());
    }
}
