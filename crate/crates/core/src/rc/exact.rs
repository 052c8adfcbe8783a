//! Exact finite-volume random-cluster measures by enumeration of `2^|E|` configurations.

use crate::error::{Error, Result};
use crate::lattice::{dual_patch, LatticePatch};
use crate::scalar::{powi, total_variation, Scalar};

use super::model::{dual_parameter, finer_than, BoundaryCondition, Identification, RcParams};

pub const MAX_EXACT_EDGES: usize = 24;

/// Weights of every configuration; bit `e` of the index is `ω(e)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactDistribution<T> {
    pub weights: Vec<T>,
    pub z: T,
    pub num_edges: usize,
}

impl<T: Scalar> ExactDistribution<T> {
    pub fn prob(&self, mask: usize) -> T {
        self.weights[mask].clone() / self.z.clone()
    }

    pub fn probabilities(&self) -> Vec<T> {
        self.weights.iter().map(|w| w.clone() / self.z.clone()).collect()
    }

    pub fn event_prob(&self, event: impl Fn(usize) -> bool) -> T {
        let w = (0..self.weights.len())
            .filter(|&m| event(m))
            .fold(T::zero(), |acc, m| acc + self.weights[m].clone());
        w / self.z.clone()
    }

    pub fn edge_marginal(&self, e: usize) -> T {
        self.event_prob(|m| m >> e & 1 == 1)
    }
}

/// `k(ω)` for every mask in one pass.
fn cluster_counts(patch: &LatticePatch, ident: &Identification) -> Vec<usize> {
    let e = patch.num_edges();
    (0..1usize << e)
        .map(|mask| {
            let open = patch.edges().iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1);
            ident.cluster_count(open.map(|(_, ed)| (ed.u, ed.v)))
        })
        .collect()
}

pub fn exact_distribution<T: Scalar>(
    patch: &LatticePatch,
    params: &RcParams<T>,
    bc: &BoundaryCondition,
) -> Result<ExactDistribution<T>> {
    let e = patch.num_edges();
    if e > MAX_EXACT_EDGES {
        return Err(Error::invalid(format!("{e} edges exceed the exact limit of {MAX_EXACT_EDGES}")));
    }
    let ident = Identification::new(patch, bc)?;
    let ks = cluster_counts(patch, &ident);
    let max_k = ks.iter().copied().max().unwrap_or(0);
    let qpow: Vec<T> = (0..=max_k).map(|k| powi(&params.q, k)).collect();
    let p = &params.p;
    let pc = p.complement();
    let ppow: Vec<T> = (0..=e).map(|k| powi(p, k)).collect();
    let cpow: Vec<T> = (0..=e).map(|k| powi(&pc, k)).collect();
    let weights: Vec<T> = ks
        .iter()
        .enumerate()
        .map(|(mask, &k)| {
            let open = mask.count_ones() as usize;
            ppow[open].clone() * cpow[e - open].clone() * qpow[k].clone()
        })
        .collect();
    let z = weights.iter().fold(T::zero(), |acc, w| acc + w.clone());
    Ok(ExactDistribution { weights, z, num_edges: e })
}

/// TV distance between the law of `ω★ = 1 - ω` under the free measure on
/// `patch` and the measure with parameter `p★` on the dual graph, whose outer
/// vertex plays the role of the wired boundary.
pub fn verify_duality_exact<T: Scalar>(patch: &LatticePatch, params: &RcParams<T>) -> Result<T> {
    let (dual, map) = dual_patch(patch)?;
    let e = patch.num_edges();
    if e > MAX_EXACT_EDGES {
        return Err(Error::invalid(format!("{e} edges exceed the exact limit of {MAX_EXACT_EDGES}")));
    }
    let primal = exact_distribution(patch, params, &BoundaryCondition::Free)?;
    let p_star = dual_parameter(params.p.clone(), params.q.clone())?;
    let dual_law = exact_distribution(&dual, &RcParams::new(p_star, params.q.clone())?, &BoundaryCondition::Free)?;
    let mut pushed = vec![T::zero(); 1 << e];
    for mask in 0..1usize << e {
        let mut d = 0usize;
        for i in 0..e {
            if mask >> i & 1 == 0 {
                d |= 1 << map.to_dual[i];
            }
        }
        pushed[d] = pushed[d].clone() + primal.prob(mask);
    }
    Ok(total_variation(&pushed, &dual_law.probabilities()))
}

/// Largest `φ^low(U) - φ^high(U)` over the upsets `U = {ω' ⊇ ω}`; at most 0
/// when `φ^low` is dominated by `φ^high`.
pub fn holley_ordering_check<T: Scalar>(
    patch: &LatticePatch,
    params: &RcParams<T>,
    low: &BoundaryCondition,
    high: &BoundaryCondition,
) -> Result<T> {
    if patch.num_edges() > 20 {
        return Err(Error::invalid("ordering check is limited to 20 edges"));
    }
    if !finer_than(patch, low, high)? {
        return Err(Error::invalid("boundary conditions are not ordered (low must be finer than high)"));
    }
    let up = |d: ExactDistribution<T>| {
        let mut f = d.probabilities();
        // superset sums
        for i in 0..d.num_edges {
            for m in 0..f.len() {
                if m >> i & 1 == 0 {
                    let v = f[m | 1 << i].clone();
                    f[m] = f[m].clone() + v;
                }
            }
        }
        f
    };
    let a = up(exact_distribution(patch, params, low)?);
    let b = up(exact_distribution(patch, params, high)?);
    Ok(a.into_iter()
        .zip(b)
        .map(|(x, y)| x - y)
        .fold(None, |acc: Option<T>, d| match acc {
            Some(m) if m >= d => Some(m),
            _ => Some(d),
        })
        .unwrap_or_else(T::zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use crate::lattice::{square_rect, Family, PatchBuilder};
    use crate::scalar::{ratio, Rational};
    use num_traits::{One, Zero};

    fn cycle4() -> LatticePatch {
        square_rect(1, 1).unwrap()
    }

    #[test]
    fn single_edge_marginal() {
        let mut b = PatchBuilder::new(Family::Square);
        b.edge(Point::half(0, 0), Point::half(2, 0), 0).unwrap();
        let g = b.finish();
        let d = exact_distribution(&g, &RcParams::new(ratio(1, 2), ratio(2, 1)).unwrap(), &BoundaryCondition::Free)
            .unwrap();
        assert_eq!(d.edge_marginal(0), ratio(1, 3));
        assert_eq!(d.probabilities().into_iter().fold(Rational::zero(), |a, b| a + b), Rational::one());
    }

    #[test]
    fn percolation_reduction() {
        let g = square_rect(2, 1).unwrap();
        let d = exact_distribution(&g, &RcParams::new(ratio(3, 10), Rational::one()).unwrap(), &BoundaryCondition::Wired)
            .unwrap();
        for e in 0..g.num_edges() {
            assert_eq!(d.edge_marginal(e), ratio(3, 10));
        }
        assert_eq!(d.event_prob(|m| m & 3 == 3), ratio(9, 100));
    }

    #[test]
    fn wired_dominates_free() {
        let g = cycle4();
        let p = crate::rc::self_dual_point(2.0).unwrap();
        let params = RcParams::new(p, 2.0).unwrap();
        let free = exact_distribution(&g, &params, &BoundaryCondition::Free).unwrap();
        let wired = exact_distribution(&g, &params, &BoundaryCondition::Wired).unwrap();
        assert!(wired.edge_marginal(0) >= free.edge_marginal(0));
        let v = holley_ordering_check(&g, &RcParams::new(0.5, 2.0).unwrap(), &BoundaryCondition::Free, &BoundaryCondition::Wired)
            .unwrap();
        assert!(v <= 1e-12);
        assert!(holley_ordering_check(&g, &params, &BoundaryCondition::Wired, &BoundaryCondition::Free).is_err());
    }

    #[test]
    fn ordering_is_equality_at_q1() {
        let g = square_rect(2, 1).unwrap();
        let params = RcParams::new(ratio(2, 7), Rational::one()).unwrap();
        let v = holley_ordering_check(&g, &params, &BoundaryCondition::Free, &BoundaryCondition::Wired).unwrap();
        assert_eq!(v, Rational::zero());
    }

    #[test]
    fn duality() {
        let p = crate::rc::self_dual_point(2.0).unwrap();
        assert!(verify_duality_exact(&cycle4(), &RcParams::new(p, 2.0).unwrap()).unwrap() < 1e-12);
        let grid = square_rect(2, 2).unwrap();
        let tv = verify_duality_exact(&grid, &RcParams::new(ratio(2, 5), ratio(3, 1)).unwrap()).unwrap();
        assert_eq!(tv, Rational::zero());
        let tv = verify_duality_exact(&grid, &RcParams::new(ratio(1, 3), Rational::one()).unwrap()).unwrap();
        assert_eq!(tv, Rational::zero());
    }
}
