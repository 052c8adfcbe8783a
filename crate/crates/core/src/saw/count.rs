use crate::error::{Error, Result};
use crate::lattice::{LatticePatch, VertexId};

/// Default cap on walk extensions for every enumerator.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Checks that walks of `n_max` steps from `origin` never touch the truncated
/// boundary of `patch`.
pub fn check_saw_room(patch: &LatticePatch, origin: VertexId, n_max: usize) -> Result<()> {
    let full = patch
        .family
        .lattice_degree()
        .ok_or_else(|| Error::invalid("walk counting needs a lattice with constant degree"))?;
    let dist = patch.distances_from(origin);
    for v in 0..patch.num_vertices() {
        if let Some(d) = dist[v] {
            if (d as usize) < n_max && patch.degree(v as VertexId) < full {
                return Err(Error::invalid(format!(
                    "patch too small: a vertex at distance {d} < {n_max} from the origin is on the boundary"
                )));
            }
            if patch.degree(v as VertexId) > full {
                return Err(Error::invalid("vertex degree exceeds the lattice degree"));
            }
        }
    }
    Ok(())
}

struct Dfs<'a> {
    patch: &'a LatticePatch,
    visited: Vec<bool>,
    counts: Vec<u64>,
    n_max: usize,
    work: u64,
    budget: u64,
}

impl Dfs<'_> {
    fn extend(&mut self, v: VertexId, depth: usize) -> Result<()> {
        for &(w, _) in self.patch.neighbors(v) {
            if self.visited[w as usize] {
                continue;
            }
            self.work += 1;
            if self.work > self.budget {
                return Err(Error::BudgetExceeded { budget: self.budget });
            }
            self.counts[depth] += 1;
            if depth + 1 < self.n_max {
                self.visited[w as usize] = true;
                self.extend(w, depth + 1)?;
                self.visited[w as usize] = false;
            }
        }
        Ok(())
    }
}

/// `σ_1, …, σ_{n_max}`: numbers of self-avoiding walks with `n` steps from `origin`.
pub fn count_saws(patch: &LatticePatch, origin: VertexId, n_max: usize, budget: u64) -> Result<Vec<u64>> {
    if n_max == 0 {
        return Err(Error::invalid("n_max must be at least 1"));
    }
    check_saw_room(patch, origin, n_max)?;
    let mut dfs = Dfs {
        patch,
        visited: vec![false; patch.num_vertices()],
        counts: vec![0; n_max],
        n_max,
        work: 0,
        budget,
    };
    dfs.visited[origin as usize] = true;
    dfs.extend(origin, 0)?;
    Ok(dfs.counts)
}

/// As [`count_saws`], splitting the enumeration on the first step across
/// `workers` threads; the budget applies to each first-step branch.
pub fn count_saws_parallel(
    patch: &LatticePatch,
    origin: VertexId,
    n_max: usize,
    budget: u64,
    workers: usize,
) -> Result<Vec<u64>> {
    if n_max == 0 {
        return Err(Error::invalid("n_max must be at least 1"));
    }
    check_saw_room(patch, origin, n_max)?;
    let firsts: Vec<VertexId> = patch.neighbors(origin).iter().map(|&(w, _)| w).collect();
    let branch = |w: VertexId| -> Result<Vec<u64>> {
        let mut dfs = Dfs {
            patch,
            visited: vec![false; patch.num_vertices()],
            counts: vec![0; n_max],
            n_max,
            work: 0,
            budget,
        };
        dfs.visited[origin as usize] = true;
        dfs.visited[w as usize] = true;
        dfs.counts[0] = 1;
        if n_max > 1 {
            dfs.extend(w, 1)?;
        }
        Ok(dfs.counts)
    };
    let parts: Vec<Result<Vec<u64>>> = crate::rng::run_replicas(firsts.len(), workers, |i| branch(firsts[i]));
    let mut total = vec![0u64; n_max];
    for part in parts {
        for (t, c) in total.iter_mut().zip(part?) {
            *t += c;
        }
    }
    Ok(total)
}

/// First pair `(m, n)` with `σ_{m+n} > σ_m σ_n`, if any. `counts[k-1] = σ_k`.
pub fn check_submultiplicativity(counts: &[u64]) -> Option<(usize, usize)> {
    let s = |k: usize| counts[k - 1] as u128;
    for total in 2..=counts.len() {
        for m in 1..total {
            let n = total - m;
            if s(total) > s(m) * s(n) {
                return Some((m, n));
            }
        }
    }
    None
}

/// Root and ratio estimates of the connective constant.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ConnectiveEstimate {
    /// `σ_n^{1/n}` for `n = 1..`; each is an upper bound on `κ`.
    pub roots: Vec<f64>,
    /// `σ_{n+1}/σ_n` for `n = 1..`.
    pub ratios: Vec<f64>,
    /// Smallest root: the best rigorous upper bound available from the counts.
    pub upper_bound: f64,
}

/// Estimates `κ` from exact counts; `degree` is the lattice degree `Δ`.
///
/// The ratios are checked to lie in `(1, Δ−1]`. Roots are upper bounds
/// (`κ = inf σ_n^{1/n}`) and may exceed `Δ−1` for small `n`.
pub fn estimate_connective_constant(counts: &[u64], degree: usize) -> Result<ConnectiveEstimate> {
    if counts.len() < 3 {
        return Err(Error::invalid("need at least three counts"));
    }
    let roots: Vec<f64> = counts
        .iter()
        .enumerate()
        .map(|(i, &c)| (c as f64).powf(1.0 / (i + 1) as f64))
        .collect();
    let ratios: Vec<f64> = counts.windows(2).map(|w| w[1] as f64 / w[0] as f64).collect();
    let cap = degree as f64 - 1.0;
    if let Some((i, r)) = ratios.iter().enumerate().find(|(_, &r)| !(r > 1.0 && r <= cap)) {
        return Err(Error::Invariant(format!("ratio σ_{}/σ_{} = {r} outside (1, {cap}]", i + 2, i + 1)));
    }
    let upper_bound = roots.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(ConnectiveEstimate { roots, ratios, upper_bound })
}
