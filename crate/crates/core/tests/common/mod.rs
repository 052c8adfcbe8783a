//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use dgeom::geometry::Point;
use dgeom::lattice::{square_rect, Family, LatticePatch, PatchBuilder, StepPlan};
use dgeom::percolation::{map_s_branches, map_t_branches, EdgeTriple, Partition};
use dgeom::scalar::ratio;
use dgeom::Rational;
use num_traits::{One, Zero};

/// Integer coordinates `(bx, ay)` of the hexagonal lattice: `x = bx·√3/2`, `y = ay/2`.
pub fn hex_steps(p: (i64, i64)) -> [(i64, i64); 3] {
    if p.1.rem_euclid(3) == 0 {
        [(0, 2), (-1, -1), (1, -1)]
    } else {
        [(0, -2), (-1, 1), (1, 1)]
    }
}

pub fn square_steps(_: (i64, i64)) -> [(i64, i64); 4] {
    [(1, 0), (-1, 0), (0, 1), (0, -1)]
}

fn dfs<const K: usize>(
    p: (i64, i64),
    depth: usize,
    n_max: usize,
    steps: fn((i64, i64)) -> [(i64, i64); K],
    seen: &mut HashSet<(i64, i64)>,
    counts: &mut [u64],
) {
    if depth == n_max {
        return;
    }
    for d in steps(p) {
        let q = (p.0 + d.0, p.1 + d.1);
        if seen.insert(q) {
            counts[depth] += 1;
            dfs(q, depth + 1, n_max, steps, seen, counts);
            seen.remove(&q);
        }
    }
}

/// `σ_1, …, σ_n` by depth-first search with a visited set.
pub fn saw_counts_hex(n_max: usize) -> Vec<u64> {
    let mut counts = vec![0; n_max];
    let mut seen = HashSet::from([(0, 0)]);
    dfs((0, 0), 0, n_max, hex_steps, &mut seen, &mut counts);
    counts
}

pub fn saw_counts_square(n_max: usize) -> Vec<u64> {
    let mut counts = vec![0; n_max];
    let mut seen = HashSet::from([(0, 0)]);
    dfs((0, 0), 0, n_max, square_steps, &mut seen, &mut counts);
    counts
}

/// Every hexagonal walk of exactly `len` steps from the origin, as step lists.
pub fn hex_walks(len: usize) -> Vec<Vec<(i64, i64)>> {
    fn go(p: (i64, i64), len: usize, path: &mut Vec<(i64, i64)>, seen: &mut HashSet<(i64, i64)>, out: &mut Vec<Vec<(i64, i64)>>) {
        if path.len() == len {
            out.push(path.clone());
            return;
        }
        for d in hex_steps(p) {
            let q = (p.0 + d.0, p.1 + d.1);
            if seen.insert(q) {
                path.push(d);
                go(q, len, path, seen, out);
                path.pop();
                seen.remove(&q);
            }
        }
    }
    let mut out = Vec::new();
    go((0, 0), len, &mut Vec::new(), &mut HashSet::from([(0, 0)]), &mut out);
    out
}

/// Component labels by breadth-first search: the smallest vertex of each component.
pub fn bfs_labels(n: usize, edges: &[(u32, u32)]) -> Vec<u32> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u as usize].push(v);
        adj[v as usize].push(u);
    }
    let mut label = vec![u32::MAX; n];
    for s in 0..n {
        if label[s] != u32::MAX {
            continue;
        }
        label[s] = s as u32;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &w in &adj[v] {
                if label[w as usize] == u32::MAX {
                    label[w as usize] = s as u32;
                    q.push_back(w as usize);
                }
            }
        }
    }
    label
}

pub fn open_edges(patch: &LatticePatch, open: &[bool]) -> Vec<(u32, u32)> {
    patch.edges().iter().zip(open).filter(|x| *x.1).map(|(e, _)| (e.u, e.v)).collect()
}

/// Partition of `{0, 1, 2}` induced by component labels.
pub fn partition_of(l: &[u32]) -> Partition {
    match (l[0] == l[1], l[0] == l[2], l[1] == l[2]) {
        (true, true, _) => Partition::All,
        (true, false, _) => Partition::Pair(2),
        (false, true, _) => Partition::Pair(1),
        (false, false, true) => Partition::Pair(0),
        _ => Partition::Separate,
    }
}

/// Partition laws of the triangle (edge `i` joins the two vertices other
/// than `i`, open w.p. `p_i`) and of the star (arm `i` from a centre to `i`,
/// open w.p. `1 - p_i`), by enumerating graphs.
pub fn partition_laws(p: &[Rational; 3]) -> ([Rational; 5], [Rational; 5]) {
    let tri_edges = [(1, 2), (0, 2), (0, 1)];
    let mut tri: [Rational; 5] = std::array::from_fn(|_| Rational::zero());
    let mut star: [Rational; 5] = std::array::from_fn(|_| Rational::zero());
    for mask in 0..8u32 {
        let on = |i: usize| mask >> i & 1 == 1;
        let mut edges = Vec::new();
        let (mut wt, mut ws) = (Rational::one(), Rational::one());
        let mut star_edges = Vec::new();
        for i in 0..3 {
            let q = Rational::one() - p[i].clone();
            if on(i) {
                edges.push(tri_edges[i]);
                star_edges.push((3, i as u32));
                wt *= p[i].clone();
                ws *= q;
            } else {
                wt *= q;
                ws *= p[i].clone();
            }
        }
        tri[partition_of(&bfs_labels(3, &edges)).index()] += wt;
        star[partition_of(&bfs_labels(4, &star_edges)).index()] += ws;
    }
    (tri, star)
}

/// Positive root of `y³ − κy − κ = 0` by Newton's method from above.
pub fn fisher_newton(kappa: f64) -> f64 {
    let mut y = 1.0 + kappa;
    for _ in 0..100 {
        let f = y * y * y - kappa * y - kappa;
        let d = 3.0 * y * y - kappa;
        let next = y - f / d;
        if (next - y).abs() < 1e-15 {
            return next;
        }
        y = next;
    }
    y
}

/// Product weight of a configuration with per-edge probabilities.
pub fn product_weight(probs: &[Rational], mask: u64) -> Rational {
    probs.iter().enumerate().fold(Rational::one(), |acc, (e, p)| {
        acc * if mask >> e & 1 == 1 { p.clone() } else { Rational::one() - p.clone() }
    })
}

/// Exact law of the output of the single swap of `plan`, given product
/// probabilities on the source edges, or a single source configuration.
/// Triangles are mapped by `T` and the resulting stars, rewired as the plan
/// says, by `S`.
pub fn swap_pushforward(
    plan: &StepPlan,
    src_probs: &[Rational],
    dst_probs: &[Rational],
    only: Option<u64>,
) -> HashMap<u64, Rational> {
    assert_eq!(plan.swaps.len(), 1, "oracle handles one swap");
    let swap = &plan.swaps[0];
    let m = src_probs.len();
    let mut law: HashMap<u64, Rational> = HashMap::new();
    let tri_p: Vec<EdgeTriple<Rational>> = swap
        .triangles
        .iter()
        .map(|t| EdgeTriple::new(src_probs[t[0] as usize].clone(), src_probs[t[1] as usize].clone(), src_probs[t[2] as usize].clone()).unwrap())
        .collect();
    let star_p: Vec<EdgeTriple<Rational>> = swap
        .stars
        .iter()
        .map(|s| EdgeTriple::new(dst_probs[s.out[0] as usize].clone(), dst_probs[s.out[1] as usize].clone(), dst_probs[s.out[2] as usize].clone()).unwrap())
        .collect();
    let sources: Vec<u64> = match only {
        Some(c) => vec![c],
        None => (0..1u64 << m).collect(),
    };
    for src in sources {
        let w = if only.is_some() { Rational::one() } else { product_weight(src_probs, src) };
        if w.is_zero() {
            continue;
        }
        let bit = |e: u32| src >> e & 1 == 1;
        let mut base = 0u64;
        for &(t, s) in &swap.copies {
            if bit(s) {
                base |= 1 << t;
            }
        }
        // distribution over the star arms of every triangle
        let mut arms: Vec<(Vec<[bool; 3]>, Rational)> = vec![(Vec::new(), w)];
        for (t, edges) in swap.triangles.iter().enumerate() {
            let input = [bit(edges[0]), bit(edges[1]), bit(edges[2])];
            let br = map_t_branches(input, &tri_p[t]);
            arms = arms
                .into_iter()
                .flat_map(|(a, p)| {
                    br.iter().map(move |b| {
                        let mut a2 = a.clone();
                        a2.push(b.out);
                        (a2, p.clone() * b.prob.clone())
                    })
                })
                .collect();
        }
        for (a, p) in arms {
            let mut mask = base;
            for &(e, t) in &swap.spokes {
                if a[t][0] {
                    mask |= 1 << e;
                }
            }
            let mut outs: Vec<(u64, Rational)> = vec![(mask, p)];
            for (k, s) in swap.stars.iter().enumerate() {
                let input = [bit(s.own), a[s.arm1.0][s.arm1.1], a[s.arm2.0][s.arm2.1]];
                let br = map_s_branches(input, &star_p[k]);
                outs = outs
                    .into_iter()
                    .flat_map(|(mk, p)| {
                        br.iter().map(move |b| {
                            let mut m2 = mk;
                            for i in 0..3 {
                                if b.out[i] {
                                    m2 |= 1 << s.out[i];
                                }
                            }
                            (m2, p.clone() * b.prob.clone())
                        })
                    })
                    .collect();
            }
            for (mk, p) in outs {
                *law.entry(mk).or_insert_with(Rational::zero) += p;
            }
        }
    }
    law
}

/// Twenty rational triples on the critical surface, completed from `(p0, p1)`.
pub fn critical_rational_triples() -> Vec<EdgeTriple<Rational>> {
    let pairs = [
        (1, 3, 1, 4), (1, 2, 1, 5), (1, 5, 1, 5), (2, 5, 1, 3), (1, 10, 7, 10),
        (3, 10, 3, 10), (1, 7, 2, 7), (1, 4, 1, 4), (3, 8, 1, 8), (1, 9, 4, 9),
        (2, 7, 2, 7), (1, 6, 1, 2), (1, 3, 1, 3), (3, 5, 1, 10), (1, 8, 5, 8),
        (4, 9, 1, 9), (1, 11, 1, 3), (5, 12, 1, 6), (1, 20, 9, 10), (7, 20, 3, 10),
    ];
    pairs.iter().map(|&(a, b, c, d)| EdgeTriple::critical_completion(ratio(a, b), ratio(c, d)).unwrap()).collect()
}

/// Small graphs with at most five edges, named.
pub fn small_graphs() -> Vec<(&'static str, LatticePatch)> {
    let build = |pts: &[((i64, i64), (i64, i64))]| {
        let mut b = PatchBuilder::new(Family::Square);
        for &(a, c) in pts {
            b.edge(Point::half(a.0, a.1), Point::half(c.0, c.1), 0).unwrap();
        }
        b.finish()
    };
    vec![
        ("edge", build(&[((0, 0), (2, 0))])),
        ("path", build(&[((0, 0), (2, 0)), ((2, 0), (4, 0))])),
        ("triangle", build(&[((0, 0), (2, 0)), ((2, 0), (0, 2)), ((0, 2), (0, 0))])),
        ("four-cycle", square_rect(1, 1).unwrap()),
        ("kite", build(&[((0, 0), (2, 0)), ((2, 0), (2, 2)), ((2, 2), (0, 2)), ((0, 2), (0, 0)), ((0, 0), (2, 2))])),
    ]
}

/// Random-cluster probabilities of every configuration, with `k` counted by
/// breadth-first search; a wired boundary is an extra vertex joined to every
/// boundary vertex.
pub fn rc_oracle(patch: &LatticePatch, p: &Rational, q: &Rational, wired: bool) -> Vec<Rational> {
    let n = patch.num_vertices();
    let m = patch.num_edges();
    let weights: Vec<Rational> = (0..1u64 << m)
        .map(|mask| {
            let open: Vec<bool> = (0..m).map(|e| mask >> e & 1 == 1).collect();
            let mut edges = open_edges(patch, &open);
            let mut total = n;
            if wired && !patch.boundary().is_empty() {
                edges.extend(patch.boundary().iter().map(|&b| (n as u32, b)));
                total += 1;
            }
            let labels = bfs_labels(total, &edges);
            let k = labels.iter().collect::<HashSet<_>>().len();
            let mut w = product_weight(&vec![p.clone(); m], mask);
            for _ in 0..k {
                w *= q.clone();
            }
            w
        })
        .collect();
    let z = weights.iter().fold(Rational::zero(), |a, w| a + w);
    weights.into_iter().map(|w| w / z.clone()).collect()
}
