//! Edge triples, critical surfaces and the star–triangle coupling.
//!
//! Vertices of the triangle (and the star's outer vertices) are `A, B, C` with
//! indices 0, 1, 2. Triangle edge `i` is opposite vertex `i` and is open with
//! probability `p_i`; star arm `i` joins the centre to vertex `i` and is open
//! with probability `1 - p_i`.

use crate::error::{Error, Result};
use crate::lattice::Family;
use crate::scalar::{check_probability, total_variation, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeTriple<T> {
    pub p: [T; 3],
}

impl<T: Scalar> EdgeTriple<T> {
    pub fn new(p0: T, p1: T, p2: T) -> Result<Self> {
        for (i, p) in [&p0, &p1, &p2].into_iter().enumerate() {
            check_probability(p, &format!("p{i}"))?;
            if *p >= T::one() {
                return Err(Error::invalid(format!("p{i} must be < 1")));
            }
        }
        Ok(EdgeTriple { p: [p0, p1, p2] })
    }

    pub fn homogeneous(p: T) -> Result<Self> {
        Self::new(p.clone(), p.clone(), p)
    }

    /// The triple `(p0, p1, p2)` with `p2` chosen so that `κ_Δ = 0`.
    pub fn critical_completion(p0: T, p1: T) -> Result<Self> {
        let num = T::one() - p0.clone() - p1.clone();
        let den = T::one() - p0.clone() * p1.clone();
        if num < T::zero() || den <= T::zero() {
            return Err(Error::invalid("critical completion needs p0 + p1 <= 1 and p0·p1 < 1"));
        }
        Self::new(p0, p1, num / den)
    }

    /// `κ_Δ(p) = p0 + p1 + p2 - p0 p1 p2 - 1`.
    pub fn kappa(&self) -> T {
        kappa_triangle(&self.p)
    }

    /// `Π (1 - p_i)`.
    pub fn closed_weight(&self) -> T {
        self.p.iter().fold(T::one(), |acc, p| acc * p.complement())
    }

    pub fn to_f64(&self) -> EdgeTriple<f64> {
        EdgeTriple { p: [self.p[0].to_f64_lossy(), self.p[1].to_f64_lossy(), self.p[2].to_f64_lossy()] }
    }
}

fn kappa_triangle<T: Scalar>(p: &[T; 3]) -> T {
    p[0].clone() + p[1].clone() + p[2].clone() - p[0].clone() * p[1].clone() * p[2].clone() - T::one()
}

/// `κ_□`, `κ_Δ` or `κ_⬡` for the given edge parameters.
pub fn critical_surface<T: Scalar>(family: Family, p: &[T]) -> Result<T> {
    let arity = match family {
        Family::Square => 2,
        Family::Triangular | Family::Hexagonal => 3,
        other => return Err(Error::invalid(format!("no critical surface for the {} family", other.name()))),
    };
    if p.len() != arity {
        return Err(Error::invalid(format!(
            "{} family takes {arity} parameters, got {}",
            family.name(),
            p.len()
        )));
    }
    Ok(match family {
        Family::Square => p[0].clone() + p[1].clone() - T::one(),
        Family::Triangular => kappa_triangle(&[p[0].clone(), p[1].clone(), p[2].clone()]),
        _ => -kappa_triangle(&[p[0].complement(), p[1].complement(), p[2].complement()]),
    })
}

/// Root of `3p - p³ - 1` in `(0, 1)`, equal to `2 sin(π/18)`.
pub fn triangular_critical_probability() -> f64 {
    2.0 * (std::f64::consts::PI / 18.0).sin()
}

/// Connectivity partition of `{A, B, C}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Partition {
    Separate,
    /// The two vertices other than the given one are joined; it is alone.
    Pair(u8),
    All,
}

impl Partition {
    pub const ALL: [Partition; 5] =
        [Partition::Separate, Partition::Pair(0), Partition::Pair(1), Partition::Pair(2), Partition::All];

    pub fn index(self) -> usize {
        match self {
            Partition::Separate => 0,
            Partition::Pair(i) => 1 + i as usize,
            Partition::All => 4,
        }
    }

    pub fn connects(self, a: usize, b: usize) -> bool {
        match self {
            _ if a == b => true,
            Partition::Separate => false,
            Partition::All => true,
            Partition::Pair(i) => a != i as usize && b != i as usize,
        }
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Partition::Separate => write!(f, "A|B|C"),
            Partition::Pair(0) => write!(f, "A|BC"),
            Partition::Pair(1) => write!(f, "B|AC"),
            Partition::Pair(_) => write!(f, "C|AB"),
            Partition::All => write!(f, "ABC"),
        }
    }
}

/// Three bits indexed by edge (triangle) or arm (star).
pub type Triple = [bool; 3];

pub fn all_triples() -> impl Iterator<Item = Triple> {
    (0..8u8).map(|m| [m & 1 != 0, m & 2 != 0, m & 4 != 0])
}

pub fn triangle_partition(w: Triple) -> Partition {
    match w.iter().filter(|&&b| b).count() {
        0 => Partition::Separate,
        1 => Partition::Pair(w.iter().position(|&b| b).unwrap() as u8),
        _ => Partition::All,
    }
}

pub fn star_partition(w: Triple) -> Partition {
    match w.iter().filter(|&&b| b).count() {
        0 | 1 => Partition::Separate,
        2 => Partition::Pair(w.iter().position(|&b| !b).unwrap() as u8),
        _ => Partition::All,
    }
}

fn product_weight<T: Scalar>(w: Triple, open: &[T; 3]) -> T {
    (0..3).fold(T::one(), |acc, i| acc * if w[i] { open[i].clone() } else { open[i].complement() })
}

/// `P^Δ_p(ω)` for a triangle configuration.
pub fn triangle_weight<T: Scalar>(w: Triple, p: &EdgeTriple<T>) -> T {
    product_weight(w, &p.p)
}

/// `P^⬡_{1-p}(ω')` for a star configuration.
pub fn star_weight<T: Scalar>(w: Triple, p: &EdgeTriple<T>) -> T {
    let q = [p.p[0].complement(), p.p[1].complement(), p.p[2].complement()];
    product_weight(w, &q)
}

#[derive(Debug, Clone, PartialEq)]
pub struct StarTriangleLaw<T> {
    /// Indexed by [`Partition::index`].
    pub triangle: [T; 5],
    pub star: [T; 5],
    pub tv: T,
}

/// Exact laws of the `{A,B,C}` partition in the triangle and in the star.
pub fn star_triangle_law<T: Scalar>(p: &EdgeTriple<T>) -> StarTriangleLaw<T> {
    let mut triangle: [T; 5] = std::array::from_fn(|_| T::zero());
    let mut star: [T; 5] = std::array::from_fn(|_| T::zero());
    for w in all_triples() {
        let i = triangle_partition(w).index();
        triangle[i] = triangle[i].clone() + triangle_weight(w, p);
        let j = star_partition(w).index();
        star[j] = star[j].clone() + star_weight(w, p);
    }
    let tv = total_variation(&triangle, &star);
    StarTriangleLaw { triangle, star, tv }
}

/// One outcome of a random map, with its probability.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch<T> {
    pub prob: T,
    pub out: Triple,
}

fn check_critical<T: Scalar>(p: &EdgeTriple<T>, allow_off_critical: bool) -> Result<()> {
    if allow_off_critical {
        return Ok(());
    }
    let k = p.kappa().to_f64_lossy();
    if k.abs() > 1e-12 {
        return Err(Error::invalid(format!("star–triangle maps need κ_Δ(p) = 0, got {k:e}")));
    }
    Ok(())
}

/// Weights `p0 p1 p2` (all open) and `(1 - p_i) p_j p_k` (only `i` closed),
/// shared by the random branch of both maps.
fn mixing_weights<T: Scalar>(p: &EdgeTriple<T>) -> [(T, u8); 4] {
    let [a, b, c] = p.p.clone();
    [
        (a.clone() * b.clone() * c.clone(), 3),
        (a.complement() * b.clone() * c.clone(), 0),
        (b.complement() * a.clone() * c.clone(), 1),
        (c.complement() * a * b, 2),
    ]
}

/// Branches of `T(ω)`, deterministic unless the triangle is fully closed.
pub fn map_t_branches<T: Scalar>(w: Triple, p: &EdgeTriple<T>) -> Vec<Branch<T>> {
    match triangle_partition(w) {
        Partition::All => vec![Branch { prob: T::one(), out: [true; 3] }],
        Partition::Pair(i) => {
            let mut out = [true; 3];
            out[i as usize] = false;
            vec![Branch { prob: T::one(), out }]
        }
        Partition::Separate => {
            // star with no arm, or only arm i, open
            let weights = mixing_weights(p);
            let total = weights.iter().fold(T::zero(), |acc, w| acc + w.0.clone());
            weights
                .into_iter()
                .map(|(wt, k)| {
                    let mut out = [false; 3];
                    if k < 3 {
                        out[k as usize] = true;
                    }
                    Branch { prob: wt / total.clone(), out }
                })
                .collect()
        }
    }
}

/// Branches of `S(ω')`, deterministic unless the star is fully open.
pub fn map_s_branches<T: Scalar>(w: Triple, p: &EdgeTriple<T>) -> Vec<Branch<T>> {
    match star_partition(w) {
        Partition::Separate => vec![Branch { prob: T::one(), out: [false; 3] }],
        Partition::Pair(i) => {
            let mut out = [false; 3];
            out[i as usize] = true;
            vec![Branch { prob: T::one(), out }]
        }
        Partition::All => {
            // triangle fully open, or open except edge i
            let weights = mixing_weights(p);
            let total = weights.iter().fold(T::zero(), |acc, w| acc + w.0.clone());
            weights
                .into_iter()
                .map(|(wt, k)| {
                    let mut out = [true; 3];
                    if k < 3 {
                        out[k as usize] = false;
                    }
                    Branch { prob: wt / total.clone(), out }
                })
                .collect()
        }
    }
}

fn pick<T: Scalar>(branches: &[Branch<T>], u: f64) -> Triple {
    let mut acc = 0.0;
    for b in branches {
        acc += b.prob.to_f64_lossy();
        if u < acc {
            return b.out;
        }
    }
    branches.last().expect("at least one branch").out
}

/// Random map `T`: triangle configuration to star configuration.
pub fn star_triangle_map_t<T: Scalar>(
    w: Triple,
    p: &EdgeTriple<T>,
    rng: &mut impl rand::Rng,
    allow_off_critical: bool,
) -> Result<Triple> {
    check_critical(p, allow_off_critical)?;
    let branches = map_t_branches(w, p);
    Ok(if branches.len() == 1 { branches[0].out } else { pick(&branches, rng.random()) })
}

/// Random map `S`: star configuration to triangle configuration.
pub fn star_triangle_map_s<T: Scalar>(
    w: Triple,
    p: &EdgeTriple<T>,
    rng: &mut impl rand::Rng,
    allow_off_critical: bool,
) -> Result<Triple> {
    check_critical(p, allow_off_critical)?;
    let branches = map_s_branches(w, p);
    Ok(if branches.len() == 1 { branches[0].out } else { pick(&branches, rng.random()) })
}

/// Result of pushing the product laws through both maps.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingCheck<T> {
    /// TV distance between the law of `T(ω)` and `P^⬡_{1-p}`.
    pub t_tv: T,
    /// TV distance between the law of `S(ω')` and `P^Δ_p`.
    pub s_tv: T,
    pub branches: usize,
    pub partition_preserved: bool,
}

/// Exhaustive check of the coupling over all inputs and branches.
pub fn verify_coupling<T: Scalar>(p: &EdgeTriple<T>) -> CouplingCheck<T> {
    let idx = |w: Triple| w.iter().enumerate().map(|(i, &b)| (b as usize) << i).sum::<usize>();
    let mut t_law: Vec<T> = vec![T::zero(); 8];
    let mut s_law: Vec<T> = vec![T::zero(); 8];
    let mut branches = 0;
    let mut preserved = true;
    for w in all_triples() {
        for b in map_t_branches(w, p) {
            branches += 1;
            preserved &= star_partition(b.out) == triangle_partition(w);
            t_law[idx(b.out)] = t_law[idx(b.out)].clone() + triangle_weight(w, p) * b.prob;
        }
        for b in map_s_branches(w, p) {
            branches += 1;
            preserved &= triangle_partition(b.out) == star_partition(w);
            s_law[idx(b.out)] = s_law[idx(b.out)].clone() + star_weight(w, p) * b.prob;
        }
    }
    let star: Vec<T> = (0..8).map(|m| star_weight(triple_of(m), p)).collect();
    let tri: Vec<T> = (0..8).map(|m| triangle_weight(triple_of(m), p)).collect();
    CouplingCheck {
        t_tv: total_variation(&t_law, &star),
        s_tv: total_variation(&s_law, &tri),
        branches,
        partition_preserved: preserved,
    }
}

fn triple_of(m: usize) -> Triple {
    [m & 1 != 0, m & 2 != 0, m & 4 != 0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Rational};
    use num_traits::Zero;

    #[test]
    fn surfaces() {
        assert_eq!(critical_surface(Family::Square, &[ratio(1, 2), ratio(1, 2)]).unwrap(), Rational::zero());
        let p = triangular_critical_probability();
        assert!(critical_surface(Family::Triangular, &[p, p, p]).unwrap().abs() < 1e-12);
        assert!(critical_surface(Family::Hexagonal, &[1.0 - p, 1.0 - p, 1.0 - p]).unwrap().abs() < 1e-12);
        assert!(critical_surface(Family::Square, &[0.5]).is_err());
        assert!(critical_surface(Family::Mixed, &[0.5, 0.5]).is_err());
    }

    #[test]
    fn homogeneous_law() {
        let p = triangular_critical_probability();
        let law = star_triangle_law(&EdgeTriple::homogeneous(p).unwrap());
        let all = Partition::All.index();
        assert!((law.triangle[all] - p * p * (3.0 - 2.0 * p)).abs() < 1e-15);
        assert!((law.star[all] - (1.0 - p).powi(3)).abs() < 1e-15);
        assert!((law.triangle[all] - 0.27807).abs() < 1e-5);
        assert!(law.tv < 1e-12);
    }

    #[test]
    fn degenerate_triple() {
        let z = Rational::zero();
        let law = star_triangle_law(&EdgeTriple::new(z.clone(), z.clone(), z).unwrap());
        assert_eq!(law.tv, ratio(1, 1));
    }

    #[test]
    fn seven_deterministic_inputs() {
        let p = EdgeTriple::critical_completion(ratio(1, 5), ratio(1, 3)).unwrap();
        assert_eq!(p.kappa(), Rational::zero());
        let random: Vec<Triple> = all_triples().filter(|&w| map_t_branches(w, &p).len() > 1).collect();
        assert_eq!(random, vec![[false; 3]]);
        let random: Vec<Triple> = all_triples().filter(|&w| map_s_branches(w, &p).len() > 1).collect();
        assert_eq!(random, vec![[true; 3]]);
        let check = verify_coupling(&p);
        assert!(check.partition_preserved);
        assert_eq!(check.t_tv, Rational::zero());
        assert_eq!(check.s_tv, Rational::zero());
    }

    #[test]
    fn maps_reject_off_critical() {
        let p = EdgeTriple::homogeneous(0.5).unwrap();
        let mut rng = crate::rng::stream_rng(0, 0);
        assert!(star_triangle_map_t([false; 3], &p, &mut rng, false).is_err());
        assert!(star_triangle_map_t([false; 3], &p, &mut rng, true).is_ok());
    }
}
