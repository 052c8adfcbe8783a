use num_complex::Complex;
use num_traits::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::lattice::{EdgeId, MidClass, MidpointId, Region, VertexId};

use super::path::turn;

/// Exact numbers of walks from `a` to each midpoint, by turning and length.
#[derive(Debug, Clone)]
pub struct WalkCounts {
    counts: Vec<u64>,
    n_mid: usize,
    max_len: usize,
    /// Walk extensions performed.
    pub work: u64,
}

impl WalkCounts {
    fn span(&self) -> usize {
        2 * self.max_len + 1
    }

    fn idx(&self, m: usize, thirds: i32, len: usize) -> usize {
        (m * self.span() + (thirds + self.max_len as i32) as usize) * (self.max_len + 1) + len
    }

    /// Number of walks from `a` to `m` visiting `len` vertices with turning `thirds·π/3`.
    pub fn get(&self, m: MidpointId, thirds: i32, len: usize) -> u64 {
        if thirds.unsigned_abs() as usize > self.max_len || len > self.max_len {
            return 0;
        }
        self.counts[self.idx(m as usize, thirds, len)]
    }

    /// Non-zero `(thirds, len, count)` entries for `m`.
    pub fn entries(&self, m: MidpointId) -> Vec<(i32, usize, u64)> {
        let mut out = Vec::new();
        let l = self.max_len as i32;
        for t in -l..=l {
            for len in 0..=self.max_len {
                let c = self.get(m, t, len);
                if c > 0 {
                    out.push((t, len, c));
                }
            }
        }
        out
    }

    pub fn num_midpoints(&self) -> usize {
        self.n_mid
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }
}

struct Enum<'a> {
    region: &'a Region,
    visited: Vec<bool>,
    out: WalkCounts,
    budget: u64,
}

impl Enum<'_> {
    fn walk(&mut self, v: VertexId, e_in: EdgeId, dir_in: Point, thirds: i32, len: usize) -> Result<()> {
        let base = &self.region.base;
        for &(w, e) in base.neighbors(v) {
            if e == e_in {
                continue;
            }
            self.out.work += 1;
            if self.out.work > self.budget {
                return Err(Error::BudgetExceeded { budget: self.budget });
            }
            let d = base.displacement(e, v);
            let t = thirds + turn(dir_in, d);
            let i = self.out.idx(e as usize, t, len);
            self.out.counts[i] += 1;
            if self.region.inside[w as usize] && !self.visited[w as usize] {
                self.visited[w as usize] = true;
                self.walk(w, e, d, t, len + 1)?;
                self.visited[w as usize] = false;
            }
        }
        Ok(())
    }
}

/// Enumerates every SAW in `region` from `a` to every midpoint.
pub fn enumerate_region_walks(region: &Region, budget: u64) -> Result<WalkCounts> {
    let base = &region.base;
    let n_mid = base.num_edges();
    let max_len = region.inside.iter().filter(|&&b| b).count();
    let size = n_mid * (2 * max_len + 1) * (max_len + 1);
    let mut e = Enum {
        region,
        visited: vec![false; base.num_vertices()],
        out: WalkCounts { counts: vec![0; size], n_mid, max_len, work: 0 },
        budget,
    };
    let a = region.start;
    let i = e.out.idx(a as usize, 0, 0);
    e.out.counts[i] = 1;
    let u0 = region.start_vertex();
    let dir0 = -base.displacement(a, u0);
    e.visited[u0 as usize] = true;
    e.walk(u0, a, dir0, 0, 1)?;
    Ok(e.out)
}

/// `χ = 1/√(2+√2)`.
pub fn chi<T: Float>() -> T {
    let two = T::one() + T::one();
    T::one() / (two + two.sqrt()).sqrt()
}

/// The critical spin `σ = 5/8`.
pub fn critical_sigma<T: Float>() -> T {
    T::from(5.0 / 8.0).unwrap()
}

#[derive(Debug, Clone, Serialize)]
pub struct ObservableReport<T> {
    pub sigma: T,
    pub x: T,
    /// `F(z)` per midpoint, as `(re, im)`.
    pub values: Vec<(T, T)>,
    /// `(v, |(p−v)F(p)+(q−v)F(q)+(r−v)F(r)|)` for every `v ∈ S`.
    pub residuals: Vec<(VertexId, T)>,
    pub lambda: T,
    pub tau_plus: T,
    pub tau_minus: T,
    pub upsilon: T,
}

impl<T: Float> ObservableReport<T> {
    pub fn max_residual(&self) -> T {
        self.residuals.iter().fold(T::zero(), |m, r| m.max(r.1))
    }

    /// `c_l λ + c_t (τ⁺ + τ⁻) + υ`.
    pub fn boundary_combination(&self) -> T {
        let pi = T::from(std::f64::consts::PI).unwrap();
        let c_l = (T::from(3.0).unwrap() * pi / T::from(8.0).unwrap()).cos();
        let c_t = (pi / T::from(4.0).unwrap()).cos();
        c_l * self.lambda + c_t * (self.tau_plus + self.tau_minus) + self.upsilon
    }
}

fn midpoint_complex<T: Float>(region: &Region, m: MidpointId) -> Complex<T> {
    let (x, y) = region.midpoint(m);
    Complex::new(T::from(x).unwrap(), T::from(y).unwrap())
}

/// Evaluates `F(z) = Σ e^{−iσT(γ)} x^{|γ|}` and the per-vertex identity from exact counts.
pub fn observable_from_counts<T: Float>(region: &Region, counts: &WalkCounts, sigma: T, x: T) -> ObservableReport<T> {
    let l = counts.max_len();
    let third = T::from(std::f64::consts::FRAC_PI_3).unwrap();
    // one trigonometric evaluation per distinct turning count
    let phases: Vec<Complex<T>> = (-(l as i32)..=l as i32)
        .map(|t| Complex::from_polar(T::one(), -sigma * T::from(t).unwrap() * third))
        .collect();
    let mut xp = vec![T::one(); l + 1];
    for k in 1..=l {
        xp[k] = xp[k - 1] * x;
    }
    let n_mid = counts.num_midpoints();
    let mut values = vec![Complex::new(T::zero(), T::zero()); n_mid];
    let mut plain = vec![T::zero(); n_mid];
    for m in 0..n_mid {
        for (t, len, c) in counts.entries(m as MidpointId) {
            let w = T::from(c).unwrap() * xp[len];
            values[m] = values[m] + phases[(t + l as i32) as usize] * w;
            plain[m] = plain[m] + w;
        }
    }
    let mut residuals = Vec::new();
    for v in region.inside_vertices() {
        let (vx, vy) = region.base.position(v).to_f64();
        let vc = Complex::new(T::from(vx).unwrap(), T::from(vy).unwrap());
        let mut s = Complex::new(T::zero(), T::zero());
        for &(_, e) in region.base.neighbors(v) {
            s = s + (midpoint_complex::<T>(region, e) - vc) * values[e as usize];
        }
        residuals.push((v, s.norm()));
    }
    let sum_class = |c: MidClass| {
        region.class_members(c).iter().fold(T::zero(), |acc, &m| acc + plain[m as usize])
    };
    ObservableReport {
        sigma,
        x,
        values: values.iter().map(|z| (z.re, z.im)).collect(),
        residuals,
        lambda: sum_class(MidClass::L),
        tau_plus: sum_class(MidClass::TPlus),
        tau_minus: sum_class(MidClass::TMinus),
        upsilon: sum_class(MidClass::U),
    }
}

pub fn parafermionic_observable<T: Float>(region: &Region, sigma: T, x: T, budget: u64) -> Result<ObservableReport<T>> {
    let counts = enumerate_region_walks(region, budget)?;
    Ok(observable_from_counts(region, &counts, sigma, x))
}

/// Largest per-vertex residual over `S`.
pub fn verify_vertex_identity<T: Float>(region: &Region, sigma: T, x: T, budget: u64) -> Result<T> {
    Ok(parafermionic_observable(region, sigma, x, budget)?.max_residual())
}

/// Boundary sums `(λ, τ⁺, τ⁻, υ)` with the deviation `|c_l λ + c_t τ + υ − 1|`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundarySums<T> {
    pub lambda: T,
    pub tau_plus: T,
    pub tau_minus: T,
    pub upsilon: T,
    pub deviation: T,
}

pub fn boundary_sums<T: Float>(region: &Region, x: T, budget: u64) -> Result<BoundarySums<T>> {
    if !(x > T::zero()) {
        return Err(Error::invalid("x must be positive"));
    }
    let rep = parafermionic_observable(region, critical_sigma::<T>(), x, budget)?;
    Ok(BoundarySums {
        lambda: rep.lambda,
        tau_plus: rep.tau_plus,
        tau_minus: rep.tau_minus,
        upsilon: rep.upsilon,
        deviation: (rep.boundary_combination() - T::one()).abs(),
    })
}
