//! Moving the interface of a mixed square/triangular lattice by star–triangle
//! transformations, carrying a percolation configuration along.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{build_mixed_lattice, LatticePatch, MixedLattice, StepDirection, StepPlan, SwapPlan};
use crate::report::{proportion_se, ExperimentReport};
use crate::rng::stream_rng;
use crate::scalar::Scalar;

use super::config::{class_probabilities, sample_config, BondConfig};
use super::crossing::{chunked, Orientation, Rect, RectIndex};
use super::triple::{star_triangle_map_s, star_triangle_map_t, EdgeTriple, Triple};

/// Class probabilities `[p0, 1 - p0, p1, p2]` of a mixed lattice: horizontal,
/// vertical, right and left triangle edges.
pub fn mixed_class_probs<T: Scalar>(t: &EdgeTriple<T>) -> Vec<T> {
    vec![t.p[0].clone(), t.p[0].complement(), t.p[1].clone(), t.p[2].clone()]
}

#[derive(Debug, Clone)]
struct SwapKernel<T> {
    triangles: Vec<EdgeTriple<T>>,
    stars: Vec<EdgeTriple<T>>,
}

/// A [`StepPlan`] with the edge parameters of every transformation resolved.
#[derive(Debug, Clone)]
pub struct MixedStepper<'p, T> {
    pub plan: &'p StepPlan,
    kernels: Vec<SwapKernel<T>>,
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12
}

fn kernel<T: Scalar>(swap: &SwapPlan, src: &LatticePatch, dst: &LatticePatch, probs: &[T]) -> Result<SwapKernel<T>> {
    let pr = |patch: &LatticePatch, e: u32| probs[patch.edge(e).class as usize].clone();
    let triangles = swap
        .triangles
        .iter()
        .map(|t| EdgeTriple::new(pr(src, t[0]), pr(src, t[1]), pr(src, t[2])))
        .collect::<Result<Vec<_>>>()?;
    let mismatch = || Error::Invariant("edge parameters do not match across a star–triangle swap".into());
    let mut stars = Vec::with_capacity(swap.stars.len());
    for s in &swap.stars {
        let star = EdgeTriple::new(pr(dst, s.out[0]), pr(dst, s.out[1]), pr(dst, s.out[2]))?;
        // arm k of the star must be open with probability 1 - star.p[k]
        let own = pr(src, s.own).to_f64_lossy();
        let a1 = triangles[s.arm1.0].p[s.arm1.1].to_f64_lossy();
        let a2 = triangles[s.arm2.0].p[s.arm2.1].to_f64_lossy();
        if !close(own, 1.0 - star.p[0].to_f64_lossy())
            || !close(a1, star.p[1].to_f64_lossy())
            || !close(a2, star.p[2].to_f64_lossy())
        {
            return Err(mismatch());
        }
        stars.push(star);
    }
    for &(e, t) in &swap.spokes {
        if !close(pr(dst, e).to_f64_lossy(), 1.0 - triangles[t].p[0].to_f64_lossy()) {
            return Err(mismatch());
        }
    }
    Ok(SwapKernel { triangles, stars })
}

impl<'p, T: Scalar> MixedStepper<'p, T> {
    /// Resolves `plan` for a mixed lattice with class probabilities from `triple`.
    pub fn new(plan: &'p StepPlan, triple: &EdgeTriple<T>) -> Result<Self> {
        let probs = mixed_class_probs(triple);
        class_probabilities(&plan.source().patch, &probs)?;
        let kernels = plan
            .swaps
            .iter()
            .enumerate()
            .map(|(i, s)| kernel(s, &plan.lattices[i].patch, &plan.lattices[i + 1].patch, &probs))
            .collect::<Result<Vec<_>>>()?;
        Ok(MixedStepper { plan, kernels })
    }

    /// Applies every swap of the plan to `open`, a configuration of the source lattice.
    pub fn apply(&self, open: &[bool], rng: &mut impl rand::Rng) -> Result<Vec<bool>> {
        if open.len() != self.plan.source().patch.num_edges() {
            return Err(Error::invalid("configuration does not belong to the plan's source lattice"));
        }
        let mut cur = open.to_vec();
        for (swap, k) in self.plan.swaps.iter().zip(&self.kernels) {
            cur = apply_swap(swap, k, &cur, rng)?;
        }
        Ok(cur)
    }
}

fn apply_swap<T: Scalar>(swap: &SwapPlan, k: &SwapKernel<T>, open: &[bool], rng: &mut impl rand::Rng) -> Result<Vec<bool>> {
    let mut out = vec![false; swap.target_edges];
    for &(dst, src) in &swap.copies {
        out[dst as usize] = open[src as usize];
    }
    // left to right: every upward triangle becomes a star
    let arms = swap
        .triangles
        .iter()
        .zip(&k.triangles)
        .map(|(t, p)| {
            let w: Triple = [open[t[0] as usize], open[t[1] as usize], open[t[2] as usize]];
            star_triangle_map_t(w, p, rng, false)
        })
        .collect::<Result<Vec<_>>>()?;
    for &(e, t) in &swap.spokes {
        out[e as usize] = arms[t][0];
    }
    // then every star that the new arms complete becomes a triangle
    for (s, p) in swap.stars.iter().zip(&k.stars) {
        let w: Triple = [open[s.own as usize], arms[s.arm1.0][s.arm1.1], arms[s.arm2.0][s.arm2.1]];
        let tri = star_triangle_map_s(w, p, rng, false)?;
        for i in 0..3 {
            out[s.out[i] as usize] = tri[i];
        }
    }
    Ok(out)
}

/// One interface move of `config` along `plan`, randomised by `(seed, stream)`.
pub fn mixed_lattice_step<'p, T: Scalar>(
    config: &BondConfig<'_>,
    plan: &'p StepPlan,
    triple: &EdgeTriple<T>,
    seed: u64,
    stream: u64,
) -> Result<BondConfig<'p>> {
    let src = &plan.source().patch;
    if config.patch.num_vertices() != src.num_vertices() || config.patch.positions() != src.positions() {
        return Err(Error::invalid("configuration does not belong to the plan's source lattice"));
    }
    let stepper = MixedStepper::new(plan, triple)?;
    let open = stepper.apply(&config.open, &mut stream_rng(seed, stream))?;
    Ok(BondConfig { patch: &plan.target().patch, open, seed: Some(seed), stream: Some(stream) })
}

/// Transport of crossings through the interface of a mixed cylinder.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransportSetup {
    /// Vertices per row.
    pub width: usize,
    /// Vertical layers below the interface.
    pub square_layers: usize,
    pub triangular_layers: usize,
    /// Downward interface moves.
    pub steps: usize,
    /// Rectangle in the square part whose horizontal crossing is transported.
    pub rect: Rect,
    pub p0: f64,
    pub p1: f64,
}

impl Default for TransportSetup {
    fn default() -> Self {
        TransportSetup {
            width: 24,
            square_layers: 16,
            triangular_layers: 8,
            steps: 8,
            rect: Rect::new(4.0, 8.0, 36.0, 16.0),
            p0: 0.6,
            p1: 0.25,
        }
    }
}

impl TransportSetup {
    /// Lattice, step plans and the source and target rectangles.
    fn prepare(&self) -> Result<(MixedLattice, Vec<StepPlan>, Rect)> {
        if self.steps == 0 || self.steps > self.square_layers {
            return Err(Error::invalid(format!("steps must lie in 1..={}", self.square_layers)));
        }
        let lattice = build_mixed_lattice(self.square_layers, self.width, self.square_layers + self.triangular_layers)?;
        let r = self.rect;
        let n = self.steps as f64;
        if r.y1 > lattice.interface_y() + 1e-9 || r.y0 < lattice.interface_y() - n - 1e-9 {
            return Err(Error::invalid(format!(
                "rectangle {r} must lie between the interface and {} rows below it",
                self.steps
            )));
        }
        if r.x1 - r.x0 <= 2.0 * n {
            return Err(Error::invalid(format!("rectangle {r} is too narrow for {} steps", self.steps)));
        }
        let mut plans: Vec<StepPlan> = Vec::with_capacity(self.steps);
        for _ in 0..self.steps {
            let src = plans.last().map_or(&lattice, |p| p.target());
            let plan = src.plan_step(StepDirection::Down)?;
            plans.push(plan);
        }
        let fin = plans.last().unwrap().target();
        let top = fin.rows[fin.interface_height() + fin.triangular_layers()].ay as f64 / 2.0;
        let target = Rect::new(r.x0 + n, (r.y0 - n).max(fin.interface_y()), r.x1 - n, (r.y1 + n).min(top));
        Ok((lattice, plans, target))
    }
}

/// Samples configurations on the mixed cylinder and pushes each one with a
/// horizontal crossing of the square-part rectangle through the interface
/// moves. A failure is an output without a horizontal crossing of the target
/// rectangle in the triangular part, shrunk by the number of steps at each
/// end. `undisplaced_failures` counts outputs missing the unshrunk crossing.
pub fn universality_transport(setup: &TransportSetup, samples: usize, seed: u64, workers: usize) -> Result<ExperimentReport> {
    if samples == 0 {
        return Err(Error::invalid("samples must be at least 1"));
    }
    let triple = EdgeTriple::critical_completion(setup.p0, setup.p1)?;
    let probs = mixed_class_probs(&triple);
    let (lattice, plans, target) = setup.prepare()?;
    let fin = plans.last().unwrap().target();
    let source = RectIndex::new(&lattice.patch, setup.rect, Orientation::Horizontal)?;
    let shrunk = RectIndex::new(&fin.patch, target, Orientation::Horizontal)?;
    let wide = Rect::new(setup.rect.x0, target.y0, setup.rect.x1, target.y1);
    let unshrunk = RectIndex::new(&fin.patch, wide, Orientation::Horizontal)?;
    let step_stream = |s: usize, i: usize| (1u64 << 40) + (s * plans.len() + i) as u64;
    let parts = chunked(samples, workers, |first, count| -> Result<[u64; 3]> {
        let mut tally = [0u64; 3];
        for s in first..first + count {
            let config = sample_config(&lattice.patch, &probs, seed, s as u64)?;
            if !source.crosses(&config.open) {
                continue;
            }
            tally[0] += 1;
            let mut cur = config;
            for (i, plan) in plans.iter().enumerate() {
                cur = mixed_lattice_step(&cur, plan, &triple, seed, step_stream(s, i))?;
            }
            tally[1] += !shrunk.crosses(&cur.open) as u64;
            tally[2] += !unshrunk.crosses(&cur.open) as u64;
        }
        Ok(tally)
    });
    let mut tally = [0u64; 3];
    for part in parts {
        let t = part?;
        (0..3).for_each(|i| tally[i] += t[i]);
    }
    let rate = if tally[0] == 0 { 0.0 } else { tally[1] as f64 / tally[0] as f64 };
    Ok(ExperimentReport::statistical(rate, proportion_se(rate, tally[0].max(1)), samples as u64, seed)
        .param("width", setup.width)
        .param("square_layers", setup.square_layers)
        .param("triangular_layers", setup.triangular_layers)
        .param("steps", setup.steps)
        .param("rect", setup.rect.to_string())
        .param("target", target.to_string())
        .param("p", vec![triple.p[0], triple.p[1], triple.p[2]])
        .metric("crossing_inputs", tally[0])
        .metric("failures", tally[1])
        .metric("undisplaced_failures", tally[2]))
}
