use dgeom::lattice::{build_lattice_patch, square_box, square_rect, Family, LatticePatch};
use dgeom::percolation::{
    duality_experiment, estimate_arm_prob, estimate_crossing_prob, estimate_russo_derivative, radius_distribution,
    star_triangle_law, universality_transport, verify_coupling, ArmSpec, EdgeTriple, Rect, TransportSetup,
};
use dgeom::{Error, Rational, Result};
use serde_json::json;

use crate::args::{corners, dims, float, floats, rational};
use crate::output::Output;
use crate::spec::PercCmd;
use crate::Ctx;

fn bounding_rect(patch: &LatticePatch) -> Rect {
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in patch.positions() {
        let (x, y) = p.to_f64();
        (x0, y0, x1, y1) = (x0.min(x), y0.min(y), x1.max(x), y1.max(y));
    }
    Rect::new(x0, y0, x1, y1)
}

fn class_probs(text: &str, patch: &LatticePatch) -> Result<Vec<f64>> {
    let p = floats(text)?;
    match p.len() {
        1 => Ok(vec![p[0]; patch.class_count()]),
        n if n == patch.class_count() => Ok(p),
        n => Err(Error::invalid(format!("{n} probabilities for {} edge classes", patch.class_count()))),
    }
}

fn rational_string(r: &Rational) -> String {
    r.to_string()
}

pub fn run(cmd: &PercCmd, ctx: &Ctx) -> Result<Output> {
    match cmd {
        PercCmd::Crossing { family, p, rect, orientation, samples } => {
            let (w, h) = dims(rect)?;
            let patch = match family {
                Family::Square => square_rect(w, h)?,
                f => build_lattice_patch(*f, w, h)?,
            };
            ctx.charge(*samples, patch.num_edges())?;
            let probs = class_probs(p, &patch)?;
            let r = estimate_crossing_prob(&patch, &probs, bounding_rect(&patch), *orientation, *samples, ctx.seed, ctx.workers)?;
            Ok(Output::report(&r.param("family", family.name()).param("rect", rect.as_str())))
        }
        PercCmd::Duality { n, p, samples } => {
            ctx.charge(*samples, 2 * (n + 1) * (n + 2))?;
            Ok(Output::report(&duality_experiment(*n, float(p)?, *samples, ctx.seed, ctx.workers)?))
        }
        PercCmd::StarTriangle { p0, p1, p2 } => {
            let (a, b) = (rational(p0)?, rational(p1)?);
            let t = match p2 {
                Some(c) => EdgeTriple::new(a, b, rational(c)?)?,
                None => EdgeTriple::critical_completion(a, b)?,
            };
            let c = verify_coupling(&t);
            Ok(Output::value(json!({
                "p": t.p.iter().map(rational_string).collect::<Vec<_>>(),
                "kappa": rational_string(&t.kappa()),
                "tv": rational_string(&star_triangle_law(&t).tv),
                "t_tv": rational_string(&c.t_tv),
                "s_tv": rational_string(&c.s_tv),
                "branches": c.branches,
                "partition_preserved": c.partition_preserved,
            })))
        }
        PercCmd::Universality { width, square_layers, triangular_layers, steps, rect, p0, p1, samples } => {
            let [x0, y0, x1, y1] = corners(rect)?;
            let setup = TransportSetup {
                width: *width,
                square_layers: *square_layers,
                triangular_layers: *triangular_layers,
                steps: *steps,
                rect: Rect::new(x0, y0, x1, y1),
                p0: float(p0)?,
                p1: float(p1)?,
            };
            ctx.charge(*samples, 3 * width * (square_layers + triangular_layers) * steps)?;
            Ok(Output::report(&universality_transport(&setup, *samples, ctx.seed, ctx.workers)?))
        }
        PercCmd::Arms { colours, inner, outer, p, samples } => {
            let c = colours
                .chars()
                .map(|ch| match ch {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    _ => Err(Error::invalid(format!("colours are 0 (dual) or 1 (primal), got {ch:?}"))),
                })
                .collect::<Result<Vec<u8>>>()?;
            let spec = ArmSpec::new(c, *inner, *outer)?;
            ctx.charge(*samples, 4 * (outer + 1) * (outer + 1))?;
            Ok(Output::report(&estimate_arm_prob(&spec, float(p)?, *samples, ctx.seed, ctx.workers)?))
        }
        PercCmd::Russo { n, p, delta, samples } => {
            let patch = square_rect(n + 1, *n)?;
            ctx.charge(*samples, patch.num_edges())?;
            let rect = Rect::new(0.0, 0.0, (n + 1) as f64, *n as f64);
            let r = estimate_russo_derivative(
                &patch,
                float(p)?,
                rect,
                dgeom::percolation::Orientation::Horizontal,
                float(delta)?,
                *samples,
                ctx.seed,
                ctx.workers,
            )?;
            Ok(Output::report(&r))
        }
        PercCmd::Radius { family, n, p, samples } => {
            let patch = match family {
                Family::Square => square_box(*n)?,
                f => build_lattice_patch(*f, 2 * n, 2 * n)?,
            };
            ctx.charge(*samples, patch.num_edges())?;
            let probs = class_probs(p, &patch)?;
            let h = radius_distribution(&patch, &probs, *samples, ctx.seed, ctx.workers)?;
            let survival: Vec<f64> = (0..h.counts.len()).map(|r| h.survival(r)).collect();
            Ok(Output::value(json!({
                "family": family.name(),
                "n": n,
                "samples": h.samples,
                "seed": ctx.seed,
                "counts": h.counts,
                "censored": h.censored,
                "survival": survival,
                "log_log_slope": h.log_log_slope(),
            })))
        }
    }
}
