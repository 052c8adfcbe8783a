use dgeom::geometry::Point;
use dgeom::lattice::{build_region, lattice_ball, lattice_origin};
use dgeom::saw::{
    bridge_decompose, count_saws_parallel, fisher_lattice_constant, hexagonal_connective_constant,
    parafermionic_observable, reconstruct, SawPath, DEFAULT_BUDGET,
};
use dgeom::{Error, Result};
use serde_json::json;

use crate::args::float;
use crate::output::{Output, Table};
use crate::spec::SawCmd;
use crate::Ctx;

pub fn run(cmd: &SawCmd, ctx: &Ctx) -> Result<Output> {
    let budget = ctx.budget.unwrap_or(DEFAULT_BUDGET);
    match cmd {
        SawCmd::Count { family, nmax, .. } => {
            let patch = lattice_ball(*family, nmax + 1)?;
            let origin = patch
                .vertex_at(lattice_origin(*family)?)
                .ok_or_else(|| Error::Invariant("ball without its origin".into()))?;
            let counts = count_saws_parallel(&patch, origin, *nmax, budget, ctx.workers)?;
            let rows = counts.iter().enumerate().map(|(i, c)| vec![(i + 1).to_string(), c.to_string()]).collect();
            let text: Vec<String> = counts.iter().map(u64::to_string).collect();
            Ok(Output { result: json!(text), table: Table::columns(&["n", "count"], rows) })
        }
        SawCmd::Observable { h, v, sigma, x } => {
            let region = build_region(*h, *v)?;
            let sigma = float(sigma)?;
            let x = match x {
                Some(x) => float(x)?,
                None => 1.0 / hexagonal_connective_constant::<f64>(),
            };
            let r = parafermionic_observable(&region, sigma, x, budget)?;
            Ok(Output::value(json!({
                "sigma": sigma,
                "x": x,
                "max_residual": r.max_residual(),
                "boundary_combination": r.boundary_combination(),
                "lambda": r.lambda,
                "tau_plus": r.tau_plus,
                "tau_minus": r.tau_minus,
                "upsilon": r.upsilon,
                "vertices": r.residuals.len(),
            })))
        }
        SawCmd::Bridge { turns } => {
            let path = walk_from_turns(turns)?;
            let dec = bridge_decompose(&path)?;
            let back = reconstruct(&dec)?;
            let lengths: Vec<usize> = dec.bridges.iter().map(SawPath::len).collect();
            let spans: Vec<f64> = dec.displacements().iter().map(|d| d.0.to_f64()).collect();
            Ok(Output::value(json!({
                "length": path.len(),
                "turning_thirds": path.turning_thirds,
                "bridges": dec.len(),
                "lower": dec.lower,
                "bridge_lengths": lengths,
                "heights": spans,
                "monotone": dec.is_monotone(),
                "round_trip": back.points == path.points,
            })))
        }
        SawCmd::Fisher { kappa } => {
            let k = kappa.unwrap_or_else(hexagonal_connective_constant::<f64>);
            let f = fisher_lattice_constant(k)?;
            Ok(Output::value(json!({ "kappa_hexagonal": k, "kappa_fisher": f })))
        }
    }
}

/// Hexagonal walk from the origin: a step up, then a left or right turn per step.
pub fn walk_from_turns(turns: &str) -> Result<SawPath> {
    let mut pts = vec![Point::default(), Point::hex(0, 2)];
    let mut d = (0i64, 2i64);
    for c in turns.chars() {
        d = match c.to_ascii_uppercase() {
            'L' => ((d.0 - d.1) / 2, (3 * d.0 + d.1) / 2),
            'R' => ((d.0 + d.1) / 2, (d.1 - 3 * d.0) / 2),
            _ => return Err(Error::invalid(format!("turns must be L or R, got {c:?}"))),
        };
        pts.push(*pts.last().unwrap() + Point::hex(d.0, d.1));
    }
    SawPath::new(pts, None, None)
}
