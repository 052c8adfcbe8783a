use std::path::Path;

use dgeom::lattice::{GraphFile, LatticePatch};
use dgeom::rc::{
    annulus_event_estimate, dual_parameter, exact_distribution, sample_rc, self_dual_point, torus_crossing,
    verify_duality_exact, BoundaryCondition, ChainOptions, RcParams, ScanOrder, MAX_EXACT_EDGES,
};
use dgeom::{Error, Rational, Result};
use serde_json::json;

use crate::args::{float, rational};
use crate::output::{Output, Table};
use crate::spec::{Bc, ChainArgs, RcCmd};
use crate::Ctx;

fn load_graph(path: &Path) -> Result<LatticePatch> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
    GraphFile::from_json(&text)?.to_patch()
}

fn boundary(bc: Bc) -> BoundaryCondition {
    match bc {
        Bc::Free => BoundaryCondition::Free,
        Bc::Wired => BoundaryCondition::Wired,
    }
}

fn exact_params(p: &str, q: &str) -> Result<RcParams<Rational>> {
    RcParams::new(rational(p)?, rational(q)?)
}

fn chain_options(c: &ChainArgs, ctx: &Ctx) -> ChainOptions {
    ChainOptions {
        chains: c.chains,
        sweeps: c.sweeps,
        burn_in: c.burn_in,
        seed: ctx.seed,
        workers: ctx.workers,
        order: if c.random_scan { ScanOrder::Random } else { ScanOrder::Sequential },
    }
}

fn check_enumeration(patch: &LatticePatch, ctx: &Ctx) -> Result<()> {
    let m = patch.num_edges();
    if m > MAX_EXACT_EDGES {
        return Err(Error::invalid(format!("{m} edges exceed the exact limit of {MAX_EXACT_EDGES}")));
    }
    match ctx.budget {
        Some(b) if (1u64 << m) > b => Err(Error::BudgetExceeded { budget: b }),
        _ => Ok(()),
    }
}

pub fn run(cmd: &RcCmd, ctx: &Ctx) -> Result<Output> {
    match cmd {
        RcCmd::Exact { graph, p, q, bc } => {
            let patch = load_graph(graph)?;
            check_enumeration(&patch, ctx)?;
            let d = exact_distribution(&patch, &exact_params(p, q)?, &boundary(*bc))?;
            let m = d.num_edges;
            let bits = |mask: usize| (0..m).map(|e| if mask >> e & 1 == 1 { '1' } else { '0' }).collect::<String>();
            let probs: Vec<String> = d.probabilities().iter().map(|x| x.to_string()).collect();
            let marginals: Vec<String> = (0..m).map(|e| d.edge_marginal(e).to_string()).collect();
            let rows = probs.iter().enumerate().map(|(i, x)| vec![bits(i), x.clone()]).collect();
            let total = d.probabilities().into_iter().fold(Rational::from_integer(0.into()), |a, b| a + b);
            Ok(Output {
                result: json!({
                    "edges": m,
                    "partition_function": d.z.to_string(),
                    "probabilities": probs,
                    "edge_marginals": marginals,
                    "total": total.to_string(),
                }),
                table: Table::columns(&["config", "probability"], rows),
            })
        }
        RcCmd::Dual { graph, p, q } => {
            let qf = float(q)?;
            let mut out = json!({ "q": qf, "self_dual_point": self_dual_point(qf)? });
            if let Some(p) = p {
                let star = dual_parameter(rational(p)?, rational(q)?)?;
                out["dual_parameter"] = json!(star.to_string());
                out["dual_parameter_f64"] = json!(float(&star.to_string())?);
            }
            if let Some(g) = graph {
                let p = p.as_deref().ok_or_else(|| Error::invalid("the duality check needs --p"))?;
                let patch = load_graph(g)?;
                check_enumeration(&patch, ctx)?;
                out["tv"] = json!(verify_duality_exact(&patch, &exact_params(p, q)?)?.to_string());
            }
            Ok(Output::value(out))
        }
        RcCmd::Sample { graph, p, q, bc, sweeps, burn_in } => {
            let patch = load_graph(graph)?;
            ctx.charge(sweeps + burn_in, patch.num_edges())?;
            let params = RcParams::new(float(p)?, float(q)?)?;
            Ok(Output::value(sample_rc(&patch, &params, &boundary(*bc), *sweeps, *burn_in, ctx.seed)?))
        }
        RcCmd::Crossing { n, q, m, p, rotated, chains } => {
            let qf = float(q)?;
            let pf = match p {
                Some(p) => float(p)?,
                None => self_dual_point(qf)?,
            };
            let m = m.unwrap_or(2 * n);
            ctx.charge(chains.chains * (chains.sweeps + chains.burn_in), 2 * m * m)?;
            let r = torus_crossing(*n, m, &RcParams::new(pf, qf)?, *rotated, &chain_options(chains, ctx))?;
            Ok(Output::report(&r))
        }
        RcCmd::Annulus { k, p, q, chains } => {
            let (pf, qf) = (float(p)?, float(q)?);
            let side = 2 * 3usize.pow(k.saturating_add(2).min(8)) + 1;
            ctx.charge(chains.chains * (chains.sweeps + chains.burn_in), 2 * side * side)?;
            let r = annulus_event_estimate(*k, &RcParams::new(pf, qf)?, &chain_options(chains, ctx))?;
            Ok(Output::report(&r))
        }
    }
}
