use clap::Parser;
use dgeom::{Error, Result};
use serde_json::{json, Value};

use crate::args::{is_range, range};
use crate::output::{Output, Table};
use crate::spec::{Cli, Command, SweepArgs};

/// Position and name of the single ranged argument.
fn ranged(args: &[String]) -> Result<(usize, String, String)> {
    let mut found = Vec::new();
    for (i, a) in args.iter().enumerate() {
        if let Some(rest) = a.strip_prefix("--") {
            if let Some((k, v)) = rest.split_once('=') {
                if is_range(v) {
                    found.push((i, k.to_string(), v.to_string()));
                }
            }
        } else if is_range(a) {
            let name = i.checked_sub(1).and_then(|j| args[j].strip_prefix("--")).unwrap_or("value");
            found.push((i, name.to_string(), a.clone()));
        }
    }
    match found.len() {
        1 => Ok(found.pop().unwrap()),
        0 => Err(Error::invalid("sweep needs one argument of the form start:stop:step")),
        n => Err(Error::invalid(format!("sweep takes exactly one range, found {n}"))),
    }
}

pub fn run(s: &SweepArgs, outer: &Cli) -> Result<Output> {
    let (pos, name, text) = ranged(&s.args)?;
    let values = range(&text)?;
    let mut header: Vec<String> = vec![name.clone()];
    let mut rows: Vec<Vec<(String, String)>> = Vec::new();
    let mut results = Vec::new();
    for v in &values {
        let mut argv = vec!["dgeom".to_string(), "--seed".into(), outer.seed.to_string()];
        argv.extend(["--workers".into(), outer.workers.to_string()]);
        if let Some(b) = outer.budget {
            argv.extend(["--budget".into(), b.to_string()]);
        }
        let mut inner = s.args.clone();
        inner[pos] = if inner[pos].starts_with("--") { format!("--{name}={v}") } else { v.clone() };
        argv.extend(inner);
        let cli = Cli::try_parse_from(&argv).map_err(|e| Error::invalid(e.to_string().trim().to_string()))?;
        if matches!(cli.command, Command::Sweep(_)) {
            return Err(Error::invalid("sweeps do not nest"));
        }
        let out = crate::execute(&cli)?;
        for (i, h) in out.table.header.iter().enumerate() {
            if !header.contains(h) {
                header.push(h.clone());
            }
            let _ = i;
        }
        let first = out.table.rows.first().cloned().unwrap_or_default();
        let mut row = vec![(name.clone(), v.clone())];
        row.extend(out.table.header.iter().cloned().zip(first));
        rows.push(row);
        results.push(out.result);
    }
    let table_rows = rows
        .iter()
        .map(|r| header.iter().map(|h| r.iter().find(|c| &c.0 == h).map(|c| c.1.clone()).unwrap_or_default()).collect())
        .collect();
    let result: Value = json!({ "parameter": name, "values": values, "results": results });
    Ok(Output { result, table: Table { header, rows: table_rows } })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(a: &[&str]) -> Vec<String> {
        a.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn finds_the_single_range() {
        let (i, n, t) = ranged(&v(&["perc", "crossing", "--p", "0.4:0.6:0.02", "--rect", "17x16"])).unwrap();
        assert_eq!((i, n.as_str(), t.as_str()), (3, "p", "0.4:0.6:0.02"));
        let (_, n, _) = ranged(&v(&["rc", "dual", "--q=1:4:1"])).unwrap();
        assert_eq!(n, "q");
        assert!(ranged(&v(&["rc", "dual", "--q", "1:4:1", "--p", "0:1:0.5"])).is_err());
        assert!(ranged(&v(&["rc", "dual", "--q", "2"])).is_err());
    }
}
