//! Report envelopes and their JSON and CSV renderings.

use dgeom::ExperimentReport;
use serde::Serialize;
use serde_json::{json, Map, Value};

/// Result of one command: a JSON value and its tabular form.
#[derive(Debug, Clone)]
pub struct Output {
    pub result: Value,
    pub table: Table,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

pub fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(cell).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    }
}

impl Table {
    /// One row from a flat object; nested objects become `outer.inner` columns.
    pub fn from_object(obj: &Map<String, Value>) -> Table {
        let mut header = Vec::new();
        let mut row = Vec::new();
        fn walk(prefix: &str, obj: &Map<String, Value>, header: &mut Vec<String>, row: &mut Vec<String>) {
            for (k, v) in obj {
                let name = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                match v {
                    Value::Object(inner) => walk(&name, inner, header, row),
                    other => {
                        header.push(name);
                        row.push(cell(other));
                    }
                }
            }
        }
        walk("", obj, &mut header, &mut row);
        Table { header, rows: vec![row] }
    }

    pub fn columns(header: &[&str], rows: Vec<Vec<String>>) -> Table {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows }
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory csv");
        for r in &self.rows {
            w.write_record(r).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
    }
}

impl Output {
    pub fn report(r: &ExperimentReport) -> Output {
        let result = serde_json::to_value(r).expect("report serialises");
        let table = Table::from_object(result.as_object().expect("report is an object"));
        Output { result, table }
    }

    pub fn value(v: impl Serialize) -> Output {
        let result = serde_json::to_value(v).expect("value serialises");
        let table = match &result {
            Value::Object(o) => Table::from_object(o),
            other => Table::columns(&["value"], vec![vec![cell(other)]]),
        };
        Output { result, table }
    }
}

/// Document written for a run: the command, its full spec, the library
/// version and the result.
pub fn envelope(command: &str, spec: &Value, out: &Output) -> Value {
    json!({
        "command": command,
        "spec": spec,
        "version": dgeom::VERSION,
        "result": out.result,
    })
}

pub fn error_object(kind: &str, code: i32, message: &str) -> Value {
    json!({ "error": { "kind": kind, "code": code, "message": message } })
}
