//! Study reports and their JSON rendering.

use anyhow::Result;
use dtnlab_core::geometry::mesh::Mesh;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cli::Cli;

/// Version of the JSON layout.
pub const SCHEMA: u32 = 1;
/// Significant digits kept for every float in JSON and CSV output.
pub const DIGITS: usize = 12;

#[derive(Debug, Clone, Serialize)]
pub struct Contract {
    pub name: String,
    pub value: f64,
    pub relation: &'static str,
    pub bound: f64,
    pub pass: bool,
}

impl Contract {
    pub fn at_most(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Contract {
            name: name.into(),
            value,
            relation: "<=",
            bound,
            pass: value <= bound,
        }
    }

    pub fn at_least(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Contract {
            name: name.into(),
            value,
            relation: ">=",
            bound,
            pass: value >= bound,
        }
    }
}

/// A CSV table: header plus preformatted cells.
#[derive(Debug, Clone)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Table {
            name: name.into(),
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub data: Value,
    pub contracts: Vec<Contract>,
    pub tables: Vec<Table>,
    pub mesh: Option<Mesh>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.contracts.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Contract> {
        self.contracts.iter().filter(|c| !c.pass)
    }
}

/// Float at fixed significant precision.
pub fn fmt_f(x: f64) -> String {
    if x.is_finite() {
        format!("{:.*e}", DIGITS - 1, x)
    } else {
        format!("{x}")
    }
}

fn round(x: f64) -> f64 {
    fmt_f(x).parse().unwrap_or(x)
}

/// Round every float in place so repeated runs print identical bytes.
pub fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n
                .as_f64()
                .and_then(|x| serde_json::Number::from_f64(round(x)))
            {
                *n = x;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// JSON envelope: schema, version, resolved configuration, data and contracts.
pub fn render(cli: &Cli, report: &Report) -> Result<String> {
    let mut doc = json!({
        "schema": SCHEMA,
        "version": dtnlab_core::VERSION,
        "command": cli.command.name(),
        "config": serde_json::to_value(cli)?,
        "data": report.data,
        "contracts": serde_json::to_value(&report.contracts)?,
        "pass": report.passed(),
    });
    round_floats(&mut doc);
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}
