//! Check selection, dispatch, and the serialized run report.
//!
//! Selection priority: an explicit `--checks` list, then the scenario's own
//! `options.checks`, then a default chosen by what the scenario provides.
//! Reports render as text with real timings or as JSON with timings pinned
//! to zero, so identical inputs always produce identical bytes.

use std::fmt::Write as _;

use serde::Serialize;

use flp_core::algebroid::{
    check_anchor_compat, check_bianchi, check_condition1, check_jacobi, check_leibniz,
    check_rank,
};
use flp_core::{BracketTable, CheckReport, Connection};

use crate::error::CliError;
use crate::scenario::Scenario;

/// Check names accepted in scenario options and `--checks` flags, in the
/// order the default connection run executes them.
pub const KNOWN_CHECKS: [&str; 6] =
    ["condition1", "bianchi", "anchor_compat", "leibniz", "jacobi", "rank"];

/// Default selection when only a bracket table is available.
pub const TABLE_CHECKS: [&str; 4] = ["anchor_compat", "leibniz", "jacobi", "rank"];

/// Outcome of a scenario run.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RunReport {
    pub scenario: String,
    pub version: String,
    pub seed: Option<u64>,
    pub checks: Vec<CheckReport>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckReport::is_pass)
    }

    /// Human-readable rendering with real timings.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for check in &self.checks {
            writeln!(out, "{check}").expect("string writes are infallible");
        }
        writeln!(out, "overall: {}", if self.passed() { "pass" } else { "fail" })
            .expect("string writes are infallible");
        out
    }

    /// Machine-readable rendering; timings are pinned to zero so identical
    /// inputs produce identical bytes.
    pub fn to_json(&self) -> String {
        let checks: Vec<CheckOut<'_>> = self
            .checks
            .iter()
            .map(|check| CheckOut {
                id: &check.id,
                status: status_text(check.is_pass()),
                witness: check
                    .witness
                    .as_ref()
                    .map(|w| WitnessOut { arguments: &w.arguments, residual: &w.residual }),
                millis: 0,
            })
            .collect();
        let out = ReportOut {
            scenario: &self.scenario,
            version: &self.version,
            seed: self.seed,
            checks,
            status: status_text(self.passed()),
        };
        let mut text = serde_json::to_string_pretty(&out).expect("plain data serializes");
        text.push('\n');
        text
    }
}

fn status_text(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

#[derive(Serialize)]
struct ReportOut<'a> {
    scenario: &'a str,
    version: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    checks: Vec<CheckOut<'a>>,
    status: &'a str,
}

#[derive(Serialize)]
struct CheckOut<'a> {
    id: &'a str,
    status: &'a str,
    witness: Option<WitnessOut<'a>>,
    millis: u64,
}

#[derive(Serialize)]
struct WitnessOut<'a> {
    arguments: &'a str,
    residual: &'a str,
}

/// Runs the selected checks against the scenario's resolved structures.
pub fn run_checks(scenario: &Scenario, selection: Option<&[String]>) -> Result<RunReport, CliError> {
    let names: Vec<String> = match selection {
        Some(list) => list.to_vec(),
        None => match &scenario.checks {
            Some(list) => list.clone(),
            None => default_selection(scenario),
        },
    };
    for name in &names {
        if !KNOWN_CHECKS.contains(&name.as_str()) {
            return Err(CliError::UnknownCheck { name: name.clone() });
        }
    }

    let connection = scenario.resolve_connection()?;
    let needs_table =
        names.iter().any(|n| matches!(n.as_str(), "anchor_compat" | "leibniz" | "jacobi"));
    let table = if !needs_table {
        None
    } else if let Some(table) = &scenario.bracket {
        Some(table.clone())
    } else if let Some(conn) = &connection {
        Some(conn.induced_table()?)
    } else {
        None
    };
    let bundle = connection.as_ref().map(Connection::bundle).unwrap_or(&scenario.bundle);

    let mut checks = Vec::with_capacity(names.len());
    for name in &names {
        let report = match name.as_str() {
            "condition1" => check_condition1(require_connection(&connection, name)?),
            "bianchi" => check_bianchi(require_connection(&connection, name)?),
            "anchor_compat" => check_anchor_compat(require_table(&table, name)?),
            "leibniz" => check_leibniz(require_table(&table, name)?),
            "jacobi" => check_jacobi(require_table(&table, name)?),
            "rank" => check_rank(bundle),
            _ => unreachable!("selection was validated against KNOWN_CHECKS"),
        };
        checks.push(report);
    }
    Ok(RunReport {
        scenario: scenario.name.clone(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed: scenario.seed,
        checks,
    })
}

fn default_selection(scenario: &Scenario) -> Vec<String> {
    let names: &[&str] = if scenario.connection.is_some() || scenario.pair.is_some() {
        &KNOWN_CHECKS
    } else if scenario.bracket.is_some() {
        &TABLE_CHECKS
    } else {
        &["rank"]
    };
    names.iter().map(|name| name.to_string()).collect()
}

fn require_connection<'a>(
    connection: &'a Option<Connection>,
    check: &str,
) -> Result<&'a Connection, CliError> {
    connection
        .as_ref()
        .ok_or_else(|| CliError::MissingData { what: "connection", check: check.to_string() })
}

fn require_table<'a>(
    table: &'a Option<BracketTable>,
    check: &str,
) -> Result<&'a BracketTable, CliError> {
    table
        .as_ref()
        .ok_or_else(|| CliError::MissingData { what: "bracket data", check: check.to_string() })
}
