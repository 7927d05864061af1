//! Scenario files: JSON descriptions of an anchored bundle together with
//! optional connection, bracket-table, and operator-pair data.
//!
//! Every leaf is an expression string in the coordinate variables
//! `x1..xm`; sparse maps omit zero entries, and frame indices are written
//! 1-based, as `"1,2"` for `e1 ^ e2` or `"1,2|3"` for the `e3`-slot of a
//! connection.  [`Scenario`] is the fully parsed form; [`ScenarioFile`] is
//! the raw shape that goes to and from disk.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use flp_core::scalar::Axis;
use flp_core::{
    build_pair_structure, parse_scalar, AnchoredBundle, BracketTable, Cdo, CoForm, Connection,
    ParseContext, Scalar, Section, SpaceDims, VectorField,
};

use crate::error::CliError;

/// On-disk scenario shape; all leaves are expression strings.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub name: String,
    pub base_dim: u32,
    pub arity: u32,
    pub rank: u32,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub anchor: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connection: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bracket: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<PairFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<OptionsFile>,
}

/// Raw form of a first-order operator together with a wedge coform.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairFile {
    pub symbol: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    pub xi: BTreeMap<String, String>,
}

/// Optional run settings embedded in a scenario.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// A loaded scenario: every expression parsed, every index validated.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scenario {
    pub name: String,
    pub bundle: AnchoredBundle,
    pub connection: Option<Connection>,
    pub bracket: Option<BracketTable>,
    pub pair: Option<(Cdo, CoForm)>,
    pub checks: Option<Vec<String>>,
    pub seed: Option<u64>,
}

/// Reads and fully validates a scenario file.
pub fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = read_text(path)?;
    let file: ScenarioFile = serde_json::from_str(&text)
        .map_err(|source| CliError::Json { path: path.display().to_string(), source })?;
    Scenario::from_file(&file)
}

/// Reads a file into a string, tagging errors with the path.
pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// Writes text, tagging errors with the path.
pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text)
        .map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

impl Scenario {
    /// Validates a raw file into core structures; errors carry the JSON
    /// field path they were found at.
    pub fn from_file(file: &ScenarioFile) -> Result<Scenario, CliError> {
        if file.base_dim < 1 {
            return Err(CliError::schema("base_dim", "must be at least 1"));
        }
        if file.arity < 2 {
            return Err(CliError::schema("arity", "must be at least 2"));
        }
        if file.rank < 1 {
            return Err(CliError::schema("rank", "must be at least 1"));
        }
        let (m, n, r) = (file.base_dim, file.arity, file.rank);
        let ctx = ParseContext::base(m);
        let wedge = (n - 1) as usize;

        let mut bundle = AnchoredBundle::new(m, n, r);
        for (text, values) in &file.anchor {
            let field = format!("anchor[\"{text}\"]");
            let key = parse_key(text, wedge, r, &field)?;
            let components = parse_components(values, m as usize, &ctx, &field)?;
            bundle = bundle.with_anchor(&key, field_from(m, components))?;
        }

        let connection = match &file.connection {
            None => None,
            Some(entries) => {
                let mut conn = Connection::new(bundle.clone());
                for (text, values) in entries {
                    let field = format!("connection[\"{text}\"]");
                    let Some((wedge_text, j_text)) = text.split_once('|') else {
                        return Err(CliError::schema(&field, "key must look like `i1,..|j`"));
                    };
                    let key = parse_key(wedge_text, wedge, r, &field)?;
                    let j: u32 = j_text.trim().parse().map_err(|_| {
                        CliError::schema(&field, format!("bad frame index `{j_text}`"))
                    })?;
                    if j < 1 || j > r {
                        return Err(CliError::schema(
                            &field,
                            format!("frame index {j} out of range 1..={r}"),
                        ));
                    }
                    let components = parse_components(values, r as usize, &ctx, &field)?;
                    conn = conn.with_gamma(&key, j, Section::new(components))?;
                }
                Some(conn)
            }
        };

        let bracket = match &file.bracket {
            None => None,
            Some(entries) => {
                let mut table = BracketTable::new(bundle.clone());
                for (text, values) in entries {
                    let field = format!("bracket[\"{text}\"]");
                    let key = parse_key(text, n as usize, r, &field)?;
                    let components = parse_components(values, r as usize, &ctx, &field)?;
                    table = table.with_entry(&key, Section::new(components))?;
                }
                Some(table)
            }
        };

        let pair = match &file.pair {
            None => None,
            Some(data) => {
                if n - 1 > r {
                    return Err(CliError::schema(
                        "pair.xi",
                        format!("coform degree {} exceeds rank {r}", n - 1),
                    ));
                }
                let symbol = parse_components(&data.symbol, m as usize, &ctx, "pair.symbol")?;
                if data.matrix.len() != r as usize {
                    return Err(CliError::schema(
                        "pair.matrix",
                        format!("must have {r} rows, found {}", data.matrix.len()),
                    ));
                }
                let mut matrix = Vec::with_capacity(r as usize);
                for (i, row) in data.matrix.iter().enumerate() {
                    matrix.push(parse_components(
                        row,
                        r as usize,
                        &ctx,
                        &format!("pair.matrix[{i}]"),
                    )?);
                }
                let mut xi = CoForm::new(r, n - 1);
                for (text, value) in &data.xi {
                    let field = format!("pair.xi[\"{text}\"]");
                    let key = parse_key(text, wedge, r, &field)?;
                    let coeff = parse_expr(value, &ctx, &field)?;
                    xi = xi.with_coeff(&key, coeff)?;
                }
                let operator = Cdo::new(r, m, matrix, field_from(m, symbol))?;
                Some((operator, xi))
            }
        };

        let checks = match &file.options {
            None => None,
            Some(options) => {
                if let Some(list) = &options.checks {
                    for (t, name) in list.iter().enumerate() {
                        if !crate::runner::KNOWN_CHECKS.contains(&name.as_str()) {
                            return Err(CliError::schema(
                                format!("options.checks[{t}]"),
                                format!("unknown check `{name}`"),
                            ));
                        }
                    }
                }
                options.checks.clone()
            }
        };
        let seed = file.options.as_ref().and_then(|o| o.seed);

        Ok(Scenario {
            name: file.name.clone(),
            bundle,
            connection,
            bracket,
            pair,
            checks,
            seed,
        })
    }

    /// The canonical on-disk form; expressions are rendered in display
    /// syntax, which reparses to the same scalars.
    pub fn to_file(&self) -> ScenarioFile {
        let m = self.bundle.base_dim();
        let r = self.bundle.rank();
        let mut anchor = BTreeMap::new();
        for (key, field) in self.bundle.anchor_entries() {
            let values =
                (1..=m).map(|a| field.coeff(Axis::Coordinate(a)).to_string()).collect();
            anchor.insert(key_text(key), values);
        }
        let connection = self.connection.as_ref().map(|conn| {
            conn.gamma_entries()
                .map(|((key, j), entry)| {
                    (format!("{}|{j}", key_text(key)), section_values(entry, r))
                })
                .collect()
        });
        let bracket = self.bracket.as_ref().map(|table| {
            table
                .entries()
                .map(|(key, entry)| (key_text(key), section_values(entry, r)))
                .collect()
        });
        let pair = self.pair.as_ref().map(|(operator, xi)| PairFile {
            symbol: (1..=m)
                .map(|a| operator.symbol().coeff(Axis::Coordinate(a)).to_string())
                .collect(),
            matrix: operator
                .matrix()
                .iter()
                .map(|row| row.iter().map(Scalar::to_string).collect())
                .collect(),
            xi: xi.iter().map(|(key, c)| (key_text(key), c.to_string())).collect(),
        });
        let options = if self.checks.is_some() || self.seed.is_some() {
            Some(OptionsFile { checks: self.checks.clone(), seed: self.seed })
        } else {
            None
        };
        ScenarioFile {
            name: self.name.clone(),
            base_dim: m,
            arity: self.bundle.arity(),
            rank: r,
            anchor,
            connection,
            bracket,
            pair,
            options,
        }
    }

    /// Pretty JSON rendering of [`Scenario::to_file`], newline-terminated.
    pub fn to_json(&self) -> String {
        let mut out =
            serde_json::to_string_pretty(&self.to_file()).expect("plain data serializes");
        out.push('\n');
        out
    }

    /// The connection the checks operate on: the explicit one if present,
    /// otherwise the one built from the operator pair.
    pub fn resolve_connection(&self) -> Result<Option<Connection>, CliError> {
        if let Some(conn) = &self.connection {
            return Ok(Some(conn.clone()));
        }
        if let Some((operator, xi)) = &self.pair {
            let (_, conn) = build_pair_structure(operator, xi)?;
            return Ok(Some(conn));
        }
        Ok(None)
    }

    /// The bracket the checks operate on: the explicit table if present,
    /// otherwise the one induced by the resolved connection.
    pub fn resolve_table(&self) -> Result<Option<BracketTable>, CliError> {
        if let Some(table) = &self.bracket {
            return Ok(Some(table.clone()));
        }
        match self.resolve_connection()? {
            Some(conn) => Ok(Some(conn.induced_table()?)),
            None => Ok(None),
        }
    }
}

/// Comma-joined 1-based index key.
pub fn key_text(key: &[u32]) -> String {
    key.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn section_values(entry: &Section, rank: u32) -> Vec<String> {
    (1..=rank).map(|j| entry.coeff(j).to_string()).collect()
}

fn field_from(m: u32, components: Vec<Scalar>) -> VectorField {
    let mut out = VectorField::zero(SpaceDims::base(m));
    for (a, c) in components.into_iter().enumerate() {
        out.add_component(Axis::Coordinate(a as u32 + 1), c);
    }
    out
}

fn parse_expr(input: &str, ctx: &ParseContext, field: &str) -> Result<Scalar, CliError> {
    parse_scalar(input, ctx)
        .map_err(|source| CliError::Expr { field: field.to_string(), source })
}

fn parse_components(
    values: &[String],
    expected: usize,
    ctx: &ParseContext,
    field: &str,
) -> Result<Vec<Scalar>, CliError> {
    if values.len() != expected {
        return Err(CliError::schema(
            field,
            format!("expected {expected} component expressions, found {}", values.len()),
        ));
    }
    values
        .iter()
        .enumerate()
        .map(|(t, v)| parse_expr(v, ctx, &format!("{field}[{t}]")))
        .collect()
}

fn parse_key(text: &str, expected: usize, rank: u32, field: &str) -> Result<Vec<u32>, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != expected {
        return Err(CliError::schema(
            field,
            format!("key `{text}` must list {expected} indices"),
        ));
    }
    let mut key = Vec::with_capacity(expected);
    for part in parts {
        let index: u32 = part.trim().parse().map_err(|_| {
            CliError::schema(field, format!("bad index `{part}` in key `{text}`"))
        })?;
        if index < 1 || index > rank {
            return Err(CliError::schema(
                field,
                format!("index {index} out of range 1..={rank}"),
            ));
        }
        if key.last().is_some_and(|&prev| index <= prev) {
            return Err(CliError::schema(
                field,
                format!("key `{text}` must be strictly increasing"),
            ));
        }
        key.push(index);
    }
    Ok(key)
}
