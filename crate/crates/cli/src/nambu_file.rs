//! Structure files for multivector fields on the total space: a fiber/base
//! signature plus the sparse coefficients of an n-vector in the `y`/`x`
//! frame, written as `{"y1,y2,x1": "expr"}`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use flp_core::exterior::MultiVectorField;
use flp_core::scalar::Axis;
use flp_core::{parse_scalar, NambuStructure, ParseContext, SpaceDims};

use crate::error::CliError;
use crate::scenario::{read_text, write_text};

/// On-disk shape of a multivector structure.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NambuFile {
    pub fiber_dim: u32,
    pub base_dim: u32,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub pi: BTreeMap<String, String>,
}

/// Reads and fully validates a structure file.
pub fn load_nambu(path: &Path) -> Result<NambuStructure, CliError> {
    let text = read_text(path)?;
    let file: NambuFile = serde_json::from_str(&text)
        .map_err(|source| CliError::Json { path: path.display().to_string(), source })?;
    structure_from_file(&file)
}

/// Writes the canonical form of a structure, newline-terminated.
pub fn write_nambu(path: &Path, structure: &NambuStructure) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(&file_from_structure(structure))
        .expect("plain data serializes");
    text.push('\n');
    write_text(path, &text)
}

/// Validates a raw file; axis tuples may come in any order and are
/// normalized with the usual permutation sign.
pub fn structure_from_file(file: &NambuFile) -> Result<NambuStructure, CliError> {
    if file.fiber_dim < 1 {
        return Err(CliError::schema("fiber_dim", "must be at least 1"));
    }
    if file.base_dim < 1 {
        return Err(CliError::schema("base_dim", "must be at least 1"));
    }
    let dims = SpaceDims::total(file.fiber_dim, file.base_dim);
    let ctx = ParseContext::total(file.fiber_dim, file.base_dim);
    let mut pi = MultiVectorField::zero(dims, file.fiber_dim);
    for (text, value) in &file.pi {
        let field = format!("pi[\"{text}\"]");
        let key = parse_axis_key(text, dims, &field)?;
        if key.len() != file.fiber_dim as usize {
            return Err(CliError::schema(
                &field,
                format!("key `{text}` must list {} axes", file.fiber_dim),
            ));
        }
        let coeff = parse_scalar(value, &ctx)
            .map_err(|source| CliError::Expr { field, source })?;
        pi.add_term(key, coeff);
    }
    Ok(NambuStructure::new(pi)?)
}

/// The canonical on-disk form of a structure.
pub fn file_from_structure(structure: &NambuStructure) -> NambuFile {
    let dims = structure.dims();
    let pi = structure
        .pi()
        .iter()
        .map(|(key, c)| (axis_key_text(key), c.to_string()))
        .collect();
    NambuFile { fiber_dim: dims.fiber_dim, base_dim: dims.base_dim, pi }
}

/// Comma-joined axis names, `y` for fiber and `x` for base directions.
pub fn axis_key_text(key: &[Axis]) -> String {
    key.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_axis_key(text: &str, dims: SpaceDims, field: &str) -> Result<Vec<Axis>, CliError> {
    let mut key = Vec::new();
    for part in text.split(',') {
        let name = part.trim();
        let axis = parse_axis(name, dims)
            .ok_or_else(|| CliError::schema(field, format!("bad axis name `{name}`")))?;
        if key.contains(&axis) {
            return Err(CliError::schema(field, format!("repeated axis `{name}`")));
        }
        key.push(axis);
    }
    Ok(key)
}

fn parse_axis(name: &str, dims: SpaceDims) -> Option<Axis> {
    let index: u32 = name.get(1..)?.parse().ok()?;
    let axis = match name.as_bytes().first()? {
        b'y' => Axis::Fiber(index),
        b'x' => Axis::Coordinate(index),
        _ => return None,
    };
    (index >= 1 && dims.contains(axis)).then_some(axis)
}
