//! Section expressions for command-line arguments: sums of optional scalar
//! coefficients times frame vectors, like `x1*e2 - 3*e1 + e3`.  The scalar
//! part follows the expression grammar of the scenario files; the frame
//! factor must close each term.

use flp_core::{parse_scalar, ParseContext, Scalar, Section};

use crate::error::CliError;

/// Parses one section; coefficients may repeat a frame index and accumulate.
pub fn parse_section(input: &str, rank: u32, ctx: &ParseContext) -> Result<Section, CliError> {
    let mut coeffs = vec![Scalar::zero(); rank as usize];
    for (term, negate) in split_terms(input)? {
        let (scalar_text, frame_text) = split_frame(term);
        let j = frame_index(frame_text)
            .ok_or_else(|| bad(input, format!("term `{term}` must end with a frame factor like `e1`")))?;
        if j < 1 || j > rank {
            return Err(bad(input, format!("frame index {j} out of range 1..={rank}")));
        }
        let mut coeff = match scalar_text {
            None => Scalar::one(),
            Some(text) => parse_scalar(text, ctx)
                .map_err(|source| bad(input, format!("in term `{term}`: {source}")))?,
        };
        if negate {
            coeff = -&coeff;
        }
        let slot = (j - 1) as usize;
        coeffs[slot] = &coeffs[slot] + &coeff;
    }
    Ok(Section::new(coeffs))
}

/// Parses a comma-separated list of sections.
pub fn parse_section_list(
    input: &str,
    rank: u32,
    ctx: &ParseContext,
) -> Result<Vec<Section>, CliError> {
    input.split(',').map(|piece| parse_section(piece, rank, ctx)).collect()
}

fn bad(expr: &str, message: impl Into<String>) -> CliError {
    CliError::Section { expr: expr.trim().to_string(), message: message.into() }
}

/// Splits at top-level `+`/`-`, pairing each term with its sign.
fn split_terms(input: &str) -> Result<Vec<(&str, bool)>, CliError> {
    let trimmed = input.trim();
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    let mut negate = false;
    for (pos, ch) in trimmed.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(bad(input, "unbalanced parentheses"));
                }
            }
            '+' | '-' if depth == 0 => {
                let piece = trimmed[start..pos].trim();
                if piece.is_empty() {
                    if pos == 0 && ch == '-' {
                        negate = true;
                        start = 1;
                        continue;
                    }
                    return Err(bad(input, "empty term"));
                }
                out.push((piece, negate));
                negate = ch == '-';
                start = pos + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(bad(input, "unbalanced parentheses"));
    }
    let piece = trimmed[start..].trim();
    if piece.is_empty() {
        return Err(bad(input, "empty term"));
    }
    out.push((piece, negate));
    Ok(out)
}

/// Splits a term at its last top-level `*` into scalar and frame parts.
fn split_frame(term: &str) -> (Option<&str>, &str) {
    let mut depth = 0i32;
    let mut cut = None;
    for (pos, ch) in term.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => cut = Some(pos),
            _ => {}
        }
    }
    match cut {
        Some(pos) => (Some(term[..pos].trim()), term[pos + 1..].trim()),
        None => (None, term.trim()),
    }
}

fn frame_index(text: &str) -> Option<u32> {
    let digits = text.strip_prefix('e')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}
