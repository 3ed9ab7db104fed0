use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub(crate) fn parse_err(input: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}

pub(crate) fn floats(input: &str, body: &str) -> Result<Vec<f64>> {
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| parse_err(input, alloc::format!("`{}` is not a number", t.trim())))
        })
        .collect()
}

pub(crate) fn floats_exact(input: &str, body: &str, count: usize) -> Result<Vec<f64>> {
    let v = floats(input, body)?;
    if v.len() != count {
        return Err(parse_err(
            input,
            alloc::format!("expected {count} parameters, got {}", v.len()),
        ));
    }
    Ok(v)
}

/// Split `head:rest` at the first colon.
pub(crate) fn head(input: &str) -> Result<(&str, &str)> {
    input
        .split_once(':')
        .map(|(h, r)| (h.trim(), r.trim()))
        .ok_or_else(|| parse_err(input, "expected `family:parameters`"))
}

/// Split on `sep` at bracket depth zero.
pub(crate) fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}
