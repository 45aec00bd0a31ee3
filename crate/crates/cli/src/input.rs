//! Reading coderivations, matrices and extension data from arguments.
//!
//! An argument starting with `@` names a file; anything else is inline.

use std::fs;

use codiff_core::catalog;
use codiff_core::{
    parse_rational_coderivation, Coderivation, ExtensionDatum, GradedSpace, Rational, Witness,
};
use serde_json::Value;

use crate::CliError;

fn read_arg(arg: &str) -> Result<String, CliError> {
    match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read `{path}`: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn looks_like_label(s: &str) -> bool {
    let s = s.trim();
    s.starts_with("d_") && s[2..].chars().next().is_some_and(|c| c.is_ascii_digit())
}

/// A catalog label (`d_13(1:0)`), a sum like `psi(2,2;3) - psi(3,3;3)`,
/// or a JSON coderivation.
pub fn coderivation(arg: &str) -> Result<Coderivation<Rational>, CliError> {
    let text = read_arg(arg)?;
    let t = text.trim();
    if t.starts_with('{') {
        return serde_json::from_str(t)
            .map_err(|e| CliError::Usage(format!("invalid coderivation JSON: {e}")));
    }
    if looks_like_label(t) {
        return catalog::get_label(t)
            .map(|e| e.formula)
            .map_err(|e| CliError::Usage(e.to_string()));
    }
    parse_rational_coderivation(GradedSpace::standard(), t)
        .map_err(|e| CliError::Usage(e.to_string()))
}

pub fn rational(v: &Value) -> Result<Rational, CliError> {
    let bad = || CliError::Usage(format!("not a rational number: {v}"));
    match v {
        Value::Number(n) => n.as_i64().map(Rational::from).ok_or_else(bad),
        Value::String(s) => s.trim().parse().map_err(|_| bad()),
        Value::Object(_) => serde_json::from_value(v.clone()).map_err(|_| bad()),
        _ => Err(bad()),
    }
}

fn matrix(v: &Value) -> Result<Vec<Vec<Rational>>, CliError> {
    let rows = v
        .as_array()
        .ok_or_else(|| CliError::Usage("a matrix is an array of rows".into()))?;
    rows.iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| CliError::Usage("a matrix row is an array".into()))?
                .iter()
                .map(rational)
                .collect()
        })
        .collect()
}

/// `[[1,0,0],[0,1,0],[0,0,-1]]`, or a witness `{"matrix": …, "beta": …}`.
/// Entries may be integers, strings like `"-1/2"` or `{"num","den"}`.
pub fn witness(arg: &str) -> Result<Witness, CliError> {
    let text = read_arg(arg)?;
    let v: Value = serde_json::from_str(text.trim())
        .map_err(|e| CliError::Usage(format!("invalid matrix JSON: {e}")))?;
    match &v {
        Value::Array(_) => Ok(Witness {
            matrix: matrix(&v)?,
            beta: None,
        }),
        Value::Object(o) => {
            let m = o
                .get("matrix")
                .ok_or_else(|| CliError::Usage("witness needs a `matrix` field".into()))?;
            let beta = match o.get("beta") {
                None | Some(Value::Null) => None,
                Some(b) => Some(codiff_core::group::BetaTerm {
                    from: index(b, "from")?,
                    to: index(b, "to")?,
                    coeff: rational(
                        b.get("coeff")
                            .ok_or_else(|| CliError::Usage("beta needs `coeff`".into()))?,
                    )?,
                }),
            };
            Ok(Witness {
                matrix: matrix(m)?,
                beta,
            })
        }
        _ => Err(CliError::Usage(
            "expected a matrix or a witness object".into(),
        )),
    }
}

fn index(v: &Value, key: &str) -> Result<usize, CliError> {
    v.get(key)
        .and_then(Value::as_u64)
        .map(|x| x as usize)
        .ok_or_else(|| CliError::Usage(format!("beta needs an integer `{key}`")))
}

/// Extension datum JSON. Components may be JSON coderivations or strings
/// in the text syntax.
pub fn datum(arg: &str) -> Result<ExtensionDatum, CliError> {
    let text = read_arg(arg)?;
    let mut v: Value = serde_json::from_str(text.trim())
        .map_err(|e| CliError::Usage(format!("invalid datum JSON: {e}")))?;
    let obj = v
        .as_object_mut()
        .ok_or_else(|| CliError::Usage("a datum is a JSON object".into()))?;
    for (lower, upper) in [("m", "M"), ("w", "W")] {
        if let Some(x) = obj.remove(lower) {
            obj.entry(upper).or_insert(x);
        }
    }
    for key in ["delta", "mu", "lambda", "psi", "tau"] {
        match obj.get(key) {
            Some(Value::String(s)) => {
                let c = coderivation(s)?;
                obj.insert(key.into(), serde_json::to_value(c).expect("serializable"));
            }
            None if key != "tau" => {
                let zero: Coderivation<Rational> = Coderivation::zero(GradedSpace::standard());
                obj.insert(
                    key.into(),
                    serde_json::to_value(zero).expect("serializable"),
                );
            }
            _ => {}
        }
    }
    let d: ExtensionDatum =
        serde_json::from_value(v).map_err(|e| CliError::Usage(format!("invalid datum: {e}")))?;
    d.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(d)
}

/// Semicolon-separated list of coderivations. Semicolons inside
/// parentheses belong to the terms.
pub fn coderivation_list(arg: &str) -> Result<Vec<Coderivation<Rational>>, CliError> {
    let text = read_arg(arg)?;
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ';' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
        .into_iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| coderivation(s.trim()))
        .collect()
}
