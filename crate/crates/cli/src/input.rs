//! Coefficient files: `{"n": 3, "coeffs": [0.5, [0.5, -0.5], ...]}`.

use std::io::Read;

use serde::Deserialize;
use serde_json::Value;
use wsim_core::{WSpecF64, C64};

use crate::error::CliError;

/// Accepted distance of `sum |c_i|^2` from one before renormalizing.
pub const INPUT_NORM_TOLERANCE: f64 = 1e-9;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    n: usize,
    coeffs: Vec<Value>,
}

/// A real literal or an `[re, im]` pair.
fn coefficient(index: usize, v: &Value) -> Result<C64, CliError> {
    let part = |x: &Value| x.as_f64().filter(|f| f.is_finite());
    let z = match v {
        Value::Number(_) => part(v).map(|re| C64::new(re, 0.0)),
        Value::Array(pair) if pair.len() == 2 => part(&pair[0])
            .zip(part(&pair[1]))
            .map(|(re, im)| C64::new(re, im)),
        _ => None,
    };
    z.ok_or_else(|| {
        CliError::Parse(format!(
            "coefficient {}: expected a finite number or [re, im], got {v}",
            index + 1
        ))
    })
}

/// A parsed file: coefficients as written and the normalized register.
pub struct CoefficientFile {
    pub source: String,
    pub parsed: Vec<C64>,
    pub norm_sqr: f64,
    pub spec: WSpecF64,
}

pub fn read_source(source: &str) -> Result<String, CliError> {
    if source == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Io(source.into(), e))?;
        Ok(text)
    } else {
        std::fs::read_to_string(source).map_err(|e| CliError::Io(source.into(), e))
    }
}

pub fn load(source: &str) -> Result<CoefficientFile, CliError> {
    let text = read_source(source)?;
    parse(&text, source)
}

fn located(text: &str, err: &serde_json::Error, source: &str) -> CliError {
    let name = if source == "-" { "<stdin>" } else { source };
    let line = err.line();
    let context = text
        .lines()
        .nth(line.saturating_sub(1))
        .map(|l| format!("\n  {line} | {}", l.trim_end()))
        .unwrap_or_default();
    CliError::Parse(format!("{name}: {err}{context}"))
}

pub fn parse(text: &str, source: &str) -> Result<CoefficientFile, CliError> {
    let raw: RawFile = serde_json::from_str(text).map_err(|e| located(text, &e, source))?;
    if raw.coeffs.len() != raw.n {
        return Err(CliError::Parse(format!(
            "\"n\" is {} but {} coefficients are listed",
            raw.n,
            raw.coeffs.len()
        )));
    }
    let parsed = raw
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, v)| coefficient(i, v))
        .collect::<Result<Vec<C64>, _>>()?;
    let norm_sqr: f64 = parsed.iter().map(|z| z.norm_sqr()).sum();
    if (norm_sqr - 1.0).abs() > INPUT_NORM_TOLERANCE {
        return Err(CliError::Parse(format!(
            "squared magnitudes sum to {norm_sqr}, not 1 (tolerance {INPUT_NORM_TOLERANCE:e})"
        )));
    }
    let spec = WSpecF64::renormalized(parsed.clone(), INPUT_NORM_TOLERANCE)?;
    Ok(CoefficientFile {
        source: source.into(),
        parsed,
        norm_sqr,
        spec,
    })
}

/// Real `(alpha, beta)` with `alpha^2 + beta^2 = 1` within the input tolerance.
pub fn real_qubit(alpha: f64, beta: f64) -> Result<(f64, f64, f64), CliError> {
    let norm_sqr = alpha * alpha + beta * beta;
    if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > INPUT_NORM_TOLERANCE {
        return Err(CliError::Usage(format!(
            "alpha^2 + beta^2 = {norm_sqr}, expected 1 (tolerance {INPUT_NORM_TOLERANCE:e})"
        )));
    }
    let norm = norm_sqr.sqrt();
    Ok((alpha / norm, beta / norm, norm_sqr))
}
