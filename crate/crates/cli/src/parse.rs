//! Argument parsers shared by the subcommands (and the fuzz targets).

use stirling_core::{Forcing, Rational};

/// A finite real given as a decimal (`0.5`, `1e-3`) or an exact
/// fraction (`1/2`).
pub fn parse_real(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let value = match t.parse::<f64>() {
        Ok(v) => v,
        Err(_) => t
            .parse::<Rational>()
            .map_err(|_| format!("{s:?} is not a number or p/q fraction"))?
            .to_f64(),
    };
    if !value.is_finite() {
        return Err(format!("{s:?} is not finite"));
    }
    Ok(value)
}

/// Comma-separated reals, lowest order first: `"-1, 0, 1"`.
pub fn parse_coefficients(s: &str) -> Result<Vec<f64>, String> {
    if s.trim().is_empty() {
        return Err("empty coefficient list".into());
    }
    s.split(',').map(parse_real).collect()
}

pub fn parse_forcing(s: &str) -> Result<Forcing, String> {
    s.parse::<Forcing>().map_err(|e| e.to_string())
}
