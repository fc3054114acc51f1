//! Real functions that carry their own exact derivatives and one fixed
//! antiderivative branch.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A real function with caller-supplied derivatives of every order it
/// advertises, and one fixed antiderivative.
pub trait SmoothFunction {
    /// The `order`-th derivative at `x`; order 0 is the value.
    fn derivative(&self, order: usize, x: f64) -> f64;

    /// One fixed antiderivative branch.
    fn antiderivative(&self, x: f64) -> f64;

    fn value(&self, x: f64) -> f64 {
        self.derivative(0, x)
    }

    /// Highest derivative order available; `None` means unbounded.
    fn max_derivative_order(&self) -> Option<usize> {
        None
    }
}

impl<F: SmoothFunction + ?Sized> SmoothFunction for &F {
    fn derivative(&self, order: usize, x: f64) -> f64 {
        (**self).derivative(order, x)
    }
    fn antiderivative(&self, x: f64) -> f64 {
        (**self).antiderivative(x)
    }
    fn max_derivative_order(&self) -> Option<usize> {
        (**self).max_derivative_order()
    }
}

/// `(m)!` in floating point; exact for `m <= 22`.
pub(crate) fn factorial_f64(m: usize) -> f64 {
    (1..=m).fold(1.0, |acc, k| acc * k as f64)
}

/// The catalogue of forcing terms exposed on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum Forcing {
    /// `c`
    Constant(f64),
    /// `Σ c_i x^i`, coefficients in ascending order.
    Polynomial(Vec<f64>),
    /// `e^{αx}`
    Exp(f64),
    /// `log x`, for `x > 0`.
    Log,
    /// `1/x`, for `x != 0`.
    Reciprocal,
}

impl Forcing {
    pub fn monomial(degree: usize) -> Self {
        let mut c = vec![0.0; degree + 1];
        c[degree] = 1.0;
        Forcing::Polynomial(c)
    }
}

impl SmoothFunction for Forcing {
    fn derivative(&self, order: usize, x: f64) -> f64 {
        match self {
            Forcing::Constant(c) => {
                if order == 0 {
                    *c
                } else {
                    0.0
                }
            }
            Forcing::Polynomial(coeffs) => {
                // Horner on the `order`-th derivative's coefficients.
                coeffs
                    .iter()
                    .enumerate()
                    .skip(order)
                    .rev()
                    .fold(0.0, |acc, (i, &c)| {
                        let falling = ((i - order + 1)..=i).fold(1.0, |p, k| p * k as f64);
                        acc * x + c * falling
                    })
            }
            Forcing::Exp(alpha) => alpha.powi(order as i32) * (alpha * x).exp(),
            Forcing::Log => {
                if x <= 0.0 {
                    return f64::NAN;
                }
                if order == 0 {
                    x.ln()
                } else {
                    let sign = if order % 2 == 1 { 1.0 } else { -1.0 };
                    sign * factorial_f64(order - 1) / x.powi(order as i32)
                }
            }
            Forcing::Reciprocal => {
                let sign = if order.is_multiple_of(2) { 1.0 } else { -1.0 };
                sign * factorial_f64(order) / x.powi(order as i32 + 1)
            }
        }
    }

    fn antiderivative(&self, x: f64) -> f64 {
        match self {
            Forcing::Constant(c) => c * x,
            Forcing::Polynomial(coeffs) => coeffs
                .iter()
                .enumerate()
                .rev()
                .fold(0.0, |acc, (i, &c)| acc * x + c / (i + 1) as f64)
                * x,
            Forcing::Exp(alpha) => {
                if *alpha == 0.0 {
                    x
                } else {
                    (alpha * x).exp() / alpha
                }
            }
            Forcing::Log => {
                if x <= 0.0 {
                    f64::NAN
                } else {
                    x * x.ln() - x
                }
            }
            Forcing::Reciprocal => x.abs().ln(),
        }
    }
}

impl fmt::Display for Forcing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Forcing::Constant(c) => write!(f, "{c}"),
            Forcing::Polynomial(coeffs) => {
                let mut first = true;
                for (i, c) in coeffs.iter().enumerate().filter(|(_, c)| **c != 0.0) {
                    if !first {
                        f.write_str(" + ")?;
                    }
                    first = false;
                    match i {
                        0 => write!(f, "{c}")?,
                        1 => write!(f, "{c}*x")?,
                        _ => write!(f, "{c}*x^{i}")?,
                    }
                }
                if first {
                    f.write_str("0")?;
                }
                Ok(())
            }
            Forcing::Exp(alpha) => write!(f, "exp({alpha} x)"),
            Forcing::Log => f.write_str("log(x)"),
            Forcing::Reciprocal => f.write_str("1/x"),
        }
    }
}

impl FromStr for Forcing {
    type Err = Error;

    /// Names from the registry: `1`, `x`, `x^2` (any `x^n`, n ≤ 32),
    /// `exp(a x)` with a real `a`, `log(x)`, `1/x`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("unknown forcing {s:?}"));
        match compact.as_str() {
            "1" => return Ok(Forcing::Constant(1.0)),
            "x" => return Ok(Forcing::monomial(1)),
            "log(x)" | "log" => return Ok(Forcing::Log),
            "1/x" => return Ok(Forcing::Reciprocal),
            _ => {}
        }
        if let Some(deg) = compact.strip_prefix("x^") {
            let d: usize = deg.parse().map_err(|_| bad())?;
            if d > 32 {
                return Err(bad());
            }
            return Ok(Forcing::monomial(d));
        }
        if let Some(inner) = compact.strip_prefix("exp(").and_then(|t| t.strip_suffix(')')) {
            let coeff = inner.strip_suffix('x').ok_or_else(bad)?;
            let coeff = coeff.strip_suffix('*').unwrap_or(coeff);
            let alpha = match coeff {
                "" => 1.0,
                "-" => -1.0,
                c => c.parse::<f64>().map_err(|_| bad())?,
            };
            if !alpha.is_finite() {
                return Err(bad());
            }
            return Ok(Forcing::Exp(alpha));
        }
        Err(bad())
    }
}
