//! The oscillatory modes `e^{2kπix} ∫ e^{-2kπix} log x dx` attached to the
//! nonzero roots `2kπi` of `e^z - 1`, and their resummation into the
//! Bernoulli tail of the Stirling series.
//!
//! Integrating by parts repeatedly gives, for `a = 2kπi`,
//!
//! ```text
//! e^{ax} ∫ e^{-ax} log x dx = -log(x)/a + Σ_{n≥1} (-1)^n (n-1)! / (a^{n+1} x^n) + C_k e^{ax}
//! ```
//!
//! Pairing `k` with `-k` cancels the log terms and every even-`n` term;
//! summing the survivors over `k` with `ζ(2n+2)` reproduces
//! `B_{2n+2} / ((2n+1)(2n+2) x^{2n+1})`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::asymptotic::stirling_coefficient;
use crate::bernoulli::{factorial, zeta_even_coefficient};
use crate::error::{domain, Result};
use crate::function::factorial_f64;
use crate::rational::Rational;

/// `0, ±2πi, ±4πi, ..., ±2Kπi`, in that order.
pub fn expm1_zeros(modes: usize) -> Vec<Complex64> {
    let mut zeros = Vec::with_capacity(2 * modes + 1);
    zeros.push(Complex64::new(0.0, 0.0));
    for k in 1..=modes {
        let im = 2.0 * PI * k as f64;
        zeros.push(Complex64::new(0.0, im));
        zeros.push(Complex64::new(0.0, -im));
    }
    zeros
}

/// `i^p` exactly.
fn i_pow(p: usize) -> Complex64 {
    match p % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// The asymptotic expansion of one mode integral.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSeries {
    pub mode_index: i64,
    pub evaluation_point: f64,
    /// `-1/(2kπi) = i/(2kπ)`.
    pub log_coefficient: Complex64,
    /// Entry `n-1` is `(-1)^n (n-1)! / ((2kπi)^{n+1} x^n)`.
    pub inverse_power_terms: Vec<Complex64>,
    pub integration_constant: Complex64,
}

impl ModeSeries {
    pub fn with_constant(mut self, c: Complex64) -> Self {
        self.integration_constant = c;
        self
    }

    pub fn log_part(&self) -> Complex64 {
        self.log_coefficient * self.evaluation_point.ln()
    }

    pub fn homogeneous_part(&self) -> Complex64 {
        let phase = (self.mode_index as f64 * self.evaluation_point).rem_euclid(1.0);
        self.integration_constant * Complex64::from_polar(1.0, 2.0 * PI * phase)
    }

    pub fn series_part(&self) -> Complex64 {
        self.inverse_power_terms.iter().rev().sum()
    }

    pub fn value(&self) -> Complex64 {
        self.log_part() + self.series_part() + self.homogeneous_part()
    }
}

/// Mode `k` at `x`, keeping `n = 1..=n_max`, with `C_k = 0`.
pub fn mode_series(k: i64, x: f64, n_max: usize) -> Result<ModeSeries> {
    if k == 0 {
        return domain("mode 0 is the ∫log x = x log x - x part, not an oscillatory mode");
    }
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("x must be finite and > 0, got {x}"));
    }
    let omega = 2.0 * PI * k as f64;
    let inverse_power_terms = (1..=n_max)
        .map(|n| {
            // (2kπi)^{n+1} = ω^{n+1} i^{n+1}; dividing by i^p multiplies by i^{4-p}.
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let magnitude = sign * factorial_f64(n - 1) / (omega.powi(n as i32 + 1) * x.powi(n as i32));
            i_pow(4 - (n + 1) % 4) * magnitude
        })
        .collect();
    Ok(ModeSeries {
        mode_index: k,
        evaluation_point: x,
        log_coefficient: Complex64::new(0.0, 1.0 / omega),
        inverse_power_terms,
        integration_constant: Complex64::new(0.0, 0.0),
    })
}

/// `mode(k) + mode(-k)` with both constants zero. The sum is real: the log
/// parts are negatives of each other and the even-`n` terms are purely
/// imaginary conjugates.
pub fn paired_mode(k: u64, x: f64, n_max: usize) -> Result<Complex64> {
    if k == 0 {
        return domain("paired modes start at k = 1");
    }
    let plus = mode_series(k as i64, x, n_max)?;
    let minus = mode_series(-(k as i64), x, n_max)?;
    Ok(plus.value() + minus.value())
}

/// Real part of [`paired_mode`].
pub fn paired_mode_real(k: u64, x: f64, n_max: usize) -> Result<f64> {
    Ok(paired_mode(k, x, n_max)?.re)
}

/// The two exact rational coefficients of `x^{-(2n+1)}` in the
/// resummation identity:
///
/// * left: `2 q_{n+1} (-1)^n (2n)! / 2^{2n+2}` where `ζ(2n+2) = q π^{2n+2}`
///   (the `π` powers cancel against `(2π)^{2n+2}`),
/// * right: `B_{2n+2} / ((2n+1)(2n+2))`.
pub fn resum_coefficients(n: usize) -> (Rational, Rational) {
    let q = zeta_even_coefficient(n + 1).expect("n + 1 >= 1");
    let scale = Rational::new(
        BigInt::from(factorial(2 * n as u64)) * 2,
        BigInt::from(1) << (2 * n + 2),
    )
    .expect("nonzero");
    let lhs = q * scale;
    let lhs = if n % 2 == 1 { -lhs } else { lhs };
    (lhs, stirling_coefficient(n + 1))
}

/// Both sides of the `n`-th resummation identity at `x`, in floating point
/// from the exact coefficients.
pub fn resum_term_check(n: usize, x: f64) -> Result<(f64, f64)> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("x must be finite and > 0, got {x}"));
    }
    let (lhs, rhs) = resum_coefficients(n);
    let scale = x.powi(2 * n as i32 + 1);
    Ok((lhs.to_f64() / scale, rhs.to_f64() / scale))
}

/// Diagonal truncation of the double sum: modes `1..=modes`, mode terms
/// `1..=n_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagonalResummation {
    /// `Σ_{k≤K} paired_mode_real(k)`.
    pub mode_sum: f64,
    /// `Σ_{m} t_m(x)` over the Stirling terms the mode series reach.
    pub series_sum: f64,
    /// `Σ_m |t_m| · (ζ-tail beyond K) / ζ(2m)`: how far the `K`-truncated
    /// zeta sums can fall short.
    pub tail_bound: f64,
}

pub fn diagonal_resummation(x: f64, modes: u64, n_max: usize) -> Result<DiagonalResummation> {
    if modes == 0 || n_max == 0 {
        return domain("diagonal resummation needs at least one mode and one term");
    }
    let mode_sum: f64 = (1..=modes)
        .rev()
        .map(|k| paired_mode_real(k, x, n_max))
        .sum::<Result<f64>>()?;
    // Odd mode-series indices n = 2m - 1 feed Stirling term m.
    let m_max = n_max.div_ceil(2);
    let mut series_sum = 0.0;
    let mut tail_bound = 0.0;
    for m in (1..=m_max).rev() {
        let t = stirling_coefficient(m).to_f64() / x.powi(2 * m as i32 - 1);
        let s = 2.0 * m as f64;
        let zeta = zeta_even_coefficient(m).expect("m >= 1").to_f64() * PI.powi(2 * m as i32);
        let tail = (modes as f64).powf(1.0 - s) / (s - 1.0);
        series_sum += t;
        tail_bound += t.abs() * tail / zeta;
    }
    Ok(DiagonalResummation {
        mode_sum,
        series_sum,
        tail_bound,
    })
}
