//! The Stirling series for `log Γ(x)`, in the form Euler derived and in
//! its corrected form, with optimal truncation of the divergent tail.
//!
//! Both forms share the term list
//! `t_n = B_{2n} / ((2n-1)(2n) x^{2n-1})`; they differ only in the
//! leading part:
//!
//! * Euler: `x log x - x + log √(2π)`
//! * corrected: `x log x - x + log √(2π/x)`
//!
//! so the flawed form overshoots by exactly `½ log x`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::bernoulli::bernoulli;
use crate::error::{domain, Result};
use crate::oracle::lgamma_ref;
use crate::rational::Rational;
use crate::report::EvalReport;

/// Default number of series terms considered before truncation.
pub const DEFAULT_MAX_TERMS: usize = 15;

/// `½ log(2π)`.
pub const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// `B_{2n} / ((2n-1)(2n))`, the coefficient of `x^{1-2n}`.
pub fn stirling_coefficient(n: usize) -> Rational {
    assert!(n >= 1, "stirling coefficients start at n = 1");
    let d = BigInt::from((2 * n - 1) as u64 * (2 * n) as u64);
    bernoulli(2 * n) * Rational::new(1, d).expect("nonzero")
}

fn check_x(x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("x must be finite and > 0, got {x}"));
    }
    Ok(())
}

/// `t_1..t_{n_max}` at `x`.
pub fn stirling_terms(x: f64, n_max: usize) -> Result<Vec<f64>> {
    check_x(x)?;
    if n_max == 0 {
        return domain("n_max must be at least 1");
    }
    Ok((1..=n_max)
        .map(|n| stirling_coefficient(n).to_f64() / x.powi(2 * n as i32 - 1))
        .collect())
}

/// Number of leading terms to keep: up to and including the first term
/// of globally smallest magnitude. Returns 0 for an empty list.
pub fn optimal_truncation(terms: &[f64]) -> usize {
    let mut best: Option<(usize, f64)> = None;
    for (i, t) in terms.iter().enumerate() {
        let m = t.abs();
        if best.is_none_or(|(_, b)| m < b) {
            best = Some((i, m));
        }
    }
    best.map_or(0, |(i, _)| i + 1)
}

/// A truncated asymptotic expansion of `log Γ(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticExpansion {
    pub evaluation_point: f64,
    /// `x log x - x`.
    pub base: f64,
    /// Value of the periodic part at `x`; `½ log 2π` by default.
    pub constant: f64,
    /// `-½ log x` in the corrected form, `0` in Euler's.
    pub log_correction: f64,
    pub terms: Vec<f64>,
    pub truncation_index: usize,
    /// Magnitude of the first omitted term.
    pub error_estimate: f64,
}

impl AsymptoticExpansion {
    pub fn leading_part(&self) -> f64 {
        self.base + self.constant + self.log_correction
    }

    /// Sum of the first `n` terms, smallest first.
    pub fn partial_sum(&self, n: usize) -> f64 {
        self.terms[..n.min(self.terms.len())].iter().rev().sum()
    }

    pub fn series_value(&self) -> f64 {
        self.partial_sum(self.truncation_index)
    }

    pub fn value(&self) -> f64 {
        self.leading_part() + self.series_value()
    }

    pub fn report(&self) -> EvalReport {
        EvalReport::new(self.value(), self.truncation_index, self.error_estimate)
    }
}

/// The periodic function `h(x) = C + Σ_{k≠0} C_k e^{2kπix}` that any
/// solution of `f(x+1) - f(x) = g(x)` may absorb.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicPart {
    pub constant: f64,
    pub mode_constants: BTreeMap<i64, Complex64>,
}

impl Default for PeriodicPart {
    /// `C = ½ log 2π` and every `C_k = 0`: the choice that matches `log Γ`.
    fn default() -> Self {
        PeriodicPart {
            constant: HALF_LN_TWO_PI,
            mode_constants: BTreeMap::new(),
        }
    }
}

impl PeriodicPart {
    pub fn with_mode(mut self, k: i64, c: Complex64) -> Self {
        assert!(k != 0, "mode 0 is the constant");
        self.mode_constants.insert(k, c);
        self
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        self.mode_constants
            .iter()
            .fold(Complex64::new(self.constant, 0.0), |acc, (&k, &c)| {
                // Reduce the phase mod 1 first so h(x+1) = h(x) holds bitwise.
                let phase = (k as f64 * x).rem_euclid(1.0);
                acc + c * Complex64::from_polar(1.0, 2.0 * PI * phase)
            })
    }
}

fn expansion(x: f64, n_max: usize, periodic: &PeriodicPart, corrected: bool) -> Result<AsymptoticExpansion> {
    let mut terms = stirling_terms(x, n_max + 1)?;
    let next = terms.pop().expect("n_max + 1 terms");
    let truncation_index = optimal_truncation(&terms);
    let error_estimate = terms.get(truncation_index).copied().unwrap_or(next).abs();
    Ok(AsymptoticExpansion {
        evaluation_point: x,
        base: x * x.ln() - x,
        constant: periodic.eval(x).re,
        log_correction: if corrected { -0.5 * x.ln() } else { 0.0 },
        terms,
        truncation_index,
        error_estimate,
    })
}

/// Euler's form `x log x - x + h(x) + Σ t_n` with `h` given explicitly.
pub fn euler_expansion_with(x: f64, n_max: usize, periodic: &PeriodicPart) -> Result<AsymptoticExpansion> {
    expansion(x, n_max, periodic, false)
}

/// Euler's form, `x log x - x + log √(2π) + Σ t_n`. Missing `-½ log x`.
pub fn euler_expansion(x: f64, n_max: usize) -> Result<AsymptoticExpansion> {
    expansion(x, n_max, &PeriodicPart::default(), false)
}

/// The corrected form, `x log x - x + log √(2π/x) + Σ t_n`.
pub fn corrected_expansion(x: f64, n_max: usize) -> Result<AsymptoticExpansion> {
    expansion(x, n_max, &PeriodicPart::default(), true)
}

fn attach_oracle(report: EvalReport, x: f64) -> EvalReport {
    match lgamma_ref(x) {
        Ok(o) => report.with_oracle(&o),
        Err(_) => report,
    }
}

/// Euler's value of `log Γ(x)` at optimal truncation. This is wrong by
/// `½ log x`; the attached oracle comparison shows by how much.
pub fn log_gamma_euler(x: f64, n_max: usize) -> Result<EvalReport> {
    Ok(attach_oracle(euler_expansion(x, n_max)?.report(), x))
}

/// `log Γ(x)` from the corrected series at optimal truncation.
pub fn log_gamma_corrected(x: f64, n_max: usize) -> Result<EvalReport> {
    Ok(attach_oracle(corrected_expansion(x, n_max)?.report(), x))
}

/// `log_gamma_euler(x) - log_gamma_corrected(x)`, component by component.
///
/// The two expansions share their base, constant and term list, so those
/// cancel exactly and only `½ log x` survives.
pub fn discrepancy(x: f64) -> Result<f64> {
    let e = euler_expansion(x, DEFAULT_MAX_TERMS)?;
    let c = corrected_expansion(x, DEFAULT_MAX_TERMS)?;
    Ok((e.base - c.base)
        + (e.constant - c.constant)
        + (e.series_value() - c.series_value())
        + (e.log_correction - c.log_correction))
}

/// Exact `c_0..c_m` with `exp(Σ_{n≥1} t_n) = Σ_j c_j x^{-j}`.
///
/// Uses the power-series exponential recurrence
/// `c_j = (1/j) Σ_{i=1}^{j} i·s_i·c_{j-i}`, where `s_i` is the
/// coefficient of `x^{-i}` in the Stirling series.
pub fn factor_series_coefficients(m: usize) -> Result<Vec<Rational>> {
    if m == 0 {
        return domain("factor_series_coefficients requires m >= 1");
    }
    let s: Vec<Rational> = (0..=m)
        .map(|i| {
            if i % 2 == 1 {
                stirling_coefficient(i.div_ceil(2))
            } else {
                Rational::zero()
            }
        })
        .collect();
    let mut c = vec![Rational::one()];
    for j in 1..=m {
        let acc: Rational = (1..=j)
            .filter(|i| !s[*i].is_zero())
            .map(|i| &s[i] * &c[j - i] * Rational::from(i as i64))
            .sum();
        c.push(acc * Rational::new(1, j as i64).expect("j > 0"));
    }
    Ok(c)
}

/// Partial sums `1 - Σ_{n=1}^{N} B_{2n}/((2n-1)2n)` for `N = 1..=n_max`.
pub fn constant_claim_partial_sums(n_max: usize) -> Result<Vec<f64>> {
    let terms = stirling_terms(1.0, n_max)?;
    Ok(terms
        .iter()
        .scan(1.0, |acc, t| {
            *acc -= t;
            Some(*acc)
        })
        .collect())
}

/// The constant `1 - Σ B_{2n}/((2n-1)2n)`, read off at `x = 1`, truncated
/// at its smallest term and compared to `½ log 2π`. The full series
/// diverges; only the truncated value is meaningful.
pub fn euler_constant_claim(n_max: usize) -> Result<EvalReport> {
    if n_max < 4 {
        return domain("euler_constant_claim requires n_max >= 4");
    }
    let mut terms = stirling_terms(1.0, n_max + 1)?;
    let next = terms.pop().expect("n_max + 1 terms");
    let n = optimal_truncation(&terms);
    let value = 1.0 - terms[..n].iter().rev().sum::<f64>();
    let error_estimate = terms.get(n).copied().unwrap_or(next).abs();
    Ok(EvalReport::new(value, n, error_estimate).with_reference(HALF_LN_TWO_PI))
}
