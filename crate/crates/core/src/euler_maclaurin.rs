//! The inverse forward-difference operator `(e^D - 1)^{-1}` and the
//! Euler–Maclaurin antidifference built from it.
//!
//! Writing `D = d/dx`, the shift `f(x) ↦ f(x+1)` is `e^D`, so a solution of
//! `f(x+1) - f(x) = g(x)` is formally
//!
//! ```text
//! f = (e^D - 1)^{-1} g = Σ_{n≥0} B_n D^{n-1} g / n!
//!   = ∫g - g/2 + g'/12 - g'''/720 + ...
//! ```
//!
//! with `D^{-1}` read as the caller's fixed antiderivative branch.

use num_bigint::BigInt;

use crate::bernoulli::{bernoulli, factorial};
use crate::error::{domain, Result};
use crate::function::SmoothFunction;
use crate::polynomial::RationalPolynomial;
use crate::rational::Rational;

/// Coefficients of `(e^D - 1)^{-1}` through `D^{max_derivative_order}`.
#[derive(Debug, Clone, PartialEq)]
pub struct InverseShiftExpansion {
    /// Coefficient of `D^{-1}`; always 1.
    pub antiderivative_coefficient: Rational,
    /// Coefficient of `D^0`; always `-1/2`.
    pub constant_coefficient: Rational,
    /// Entry `i` is the coefficient `B_{i+2}/(i+2)!` of `D^{i+1}`.
    pub derivative_coefficients: Vec<Rational>,
}

impl InverseShiftExpansion {
    pub fn max_derivative_order(&self) -> usize {
        self.derivative_coefficients.len()
    }

    /// Coefficient of `D^power`, for `power >= -1`.
    pub fn coefficient(&self, power: i64) -> Option<&Rational> {
        match power {
            -1 => Some(&self.antiderivative_coefficient),
            0 => Some(&self.constant_coefficient),
            p if p > 0 => self.derivative_coefficients.get(p as usize - 1),
            _ => None,
        }
    }
}

/// `B_n / n!`, the coefficient of `D^{n-1}`.
fn operator_coefficient(n: usize) -> Rational {
    bernoulli(n) * Rational::new(1, BigInt::from(factorial(n as u64))).expect("n! > 0")
}

pub fn inverse_shift_coefficients(max_derivative_order: usize) -> InverseShiftExpansion {
    InverseShiftExpansion {
        antiderivative_coefficient: operator_coefficient(0),
        constant_coefficient: operator_coefficient(1),
        derivative_coefficients: (2..max_derivative_order + 2).map(operator_coefficient).collect(),
    }
}

fn check_order<G: SmoothFunction + ?Sized>(g: &G, order: usize) -> Result<()> {
    match g.max_derivative_order() {
        Some(max) if max < order => domain(format!(
            "order {order} needs derivatives the function does not supply (max {max})"
        )),
        _ => Ok(()),
    }
}

fn antidifference_impl<G: SmoothFunction + ?Sized>(
    g: &G,
    x: f64,
    order: usize,
    with_constant: bool,
) -> Result<f64> {
    check_order(g, order)?;
    let expansion = inverse_shift_coefficients(order);
    let mut sum = g.antiderivative(x);
    if with_constant {
        sum -= 0.5 * g.value(x);
    }
    for (i, c) in expansion.derivative_coefficients.iter().enumerate() {
        if !c.is_zero() {
            sum += c.to_f64() * g.derivative(i + 1, x);
        }
    }
    Ok(sum)
}

/// The truncated Euler–Maclaurin antidifference
/// `F(x) = ∫g - g(x)/2 + Σ_{j=1}^{order} (B_{j+1}/(j+1)!) g^{(j)}(x)`.
///
/// Up to the additive constant fixed by `g`'s antiderivative branch,
/// `F(x+1) - F(x) ≈ g(x)`, with error governed by [`first_omitted_term`].
pub fn em_antidifference<G: SmoothFunction + ?Sized>(g: &G, x: f64, order: usize) -> Result<f64> {
    antidifference_impl(g, x, order, true)
}

/// The antidifference assembled from the zeros of `e^z - 1` alone: the
/// `k = 0` mode supplies `∫g` and the paired oscillatory modes resum to the
/// Bernoulli tail, but nothing produces the `-g(x)/2` term.
///
/// This is deliberately wrong by exactly `g(x)/2`; it exists to reproduce
/// and measure that error.
pub fn em_antidifference_without_constant<G: SmoothFunction + ?Sized>(
    g: &G,
    x: f64,
    order: usize,
) -> Result<f64> {
    antidifference_impl(g, x, order, false)
}

/// Magnitude of the first nonzero term beyond `order`, evaluated at `x`.
///
/// Returns `None` when `g` does not supply the needed derivative.
pub fn first_omitted_term<G: SmoothFunction + ?Sized>(g: &G, x: f64, order: usize) -> Option<f64> {
    // Nonzero derivative terms sit at odd powers D^1, D^3, ...
    let next = if order == 0 { 1 } else { (order + 1) | 1 };
    if g.max_derivative_order().is_some_and(|m| m < next) {
        return None;
    }
    Some((operator_coefficient(next + 1).to_f64() * g.derivative(next, x)).abs())
}

fn check_range(a: i64, b: i64) -> Result<()> {
    if a > b {
        return domain(format!("summation range is empty: a = {a} > b = {b}"));
    }
    Ok(())
}

/// `Σ_{k=a}^{b} g(k) ≈ F(b+1) - F(a)` with `F` the truncated antidifference.
pub fn em_sum<G: SmoothFunction + ?Sized>(g: &G, a: i64, b: i64, order: usize) -> Result<f64> {
    check_range(a, b)?;
    Ok(em_antidifference(g, (b + 1) as f64, order)? - em_antidifference(g, a as f64, order)?)
}

/// Like [`em_sum`], but adds the first `head` terms directly and applies
/// the antidifference only from `a + head` on, where the Bernoulli tail
/// is small.
pub fn em_sum_with_head<G: SmoothFunction + ?Sized>(
    g: &G,
    a: i64,
    b: i64,
    order: usize,
    head: u64,
) -> Result<f64> {
    check_range(a, b)?;
    let split = a.saturating_add(head.min(i64::MAX as u64) as i64);
    if split > b {
        return Ok((a..=b).map(|k| g.value(k as f64)).sum());
    }
    let direct: f64 = (a..split).map(|k| g.value(k as f64)).sum();
    Ok(direct + em_sum(g, split, b, order)?)
}

/// Twice the first omitted term at both ends of the range used by
/// [`em_sum_with_head`] (`head = 0` gives the bound for [`em_sum`]).
pub fn em_sum_error_bound<G: SmoothFunction + ?Sized>(
    g: &G,
    a: i64,
    b: i64,
    order: usize,
    head: u64,
) -> Result<Option<f64>> {
    check_range(a, b)?;
    let split = a.saturating_add(head.min(i64::MAX as u64) as i64);
    if split > b {
        return Ok(Some(0.0));
    }
    let lo = first_omitted_term(g, split as f64, order);
    let hi = first_omitted_term(g, (b + 1) as f64, order);
    Ok(lo.zip(hi).map(|(l, h)| 2.0 * (l + h)))
}

/// Exact antidifference of a rational polynomial: the series terminates
/// once `order` reaches the degree, and then `F(x+1) - F(x) = g(x)`
/// identically.
pub fn antidifference_polynomial(g: &RationalPolynomial, order: usize) -> RationalPolynomial {
    let expansion = inverse_shift_coefficients(order);
    let mut f = g
        .antiderivative()
        .add(&g.scale(&expansion.constant_coefficient));
    let mut deriv = g.clone();
    for c in &expansion.derivative_coefficients {
        deriv = deriv.derivative();
        if deriv.degree().is_none() {
            break;
        }
        if !c.is_zero() {
            f = f.add(&deriv.scale(c));
        }
    }
    f
}

/// `Σ_{k=a}^{b} g(k)` computed exactly through the antidifference.
pub fn em_sum_polynomial(g: &RationalPolynomial, a: i64, b: i64, order: usize) -> Result<Rational> {
    check_range(a, b)?;
    let f = antidifference_polynomial(g, order);
    Ok(f.eval(&Rational::from(b + 1)) - f.eval(&Rational::from(a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::Forcing;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn expansion_coefficients() {
        let e = inverse_shift_coefficients(3);
        assert_eq!(e.antiderivative_coefficient, Rational::one());
        assert_eq!(e.constant_coefficient, r("-1/2"));
        assert_eq!(e.derivative_coefficients, vec![r("1/12"), r("0"), r("-1/720")]);
        assert_eq!(e.coefficient(3), Some(&r("-1/720")));
        assert_eq!(e.coefficient(4), None);

        let e0 = inverse_shift_coefficients(0);
        assert!(e0.derivative_coefficients.is_empty());
        assert_eq!(e0.coefficient(0), Some(&r("-1/2")));

        assert_eq!(inverse_shift_coefficients(5).coefficient(5), Some(&r("1/30240")));
    }

    #[test]
    fn constant_function() {
        let g = Forcing::Constant(1.0);
        assert_eq!(em_antidifference(&g, 3.0, 3).unwrap(), 2.5);
        let step = em_antidifference(&g, 4.0, 3).unwrap() - em_antidifference(&g, 3.0, 3).unwrap();
        assert_eq!(step, 1.0);
        assert_eq!(em_sum(&g, 1, 10, 3).unwrap(), 10.0);
    }

    #[test]
    fn identity_function_at_zero() {
        let g = Forcing::monomial(1);
        assert_eq!(em_antidifference(&g, 0.0, 3).unwrap(), 1.0 / 12.0);
        let p = antidifference_polynomial(&RationalPolynomial::from_integers(&[0, 1]), 3);
        assert_eq!(p.coeffs(), &[r("1/12"), r("-1/2"), r("1/2")]);
        assert_eq!(p.forward_difference(), RationalPolynomial::from_integers(&[0, 1]));
    }

    #[test]
    fn log_antidifference_tracks_log_gamma() {
        // F(10) for g = log equals log Γ(10) - ½ log 2π up to the first
        // omitted term; log Γ(10) = log 9! = log 362880.
        let g = Forcing::Log;
        let f = em_antidifference(&g, 10.0, 7).unwrap();
        let target = 362_880f64.ln() - 0.5 * (2.0 * std::f64::consts::PI).ln();
        let bound = first_omitted_term(&g, 10.0, 7).unwrap();
        assert!(bound > 0.0 && bound < 1e-9);
        assert!((f - target).abs() <= bound, "{} vs bound {bound}", (f - target).abs());
    }

    #[test]
    fn sums_of_squares_exact() {
        let sq = RationalPolynomial::from_integers(&[0, 0, 1]);
        assert_eq!(em_sum_polynomial(&sq, 1, 100, 3).unwrap(), Rational::from(338_350));
        assert!((em_sum(&Forcing::monomial(2), 1, 100, 3).unwrap() - 338_350.0).abs() < 1e-9);
    }

    #[test]
    fn empty_range_rejected() {
        assert!(em_sum(&Forcing::Log, 5, 4, 3).is_err());
        assert!(em_sum_polynomial(&RationalPolynomial::zero(), 2, 1, 0).is_err());
    }

    #[test]
    fn order_zero_is_trapezoid_like() {
        let g = Forcing::Exp(0.3);
        let (a, b) = (2, 9);
        let s = em_sum(&g, a, b, 0).unwrap();
        let trap = g.antiderivative((b + 1) as f64) - g.antiderivative(a as f64)
            - 0.5 * g.value((b + 1) as f64)
            + 0.5 * g.value(a as f64);
        assert!((s - trap).abs() < 1e-12);
    }

    #[test]
    fn head_split_harmonic() {
        let h: f64 = (1..=1000).rev().map(|k| 1.0 / k as f64).sum();
        let plain = em_sum(&Forcing::Reciprocal, 1, 1000, 5).unwrap();
        let bound = em_sum_error_bound(&Forcing::Reciprocal, 1, 1000, 5, 0).unwrap().unwrap();
        assert!((plain - h).abs() <= bound);
        let split = em_sum_with_head(&Forcing::Reciprocal, 1, 1000, 5, 20).unwrap();
        assert!((split - h).abs() < 1e-12);
    }

    struct Truncated;
    impl SmoothFunction for Truncated {
        fn derivative(&self, order: usize, x: f64) -> f64 {
            Forcing::Log.derivative(order, x)
        }
        fn antiderivative(&self, x: f64) -> f64 {
            Forcing::Log.antiderivative(x)
        }
        fn max_derivative_order(&self) -> Option<usize> {
            Some(2)
        }
    }

    #[test]
    fn insufficient_derivatives() {
        assert!(em_antidifference(&Truncated, 3.0, 2).is_ok());
        assert!(em_antidifference(&Truncated, 3.0, 3).is_err());
        assert_eq!(first_omitted_term(&Truncated, 3.0, 2), None);
    }

    #[test]
    fn dropping_constant_shifts_by_half_g() {
        for x in [5.0, 10.0, 20.0] {
            let with = em_antidifference(&Forcing::Log, x, 7).unwrap();
            let without = em_antidifference_without_constant(&Forcing::Log, x, 7).unwrap();
            assert!((without - with - 0.5 * f64::ln(x)).abs() < 1e-12);
        }
    }
}
