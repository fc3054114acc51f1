//! Constant-coefficient linear operators `Σ a_j D^j`, their characteristic
//! roots, and particular solutions built one simple root at a time.
//!
//! For a simple zero `k` of `P(z) = Σ a_j z^j`,
//! `f_k(x) = e^{kx}/P'(k) · ∫ e^{-kx} g(x) dx` is the `k`-mode of a
//! solution of `P(D) f = g`; summing over all (simple) roots is the
//! partial-fraction expansion of `1/P(D)`.
//!
//! Difference operators `Σ a_i f(x+i)` reduce, through Taylor's theorem,
//! to the infinite-order operator `Σ_j A_j D^j` with
//! `A_j = Σ_i a_i i^j / j!`.

mod quadrature;
mod roots;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

pub use quadrature::integrate;

use crate::bernoulli::factorial;
use crate::error::{domain, Error, Result};
use crate::function::SmoothFunction;
use crate::rational::Rational;

/// `a_0 + a_1 D + ... + a_n D^n` with `n >= 1` and `a_n != 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicOperator {
    coefficients: Vec<Complex64>,
}

impl CharacteristicOperator {
    pub fn new(coefficients: Vec<Complex64>) -> Result<Self> {
        if coefficients.len() < 2 {
            return domain("operator needs degree >= 1");
        }
        if coefficients.last().is_some_and(|c| c.is_zero()) {
            return domain("leading coefficient must be nonzero");
        }
        if coefficients.iter().any(|c| !c.is_finite()) {
            return domain("coefficients must be finite");
        }
        Ok(CharacteristicOperator { coefficients })
    }

    pub fn from_real(coefficients: &[f64]) -> Result<Self> {
        Self::new(coefficients.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// `lead · Π (z - r)`.
    pub fn from_roots(roots: &[Complex64], lead: Complex64) -> Result<Self> {
        let mut c = vec![lead];
        for &r in roots {
            let mut next = vec![Complex64::zero(); c.len() + 1];
            for (i, &ci) in c.iter().enumerate() {
                next[i + 1] += ci;
                next[i] -= ci * r;
            }
            c = next;
        }
        Self::new(c)
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// `P(z)`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        roots::horner_with_derivative(&self.coefficients, z).0
    }

    /// `P'(z)`.
    pub fn eval_derivative(&self, z: Complex64) -> Complex64 {
        roots::horner_with_derivative(&self.coefficients, z).1
    }

    fn max_coefficient(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Scale for residual tests at `z`: `max|a_j| · max(1, |z|)^n`.
    pub fn residual_scale(&self, z: Complex64) -> f64 {
        self.max_coefficient() * z.norm().max(1.0).powi(self.degree() as i32)
    }

    /// `Σ a_j f^{(j)}(x)` from the supplied derivatives `f^{(0..=n)}(x)`.
    pub fn apply(&self, derivatives: &[Complex64]) -> Complex64 {
        self.coefficients
            .iter()
            .zip(derivatives)
            .map(|(a, d)| a * d)
            .sum()
    }
}

/// Distinct roots with multiplicities, ordered by real then imaginary part.
#[derive(Debug, Clone, PartialEq)]
pub struct RootMultiset {
    pub roots: Vec<(Complex64, usize)>,
}

impl RootMultiset {
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum()
    }

    pub fn simple_roots(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.roots.iter().filter(|(_, m)| *m == 1).map(|(r, _)| *r)
    }

    pub fn is_all_simple(&self) -> bool {
        self.roots.iter().all(|(_, m)| *m == 1)
    }
}

/// All zeros of `P`, clustered into multiplicities with radius
/// `tol^{1/m}` for an `m`-fold candidate.
pub fn polynomial_roots(op: &CharacteristicOperator, tol: f64) -> Result<RootMultiset> {
    if !(tol > 0.0) {
        return domain(format!("tolerance must be positive, got {tol}"));
    }
    let raw = roots::aberth(&op.coefficients)?;
    let mut clustered = roots::cluster(&raw, tol);
    for (r, m) in clustered.iter_mut() {
        // An m-fold root of P is a simple root of P^{(m-1)}.
        let mut coeffs = op.coefficients.clone();
        for _ in 1..*m {
            coeffs = coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * i as f64)
                .collect();
        }
        *r = roots::polish(&coeffs, *r);
    }
    clustered.sort_by(roots::order_roots);
    Ok(RootMultiset { roots: clustered })
}

/// `A_0 + A_1 D + ... + A_M D^M`, a truncation of an infinite-order operator.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedInfiniteOperator {
    pub coefficients: Vec<Rational>,
}

impl TruncatedInfiniteOperator {
    /// `Σ A_j z^j`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coefficients
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, a| acc * z + a.to_f64())
    }

    /// The finite operator obtained by dropping trailing zero coefficients.
    pub fn to_operator(&self) -> Result<CharacteristicOperator> {
        let mut c: Vec<Complex64> = self
            .coefficients
            .iter()
            .map(|a| Complex64::new(a.to_f64(), 0.0))
            .collect();
        while c.last().is_some_and(|a| a.is_zero()) {
            c.pop();
        }
        CharacteristicOperator::new(c)
    }
}

/// Taylor-expands each shift in `Σ_{i=0}^{n} a_i f(x+i)` and collects
/// `A_j = Σ_i a_i i^j / j!` for `j = 0..=max_order`.
pub fn reduce_difference_to_differential(
    diff_coeffs: &[Rational],
    max_order: usize,
) -> Result<TruncatedInfiniteOperator> {
    if diff_coeffs.len() < 2 {
        return domain("difference operator needs at least f(x) and f(x+1)");
    }
    let n = diff_coeffs.len() - 1;
    if max_order < n {
        return domain(format!("truncation order {max_order} is below the operator order {n}"));
    }
    let coefficients = (0..=max_order)
        .map(|j| {
            let sum: Rational = diff_coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| a * Rational::from(BigInt::from(i).pow(j as u32)))
                .sum();
            sum * Rational::new(1, BigInt::from(factorial(j as u64))).expect("j! > 0")
        })
        .collect();
    Ok(TruncatedInfiniteOperator { coefficients })
}

fn check_simple(op: &CharacteristicOperator, k: Complex64, tol: f64) -> Result<Complex64> {
    let p = op.eval(k);
    let scale = op.residual_scale(k);
    if p.norm() > tol.max(1e-12) * scale {
        return domain(format!("{k} is not a root: |P(k)| = {:e}", p.norm()));
    }
    let dp = op.eval_derivative(k);
    if dp.norm() <= tol {
        return Err(Error::NotSimple {
            root: k,
            derivative_abs: dp.norm(),
            tolerance: tol,
        });
    }
    Ok(dp)
}

/// The `k`-mode `e^{kx}/P'(k) · ∫_{x_lo}^{x} e^{-kt} g(t) dt` for a simple
/// zero `k`. The lower limit fixes the integration constant.
pub fn particular_solution_simple<G: SmoothFunction + ?Sized>(
    op: &CharacteristicOperator,
    k: Complex64,
    g: &G,
    x_lo: f64,
    x: f64,
    tol: f64,
) -> Result<Complex64> {
    let dp = check_simple(op, k, tol)?;
    Ok(mode_integral(k, g, x_lo, x, tol)? / dp)
}

/// `∫_{x_lo}^{x} e^{k(x-t)} g(t) dt`.
fn mode_integral<G: SmoothFunction + ?Sized>(
    k: Complex64,
    g: &G,
    x_lo: f64,
    x: f64,
    tol: f64,
) -> Result<Complex64> {
    integrate(|t| (k * (x - t)).exp() * g.value(t), x_lo, x, tol)
}

/// `Σ_k f_k` over every root of `P`, which must all be simple.
#[derive(Debug)]
pub struct SuperposedSolution<'a, G: ?Sized> {
    op: &'a CharacteristicOperator,
    modes: Vec<(Complex64, Complex64)>,
    g: &'a G,
    x_lo: f64,
    tol: f64,
}

impl<'a, G: SmoothFunction + ?Sized> SuperposedSolution<'a, G> {
    pub fn new(op: &'a CharacteristicOperator, g: &'a G, x_lo: f64, tol: f64) -> Result<Self> {
        let roots = polynomial_roots(op, tol)?;
        if let Some(&(root, _)) = roots.roots.iter().find(|(_, m)| *m > 1) {
            return Err(Error::NotSimple {
                root,
                derivative_abs: op.eval_derivative(root).norm(),
                tolerance: tol,
            });
        }
        let modes = roots
            .roots
            .iter()
            .map(|&(k, _)| check_simple(op, k, tol).map(|dp| (k, dp)))
            .collect::<Result<_>>()?;
        Ok(SuperposedSolution {
            op,
            modes,
            g,
            x_lo,
            tol,
        })
    }

    pub fn roots(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.modes.iter().map(|(k, _)| *k)
    }

    /// `f^{(order)}(x)`, using
    /// `f_k^{(j)} = k^j f_k + (1/P'(k)) Σ_{i<j} k^{j-1-i} g^{(i)}`.
    pub fn try_derivative(&self, order: usize, x: f64) -> Result<Complex64> {
        let g_derivs: Vec<f64> = (0..order).map(|i| self.g.derivative(i, x)).collect();
        let mut total = Complex64::zero();
        for &(k, dp) in &self.modes {
            let f_k = mode_integral(k, self.g, self.x_lo, x, self.tol)? / dp;
            let mut value = k.powu(order as u32) * f_k;
            for (i, gi) in g_derivs.iter().enumerate() {
                value += k.powu((order - 1 - i) as u32) * *gi / dp;
            }
            total += value;
        }
        Ok(total)
    }

    /// `max_x |P(D) f - g|` over the sample points.
    pub fn residual(&self, sample_points: &[f64]) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for &x in sample_points {
            let derivs = (0..=self.op.degree())
                .map(|j| self.try_derivative(j, x))
                .collect::<Result<Vec<_>>>()?;
            let lhs = self.op.apply(&derivs);
            worst = worst.max((lhs - self.g.value(x)).norm());
        }
        Ok(worst)
    }
}

impl<G: SmoothFunction + ?Sized> SmoothFunction for SuperposedSolution<'_, G> {
    /// Real part; `NaN` if the quadrature fails.
    fn derivative(&self, order: usize, x: f64) -> f64 {
        self.try_derivative(order, x).map_or(f64::NAN, |v| v.re)
    }

    fn antiderivative(&self, _x: f64) -> f64 {
        f64::NAN
    }
}

/// `max_x |Σ a_j f^{(j)}(x) - g(x)|` for a real solution candidate `f`.
pub fn residual<F, G>(op: &CharacteristicOperator, f: &F, g: &G, sample_points: &[f64]) -> f64
where
    F: SmoothFunction + ?Sized,
    G: SmoothFunction + ?Sized,
{
    sample_points
        .iter()
        .map(|&x| {
            let derivs: Vec<Complex64> = (0..=op.degree())
                .map(|j| Complex64::new(f.derivative(j, x), 0.0))
                .collect();
            (op.apply(&derivs) - g.value(x)).norm()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::Forcing;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn reduction_of_simple_difference() {
        let a = reduce_difference_to_differential(&[q("-1"), q("1")], 5).unwrap();
        assert_eq!(
            a.coefficients,
            vec![q("0"), q("1"), q("1/2"), q("1/6"), q("1/24"), q("1/120")]
        );
        assert!(reduce_difference_to_differential(&[q("1")], 3).is_err());
        assert!(reduce_difference_to_differential(&[q("1"), q("-2"), q("1")], 1).is_err());
    }

    #[test]
    fn reduction_of_second_difference() {
        let a = reduce_difference_to_differential(&[q("1"), q("-2"), q("1")], 4).unwrap();
        assert_eq!(a.coefficients, vec![q("0"), q("0"), q("1"), q("1"), q("7/12")]);
    }

    #[test]
    fn truncated_expm1_has_a_root_near_zero() {
        let a = reduce_difference_to_differential(&[q("-1"), q("1")], 12).unwrap();
        let op = a.to_operator().unwrap();
        let roots = polynomial_roots(&op, 1e-10).unwrap();
        assert!(roots.roots.iter().any(|(r, _)| r.norm() < 1e-12));
        assert!(a.eval(c(0.0, 0.0)).norm() == 0.0);
    }

    #[test]
    fn simple_roots() {
        let r = polynomial_roots(&CharacteristicOperator::from_real(&[-1.0, 1.0]).unwrap(), 1e-10).unwrap();
        assert_eq!(r.roots, vec![(c(1.0, 0.0), 1)]);

        let r = polynomial_roots(&CharacteristicOperator::from_real(&[1.0, 0.0, 1.0]).unwrap(), 1e-10).unwrap();
        assert_eq!(r.roots.len(), 2);
        assert!((r.roots[0].0 - c(0.0, -1.0)).norm() < 1e-14);
        assert!((r.roots[1].0 - c(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn double_root_clusters() {
        let op = CharacteristicOperator::from_real(&[1.0, -2.0, 1.0]).unwrap();
        let r = polynomial_roots(&op, 1e-10).unwrap();
        assert_eq!(r.roots.len(), 1);
        assert_eq!(r.roots[0].1, 2);
        assert!((r.roots[0].0 - c(1.0, 0.0)).norm() < 1e-12, "{:?}", r.roots);
        assert!(!r.is_all_simple());
    }

    #[test]
    fn invalid_operators() {
        assert!(CharacteristicOperator::from_real(&[1.0]).is_err());
        assert!(CharacteristicOperator::from_real(&[1.0, 0.0]).is_err());
        assert!(CharacteristicOperator::from_real(&[f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn first_order_examples() {
        // f' - f = e^{2x}: from x_lo far left the mode gives f ≈ e^{2x}.
        let op = CharacteristicOperator::from_real(&[-1.0, 1.0]).unwrap();
        let g = Forcing::Exp(2.0);
        let f = particular_solution_simple(&op, c(1.0, 0.0), &g, -40.0, 0.5, 1e-12).unwrap();
        assert!((f.re - 1f64.exp()).abs() < 1e-10);

        // f' - f = 1 from x_lo = 0: f = -1 + e^x, i.e. the particular
        // solution -1 plus the homogeneous mode fixed by f(0) = 0.
        let g = Forcing::Constant(1.0);
        let f = particular_solution_simple(&op, c(1.0, 0.0), &g, 0.0, 2.0, 1e-12).unwrap();
        assert!((f.re - (-1.0 + 2f64.exp())).abs() < 1e-10);

        let sol = SuperposedSolution::new(&op, &g, 0.0, 1e-12).unwrap();
        assert!(sol.residual(&[0.5, 1.0, 3.0]).unwrap() < 1e-10);
    }

    #[test]
    fn second_order_polynomial_forcing() {
        // f'' - f = x has particular solution -x; with x_lo = 0 the
        // superposition differs from it by a homogeneous solution only.
        let op = CharacteristicOperator::from_real(&[-1.0, 0.0, 1.0]).unwrap();
        let g = Forcing::monomial(1);
        let sol = SuperposedSolution::new(&op, &g, 0.0, 1e-12).unwrap();
        assert!(sol.residual(&[0.3, 1.1, 2.0]).unwrap() < 1e-10);
        // At x_lo the integrals vanish, so f(0) = 0 and f'(0) = 0.
        assert!(sol.try_derivative(0, 0.0).unwrap().norm() < 1e-15);
        assert!(sol.try_derivative(1, 0.0).unwrap().norm() < 1e-15);
        // -x + sinh x is the solution with those initial conditions.
        let x: f64 = 1.5;
        assert!((sol.value(x) - (-x + x.sinh())).abs() < 1e-10);
    }

    #[test]
    fn residual_of_shifted_solution() {
        let op = CharacteristicOperator::from_real(&[-1.0, 1.0]).unwrap();
        // f = -1 solves f' - f = 1; f = 0 is off by exactly 1.
        let exact = Forcing::Constant(-1.0);
        let shifted = Forcing::Constant(0.0);
        let g = Forcing::Constant(1.0);
        assert_eq!(residual(&op, &exact, &g, &[0.0, 1.0, 5.0]), 0.0);
        assert_eq!(residual(&op, &shifted, &g, &[0.0, 1.0, 5.0]), 1.0);
    }

    #[test]
    fn log_forcing_residual() {
        let op = CharacteristicOperator::from_real(&[2.0, 3.0, 1.0]).unwrap();
        let g = Forcing::Log;
        let sol = SuperposedSolution::new(&op, &g, 1.0, 1e-10).unwrap();
        let pts: Vec<f64> = (1..=10).map(f64::from).collect();
        assert!(sol.residual(&pts).unwrap() <= 1e-8);
    }

    #[test]
    fn rejects_multiple_and_non_roots() {
        let op = CharacteristicOperator::from_real(&[1.0, -2.0, 1.0]).unwrap();
        let g = Forcing::Constant(1.0);
        assert!(matches!(
            particular_solution_simple(&op, c(1.0, 0.0), &g, 0.0, 1.0, 1e-10),
            Err(Error::NotSimple { .. })
        ));
        assert!(matches!(
            SuperposedSolution::new(&op, &g, 0.0, 1e-10),
            Err(Error::NotSimple { .. })
        ));
        let op = CharacteristicOperator::from_real(&[-1.0, 1.0]).unwrap();
        assert!(matches!(
            particular_solution_simple(&op, c(2.0, 0.0), &g, 0.0, 1.0, 1e-10),
            Err(Error::Domain(_))
        ));
    }
}
