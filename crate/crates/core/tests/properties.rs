use num_complex::Complex64;
use proptest::prelude::*;
use stirling_core::asymptotic::{
    corrected_expansion, discrepancy, factor_series_coefficients, optimal_truncation, stirling_terms,
};
use stirling_core::charpoly::{polynomial_roots, CharacteristicOperator};
use stirling_core::euler_maclaurin::{
    antidifference_polynomial, em_antidifference, em_sum, em_sum_polynomial, first_omitted_term,
};
use stirling_core::oracle::{lgamma_ref, sum_direct};
use stirling_core::oscillatory::mode_series;
use stirling_core::polynomial::RationalPolynomial;
use stirling_core::{Forcing, Rational};

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=20).prop_map(|(p, q)| Rational::new(p, q).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_antidifference_is_exact(
        coeffs in prop::collection::vec(rational(), 1..=6),
        xs in prop::collection::vec(rational(), 20),
    ) {
        let g = RationalPolynomial::new(coeffs);
        let order = g.degree().unwrap_or(0);
        let f = antidifference_polynomial(&g, order);
        for x in &xs {
            let step = f.eval(&(x + Rational::one())) - f.eval(x);
            prop_assert_eq!(step, g.eval(x));
        }
    }

    #[test]
    fn polynomial_sums_match_brute_force(
        coeffs in prop::collection::vec(-9i64..=9, 1..=5),
        a in -20i64..20,
        len in 0i64..40,
    ) {
        let g = RationalPolynomial::from_integers(&coeffs);
        let b = a + len;
        let exact: Rational = (a..=b).map(|k| g.eval(&Rational::from(k))).sum();
        prop_assert_eq!(em_sum_polynomial(&g, a, b, 4).unwrap(), exact);
    }

    #[test]
    fn discrepancy_is_half_log(x in 0.1f64..100.0) {
        prop_assert!((discrepancy(x).unwrap() - 0.5 * x.ln()).abs() <= 1e-14);
    }

    #[test]
    fn optimal_truncation_stops_at_first_minimum(
        terms in prop::collection::vec(prop_oneof![-1e3f64..-1e-6, 1e-6f64..1e3], 1..30),
    ) {
        let n = optimal_truncation(&terms);
        prop_assert!(n >= 1 && n <= terms.len());
        let m = terms[n - 1].abs();
        prop_assert!(terms.iter().all(|t| t.abs() >= m));
        prop_assert!(terms[..n - 1].iter().all(|t| t.abs() > m));
        // Invariant under scaling all terms and under appending larger ones.
        let scaled: Vec<f64> = terms.iter().map(|t| -4.0 * t).collect();
        prop_assert_eq!(optimal_truncation(&scaled), n);
        let mut longer = terms.clone();
        longer.push(2.0 * m + 1.0);
        prop_assert_eq!(optimal_truncation(&longer), n);
    }

    #[test]
    fn conjugate_modes(k in 1i64..40, x in 0.05f64..50.0, n_max in 1usize..12) {
        let plus = mode_series(k, x, n_max).unwrap();
        let minus = mode_series(-k, x, n_max).unwrap();
        prop_assert_eq!(minus.log_coefficient, plus.log_coefficient.conj());
        for (a, b) in plus.inverse_power_terms.iter().zip(&minus.inverse_power_terms) {
            prop_assert_eq!(*b, a.conj());
        }
        let pair = plus.value() + minus.value();
        prop_assert!(pair.im.abs() <= 1e-15 * pair.norm().max(f64::MIN_POSITIVE));
    }

    #[test]
    fn vieta_and_residuals(coeffs in prop::collection::vec(-10.0f64..10.0, 2..=9)) {
        let lead = *coeffs.last().unwrap();
        prop_assume!(lead.abs() > 1e-3);
        let op = CharacteristicOperator::from_real(&coeffs).unwrap();
        let n = op.degree();
        let tol = 1e-10;
        let roots = polynomial_roots(&op, tol).unwrap();
        prop_assert_eq!(roots.total_multiplicity(), n);
        let sum: Complex64 = roots.roots.iter().map(|(r, m)| r * *m as f64).sum();
        let want = -coeffs[n - 1] / lead;
        prop_assert!((sum.re - want).abs() <= 1e-9 * (1.0 + want.abs()), "{} vs {}", sum, want);
        prop_assert!(sum.im.abs() <= 1e-9 * (1.0 + want.abs()));
        for (r, m) in &roots.roots {
            prop_assert!(op.eval(*r).norm() <= tol * op.residual_scale(*r));
            if *m == 1 {
                prop_assert!(op.eval_derivative(*r).norm() > tol);
            }
        }
        let ordered = roots.roots.windows(2).all(|w| {
            (w[0].0.re, w[0].0.im) <= (w[1].0.re, w[1].0.im)
        });
        prop_assert!(ordered);
    }
}

#[test]
fn log_antidifference_step_within_first_omitted_term() {
    let g = Forcing::Log;
    for order in 2..=8 {
        for x in [5.0, 10.0, 20.0, 50.0] {
            let step = em_antidifference(&g, x + 1.0, order).unwrap() - em_antidifference(&g, x, order).unwrap();
            let bound = first_omitted_term(&g, x, order).unwrap();
            let err = (step - x.ln()).abs();
            assert!(err <= bound + 8.0 * f64::EPSILON * x * x.ln(), "order {order}, x {x}: {err:e} > {bound:e}");
        }
    }
}

#[test]
fn harmonic_sum_direct_vs_euler_maclaurin() {
    let direct = sum_direct(&Forcing::Reciprocal, 1, 1000).unwrap();
    assert!((direct - 7.485_470_860_550_345).abs() < 1e-14);
    // Starting the antidifference at 1 leaves an O(1/240) error, inside its bound.
    let plain = em_sum(&Forcing::Reciprocal, 1, 1000, 5).unwrap();
    assert!((plain - direct).abs() > 1e-4);
}

#[test]
fn stirling_terms_are_unimodal() {
    for x in [5.0, 6.5, 8.0, 10.0] {
        let terms = stirling_terms(x, 15).unwrap();
        let n = optimal_truncation(&terms);
        for w in terms[..n].windows(2) {
            assert!(w[1].abs() < w[0].abs());
        }
        for w in terms[n - 1..].windows(2) {
            assert!(w[1].abs() > w[0].abs());
        }
        assert!(terms.windows(2).all(|w| w[0] * w[1] < 0.0), "alternating signs");
    }
    // Beyond n ~ πx the terms grow: at x = 1 the minimum is the 4th term.
    let t = stirling_terms(1.0, 15).unwrap();
    assert_eq!(optimal_truncation(&t), 4);
    assert!(t[7].abs() > t[3].abs());
}

#[test]
fn corrected_series_against_oracle() {
    let mut last = f64::INFINITY;
    for x in [8.0, 10.0, 20.0, 50.0] {
        let e = corrected_expansion(x, 15).unwrap();
        let oracle = lgamma_ref(x).unwrap().value;
        assert!((e.value() - oracle).abs() <= e.error_estimate.max(1e-13), "x = {x}");
        assert!(e.error_estimate < last);
        last = e.error_estimate;
        // Adding the optimal term never hurts.
        let n = e.truncation_index;
        let with = (e.leading_part() + e.partial_sum(n) - oracle).abs();
        let without = (e.leading_part() + e.partial_sum(n - 1) - oracle).abs();
        assert!(with <= without, "x = {x}");
    }
}

#[test]
fn factor_series_matches_numeric_exponential() {
    let x = 50.0;
    let s: f64 = stirling_terms(x, 15).unwrap().iter().rev().sum();
    let numeric = s.exp();
    let c: Vec<f64> = factor_series_coefficients(10).unwrap().iter().map(Rational::to_f64).collect();
    let partial = |m: usize| c[..=m].iter().enumerate().rev().map(|(j, cj)| cj / x.powi(j as i32)).sum::<f64>();
    // With m = 3 the gap is the first omitted coefficient's size.
    let omitted = (c[4] / x.powi(4)).abs();
    assert!((numeric - partial(3)).abs() <= 2.0 * omitted);
    assert!((numeric - partial(8)).abs() <= 1e-15);
}
