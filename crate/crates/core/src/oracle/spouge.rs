//! Spouge's approximation with `a = 16`, evaluated in double-double
//! arithmetic so the alternating coefficient sum does not cancel away the
//! low digits.
//!
//! `Γ(z+1) = (z+a)^{z+1/2} e^{-(z+a)} [c_0 + Σ_{k=1}^{a-1} c_k/(z+k) + ε]`
//! with `c_0 = √(2π)`,
//! `c_k = (-1)^{k-1} (a-k)^{k-1/2} e^{a-k} / (k-1)!`, and relative error
//! `|ε| / (...) <= a^{-1/2} (2π)^{-(a+1/2)} ≈ 1.69e-14` for `Re z >= 0`.

/// Relative truncation bound for `a = 16`.
pub const TRUNCATION_BOUND: f64 = 1.690332651956345e-14;

/// `(hi, lo)` splits of `c_0..c_15`, generated at 60 significant digits.
const COEFFS: [(f64, f64); 16] = [
    (2.5066282746310007, -1.8328579980459167e-16),
    (12660849.842047213, 1.110690779107275e-10),
    (-62996264.84495575, -1.5552881520671898e-09),
    (134789682.35148957, -7.542609950414258e-09),
    (-162374151.1178822, -2.6046390495642465e-09),
    (121142112.424745, 5.32447001882294e-09),
    (-58044833.92948352, -3.042545091451085e-09),
    (17942962.606477458, -1.1448128930621585e-09),
    (-3508328.255616524, -4.5810006277424356e-11),
    (414833.85274781875, 2.469186274490826e-13),
    (-27443.57829254114, 5.145711034791958e-13),
    (893.0883458289978, -1.4988425747977407e-14),
    (-11.473927723495722, -6.41374287636975e-17),
    (0.0385977657114186, 3.0561841881394614e-18),
    (-1.3747179040868083e-05, 3.5071531909554734e-22),
    (3.11807193171853e-11, 1.3946147697814058e-27),
];

const A: f64 = 16.0;

#[derive(Debug, Clone, Copy, PartialEq)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        DoubleDouble { hi, lo }
    }

    fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = two_sum(s, e + t);
        DoubleDouble::new(s, e + f)
    }

    fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        DoubleDouble::new(p, e + self.lo * b)
    }

    fn div(self, o: Self) -> Self {
        let q1 = self.hi / o.hi;
        let r = self.add(o.mul_f64(-q1));
        let q2 = r.hi / o.hi;
        let r = r.add(o.mul_f64(-q2));
        let q3 = r.hi / o.hi;
        DoubleDouble::new(q1, q2).add(DoubleDouble::new(q3, 0.0))
    }
}

/// `log Γ(x)` for `x >= 1`, with an absolute error bound.
pub(super) fn ln_gamma(x: f64) -> (f64, f64) {
    debug_assert!(x >= 1.0);
    let z = x - 1.0;
    let mut series = DoubleDouble::new(COEFFS[0].0, COEFFS[0].1);
    for (k, &(hi, lo)) in COEFFS.iter().enumerate().skip(1) {
        let (d_hi, d_lo) = two_sum(z, k as f64);
        let term = DoubleDouble::new(hi, lo).div(DoubleDouble::new(d_hi, d_lo));
        series = series.add(term);
    }
    let ln_series = series.hi.ln() + series.lo / series.hi;
    let za = z + A;
    let power = (z + 0.5) * za.ln();
    let value = power - za + ln_series;

    let eps = f64::EPSILON;
    // ln and the product each cost an ulp of `power`, forming z + 1/2 half
    // an ulp; the remaining additions an ulp of their own magnitudes.
    let rounding = eps * (3.0 * power.abs() + za.abs() + ln_series.abs() + value.abs());
    // -ln(1 - δ) <= δ / (1 - δ)
    let truncation = TRUNCATION_BOUND / (1.0 - TRUNCATION_BOUND);
    (value, truncation + rounding)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_double_division() {
        let one = DoubleDouble::new(1.0, 0.0);
        let three = DoubleDouble::new(3.0, 0.0);
        let q = one.div(three).mul_f64(3.0);
        assert_eq!(q.hi, 1.0);
        assert!(q.lo.abs() < 1e-31);
    }

    #[test]
    fn integer_points() {
        // Γ(1) = Γ(2) = 1
        for x in [1.0, 2.0] {
            let (v, err) = ln_gamma(x);
            assert!(v.abs() <= err, "{x}: {v} vs {err}");
        }
    }
}
