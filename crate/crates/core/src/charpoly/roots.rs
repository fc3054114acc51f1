//! All roots of a complex polynomial by Aberth–Ehrlich simultaneous
//! iteration, with Newton polishing and multiplicity clustering.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 500;

/// `(P(z), P'(z))` by Horner, coefficients ascending.
pub(crate) fn horner_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Simultaneous approximations to all `n` roots, unclustered.
pub(crate) fn aberth(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    if n == 1 {
        return Ok(vec![-monic[0]]);
    }

    // Fujiwara's bound on the root moduli sets the starting circle.
    let bound = (0..n)
        .map(|j| {
            let scale = if j == 0 { 0.5 } else { 1.0 };
            (scale * monic[j].norm()).powf(1.0 / (n - j) as f64)
        })
        .fold(0.0, f64::max)
        * 2.0;
    let radius = if bound > 0.0 { bound } else { 1.0 };
    let center = -monic[n - 1] / n as f64;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| center + Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + 0.4))
        .collect();

    let mut last_correction = f64::INFINITY;
    for sweep in 0..MAX_SWEEPS {
        let mut max_correction: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = horner_with_derivative(&monic, z[i]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d == Complex64::new(0.0, 0.0) {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let mut step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.is_finite() {
                step = if ratio.is_finite() { ratio } else { Complex64::new(1e-3, 1e-3) };
            }
            z[i] -= step;
            max_correction = max_correction.max(step.norm() / (1.0 + z[i].norm()));
        }
        last_correction = max_correction;
        if max_correction <= 4.0 * f64::EPSILON || (sweep > 50 && max_correction <= 1e-12) {
            return Ok(z);
        }
    }
    // Multiple roots stall near sqrt(eps) accuracy; accept if the
    // iteration has settled to that level.
    if last_correction <= 1e-6 {
        return Ok(z);
    }
    Err(Error::NoConvergence {
        iterations: MAX_SWEEPS,
        max_correction: last_correction,
        partial: z,
    })
}

/// Groups approximations whose spread is consistent with a root of
/// multiplicity `m`, i.e. within `tol^{1/m}` (relative to the root size).
pub(crate) fn cluster(roots: &[Complex64], tol: f64) -> Vec<(Complex64, usize)> {
    let mut clusters: Vec<(Complex64, Vec<Complex64>)> =
        roots.iter().map(|&r| (r, vec![r])).collect();
    loop {
        let mut best: Option<(usize, usize, f64)> = None;
        for i in 0..clusters.len() {
            for j in i + 1..clusters.len() {
                let d = (clusters[i].0 - clusters[j].0).norm();
                if best.is_none_or(|(_, _, b)| d < b) {
                    best = Some((i, j, d));
                }
            }
        }
        let Some((i, j, d)) = best else { break };
        let members = clusters[i].1.len() + clusters[j].1.len();
        let scale = clusters[i].0.norm().max(clusters[j].0.norm()).max(1.0);
        if d > tol.powf(1.0 / members as f64) * scale {
            break;
        }
        let (_, absorbed) = clusters.swap_remove(j);
        let target = &mut clusters[i];
        target.1.extend(absorbed);
        target.0 = target.1.iter().sum::<Complex64>() / target.1.len() as f64;
    }
    clusters.into_iter().map(|(c, m)| (c, m.len())).collect()
}

pub(crate) fn order_roots(a: &(Complex64, usize), b: &(Complex64, usize)) -> Ordering {
    a.0.re
        .total_cmp(&b.0.re)
        .then_with(|| a.0.im.total_cmp(&b.0.im))
}

/// A few Newton steps on the original polynomial, kept only if they lower
/// the residual.
pub(crate) fn polish(coeffs: &[Complex64], mut z: Complex64) -> Complex64 {
    for _ in 0..3 {
        let (p, dp) = horner_with_derivative(coeffs, z);
        if dp == Complex64::new(0.0, 0.0) {
            break;
        }
        let next = z - p / dp;
        let (pn, _) = horner_with_derivative(coeffs, next);
        if !(pn.norm() < p.norm()) {
            break;
        }
        z = next;
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cubic_roots() {
        // (z-1)(z-2)(z-3) = z^3 - 6z^2 + 11z - 6
        let coeffs = [c(-6.0, 0.0), c(11.0, 0.0), c(-6.0, 0.0), c(1.0, 0.0)];
        let mut roots = aberth(&coeffs).unwrap();
        roots.sort_by(|a, b| a.re.total_cmp(&b.re));
        for (r, want) in roots.iter().zip([1.0, 2.0, 3.0]) {
            assert!((r - c(want, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn clustering_merges_double_root() {
        let approx = [c(1.0 + 3e-9, 0.0), c(1.0 - 3e-9, 0.0), c(-2.0, 0.0)];
        let mut cl = cluster(&approx, 1e-10);
        cl.sort_by(order_roots);
        assert_eq!(cl.len(), 2);
        assert_eq!(cl[1].1, 2);
        assert!((cl[1].0 - c(1.0, 0.0)).norm() < 1e-15);
    }
}
