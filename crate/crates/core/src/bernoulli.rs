//! Exact Bernoulli numbers and the closed form of ζ at even integers.
//!
//! The convention is `B_1 = -1/2`, so that `z/(e^z - 1) = Σ B_n z^n / n!`.

use std::sync::RwLock;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::error::{domain, Result};
use crate::rational::Rational;

/// Exact `B_0..=B_{n_max}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    /// Builds the table through index `n_max` with the defining recurrence
    /// `Σ_{j=0}^{m} C(m+1, j) B_j = 0`.
    pub fn new(n_max: usize) -> Self {
        let mut table = BernoulliTable { values: Vec::new() };
        table.extend_to(n_max);
        table
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> Option<&Rational> {
        self.values.get(n)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    fn extend_to(&mut self, n_max: usize) {
        if self.values.is_empty() {
            self.values.push(Rational::one());
        }
        for m in self.values.len()..=n_max {
            let b = if m >= 3 && m % 2 == 1 {
                Rational::zero()
            } else {
                // Row m+1 of Pascal's triangle, walked alongside j.
                let mut acc = Rational::zero();
                let mut c = BigUint::one();
                for (j, bj) in self.values.iter().enumerate().take(m) {
                    if !(j >= 3 && j % 2 == 1) {
                        acc += &(Rational::from(c.clone()) * bj);
                    }
                    c = c * BigUint::from(m + 1 - j) / BigUint::from(j + 1);
                }
                -acc * Rational::new(1, BigInt::from(m + 1)).expect("m+1 > 0")
            };
            self.values.push(b);
        }
    }
}

static MEMO: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

/// Exact `B_n`, memoized process-wide.
pub fn bernoulli(n: usize) -> Rational {
    if let Some(b) = MEMO.read().expect("bernoulli memo poisoned").get(n) {
        return b.clone();
    }
    let mut memo = MEMO.write().expect("bernoulli memo poisoned");
    if memo.len() <= n {
        let mut table = BernoulliTable {
            values: std::mem::take(&mut *memo),
        };
        // Grow geometrically so a sweep over n is not quadratic in rebuilds.
        table.extend_to(n.max(2 * table.values.len()).max(32));
        *memo = table.values;
    }
    memo[n].clone()
}

/// Exact `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> Result<BigUint> {
    if k > n {
        return domain(format!("binomial({n}, {k}) requires k <= n"));
    }
    let k = k.min(n - k);
    let mut c = BigUint::one();
    for i in 0..k {
        c = c * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    Ok(c)
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// The rational `q` with `ζ(2n) = q·π^{2n}`:
/// `q = (-1)^{n-1} 2^{2n} B_{2n} / (2 (2n)!)`.
pub fn zeta_even_coefficient(n: usize) -> Result<Rational> {
    if n == 0 {
        return domain("zeta_even_coefficient requires n >= 1");
    }
    let b = bernoulli(2 * n);
    let two_pow = BigInt::one() << (2 * n);
    let denom = BigInt::from(factorial(2 * n as u64)) * 2;
    let q = b * Rational::new(two_pow, denom).expect("nonzero denominator");
    Ok(if n.is_multiple_of(2) { -q } else { q })
}
