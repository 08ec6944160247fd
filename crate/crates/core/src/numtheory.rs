//! Factorization and the arithmetic functions that size the divisor classes
//! of Γ(Z_n).

use alloc::vec::Vec;

use crate::{Error, Result};

/// Canonical prime factorization of `n ≥ 2`.
///
/// Primes are strictly increasing and every exponent is at least one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactoredInteger {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl FactoredInteger {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(prime, exponent)` pairs in ascending prime order.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// `Some((p, m))` when `n = p^m`.
    pub fn as_prime_power(&self) -> Option<(u64, u32)> {
        match self.factors.as_slice() {
            [single] => Some(*single),
            _ => None,
        }
    }

    pub fn is_square_free(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Product of the distinct primes.
    pub fn radical(&self) -> u64 {
        self.factors.iter().map(|&(p, _)| p).product()
    }

    pub fn euler_phi(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| p.pow(e - 1) * (p - 1))
            .product()
    }

    /// Number of positive divisors, `Π (n_i + 1)`.
    pub fn tau(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(_, e)| u64::from(e) + 1)
            .product()
    }

    /// All positive divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = alloc::vec![1u64];
        for &(p, e) in &self.factors {
            let current = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..current {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }

    /// Divisors `d` with `1 < d < n`, ascending. Empty for prime `n`.
    pub fn proper_divisors(&self) -> Vec<u64> {
        let mut divs = self.divisors();
        divs.retain(|&d| d != 1 && d != self.n);
        divs
    }

    /// `|A_d| = φ(n/d)`, the number of ring elements `x` with `gcd(x, n) = d`.
    pub fn class_size(&self, d: u64) -> Result<u64> {
        if d <= 1 || d >= self.n || !self.n.is_multiple_of(d) {
            return Err(Error::NotProperDivisor { n: self.n, d });
        }
        Ok(euler_phi(self.n / d))
    }
}

/// Trial division up to `√n`.
pub fn factorize(n: u64) -> Result<FactoredInteger> {
    if n < 2 {
        return Err(Error::ModulusTooSmall(n));
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(FactoredInteger { n, factors })
}

/// φ(n) for any `n ≥ 1`; φ(1) = 1.
pub fn euler_phi(n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    factorize(n).map(|f| f.euler_phi()).unwrap_or(0)
}

pub fn is_prime(n: u64) -> bool {
    factorize(n).map(|f| f.is_prime()).unwrap_or(false)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}
