//! 1-factorizations of complete graphs K_n, n even.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::algorithms::check_perfect_matching;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorizationError {
    #[error("K_{0} has no 1-factorization: the order must be even and at least 2")]
    BadOrder(usize),
    #[error("the translation factorization needs a power of two, got {0}")]
    NotPowerOfTwo(usize),
    #[error("factor {factor} is not a perfect matching: {reason}")]
    NotAFactor { factor: usize, reason: String },
    #[error("edge {0:?} appears in two factors")]
    SharedEdge((usize, usize)),
    #[error("{found} edges covered, K_n has {expected}")]
    Incomplete { found: usize, expected: usize },
}

/// n−1 pairwise edge-disjoint perfect matchings of K_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneFactorization {
    pub n: usize,
    pub factors: Vec<Vec<(usize, usize)>>,
}

impl OneFactorization {
    /// Checks that every factor is perfect, factors are disjoint and cover K_n.
    pub fn validate(&self) -> Result<(), FactorizationError> {
        let vertices: Vec<usize> = (0..self.n).collect();
        let mut seen = BTreeSet::new();
        for (i, factor) in self.factors.iter().enumerate() {
            check_perfect_matching(factor, &vertices)
                .map_err(|d| FactorizationError::NotAFactor { factor: i, reason: d.to_string() })?;
            for &(a, b) in factor {
                let e = (a.min(b), a.max(b));
                if !seen.insert(e) {
                    return Err(FactorizationError::SharedEdge(e));
                }
            }
        }
        let expected = self.n * (self.n - 1) / 2;
        if seen.len() != expected || self.factors.len() != self.n - 1 {
            return Err(FactorizationError::Incomplete { found: seen.len(), expected });
        }
        Ok(())
    }
}

/// Round-robin factorization: vertex n−1 fixed, factor r pairs n−1 with r
/// and r+i with r−i (mod n−1).
pub fn one_factorize(n: usize) -> Result<OneFactorization, FactorizationError> {
    if n < 2 || n % 2 == 1 {
        return Err(FactorizationError::BadOrder(n));
    }
    let m = n - 1;
    let factors = (0..m)
        .map(|r| {
            let mut f = vec![(m, r)];
            f.extend((1..=(n - 2) / 2).map(|i| ((r + i) % m, (r + m - i) % m)));
            f
        })
        .collect();
    Ok(OneFactorization { n, factors })
}

/// Factorization of K_n, n = 2^k, by translations of (Z_2)^k: factor d−1
/// pairs h with h XOR d.
pub fn translation_factorize(n: usize) -> Result<OneFactorization, FactorizationError> {
    if n < 2 || !n.is_power_of_two() {
        return Err(FactorizationError::NotPowerOfTwo(n));
    }
    let factors = (1..n)
        .map(|d| (0..n).filter(|&h| h < h ^ d).map(|h| (h, h ^ d)).collect())
        .collect();
    Ok(OneFactorization { n, factors })
}
