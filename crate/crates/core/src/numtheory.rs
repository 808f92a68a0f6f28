//! Integer helpers: squarefree tests, 2-adic valuation, small prime sieves.

use num::integer::Roots;

use crate::error::{Error, Result};

/// Outcome of factoring `n` by trial division.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquarefreeInfo {
    pub is_squarefree: bool,
    /// `n` with every factor of 2 removed.
    pub odd_part: u64,
    /// Smallest prime `p` with `p^2 | n`, if any.
    pub square_factor: Option<u64>,
}

/// Trial-division squarefree test, also returning the odd part of `n`.
pub fn squarefree_and_odd_part(n: u64) -> Result<SquarefreeInfo> {
    if n == 0 {
        return Err(Error::InvalidParameter("squarefree test needs n >= 1".into()));
    }
    let odd_part = n >> n.trailing_zeros();
    let square_factor = smallest_square_factor(n);
    Ok(SquarefreeInfo { is_squarefree: square_factor.is_none(), odd_part, square_factor })
}

/// Smallest prime whose square divides `n`.
pub fn smallest_square_factor(mut n: u64) -> Option<u64> {
    let mut p = 2u64;
    while p.checked_mul(p).is_some_and(|sq| sq <= n) {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return Some(p);
            }
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    None
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.checked_mul(p).is_some_and(|sq| sq <= n) {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_squarefree(n: u64) -> bool {
    n > 0 && smallest_square_factor(n).is_none()
}

pub fn is_perfect_square(n: u64) -> bool {
    let r = n.sqrt();
    r * r == n
}

/// 2-adic valuation; `v2(0)` is reported as 64.
pub fn v2(n: u64) -> u32 {
    n.trailing_zeros()
}

/// Primes up to and including `limit`.
pub fn primes_up_to(limit: usize) -> Vec<usize> {
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for p in 2..=limit {
        if composite[p] {
            continue;
        }
        primes.push(p);
        let mut q = p * p;
        while q <= limit {
            composite[q] = true;
            q += p;
        }
    }
    primes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_examples() {
        let info = squarefree_and_odd_part(416).unwrap();
        assert!(!info.is_squarefree);
        assert_eq!(info.odd_part, 13);
        assert_eq!(info.square_factor, Some(2));

        let info = squarefree_and_odd_part(5).unwrap();
        assert!(info.is_squarefree);
        assert_eq!(info.odd_part, 5);

        let info = squarefree_and_odd_part(20).unwrap();
        assert!(!info.is_squarefree);
        assert_eq!(info.odd_part, 5);

        // 160 = 2^5 * 5
        let info = squarefree_and_odd_part(160).unwrap();
        assert!(is_squarefree(info.odd_part));
    }

    #[test]
    fn zero_rejected() {
        assert!(squarefree_and_odd_part(0).is_err());
    }

    #[test]
    fn square_factors() {
        assert_eq!(smallest_square_factor(12), Some(2));
        assert_eq!(smallest_square_factor(50), Some(5));
        assert_eq!(smallest_square_factor(125), Some(5));
        assert_eq!(smallest_square_factor(30), None);
        assert_eq!(smallest_square_factor(1), None);
        // large prime squared
        assert_eq!(smallest_square_factor(999_983 * 999_983), Some(999_983));
    }

    #[test]
    fn factors_and_sieve() {
        assert_eq!(prime_factors(416), vec![2, 13]);
        assert_eq!(prime_factors(97), vec![97]);
        assert_eq!(primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(v2(20), 2);
        assert!(is_perfect_square(144));
        assert!(!is_perfect_square(145));
    }
}
