//! The negative Pell equation `x^2 - D y^2 = -1` via the continued fraction of `sqrt D`.

use num::integer::Roots;
use num::{BigInt, BigUint, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::is_perfect_square;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellSolution {
    pub d: u64,
    pub x: BigUint,
    pub y: BigUint,
}

impl PellSolution {
    /// `x^2 - D y^2` computed exactly.
    pub fn residue(&self) -> BigInt {
        let x = BigInt::from(self.x.clone());
        let y = BigInt::from(self.y.clone());
        &x * &x - BigInt::from(self.d) * &y * &y
    }
}

/// Partial quotients of one period of `sqrt D` (excluding `a_0`), plus `a_0`.
fn cf_period(d: u64) -> (u64, Vec<u64>) {
    let a0 = d.sqrt();
    let (mut m, mut den, mut a) = (0u64, 1u64, a0);
    let mut period = Vec::new();
    loop {
        m = den * a - m;
        den = (d - m * m) / den;
        a = (a0 + m) / den;
        period.push(a);
        if a == 2 * a0 {
            return (a0, period);
        }
    }
}

/// Whether `x^2 - D y^2 = -1` has an integer solution (odd period length).
pub fn negative_pell_solvable(d: u64) -> Result<bool> {
    check(d)?;
    Ok(cf_period(d).1.len() % 2 == 1)
}

fn check(d: u64) -> Result<()> {
    if d <= 1 {
        return Err(Error::InvalidParameter(format!("D = {d} must be > 1")));
    }
    if is_perfect_square(d) {
        return Err(Error::PerfectSquare(d));
    }
    if d > u64::from(u32::MAX) {
        return Err(Error::Overflow(format!("continued fraction for D = {d}")));
    }
    Ok(())
}

/// Fundamental solution of `x^2 - D y^2 = -1`, or `None` when the period of
/// `sqrt D` is even.
pub fn negative_pell(d: u64) -> Result<Option<PellSolution>> {
    check(d)?;
    let (a0, period) = cf_period(d);
    if period.len() % 2 == 0 {
        return Ok(None);
    }
    // convergent p_{L-1}/q_{L-1}
    let (mut p_prev, mut p) = (BigUint::one(), BigUint::from(a0));
    let (mut q_prev, mut q) = (BigUint::zero(), BigUint::one());
    for &a in &period[..period.len() - 1] {
        let p_next = &p * a + &p_prev;
        let q_next = &q * a + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
    let sol = PellSolution { d, x: p, y: q };
    debug_assert_eq!(sol.residue(), BigInt::from(-1));
    Ok(Some(sol))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(d: u64, ymax: u64) -> Option<(u64, u64)> {
        (1..=ymax).find_map(|y| {
            let t = d * y * y - 1;
            let x = t.sqrt();
            (x * x == t).then_some((x, y))
        })
    }

    #[test]
    fn examples() {
        let s = negative_pell(5).unwrap().unwrap();
        assert_eq!((s.x, s.y), (BigUint::from(2u32), BigUint::from(1u32)));
        let s = negative_pell(13).unwrap().unwrap();
        assert_eq!((s.x, s.y), (BigUint::from(18u32), BigUint::from(5u32)));
        assert!(negative_pell(3).unwrap().is_none());
        assert!(matches!(negative_pell(16), Err(Error::PerfectSquare(16))));
        assert_eq!(negative_pell(2).unwrap().unwrap().x, BigUint::from(1u32));
    }

    #[test]
    fn agrees_with_brute_force() {
        for d in 2..=200u64 {
            if is_perfect_square(d) {
                continue;
            }
            let cf = negative_pell(d).unwrap();
            let bf = brute(d, 10_000);
            assert_eq!(negative_pell_solvable(d).unwrap(), cf.is_some(), "D = {d}");
            match (cf, bf) {
                (Some(s), Some((x, y))) => {
                    assert_eq!(s.residue(), BigInt::from(-1));
                    assert_eq!((s.x, s.y), (BigUint::from(x), BigUint::from(y)), "D = {d}");
                }
                (Some(s), None) => {
                    // fundamental solution lies beyond the brute-force window
                    assert_eq!(s.residue(), BigInt::from(-1));
                    assert!(s.y > BigUint::from(10_000u32), "D = {d}");
                }
                (None, Some(_)) => panic!("missed solution for D = {d}"),
                (None, None) => {}
            }
        }
    }
}
