//! Fincke-Pohst enumeration of short vectors of an integral Gram matrix.
//!
//! Floating-point Cholesky data only prunes the search tree, with a safety
//! margin; every reported norm is computed exactly in `i128`.

use std::time::Instant;

use crate::error::{Error, Result};

/// Enumeration engine for one positive definite integral Gram matrix.
#[derive(Debug, Clone)]
pub struct Enumerator {
    n: usize,
    gram: Vec<Vec<i64>>,
    /// `q[i][i]` and `q[i][j]` (j > i) of `x^T G x = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2`.
    q: Vec<Vec<f64>>,
}

const CHECK_EVERY: u64 = 1 << 16;

impl Enumerator {
    pub fn new(gram: &[Vec<i64>]) -> Result<Self> {
        let n = gram.len();
        let mut q: Vec<Vec<f64>> = gram.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
        for i in 0..n {
            for j in 0..i {
                let t = q[j][i];
                q[i][j] = t;
            }
        }
        // in-place decomposition, upper triangle
        for i in 0..n {
            for j in i + 1..n {
                q[j][i] = q[i][j];
                q[i][j] /= q[i][i];
            }
            for k in i + 1..n {
                for l in k..n {
                    let t = q[k][i] * q[i][l];
                    q[k][l] -= t;
                }
            }
            if q[i][i].is_nan() || q[i][i] <= 0.0 {
                return Err(Error::NotPositiveDefinite);
            }
        }
        Ok(Enumerator { n, gram: gram.to_vec(), q })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Calls `visit(x, norm)` once for each pair `+-x` of nonzero vectors with
    /// `x^T G x <= bound`; the representative has its last nonzero
    /// coordinate positive.
    pub fn for_each<F: FnMut(&[i64], i64)>(&self, bound: i64, deadline: Option<Instant>, mut visit: F) -> Result<()> {
        let n = self.n;
        if n == 0 || bound <= 0 {
            return Ok(());
        }
        let slack = 1e-6 * (1.0 + bound as f64);
        let boundf = bound as f64 + slack;
        let mut x = vec![0i64; n];
        // float partial sums and exact partial norms, indexed by level
        let mut rem = vec![0f64; n + 1];
        let mut center = vec![0f64; n];
        let mut exact = vec![0i128; n + 1];
        let mut cross = vec![0i128; n];
        let mut upper = vec![0i64; n];
        // all coordinates above level i are zero
        let mut top_zero = vec![true; n + 1];
        rem[n] = boundf;
        let mut visited = 0u64;

        let setup = |i: usize,
                     x: &[i64],
                     rem: &[f64],
                     center: &mut [f64],
                     cross: &mut [i128],
                     upper: &mut [i64],
                     top_zero: &[bool]|
         -> i64 {
            let mut c = 0.0;
            let mut s = 0i128;
            for j in i + 1..n {
                c -= self.q[i][j] * x[j] as f64;
                s += i128::from(self.gram[i][j]) * i128::from(x[j]);
            }
            center[i] = c;
            cross[i] = s;
            let r = (rem[i + 1].max(0.0) / self.q[i][i]).sqrt();
            upper[i] = (c + r + 1e-9).floor() as i64;
            let lo = (c - r - 1e-9).ceil() as i64;
            if top_zero[i + 1] {
                lo.max(0)
            } else {
                lo
            }
        };

        let mut i = n - 1;
        x[i] = setup(i, &x, &rem, &mut center, &mut cross, &mut upper, &top_zero);
        loop {
            if x[i] > upper[i] {
                // climb
                i += 1;
                if i == n {
                    return Ok(());
                }
                x[i] += 1;
                continue;
            }
            let diff = x[i] as f64 - center[i];
            let used = self.q[i][i] * diff * diff;
            let xi = i128::from(x[i]);
            exact[i] = exact[i + 1] + xi * (i128::from(self.gram[i][i]) * xi + 2 * cross[i]);
            if i == 0 {
                visited += 1;
                if x.iter().any(|&v| v != 0) && exact[0] <= i128::from(bound) {
                    visit(&x, exact[0] as i64);
                }
                if visited.is_multiple_of(CHECK_EVERY) {
                    if let Some(d) = deadline {
                        if Instant::now() > d {
                            return Err(Error::BudgetExceeded("enumeration time budget exhausted".into()));
                        }
                    }
                }
                x[0] += 1;
                continue;
            }
            rem[i] = rem[i + 1] - used;
            top_zero[i] = top_zero[i + 1] && x[i] == 0;
            i -= 1;
            x[i] = setup(i, &x, &rem, &mut center, &mut cross, &mut upper, &top_zero);
        }
    }

    /// Number of pairs `+-x` at each norm `0..=bound` (index 0 unused).
    pub fn count_pairs(&self, bound: i64, deadline: Option<Instant>) -> Result<Vec<u64>> {
        let mut counts = vec![0u64; bound.max(0) as usize + 1];
        self.for_each(bound, deadline, |_, norm| counts[norm as usize] += 1)?;
        Ok(counts)
    }
}

/// Exhaustive minimum of `x^T G x` over nonzero `x` with entries in `[-box, box]`.
pub fn brute_force_min(gram: &[Vec<i64>], box_size: i64, budget: u64) -> Result<i64> {
    let n = gram.len();
    if box_size <= 0 {
        return Err(Error::InvalidParameter("box must be at least 1".into()));
    }
    let side = 2 * box_size as u64 + 1;
    let total = (0..n).try_fold(1u64, |acc, _| acc.checked_mul(side));
    if total.is_none_or(|t| t > budget) {
        return Err(Error::BudgetExceeded(format!("{side}^{n} coefficient vectors exceed the budget of {budget}")));
    }
    let mut x = vec![-box_size; n];
    let mut best = i128::MAX;
    loop {
        if x.iter().any(|&v| v != 0) {
            let mut s = 0i128;
            for a in 0..n {
                let mut row = 0i128;
                for b in 0..n {
                    row += i128::from(gram[a][b]) * i128::from(x[b]);
                }
                s += row * i128::from(x[a]);
            }
            best = best.min(s);
        }
        // odometer
        let mut k = 0;
        loop {
            if k == n {
                return i64::try_from(best).map_err(|_| Error::Overflow("minimum".into()));
            }
            if x[k] < box_size {
                x[k] += 1;
                break;
            }
            x[k] = -box_size;
            k += 1;
        }
    }
}
