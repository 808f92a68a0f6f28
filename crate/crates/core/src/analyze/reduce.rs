//! Integral LLL reduction of a positive definite Gram matrix.
//!
//! All quantities are exact integers (the fraction-free Gram-Schmidt data
//! `d_i`, `lambda_ij`), so the output Gram matrix is exactly `H G H^T` for the
//! returned unimodular `H`.

use num::{BigInt, Integer, One, Signed, Zero};

use crate::error::{Error, Result};

/// Lovasz constant `delta = NUM / DEN`.
const DELTA_NUM: i64 = 99;
const DELTA_DEN: i64 = 100;

#[derive(Debug, Clone)]
pub struct Reduction {
    /// Reduced Gram `H G H^T`.
    pub gram: Vec<Vec<BigInt>>,
    /// Rows are the reduced basis vectors in terms of the input basis.
    pub transform: Vec<Vec<BigInt>>,
}

/// Nearest integer to `a / b` for `b > 0`, rounding halves up.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (a * &two + b).div_floor(&(b * &two))
}

struct State {
    n: usize,
    g: Vec<Vec<BigInt>>,
    h: Vec<Vec<BigInt>>,
    /// `d[0] = 1`, `d[i]` for basis vector `i - 1`.
    d: Vec<BigInt>,
    /// `lam[k][j]` for `j < k`, 0-based basis indices.
    lam: Vec<Vec<BigInt>>,
}

impl State {
    /// `b_k <- b_k - q b_l`.
    fn sub_row(&mut self, k: usize, l: usize, q: &BigInt) {
        for j in 0..self.n {
            let t = q * &self.h[l][j];
            self.h[k][j] -= t;
        }
        for j in 0..self.n {
            let t = q * &self.g[l][j];
            self.g[k][j] -= t;
        }
        for i in 0..self.n {
            let t = q * &self.g[i][l];
            self.g[i][k] -= t;
        }
    }

    fn red(&mut self, k: usize, l: usize) {
        let dl = self.d[l + 1].clone();
        if (&self.lam[k][l] * BigInt::from(2)).abs() > dl {
            let q = round_div(&self.lam[k][l], &dl);
            self.sub_row(k, l, &q);
            self.lam[k][l] -= &q * &dl;
            for i in 0..l {
                let t = &q * &self.lam[l][i];
                self.lam[k][i] -= t;
            }
        }
    }

    fn swap(&mut self, k: usize, kmax: usize) {
        self.h.swap(k, k - 1);
        self.g.swap(k, k - 1);
        for row in self.g.iter_mut() {
            row.swap(k, k - 1);
        }
        for j in 0..k - 1 {
            let t = std::mem::take(&mut self.lam[k][j]);
            self.lam[k][j] = std::mem::replace(&mut self.lam[k - 1][j], t);
        }
        let lam = self.lam[k][k - 1].clone();
        let (dkm2, dkm1, dk) = (self.d[k - 1].clone(), self.d[k].clone(), self.d[k + 1].clone());
        let b = (&dkm2 * &dk + &lam * &lam) / &dkm1;
        for i in k + 1..=kmax {
            let t = self.lam[i][k].clone();
            self.lam[i][k] = (&dk * &self.lam[i][k - 1] - &lam * &t) / &dkm1;
            self.lam[i][k - 1] = (&b * &t + &lam * &self.lam[i][k]) / &dk;
        }
        self.d[k] = b;
    }
}

/// LLL-reduce `gram` (symmetric positive definite).
pub fn lll_gram(gram: &[Vec<BigInt>]) -> Result<Reduction> {
    let n = gram.len();
    let identity =
        (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    if n == 0 {
        return Ok(Reduction { gram: Vec::new(), transform: identity });
    }
    if !gram[0][0].is_positive() {
        return Err(Error::NotPositiveDefinite);
    }
    let mut st = State {
        n,
        g: gram.to_vec(),
        h: identity,
        d: vec![BigInt::zero(); n + 1],
        lam: vec![vec![BigInt::zero(); n]; n],
    };
    st.d[0] = BigInt::one();
    st.d[1] = gram[0][0].clone();
    let (mut k, mut kmax) = (1usize, 0usize);
    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = st.g[k][j].clone();
                for i in 0..j {
                    u = (&st.d[i + 1] * &u - &st.lam[k][i] * &st.lam[j][i]) / &st.d[i];
                }
                if j < k {
                    st.lam[k][j] = u;
                } else {
                    if !u.is_positive() {
                        return Err(Error::NotPositiveDefinite);
                    }
                    st.d[k + 1] = u;
                }
            }
        }
        loop {
            st.red(k, k - 1);
            let lhs = &st.d[k + 1] * &st.d[k - 1] * DELTA_DEN;
            let rhs = &st.d[k] * &st.d[k] * DELTA_NUM - &st.lam[k][k - 1] * &st.lam[k][k - 1] * DELTA_DEN;
            if lhs < rhs {
                st.swap(k, kmax);
                if k > 1 {
                    k -= 1;
                }
            } else {
                break;
            }
        }
        for l in (0..k - 1).rev() {
            st.red(k, l);
        }
        k += 1;
    }
    Ok(Reduction { gram: st.g, transform: st.h })
}
