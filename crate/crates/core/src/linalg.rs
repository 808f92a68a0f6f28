//! Exact dense linear algebra over integral domains and fields.
//!
//! Determinants use Bareiss fraction-free elimination, so every division is
//! exact and no intermediate fractions appear when the entries are integers.

use num::{BigInt, BigRational, One, Signed, Zero};

/// Minimal exact-arithmetic interface shared by integers, rationals and
/// number-field elements.
pub trait Scalar: Clone {
    fn is_zero_value(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    /// Division that is known to be exact (Bareiss) or a field division.
    fn div_exact(&self, other: &Self) -> Self;
    fn neg_value(&self) -> Self;
}

impl Scalar for BigInt {
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn div_exact(&self, other: &Self) -> Self {
        debug_assert!((self % other).is_zero());
        self / other
    }
    fn neg_value(&self) -> Self {
        -self
    }
}

impl Scalar for BigRational {
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn neg_value(&self) -> Self {
        -self
    }
}

/// Determinant by Bareiss elimination with row pivoting.
///
/// Returns `None` for an empty matrix.
pub fn det<T: Scalar>(matrix: &[Vec<T>]) -> Option<T> {
    let n = matrix.len();
    let first = matrix.first()?.first()?.clone();
    let mut a: Vec<Vec<T>> = matrix.to_vec();
    let mut prev = first.one_like();
    let mut negate = false;
    for k in 0..n {
        if a[k][k].is_zero_value() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero_value()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Some(first.zero_like()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j].mul_ref(&a[k][k]).sub_ref(&a[i][k].mul_ref(&a[k][j]));
                a[i][j] = t.div_exact(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Some(if negate { d.neg_value() } else { d })
}

/// Leading principal minors `d_1, ..., d_n` by fraction-free elimination
/// without pivoting. Stops (returning the minors found so far) at the first
/// zero pivot.
pub fn leading_minors(matrix: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = matrix.len();
    let mut a = matrix.to_vec();
    let mut prev = BigInt::one();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        if a[k][k].is_zero() {
            out.push(BigInt::zero());
            return out;
        }
        out.push(a[k][k].clone());
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    out
}

/// Rank of a rational matrix (rows may have any count).
pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut a = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &pivot;
            for j in c..cols {
                let t = &f * &a[r][j];
                a[i][j] -= t;
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// Rank of an integer matrix.
pub fn rank_int(rows: &[Vec<i64>]) -> usize {
    let q: Vec<Vec<BigRational>> =
        rows.iter().map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    rank(&q)
}

/// Inverse of a square matrix over a field by Gauss-Jordan elimination.
pub fn inverse<T: Scalar>(matrix: &[Vec<T>]) -> Option<Vec<Vec<T>>> {
    let n = matrix.len();
    let proto = matrix.first()?.first()?.clone();
    let mut a: Vec<Vec<T>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { proto.one_like() } else { proto.zero_like() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero_value())?;
        a.swap(c, p);
        let pivot = a[c][c].clone();
        for j in 0..2 * n {
            a[c][j] = a[c][j].div_exact(&pivot);
        }
        for i in 0..n {
            if i == c || a[i][c].is_zero_value() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..2 * n {
                let t = f.mul_ref(&a[c][j]);
                a[i][j] = a[i][j].sub_ref(&t);
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// `x^T A` for a row vector and square matrix.
pub fn row_times<T: Scalar>(row: &[T], matrix: &[Vec<T>]) -> Vec<T> {
    let n = matrix.first().map_or(0, Vec::len);
    (0..n)
        .map(|j| row.iter().zip(matrix).fold(row[0].zero_like(), |acc, (x, r)| acc.add_ref(&x.mul_ref(&r[j]))))
        .collect()
}

/// Smallest positive integer `L` making `L * matrix` integral.
pub fn common_denominator(matrix: &[Vec<BigRational>]) -> BigInt {
    use num::Integer;
    matrix.iter().flatten().fold(BigInt::one(), |acc, q| acc.lcm(q.denom())).abs()
}
