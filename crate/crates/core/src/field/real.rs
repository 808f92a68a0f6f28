//! Certified real arithmetic on dyadic intervals, and real-root isolation
//! for squarefree integer polynomials.

use std::cmp::Ordering;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

/// A closed interval `[lo, hi] * 2^-prec` with integer endpoints.
///
/// Every operation rounds outward, so the exact result of the corresponding
/// real operation always lies inside the returned interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

fn floor_div_pow2(x: &BigInt, bits: u32) -> BigInt {
    x.div_floor(&(BigInt::one() << bits))
}

fn ceil_div_pow2(x: &BigInt, bits: u32) -> BigInt {
    -((-x).div_floor(&(BigInt::one() << bits)))
}

fn ceil_sqrt(x: &BigInt) -> BigInt {
    let r = x.sqrt();
    if &(&r * &r) == x {
        r
    } else {
        r + 1
    }
}

/// Convert `mantissa * 2^-prec` to the nearest-ish `f64`.
fn dyadic_to_f64(mantissa: &BigInt, prec: u32) -> f64 {
    let bits = mantissa.bits();
    if bits <= 60 {
        return mantissa.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-(prec as i32));
    }
    let shift = (bits - 60) as u32;
    let top = mantissa >> shift;
    top.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32 - prec as i32)
}

impl Interval {
    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        Self::from_bounds(q, q, prec)
    }

    /// Smallest dyadic interval at `prec` containing `[a, b]`.
    pub fn from_bounds(a: &BigRational, b: &BigRational, prec: u32) -> Self {
        let scale = BigInt::one() << prec;
        let lo = (a * &scale).floor().to_integer();
        let hi = (b * &scale).ceil().to_integer();
        Interval { lo, hi, prec }
    }

    pub fn from_integer(k: i64, prec: u32) -> Self {
        let v = BigInt::from(k) << prec;
        Interval { lo: v.clone(), hi: v, prec }
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn lower(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::one() << self.prec)
    }

    pub fn upper(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::one() << self.prec)
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lower() <= q && q <= &self.upper()
    }

    /// `Some(sign)` when the interval excludes zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    pub fn midpoint_f64(&self) -> f64 {
        dyadic_to_f64(&(&self.lo + &self.hi), self.prec + 1)
    }

    /// Strictly positive upper bound on the distance from the midpoint to
    /// either endpoint.
    pub fn radius_f64(&self) -> f64 {
        dyadic_to_f64(&(&self.hi - &self.lo + 1), self.prec + 1)
    }

    /// Largest absolute value of any point in the interval.
    pub fn magnitude_f64(&self) -> f64 {
        dyadic_to_f64(&self.lo.abs().max(self.hi.abs()), self.prec)
    }

    pub fn add(&self, other: &Interval) -> Interval {
        debug_assert_eq!(self.prec, other.prec);
        Interval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi, prec: self.prec }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        debug_assert_eq!(self.prec, other.prec);
        Interval { lo: &self.lo - &other.hi, hi: &self.hi - &other.lo, prec: self.prec }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo, prec: self.prec }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        debug_assert_eq!(self.prec, other.prec);
        let products = [&self.lo * &other.lo, &self.lo * &other.hi, &self.hi * &other.lo, &self.hi * &other.hi];
        let min = products.iter().min().expect("four products");
        let max = products.iter().max().expect("four products");
        Interval { lo: floor_div_pow2(min, self.prec), hi: ceil_div_pow2(max, self.prec), prec: self.prec }
    }

    pub fn mul_rational(&self, q: &BigRational) -> Interval {
        self.mul(&Interval::from_rational(q, self.prec))
    }

    /// Square root of a nonnegative interval; `None` if the interval
    /// reaches below zero.
    pub fn sqrt(&self) -> Option<Interval> {
        if self.lo.is_negative() {
            return None;
        }
        Some(Interval { lo: (&self.lo << self.prec).sqrt(), hi: ceil_sqrt(&(&self.hi << self.prec)), prec: self.prec })
    }

    /// Maximum distance from any point of the interval to `q`.
    pub fn max_deviation_from(&self, q: &BigRational) -> f64 {
        let a = (self.lower() - q).abs();
        let b = (self.upper() - q).abs();
        a.max(b).to_f64().unwrap_or(f64::INFINITY)
    }
}

/// Evaluate a rational polynomial (coefficients low to high) on an interval.
pub fn eval_poly_interval(coeffs: &[BigRational], x: &Interval) -> Interval {
    let prec = x.precision();
    let mut acc = Interval::from_integer(0, prec);
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).add(&Interval::from_rational(c, prec));
    }
    acc
}

fn eval_poly(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn poly_trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let lead = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() {
        let coef = r.last().expect("nonempty") / &lead;
        let shift = r.len() - b.len();
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &coef * bi;
        }
        r.pop();
        r = poly_trim(r);
    }
    r
}

fn sturm_sequence(poly: &[BigRational]) -> Vec<Vec<BigRational>> {
    let deriv: Vec<BigRational> =
        poly.iter().enumerate().skip(1).map(|(k, c)| c * BigRational::from_integer(BigInt::from(k))).collect();
    let mut seq = vec![poly.to_vec(), poly_trim(deriv)];
    loop {
        let n = seq.len();
        let r = poly_rem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    seq
}

fn sign_changes(seq: &[Vec<BigRational>], x: &BigRational) -> usize {
    let signs: Vec<bool> =
        seq.iter().map(|p| eval_poly(p, x)).filter(|v| !v.is_zero()).map(|v| v.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Isolating intervals `(a, b]` for the real roots of a squarefree integer
/// polynomial without rational roots, sorted in decreasing order.
pub fn isolate_real_roots(poly: &[BigInt]) -> Vec<(BigRational, BigRational)> {
    let q: Vec<BigRational> = poly.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let seq = sturm_sequence(&q);
    let lead = poly.last().expect("nonempty polynomial").abs();
    let bound = poly.iter().map(|c| BigRational::new(c.abs(), lead.clone())).max().unwrap_or_else(BigRational::zero)
        + BigRational::one();
    let mut stack = vec![(-bound.clone(), bound)];
    let mut out = Vec::new();
    while let Some((a, b)) = stack.pop() {
        let count = sign_changes(&seq, &a) - sign_changes(&seq, &b);
        match count {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                let mid = (&a + &b) / BigRational::from_integer(2.into());
                stack.push((a, mid.clone()));
                stack.push((mid, b));
            }
        }
    }
    out.sort_by(|x, y| y.0.cmp(&x.0));
    out
}

/// Shrink an isolating interval to width at most `2^-bits` by bisection.
pub fn refine_root(poly: &[BigInt], interval: &(BigRational, BigRational), bits: u32) -> (BigRational, BigRational) {
    let q: Vec<BigRational> = poly.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let (mut a, mut b) = interval.clone();
    let target = BigRational::new(BigInt::one(), BigInt::one() << bits);
    let sign_b = eval_poly(&q, &b).is_positive();
    let two = BigRational::from_integer(2.into());
    while &b - &a > target {
        let mid = (&a + &b) / &two;
        let v = eval_poly(&q, &mid);
        if v.is_zero() {
            return (mid.clone(), mid);
        }
        if v.is_positive() == sign_b {
            b = mid;
        } else {
            a = mid;
        }
    }
    (a, b)
}
