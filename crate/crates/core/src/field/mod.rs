//! Exact arithmetic in real quadratic fields `Q(sqrt D)` and simplest quartic
//! fields `F_m = Q(r)`, `r` the largest root of `x^4 - m x^3 - 6 x^2 + m x + 1`.
//!
//! Elements are stored as rational coordinate vectors over the power basis
//! `1, b, ..., b^(n-1)` of the defining generator (`sqrt D` or `r`). The ring
//! of integers is described by a rational change of basis.

pub mod pell;
pub mod real;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::numtheory;
use real::Interval;

/// Lowest precision accepted for embeddings.
pub const MIN_PRECISION_BITS: u32 = 64;
/// Start and cap of the precision-doubling loop used for sign decisions.
pub const SIGN_START_BITS: u32 = 128;
pub const SIGN_MAX_BITS: u32 = 4096;

const GUARD_BITS: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    Quadratic,
    SimplestQuartic,
}

struct FieldData {
    kind: FieldKind,
    parameter: u64,
    /// Monic defining polynomial, coefficients from the constant term up.
    min_poly: Vec<BigInt>,
    disc: BigInt,
    index: u64,
    delta: Option<u64>,
    integral_basis: Vec<Vec<BigRational>>,
    /// Maps power-basis coordinates (row vector) to integral-basis coordinates.
    to_integral: Vec<Vec<BigRational>>,
    /// `Tr(b^k)` for `k < n`.
    power_traces: Vec<BigRational>,
    root_intervals: Vec<(BigRational, BigRational)>,
    root_cache: Mutex<HashMap<u32, Vec<Interval>>>,
}

/// A real quadratic or simplest quartic number field.
///
/// Cheap to clone; all clones share one immutable descriptor.
#[derive(Clone)]
pub struct RealField(Arc<FieldData>);

impl PartialEq for RealField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.kind == other.0.kind && self.0.parameter == other.0.parameter)
    }
}

impl Eq for RealField {}

impl fmt::Debug for RealField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl RealField {
    /// `Q(sqrt D)` for squarefree `D > 1`.
    pub fn quadratic(d: u64) -> Result<RealField> {
        if d <= 1 {
            return Err(Error::InvalidParameter(format!("D = {d} must be > 1")));
        }
        if let Some(p) = numtheory::smallest_square_factor(d) {
            return Err(Error::NotSquarefree { value: d, square_factor: p });
        }
        let di = i64::try_from(d).map_err(|_| Error::Overflow(format!("D = {d}")))?;
        let (disc, omega) = if d % 4 == 1 {
            (BigInt::from(d), vec![rat(1, 2), rat(1, 2)])
        } else {
            (BigInt::from(d) * 4, vec![int(0), int(1)])
        };
        let min_poly = vec![BigInt::from(-di), BigInt::zero(), BigInt::one()];
        Self::build(FieldKind::Quadratic, d, min_poly, disc, 1, None, vec![vec![int(1), int(0)], omega])
    }

    /// The simplest quartic field `F_m`, `m >= 1`, `m != 3`, with the odd part
    /// of `m^2 + 16` squarefree.
    pub fn simplest_quartic(m: u64) -> Result<RealField> {
        if m == 0 || m == 3 {
            return Err(Error::InvalidParameter(format!("m = {m} is excluded")));
        }
        let delta = m
            .checked_mul(m)
            .and_then(|x| x.checked_add(16))
            .ok_or_else(|| Error::Overflow(format!("m^2 + 16 for m = {m}")))?;
        let info = numtheory::squarefree_and_odd_part(delta)?;
        if let Some(p) = numtheory::smallest_square_factor(info.odd_part) {
            return Err(Error::NotSquarefree { value: info.odd_part, square_factor: p });
        }
        let mi = i64::try_from(m).map_err(|_| Error::Overflow(format!("m = {m}")))?;
        let min_poly: Vec<BigInt> = [1, mi, -6, -mi, 1].iter().map(|&c| BigInt::from(c)).collect();
        let basis = match numtheory::v2(m) {
            0 => vec![
                vec![int(1), int(0), int(0), int(0)],
                vec![int(0), int(1), int(0), int(0)],
                vec![int(0), int(0), int(1), int(0)],
                vec![rat(1, 2), int(0), int(0), rat(1, 2)],
            ],
            1 => vec![
                vec![int(1), int(0), int(0), int(0)],
                vec![int(0), int(1), int(0), int(0)],
                vec![rat(1, 2), int(0), rat(1, 2), int(0)],
                vec![int(0), rat(1, 2), int(0), rat(1, 2)],
            ],
            2 => vec![
                vec![int(1), int(0), int(0), int(0)],
                vec![int(0), int(1), int(0), int(0)],
                vec![rat(1, 2), int(0), rat(1, 2), int(0)],
                vec![rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)],
            ],
            _ => vec![
                vec![int(1), int(0), int(0), int(0)],
                vec![int(0), int(1), int(0), int(0)],
                vec![rat(1, 4), rat(1, 2), rat(-1, 4), int(0)],
                vec![rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)],
            ],
        };
        // index = 1 / |det(basis)|
        let det = linalg::det(&basis).expect("4x4 basis").abs();
        let index_q = det.recip();
        if !index_q.is_integer() {
            return Err(Error::InvalidParameter(format!("non-integral index for m = {m}")));
        }
        let index = index_q.to_integer().to_u64().ok_or_else(|| Error::Overflow("index".into()))?;
        let poly_disc = BigInt::from(4) * BigInt::from(delta).pow(3);
        let idx2 = BigInt::from(index * index);
        if !(&poly_disc % &idx2).is_zero() {
            return Err(Error::InvalidParameter(format!("index^2 does not divide disc(f) for m = {m}")));
        }
        Self::build(FieldKind::SimplestQuartic, m, min_poly, poly_disc / idx2, index, Some(delta), basis)
    }

    fn build(
        kind: FieldKind,
        parameter: u64,
        min_poly: Vec<BigInt>,
        disc: BigInt,
        index: u64,
        delta: Option<u64>,
        integral_basis: Vec<Vec<BigRational>>,
    ) -> Result<RealField> {
        let to_integral = linalg::inverse(&integral_basis).ok_or(Error::DependentGenerators)?;
        let root_intervals = real::isolate_real_roots(&min_poly);
        let n = min_poly.len() - 1;
        if root_intervals.len() != n {
            return Err(Error::InvalidParameter("defining polynomial is not totally real".into()));
        }
        let mut field = RealField(Arc::new(FieldData {
            kind,
            parameter,
            min_poly,
            disc,
            index,
            delta,
            integral_basis,
            to_integral,
            power_traces: Vec::new(),
            root_intervals,
            root_cache: Mutex::new(HashMap::new()),
        }));
        let traces: Vec<BigRational> = (0..n)
            .map(|k| {
                let x = field.generator_power(k);
                x.multiplication_matrix().iter().enumerate().map(|(i, row)| row[i].clone()).sum()
            })
            .collect();
        Arc::get_mut(&mut field.0).expect("unique during construction").power_traces = traces;
        Ok(field)
    }

    pub fn kind(&self) -> FieldKind {
        self.0.kind
    }

    /// `D` for quadratic fields, `m` for simplest quartic fields.
    pub fn parameter(&self) -> u64 {
        self.0.parameter
    }

    pub fn degree(&self) -> usize {
        self.0.min_poly.len() - 1
    }

    pub fn min_poly(&self) -> &[BigInt] {
        &self.0.min_poly
    }

    /// Field discriminant `d_F`.
    pub fn discriminant(&self) -> &BigInt {
        &self.0.disc
    }

    /// `[Z_F : Z[b]]` for the generator used by [`RealField::different_generator`].
    pub fn index(&self) -> u64 {
        self.0.index
    }

    /// `m^2 + 16` for quartic fields.
    pub fn delta(&self) -> Option<u64> {
        self.0.delta
    }

    pub fn name(&self) -> String {
        match self.0.kind {
            FieldKind::Quadratic => format!("Q(sqrt {})", self.0.parameter),
            FieldKind::SimplestQuartic => format!("F_{}", self.0.parameter),
        }
    }

    pub fn element(&self, coords: Vec<BigRational>) -> FieldElement {
        assert_eq!(coords.len(), self.degree(), "coordinate count must equal the degree");
        FieldElement { field: self.clone(), coords }
    }

    pub fn from_ints(&self, coords: &[i64]) -> FieldElement {
        self.element(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn from_rational(&self, q: BigRational) -> FieldElement {
        let mut coords = vec![BigRational::zero(); self.degree()];
        coords[0] = q;
        self.element(coords)
    }

    pub fn zero(&self) -> FieldElement {
        self.from_rational(BigRational::zero())
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(BigRational::one())
    }

    /// The power-basis generator (`sqrt D` or `r`).
    pub fn generator(&self) -> FieldElement {
        self.generator_power(1)
    }

    fn generator_power(&self, k: usize) -> FieldElement {
        let n = self.degree();
        if k < n {
            let mut coords = vec![BigRational::zero(); n];
            coords[k] = BigRational::one();
            self.element(coords)
        } else {
            let g = self.generator_power(1);
            let mut acc = self.one();
            for _ in 0..k {
                acc = &acc * &g;
            }
            acc
        }
    }

    /// Integral basis elements of `Z_F`.
    pub fn integral_basis(&self) -> Vec<FieldElement> {
        self.0.integral_basis.iter().map(|c| self.element(c.clone())).collect()
    }

    /// `f'(b)` for a generator `b` of index [`RealField::index`]; its norm is
    /// `+-index^2 d_F`.
    ///
    /// Quadratic fields use `(1 + sqrt D)/2` when `D = 1 (mod 4)` (so the
    /// result is `sqrt D`) and `sqrt D` otherwise (result `2 sqrt D`).
    pub fn different_generator(&self) -> FieldElement {
        match self.0.kind {
            FieldKind::Quadratic => {
                let c = if self.0.parameter % 4 == 1 { 1 } else { 2 };
                self.from_ints(&[0, c])
            }
            FieldKind::SimplestQuartic => {
                let m = self.0.parameter as i64;
                self.from_ints(&[m, -12, -3 * m, 4])
            }
        }
    }

    /// The Galois conjugate `(r - 1)/(r + 1)` of the quartic generator.
    pub fn quartic_sigma_generator(&self) -> Option<FieldElement> {
        (self.0.kind == FieldKind::SimplestQuartic).then(|| {
            let r = self.generator();
            let num = &r - &self.one();
            let den = &r + &self.one();
            &num * &den.inverse().expect("r + 1 != 0")
        })
    }

    /// Real roots of the defining polynomial, in decreasing order, enclosed
    /// at `prec` bits.
    fn root_enclosures(&self, prec: u32) -> Vec<Interval> {
        if let Some(v) = self.0.root_cache.lock().expect("root cache").get(&prec) {
            return v.clone();
        }
        let v: Vec<Interval> = self
            .0
            .root_intervals
            .iter()
            .map(|iv| {
                let (a, b) = real::refine_root(&self.0.min_poly, iv, prec + 2);
                Interval::from_bounds(&a, &b, prec)
            })
            .collect();
        self.0.root_cache.lock().expect("root cache").insert(prec, v.clone());
        v
    }

    fn check_same(&self, other: &RealField) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }
}

/// An element of a [`RealField`], exact rational coordinates over the power basis.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: RealField,
    coords: Vec<BigRational>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = match self.field.kind() {
            FieldKind::Quadratic => "s",
            FieldKind::SimplestQuartic => "r",
        };
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*{g}")?,
                _ => write!(f, "({c})*{g}^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Arithmetic operations accepted by [`field_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Inv,
    Neg,
}

/// Checked arithmetic entry point; binary operations require `b`.
pub fn field_arith(op: FieldOp, a: &FieldElement, b: Option<&FieldElement>) -> Result<FieldElement> {
    let rhs = || -> Result<&FieldElement> {
        let b = b.ok_or_else(|| Error::InvalidParameter(format!("{op:?} needs two operands")))?;
        a.field.check_same(&b.field)?;
        Ok(b)
    };
    match op {
        FieldOp::Add => Ok(a + rhs()?),
        FieldOp::Sub => Ok(a - rhs()?),
        FieldOp::Mul => Ok(a * rhs()?),
        FieldOp::Neg => Ok(-a),
        FieldOp::Inv => a.inverse(),
    }
}

impl FieldElement {
    pub fn field(&self) -> &RealField {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn scale(&self, q: &BigRational) -> FieldElement {
        self.field.element(self.coords.iter().map(|c| c * q).collect())
    }

    /// Matrix of multiplication by `self`; column `j` holds `self * b^j`.
    pub fn multiplication_matrix(&self) -> Vec<Vec<BigRational>> {
        let n = self.field.degree();
        let mut cols = Vec::with_capacity(n);
        let mut cur = self.clone();
        let g = self.field.generator_power(1);
        for _ in 0..n {
            cols.push(cur.coords.clone());
            cur = &cur * &g;
        }
        (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
    }

    pub fn trace(&self) -> BigRational {
        self.coords.iter().zip(&self.field.0.power_traces).map(|(c, t)| c * t).sum()
    }

    pub fn norm(&self) -> BigRational {
        linalg::det(&self.multiplication_matrix()).expect("nonempty")
    }

    pub fn inverse(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = linalg::inverse(&self.multiplication_matrix()).ok_or(Error::DivisionByZero)?;
        // first column of M^-1 solves M y = e_0
        Ok(self.field.element(inv.iter().map(|row| row[0].clone()).collect()))
    }

    pub fn pow(&self, e: i32) -> Result<FieldElement> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = self.field.one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Coordinates with respect to the integral basis.
    pub fn integral_coords(&self) -> Vec<BigRational> {
        linalg::row_times(&self.coords, &self.field.0.to_integral)
    }

    /// Membership in `Z_F`.
    pub fn is_algebraic_integer(&self) -> bool {
        self.integral_coords().iter().all(|c| c.is_integer())
    }

    /// All real embeddings, ordered by decreasing generator image.
    pub fn embeddings(&self, precision_bits: u32) -> Result<EmbeddingVector> {
        if precision_bits < MIN_PRECISION_BITS {
            return Err(Error::PrecisionTooLow { requested: precision_bits, minimum: MIN_PRECISION_BITS });
        }
        Ok(EmbeddingVector { values: self.embedding_intervals(precision_bits), precision_bits })
    }

    pub(crate) fn embedding_intervals(&self, precision_bits: u32) -> Vec<Interval> {
        let work = precision_bits + GUARD_BITS;
        self.field.root_enclosures(work).iter().map(|root| real::eval_poly_interval(&self.coords, root)).collect()
    }

    /// `true` iff every real embedding is positive.
    pub fn is_totally_positive(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::InvalidParameter("total positivity of 0".into()));
        }
        if self.field.kind() == FieldKind::Quadratic {
            // a + b sqrt D >> 0  <=>  a > 0 and a^2 > b^2 D
            let a = &self.coords[0];
            let b = &self.coords[1];
            let d = int(self.field.parameter() as i64);
            return Ok(a.is_positive() && a * a > b * b * d);
        }
        let mut prec = SIGN_START_BITS;
        while prec <= SIGN_MAX_BITS {
            let values = self.embedding_intervals(prec);
            if let Some(signs) = values.iter().map(Interval::sign).collect::<Option<Vec<_>>>() {
                return Ok(signs.iter().all(|s| s.is_gt()));
            }
            prec *= 2;
        }
        Err(Error::BudgetExceeded(format!("sign of {self} unresolved at {SIGN_MAX_BITS} bits")))
    }

    /// Embedding signs, resolved by precision doubling.
    pub fn embedding_signs(&self) -> Result<Vec<bool>> {
        if self.is_zero() {
            return Err(Error::InvalidParameter("signs of 0".into()));
        }
        let mut prec = SIGN_START_BITS;
        while prec <= SIGN_MAX_BITS {
            let values = self.embedding_intervals(prec);
            if let Some(signs) = values.iter().map(Interval::sign).collect::<Option<Vec<_>>>() {
                return Ok(signs.iter().map(|s| s.is_gt()).collect());
            }
            prec *= 2;
        }
        Err(Error::BudgetExceeded(format!("signs of {self} unresolved at {SIGN_MAX_BITS} bits")))
    }

    /// Coordinates formatted as reduced fractions.
    pub fn coord_strings(&self) -> Vec<String> {
        self.coords.iter().map(ToString::to_string).collect()
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        assert!(self.field == rhs.field, "field mismatch");
        self.field.element(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        assert!(self.field == rhs.field, "field mismatch");
        self.field.element(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect())
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        assert!(self.field == rhs.field, "field mismatch");
        let n = self.coords.len();
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        // monic reduction: b^n = -sum_{i<n} p_i b^i
        let poly = &self.field.0.min_poly;
        for k in (n..2 * n - 1).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for (i, p) in poly.iter().take(n).enumerate() {
                if !p.is_zero() {
                    prod[k - n + i] -= &c * BigRational::from_integer(p.clone());
                }
            }
        }
        prod.truncate(n);
        self.field.element(prod)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.field.element(self.coords.iter().map(|c| -c).collect())
    }
}

impl linalg::Scalar for FieldElement {
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
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
        self * &other.inverse().expect("nonzero divisor")
    }
    fn neg_value(&self) -> Self {
        -self
    }
}

/// Certified enclosures of all real embeddings of one element.
#[derive(Debug, Clone)]
pub struct EmbeddingVector {
    values: Vec<Interval>,
    precision_bits: u32,
}

impl EmbeddingVector {
    pub fn values(&self) -> &[Interval] {
        &self.values
    }

    pub fn midpoints(&self) -> Vec<f64> {
        self.values.iter().map(Interval::midpoint_f64).collect()
    }

    /// Shared absolute error radius; always strictly positive.
    pub fn error_radius(&self) -> f64 {
        self.values.iter().map(Interval::radius_f64).fold(0.0, f64::max)
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }
}

/// Largest real root of `f_m` in radicals,
/// `(m + sqrt Delta)/4 + sqrt((Delta + m sqrt Delta)/8)`.
pub fn simplest_quartic_largest_root(m: u64) -> f64 {
    let m = m as f64;
    let delta = m * m + 16.0;
    let sd = delta.sqrt();
    (m + sd) / 4.0 + ((delta + m * sd) / 8.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_element(field: &RealField, rng: &mut ChaCha8Rng) -> FieldElement {
        field.element(
            (0..field.degree())
                .map(|_| BigRational::new(rng.gen_range(-20i64..=20).into(), rng.gen_range(1i64..=6).into()))
                .collect(),
        )
    }

    fn test_fields() -> Vec<RealField> {
        vec![
            RealField::quadratic(5).unwrap(),
            RealField::quadratic(2).unwrap(),
            RealField::quadratic(13).unwrap(),
            RealField::simplest_quartic(6).unwrap(),
            RealField::simplest_quartic(20).unwrap(),
        ]
    }

    #[test]
    fn make_quadratic_examples() {
        let f = RealField::quadratic(5).unwrap();
        assert_eq!(f.discriminant(), &BigInt::from(5));
        assert_eq!(f.integral_basis()[1].coords(), &[rat(1, 2), rat(1, 2)]);
        let f = RealField::quadratic(2).unwrap();
        assert_eq!(f.discriminant(), &BigInt::from(8));
        assert_eq!(f.integral_basis()[1].coords(), &[int(0), int(1)]);
        match RealField::quadratic(12) {
            Err(Error::NotSquarefree { square_factor, .. }) => assert_eq!(square_factor, 2),
            other => panic!("expected squarefree error, got {other:?}", other = other.map(|f| f.name())),
        }
        assert!(RealField::quadratic(1).is_err());
    }

    #[test]
    fn make_quartic_examples() {
        let f = RealField::simplest_quartic(20).unwrap();
        assert_eq!(f.delta(), Some(416));
        assert_eq!(f.index(), 8);
        // 4 * 416^3 / 64
        assert_eq!(f.discriminant(), &BigInt::from(4_499_456u64));
        let f = RealField::simplest_quartic(6).unwrap();
        assert_eq!(f.index(), 4);
        assert_eq!(f.integral_basis()[2].coords(), &[rat(1, 2), int(0), rat(1, 2), int(0)]);
        assert_eq!(f.integral_basis()[3].coords(), &[int(0), rat(1, 2), int(0), rat(1, 2)]);
        let f = RealField::simplest_quartic(12).unwrap();
        assert_eq!(numtheory::v2(12), 2);
        assert_eq!(f.index(), 8);
        assert!(RealField::simplest_quartic(3).is_err());
        // 28^2 + 16 = 800 = 2^5 * 5^2
        assert!(matches!(RealField::simplest_quartic(28), Err(Error::NotSquarefree { .. })));
    }

    #[test]
    fn index_from_case_list() {
        // odd m: (1 + r^3)/2 is integral, so Z[r] has index 2
        assert_eq!(RealField::simplest_quartic(1).unwrap().index(), 2);
        assert_eq!(RealField::simplest_quartic(1).unwrap().discriminant(), &BigInt::from(4913));
        assert_eq!(RealField::simplest_quartic(2).unwrap().index(), 4);
        assert_eq!(RealField::simplest_quartic(4).unwrap().index(), 8);
        assert_eq!(RealField::simplest_quartic(8).unwrap().index(), 16);
    }

    #[test]
    fn arithmetic_examples() {
        let f = RealField::quadratic(5).unwrap();
        let s = f.generator();
        assert_eq!(&s * &s, f.from_ints(&[5, 0]));
        let eps = f.element(vec![rat(1, 2), rat(1, 2)]);
        let inv = eps.inverse().unwrap();
        // oracle: (1+s)/2 * (a + b s) = 1 gives a = -1/2, b = 1/2
        assert_eq!(inv, f.element(vec![rat(-1, 2), rat(1, 2)]));
        assert_eq!(&eps * &inv, f.one());

        let q = RealField::simplest_quartic(20).unwrap();
        let r = q.generator();
        let r4 = &(&r * &r) * &(&r * &r);
        assert_eq!(r4, q.from_ints(&[-1, -20, 6, 20]));

        assert!(matches!(f.zero().inverse(), Err(Error::DivisionByZero)));
        let other = RealField::quadratic(2).unwrap().one();
        assert!(matches!(field_arith(FieldOp::Add, &eps, Some(&other)), Err(Error::FieldMismatch)));
        assert_eq!(field_arith(FieldOp::Neg, &eps, None).unwrap(), -&eps);
    }

    #[test]
    fn trace_norm_examples() {
        let f = RealField::quadratic(5).unwrap();
        let w = f.element(vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(w.trace(), int(1));
        assert_eq!(w.norm(), int(-1));
        for d in [2u64, 3, 5, 7, 13] {
            let f = RealField::quadratic(d).unwrap();
            assert_eq!(f.generator().norm(), int(-(d as i64)));
        }
        let q = RealField::simplest_quartic(20).unwrap();
        assert_eq!(q.generator().norm(), int(1));
    }

    #[test]
    fn different_generator_norms() {
        for f in test_fields() {
            let fp = f.different_generator();
            let expect = BigRational::from_integer(BigInt::from(f.index() * f.index()) * f.discriminant());
            assert_eq!(fp.norm().abs(), expect, "{}", f.name());
        }
        let f = RealField::quadratic(5).unwrap();
        assert_eq!(f.different_generator(), f.generator());
        let q = RealField::simplest_quartic(20).unwrap();
        assert_eq!(
            q.different_generator().norm().abs(),
            BigRational::from_integer(BigInt::from(64) * q.discriminant())
        );
        let q = RealField::simplest_quartic(6).unwrap();
        assert_eq!(
            q.different_generator().norm().abs(),
            BigRational::from_integer(BigInt::from(16) * q.discriminant())
        );
    }

    #[test]
    fn integral_basis_trace_form() {
        for f in test_fields().into_iter().chain([RealField::simplest_quartic(1).unwrap()]) {
            let basis = f.integral_basis();
            for b in &basis {
                assert!(b.is_algebraic_integer());
            }
            let gram: Vec<Vec<BigRational>> =
                basis.iter().map(|a| basis.iter().map(|b| (a * b).trace()).collect()).collect();
            assert!(gram.iter().flatten().all(|x| x.is_integer()));
            let d = linalg::det(&gram).unwrap();
            assert_eq!(d.abs(), BigRational::from_integer(f.discriminant().clone()), "{}", f.name());
        }
    }

    #[test]
    fn embeddings_examples() {
        let f = RealField::quadratic(5).unwrap();
        let e = f.generator().embeddings(128).unwrap();
        let mids = e.midpoints();
        assert!((mids[0] - 5f64.sqrt()).abs() < 1e-15);
        assert!((mids[1] + 5f64.sqrt()).abs() < 1e-15);
        assert!(e.error_radius() > 0.0);
        assert!(matches!(f.generator().embeddings(32), Err(Error::PrecisionTooLow { .. })));

        let q = RealField::simplest_quartic(20).unwrap();
        let e = q.generator().embeddings(128).unwrap();
        let closed = simplest_quartic_largest_root(20);
        assert!((e.midpoints()[0] - closed).abs() < 1e-12 * closed);

        // sigma(r) = (r - 1)/(r + 1) is again a root of f_m
        let sigma = q.quartic_sigma_generator().unwrap();
        let poly_at_sigma = {
            let s2 = &sigma * &sigma;
            let s3 = &s2 * &sigma;
            let s4 = &s3 * &sigma;
            let mut acc = &s4 - &s3.scale(&int(20));
            acc = &acc - &s2.scale(&int(6));
            acc = &acc + &sigma.scale(&int(20));
            &acc + &q.one()
        };
        assert!(poly_at_sigma.is_zero());
    }

    #[test]
    fn radius_shrinks_with_precision() {
        let q = RealField::simplest_quartic(6).unwrap();
        let x = q.from_ints(&[1, -2, 3, 1]);
        let r128 = x.embeddings(128).unwrap().error_radius();
        let r256 = x.embeddings(256).unwrap().error_radius();
        assert!(r256 < r128);
    }

    #[test]
    fn total_positivity_examples() {
        let f = RealField::quadratic(5).unwrap();
        assert!(f.element(vec![int(1), rat(-2, 5)]).is_totally_positive().unwrap());
        assert!(!f.generator().is_totally_positive().unwrap());
        assert!(f.one().is_totally_positive().unwrap());
        assert!(f.zero().is_totally_positive().is_err());
    }

    #[test]
    fn random_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for f in test_fields() {
            for _ in 0..200 {
                let a = random_element(&f, &mut rng);
                let b = random_element(&f, &mut rng);
                let c = random_element(&f, &mut rng);
                assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            }
            for _ in 0..30 {
                let a = random_element(&f, &mut rng);
                let b = random_element(&f, &mut rng);
                assert_eq!((&a * &b).norm(), a.norm() * b.norm());
                assert_eq!((&a + &b).trace(), a.trace() + b.trace());
                if !a.is_zero() {
                    assert_eq!(&a * &a.inverse().unwrap(), f.one());
                }
            }
        }
    }

    #[test]
    fn embeddings_agree_with_trace_norm_and_signs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for f in test_fields() {
            for _ in 0..100 {
                let x = random_element(&f, &mut rng);
                if x.is_zero() {
                    continue;
                }
                let e = x.embeddings(256).unwrap();
                let sum: f64 = e.midpoints().iter().sum();
                let prod: f64 = e.midpoints().iter().product();
                let tr = x.trace().to_f64().unwrap();
                let nm = x.norm().to_f64().unwrap();
                let n = f.degree() as f64;
                assert!((sum - tr).abs() <= n * e.error_radius() + 1e-9 * tr.abs().max(1.0));
                assert!((prod - nm).abs() <= 1e-9 * nm.abs().max(1.0));
                let signs_pos = e.values().iter().all(|v| v.sign().is_some_and(|s| s.is_gt()));
                assert_eq!(x.is_totally_positive().unwrap(), signs_pos);
            }
        }
    }
}
