//! The definite quaternion algebra `(-1, -1 / F)`: `i^2 = j^2 = -1`, `ij = -ji = k`.

pub mod order;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldElement, RealField};

pub use order::{
    algebra_discriminant, algebra_discriminant_for_degree, is_maximal, is_order, maximal_order, order_disc_norm,
    IdealNormDescriptor, OrderProvenance, QuaternionOrder,
};

/// `x + y i + z j + t k` with coefficients in a [`RealField`].
#[derive(Clone, PartialEq, Eq)]
pub struct QuaternionElement {
    pub x: FieldElement,
    pub y: FieldElement,
    pub z: FieldElement,
    pub t: FieldElement,
}

impl fmt::Debug for QuaternionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}; {}; {}; {}]", self.x, self.y, self.z, self.t)
    }
}

impl QuaternionElement {
    pub fn new(x: FieldElement, y: FieldElement, z: FieldElement, t: FieldElement) -> Self {
        assert!(
            x.field() == y.field() && y.field() == z.field() && z.field() == t.field(),
            "quaternion coefficients from different fields"
        );
        QuaternionElement { x, y, z, t }
    }

    pub fn from_coords(coords: [FieldElement; 4]) -> Self {
        let [x, y, z, t] = coords;
        Self::new(x, y, z, t)
    }

    /// Embeds a field element as a scalar quaternion.
    pub fn scalar(a: FieldElement) -> Self {
        let zero = a.field().zero();
        Self::new(a, zero.clone(), zero.clone(), zero)
    }

    pub fn one(field: &RealField) -> Self {
        Self::scalar(field.one())
    }

    pub fn i(field: &RealField) -> Self {
        let (o, z) = (field.one(), field.zero());
        Self::new(z.clone(), o, z.clone(), z)
    }

    pub fn j(field: &RealField) -> Self {
        let (o, z) = (field.one(), field.zero());
        Self::new(z.clone(), z.clone(), o, z)
    }

    pub fn k(field: &RealField) -> Self {
        let (o, z) = (field.one(), field.zero());
        Self::new(z.clone(), z.clone(), z, o)
    }

    pub fn field(&self) -> &RealField {
        self.x.field()
    }

    pub fn coords(&self) -> [&FieldElement; 4] {
        [&self.x, &self.y, &self.z, &self.t]
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|c| c.is_zero())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.x.clone(), -&self.y, -&self.z, -&self.t)
    }

    /// `Tr_B(q) = q + conj(q) = 2x`.
    pub fn reduced_trace(&self) -> FieldElement {
        &self.x + &self.x
    }

    /// `Nm_B(q) = q conj(q) = x^2 + y^2 + z^2 + t^2`.
    pub fn reduced_norm(&self) -> FieldElement {
        self.coords().iter().fold(self.field().zero(), |acc, c| &acc + &(*c * *c))
    }

    /// Left multiplication by a field scalar.
    pub fn scale(&self, a: &FieldElement) -> Self {
        Self::new(a * &self.x, a * &self.y, a * &self.z, a * &self.t)
    }
}

/// Checked product; rejects operands over different fields.
pub fn quat_mul(a: &QuaternionElement, b: &QuaternionElement) -> Result<QuaternionElement> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(a * b)
}

impl<'a> Mul<&'a QuaternionElement> for &'a QuaternionElement {
    type Output = QuaternionElement;
    fn mul(self, b: &QuaternionElement) -> QuaternionElement {
        let a = self;
        let p = |u: &FieldElement, v: &FieldElement| u * v;
        let x = &(&(&p(&a.x, &b.x) - &p(&a.y, &b.y)) - &p(&a.z, &b.z)) - &p(&a.t, &b.t);
        let y = &(&(&p(&a.x, &b.y) + &p(&a.y, &b.x)) + &p(&a.z, &b.t)) - &p(&a.t, &b.z);
        let z = &(&(&p(&a.x, &b.z) - &p(&a.y, &b.t)) + &p(&a.z, &b.x)) + &p(&a.t, &b.y);
        let t = &(&(&p(&a.x, &b.t) + &p(&a.y, &b.z)) - &p(&a.z, &b.y)) + &p(&a.t, &b.x);
        QuaternionElement::new(x, y, z, t)
    }
}

impl<'a> Add<&'a QuaternionElement> for &'a QuaternionElement {
    type Output = QuaternionElement;
    fn add(self, b: &QuaternionElement) -> QuaternionElement {
        QuaternionElement::new(&self.x + &b.x, &self.y + &b.y, &self.z + &b.z, &self.t + &b.t)
    }
}

impl<'a> Sub<&'a QuaternionElement> for &'a QuaternionElement {
    type Output = QuaternionElement;
    fn sub(self, b: &QuaternionElement) -> QuaternionElement {
        QuaternionElement::new(&self.x - &b.x, &self.y - &b.y, &self.z - &b.z, &self.t - &b.t)
    }
}

impl Neg for &QuaternionElement {
    type Output = QuaternionElement;
    fn neg(self) -> QuaternionElement {
        QuaternionElement::new(-&self.x, -&self.y, -&self.z, -&self.t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_q(f: &RealField, rng: &mut ChaCha8Rng) -> QuaternionElement {
        let mut c = || {
            f.element(
                (0..f.degree())
                    .map(|_| BigRational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=4).into()))
                    .collect(),
            )
        };
        QuaternionElement::new(c(), c(), c(), c())
    }

    #[test]
    fn table() {
        let f = RealField::quadratic(5).unwrap();
        let (one, i, j, k) =
            (QuaternionElement::one(&f), QuaternionElement::i(&f), QuaternionElement::j(&f), QuaternionElement::k(&f));
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &i, -&k);
        assert_eq!(&i * &i, -&one);
        assert_eq!(&k * &k, -&one);
        assert_eq!(&j * &k, i);
        assert_eq!(&k * &i, j);
        let a = &one + &i;
        let b = &one - &i;
        assert_eq!(&a * &b, QuaternionElement::scalar(f.from_ints(&[2, 0])));
    }

    #[test]
    fn trace_norm_examples() {
        let f = RealField::quadratic(2).unwrap();
        let h = {
            let o = f.one();
            QuaternionElement::new(o.clone(), o.clone(), o.clone(), o)
        };
        assert_eq!(h.reduced_norm(), f.from_ints(&[4, 0]));
        let half = h.scale(&f.element(vec![BigRational::new(1.into(), 2.into()), BigRational::from_integer(0.into())]));
        assert_eq!(half.reduced_trace(), f.one());
        let other = RealField::quadratic(3).unwrap();
        assert!(matches!(quat_mul(&h, &QuaternionElement::one(&other)), Err(Error::FieldMismatch)));
    }

    #[test]
    fn random_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for f in [RealField::quadratic(13).unwrap(), RealField::simplest_quartic(6).unwrap()] {
            for _ in 0..100 {
                let a = random_q(&f, &mut rng);
                let b = random_q(&f, &mut rng);
                let c = random_q(&f, &mut rng);
                assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                assert_eq!((&a * &b).reduced_norm(), &a.reduced_norm() * &b.reduced_norm());
                assert_eq!(a.conj().conj(), a);
                assert_eq!((&a * &b).conj(), &b.conj() * &a.conj());
                assert_eq!(&a + &a.conj(), QuaternionElement::scalar(a.reduced_trace()));
                assert_eq!(&a * &a.conj(), QuaternionElement::scalar(a.reduced_norm()));
            }
        }
    }
}
