//! Orders in `(-1, -1 / F)`, their discriminants, and the explicit maximal orders.

use num::{BigInt, BigRational, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::QuaternionElement;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldKind, RealField};
use crate::linalg;

/// Absolute norm of an ideal of `Z_F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IdealNormDescriptor {
    pub value: u64,
}

/// Which explicit construction produced an order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderProvenance {
    /// `D = 3 (mod 4)`: `1, i, (sqrt D i + j)/2, (sqrt D + k)/2`.
    ThreeModFour,
    /// `D = 1 (mod 8)`: `1, i, j, (1 + i + j + k)/2`.
    OneModEight,
    /// `D = 5 (mod 8)`.
    FiveModEight,
    /// `D = 2`: `1, (1 + i)/sqrt 2, (1 + j)/sqrt 2, (1 + i + j + k)/2`.
    Two,
    /// `D = 2 (mod 4)`, `D > 2`: `1, i, (sqrt D + i + j)/2, (-1 + sqrt D i + k)/2`.
    TwoModFour,
    /// Simplest quartic, `m` even.
    SimplestQuartic,
    /// Supplied by the caller.
    Custom,
}

#[derive(Debug, Clone)]
pub struct QuaternionOrder {
    field: RealField,
    generators: Vec<QuaternionElement>,
    provenance: OrderProvenance,
    /// Inverse of the 4x4 coordinate matrix of the generators.
    inverse: Vec<Vec<FieldElement>>,
}

fn coordinate_matrix(basis: &[QuaternionElement]) -> Vec<Vec<FieldElement>> {
    basis.iter().map(|q| q.coords().iter().map(|c| (*c).clone()).collect()).collect()
}

impl QuaternionOrder {
    /// Validates `generators` with [`is_order`] and wraps them.
    pub fn new(generators: Vec<QuaternionElement>, provenance: OrderProvenance) -> Result<Self> {
        if !is_order(&generators)? {
            return Err(Error::NotAnOrder(format!("{provenance:?} generators")));
        }
        Self::new_unchecked(generators, provenance)
    }

    fn new_unchecked(generators: Vec<QuaternionElement>, provenance: OrderProvenance) -> Result<Self> {
        let field = generators[0].field().clone();
        let inverse = linalg::inverse(&coordinate_matrix(&generators)).ok_or(Error::DependentGenerators)?;
        Ok(QuaternionOrder { field, generators, provenance, inverse })
    }

    pub fn field(&self) -> &RealField {
        &self.field
    }

    pub fn generators(&self) -> &[QuaternionElement] {
        &self.generators
    }

    pub fn provenance(&self) -> OrderProvenance {
        self.provenance
    }

    /// Coordinates of `q` with respect to the generators, over `F`.
    pub fn coordinates(&self, q: &QuaternionElement) -> Vec<FieldElement> {
        let row: Vec<FieldElement> = q.coords().iter().map(|c| (*c).clone()).collect();
        linalg::row_times(&row, &self.inverse)
    }

    pub fn contains(&self, q: &QuaternionElement) -> bool {
        self.coordinates(q).iter().all(FieldElement::is_algebraic_integer)
    }
}

/// Checks that `basis` spans an order over `Z_F`: contains 1, is closed under
/// multiplication, and has integral reduced traces and norms.
pub fn is_order(basis: &[QuaternionElement]) -> Result<bool> {
    if basis.len() != 4 {
        return Err(Error::InvalidParameter(format!("{} generators given, 4 needed", basis.len())));
    }
    let field = basis[0].field();
    if basis.iter().any(|q| q.field() != field) {
        return Err(Error::FieldMismatch);
    }
    let inv = linalg::inverse(&coordinate_matrix(basis)).ok_or(Error::DependentGenerators)?;
    let in_span = |q: &QuaternionElement| {
        let row: Vec<FieldElement> = q.coords().iter().map(|c| (*c).clone()).collect();
        linalg::row_times(&row, &inv).iter().all(FieldElement::is_algebraic_integer)
    };
    if basis.iter().any(|g| !g.reduced_trace().is_algebraic_integer() || !g.reduced_norm().is_algebraic_integer()) {
        return Ok(false);
    }
    if !in_span(&QuaternionElement::one(field)) {
        return Ok(false);
    }
    for a in basis {
        for b in basis {
            if !in_span(&(a * b)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Determinant of the reduced-trace matrix `Tr_B(g_a g_b)`, an element of `F`.
pub fn trace_matrix_det(order: &QuaternionOrder) -> FieldElement {
    let g = order.generators();
    let m: Vec<Vec<FieldElement>> = g.iter().map(|a| g.iter().map(|b| (a * b).reduced_trace()).collect()).collect();
    linalg::det(&m).expect("4x4")
}

/// Absolute norm of the reduced discriminant `D_O`, from
/// `D_O^2 = det(Tr_B(g_a g_b)) Z_F`.
pub fn order_disc_norm(order: &QuaternionOrder) -> Result<IdealNormDescriptor> {
    let nm = trace_matrix_det(order).norm().abs();
    if !nm.is_integer() {
        return Err(Error::NonSquareDiscriminant(format!("non-integral norm {nm}")));
    }
    let n = nm.to_integer();
    let r = n.sqrt();
    if &r * &r != n {
        return Err(Error::NonSquareDiscriminant(n.to_string()));
    }
    let value = r.to_u64().ok_or_else(|| Error::Overflow("order discriminant".into()))?;
    Ok(IdealNormDescriptor { value })
}

/// Reduced discriminant of `(-1, -1 / F)` by the degree of `F`.
///
/// `quadratic_d` carries `D` for real quadratic fields. For degrees that are
/// neither odd nor a power of two the local degree `n2` over 2 must be given.
pub fn algebra_discriminant_for_degree(
    degree: usize,
    quadratic_d: Option<u64>,
    n2: Option<u32>,
) -> Result<IdealNormDescriptor> {
    if degree == 0 || degree >= 64 {
        return Err(Error::InvalidParameter(format!("degree {degree}")));
    }
    let two_zf = IdealNormDescriptor { value: 1u64 << degree };
    let zf = IdealNormDescriptor { value: 1 };
    if degree == 2 {
        if let Some(d) = quadratic_d {
            return Ok(if d % 8 == 1 { two_zf } else { zf });
        }
    }
    if degree.is_power_of_two() {
        return Ok(zf);
    }
    if degree % 2 == 1 {
        return Ok(two_zf);
    }
    match n2 {
        Some(n2) if n2 % 2 == 1 => Ok(two_zf),
        Some(_) => Ok(zf),
        None => Err(Error::MissingLocalDegree { degree }),
    }
}

pub fn algebra_discriminant(field: &RealField, n2: Option<u32>) -> Result<IdealNormDescriptor> {
    let d = (field.kind() == FieldKind::Quadratic).then(|| field.parameter());
    algebra_discriminant_for_degree(field.degree(), d, n2)
}

pub fn is_maximal(order: &QuaternionOrder) -> Result<bool> {
    Ok(order_disc_norm(order)? == algebra_discriminant(order.field(), None)?)
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The explicit maximal order of `(-1, -1 / F)`, re-verified before returning.
pub fn maximal_order(field: &RealField) -> Result<QuaternionOrder> {
    let f = field;
    let zero = f.zero();
    let one = f.one();
    let quat = |x: FieldElement, y: FieldElement, z: FieldElement, t: FieldElement| QuaternionElement::new(x, y, z, t);
    let e = |a: BigRational, b: BigRational| f.element(vec![a, b]);
    let half = f.from_rational(q(1, 2));
    let hurwitz = quat(half.clone(), half.clone(), half.clone(), half.clone());
    let one_q = QuaternionElement::one(f);
    let i = QuaternionElement::i(f);
    let j = QuaternionElement::j(f);

    let (generators, provenance) = match f.kind() {
        FieldKind::Quadratic => {
            let d = f.parameter();
            if d % 4 == 3 {
                let g3 = quat(zero.clone(), e(q(0, 1), q(1, 2)), half.clone(), zero.clone());
                let g4 = quat(e(q(0, 1), q(1, 2)), zero.clone(), zero.clone(), half.clone());
                (vec![one_q, i, g3, g4], OrderProvenance::ThreeModFour)
            } else if d % 8 == 1 {
                (vec![one_q, i, j, hurwitz], OrderProvenance::OneModEight)
            } else if d % 8 == 5 {
                let g3 = quat(e(q(1, 4), q(1, 4)), e(q(3, 4), q(1, 4)), half.clone(), zero.clone());
                let g4 = quat(e(q(3, 4), q(1, 4)), e(q(1, 4), q(1, 4)), zero.clone(), half.clone());
                (vec![one_q, i, g3, g4], OrderProvenance::FiveModEight)
            } else if d == 2 {
                let r = e(q(0, 1), q(1, 2));
                let g2 = quat(r.clone(), r.clone(), zero.clone(), zero.clone());
                let g3 = quat(r.clone(), zero.clone(), r, zero.clone());
                (vec![one_q, g2, g3, hurwitz], OrderProvenance::Two)
            } else {
                let g3 = quat(e(q(0, 1), q(1, 2)), half.clone(), half.clone(), zero.clone());
                let g4 = quat(f.from_rational(q(-1, 2)), e(q(0, 1), q(1, 2)), zero.clone(), half.clone());
                (vec![one_q, i, g3, g4], OrderProvenance::TwoModFour)
            }
        }
        FieldKind::SimplestQuartic => {
            if f.parameter() % 2 == 1 {
                return Err(Error::NoBasisKnown(format!("{} with odd m", f.name())));
            }
            let c = (&one + &f.generator()).scale(&q(1, 2));
            let g2 = quat(c.clone(), c.clone(), zero.clone(), zero.clone());
            let g3 = quat(c.clone(), zero.clone(), c, zero.clone());
            (vec![one_q, g2, g3, hurwitz], OrderProvenance::SimplestQuartic)
        }
    };
    let order = QuaternionOrder::new(generators, provenance)?;
    let disc = order_disc_norm(&order)?;
    let alg = algebra_discriminant(f, None)?;
    if disc != alg {
        return Err(Error::NotMaximal { order: disc.value, algebra: alg.value });
    }
    Ok(order)
}

/// `{1, i, j, k}`, an order over every field but never maximal.
pub fn lipschitz_order(field: &RealField) -> Result<QuaternionOrder> {
    QuaternionOrder::new(
        vec![
            QuaternionElement::one(field),
            QuaternionElement::i(field),
            QuaternionElement::j(field),
            QuaternionElement::k(field),
        ],
        OrderProvenance::Custom,
    )
}

impl QuaternionOrder {
    /// Wrap arbitrary generators after checking they form an order.
    pub fn custom(generators: Vec<QuaternionElement>) -> Result<Self> {
        Self::new(generators, OrderProvenance::Custom)
    }
}
