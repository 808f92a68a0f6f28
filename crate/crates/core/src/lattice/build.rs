//! Lattices `(O, <x, y> = Tr_{F/Q}(alpha Tr_B(x conj y)))` from an order and a
//! totally positive twist.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{real::Interval, FieldElement, RealField, MIN_PRECISION_BITS};
use crate::linalg;
use crate::quaternion::{algebra_discriminant, is_maximal, order_disc_norm, QuaternionElement, QuaternionOrder};

/// Symmetric matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactGram {
    entries: Vec<Vec<BigRational>>,
}

impl ExactGram {
    pub fn new(entries: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter("Gram matrix must be square and nonempty".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::InvalidParameter(format!("Gram matrix not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(ExactGram { entries })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect())
    }

    pub fn from_bigints(rows: &[Vec<BigInt>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<BigRational>] {
        &self.entries
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().flatten().all(BigRational::is_integer)
    }

    pub fn is_even(&self) -> bool {
        self.is_integral() && (0..self.dim()).all(|i| self.entries[i][i].to_integer() % 2 == BigInt::zero())
    }

    /// Entries as integers, if all are integral.
    pub fn integer_entries(&self) -> Option<Vec<Vec<BigInt>>> {
        self.is_integral()
            .then(|| self.entries.iter().map(|r| r.iter().map(BigRational::to_integer).collect()).collect())
    }

    /// Entries as machine integers, if integral and in range.
    pub fn to_i64(&self) -> Option<Vec<Vec<i64>>> {
        self.integer_entries()?.iter().map(|r| r.iter().map(ToPrimitive::to_i64).collect::<Option<Vec<_>>>()).collect()
    }

    pub fn scaled(&self, c: &BigRational) -> ExactGram {
        ExactGram { entries: self.entries.iter().map(|r| r.iter().map(|x| x * c).collect()).collect() }
    }

    /// `L * G` with `L` the least common denominator, and `L`.
    pub fn cleared(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let l = linalg::common_denominator(&self.entries);
        let m = self
            .entries
            .iter()
            .map(|r| r.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect())
            .collect();
        (m, l)
    }

    /// Exact determinant by fraction-free elimination.
    pub fn det(&self) -> BigRational {
        let (m, l) = self.cleared();
        let d = linalg::det(&m).expect("nonempty");
        BigRational::new(d, num::pow(l, self.dim()))
    }

    /// Exact test: every leading principal minor is positive.
    pub fn is_positive_definite(&self) -> bool {
        let (m, _) = self.cleared();
        let minors = linalg::leading_minors(&m);
        minors.len() == self.dim() && minors.iter().all(Signed::is_positive)
    }
}

/// `alpha_r * beta_s` for `s` over the order generators (outer) and `r` over
/// the integral basis (inner).
pub fn z_basis(order: &QuaternionOrder) -> Vec<QuaternionElement> {
    let ib = order.field().integral_basis();
    order.generators().iter().flat_map(|beta| ib.iter().map(move |a| beta.scale(a))).collect()
}

fn require_totally_positive(alpha: &FieldElement) -> Result<()> {
    if alpha.is_zero() || !alpha.is_totally_positive()? {
        return Err(Error::NotTotallyPositive);
    }
    Ok(())
}

/// Gram matrix of the twisted trace form on the Z-basis.
pub fn exact_gram(order: &QuaternionOrder, alpha: &FieldElement) -> Result<ExactGram> {
    if alpha.field() != order.field() {
        return Err(Error::FieldMismatch);
    }
    require_totally_positive(alpha)?;
    Ok(gram_of_basis(&z_basis(order), alpha))
}

pub(crate) fn gram_of_basis(basis: &[QuaternionElement], alpha: &FieldElement) -> ExactGram {
    let conj: Vec<QuaternionElement> = basis.iter().map(QuaternionElement::conj).collect();
    let n = basis.len();
    let mut entries = vec![vec![BigRational::zero(); n]; n];
    for u in 0..n {
        for v in u..n {
            let tr = (&basis[u] * &conj[v]).reduced_trace();
            let val = (alpha * &tr).trace();
            entries[v][u] = val.clone();
            entries[u][v] = val;
        }
    }
    ExactGram { entries }
}

/// Twisted real embedding of the Z-basis, with certified entries.
#[derive(Debug, Clone)]
pub struct FloatGenerator {
    rows: Vec<Vec<Interval>>,
    precision_bits: u32,
}

impl FloatGenerator {
    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Entry midpoints.
    pub fn rows_f64(&self) -> Vec<Vec<f64>> {
        self.rows.iter().map(|r| r.iter().map(Interval::midpoint_f64).collect()).collect()
    }

    pub fn intervals(&self) -> &[Vec<Interval>] {
        &self.rows
    }

    /// Certified bound on `max |(M M^T - G)_uv| / max |G_uv|` over every
    /// choice of points inside the entry enclosures.
    pub fn relative_deviation(&self, gram: &ExactGram) -> f64 {
        let n = self.dim();
        let scale = gram.entries().iter().flatten().map(|x| x.abs()).max().unwrap_or_else(BigRational::one);
        let mut worst = 0.0f64;
        for u in 0..n {
            for v in u..n {
                let dot = self.rows[u]
                    .iter()
                    .zip(&self.rows[v])
                    .fold(Interval::from_integer(0, self.rows[u][0].precision()), |acc, (a, b)| acc.add(&a.mul(b)));
                worst = worst.max(dot.max_deviation_from(&gram.entries()[u][v]));
            }
        }
        worst / scale.to_f64().unwrap_or(1.0)
    }
}

/// Rows `(sqrt(2 sigma_i(alpha)) sigma_i(c))` over coordinates `c = x, y, z, t`
/// and embeddings `i = 1..n`.
pub fn generator_matrix(order: &QuaternionOrder, alpha: &FieldElement, precision_bits: u32) -> Result<FloatGenerator> {
    if precision_bits < MIN_PRECISION_BITS {
        return Err(Error::PrecisionTooLow { requested: precision_bits, minimum: MIN_PRECISION_BITS });
    }
    require_totally_positive(alpha)?;
    let two = BigRational::from_integer(2.into());
    let factors: Vec<Interval> = alpha
        .embedding_intervals(precision_bits)
        .iter()
        .map(|s| s.mul_rational(&two).sqrt().ok_or(Error::NotTotallyPositive))
        .collect::<Result<_>>()?;
    let rows = z_basis(order)
        .iter()
        .map(|q| {
            q.coords()
                .iter()
                .flat_map(|c| {
                    c.embedding_intervals(precision_bits)
                        .into_iter()
                        .zip(&factors)
                        .map(|(e, f)| f.mul(&e))
                        .collect::<Vec<_>>()
                })
                .collect()
        })
        .collect();
    Ok(FloatGenerator { rows, precision_bits })
}

/// `Nm(alpha)^2 d_F^2 Nm(D_O)` with the ideal factor of `I = O` equal to 1.
///
/// This is the covolume of the lattice; its square is the Gram determinant.
pub fn formula_covolume(order: &QuaternionOrder, alpha: &FieldElement) -> Result<BigRational> {
    if !is_maximal(order)? {
        return Err(Error::NotMaximal {
            order: order_disc_norm(order)?.value,
            algebra: algebra_discriminant(order.field(), None)?.value,
        });
    }
    let d_o = BigRational::from_integer(order_disc_norm(order)?.value.into());
    let nm = alpha.norm();
    let df = BigRational::from_integer(order.field().discriminant().clone());
    Ok(&nm * &nm * &df * &df * d_o)
}

/// Gram determinant predicted from the field and order invariants: the
/// square of [`formula_covolume`].
pub fn det_via_formula(order: &QuaternionOrder, alpha: &FieldElement) -> Result<BigRational> {
    let c = formula_covolume(order, alpha)?;
    Ok(&c * &c)
}

/// An order together with a twist and its Z-basis.
#[derive(Debug, Clone)]
pub struct TwistedLattice {
    order: QuaternionOrder,
    alpha: FieldElement,
    z_basis: Vec<QuaternionElement>,
}

impl TwistedLattice {
    pub fn new(order: QuaternionOrder, alpha: FieldElement) -> Result<Self> {
        if alpha.field() != order.field() {
            return Err(Error::FieldMismatch);
        }
        require_totally_positive(&alpha)?;
        let z_basis = z_basis(&order);
        Ok(TwistedLattice { order, alpha, z_basis })
    }

    pub fn field(&self) -> &RealField {
        self.order.field()
    }

    pub fn order(&self) -> &QuaternionOrder {
        &self.order
    }

    pub fn alpha(&self) -> &FieldElement {
        &self.alpha
    }

    pub fn z_basis(&self) -> &[QuaternionElement] {
        &self.z_basis
    }

    pub fn gram(&self) -> ExactGram {
        gram_of_basis(&self.z_basis, &self.alpha)
    }

    pub fn generator_matrix(&self, precision_bits: u32) -> Result<FloatGenerator> {
        generator_matrix(&self.order, &self.alpha, precision_bits)
    }

    pub fn det_via_formula(&self) -> Result<BigRational> {
        det_via_formula(&self.order, &self.alpha)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::maximal_order;
    use crate::quaternion::order::lipschitz_order;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn f64_det(m: &[Vec<f64>]) -> f64 {
        let n = m.len();
        let mut a = m.to_vec();
        let mut det = 1.0;
        for k in 0..n {
            let p = (k..n).max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs())).unwrap();
            if p != k {
                a.swap(p, k);
                det = -det;
            }
            det *= a[k][k];
            for i in k + 1..n {
                let f = a[i][k] / a[k][k];
                for j in k..n {
                    a[i][j] -= f * a[k][j];
                }
            }
        }
        det
    }

    #[test]
    fn basis_sizes_and_order() {
        let f = RealField::quadratic(5).unwrap();
        let o = maximal_order(&f).unwrap();
        let b = z_basis(&o);
        assert_eq!(b.len(), 8);
        assert_eq!(b[0], QuaternionElement::one(&f));
        // second element: omega * 1
        assert_eq!(b[1].x, f.integral_basis()[1]);
        let f = RealField::simplest_quartic(20).unwrap();
        assert_eq!(z_basis(&maximal_order(&f).unwrap()).len(), 16);
    }

    #[test]
    fn sqrt5_gram_first_row() {
        let f = RealField::quadratic(5).unwrap();
        let o = maximal_order(&f).unwrap();
        // alpha = 1/(eps sqrt 5), eps = 2 + sqrt 5, sign adjusted
        let alpha = f.element(vec![q(1, 1), q(-2, 5)]);
        let g = exact_gram(&o, &alpha).unwrap();
        let first: Vec<BigRational> = [4, -2, 0, 0, -1, 1, 1, 0].iter().map(|&x| q(x, 1)).collect();
        assert_eq!(g.entries()[0], first);
        assert_eq!(g.det(), q(1, 1));
        assert!(g.is_even());
        assert_eq!(det_via_formula(&o, &alpha).unwrap(), g.det());
    }

    #[test]
    fn lipschitz_alpha_one() {
        let f = RealField::quadratic(2).unwrap();
        let o = lipschitz_order(&f).unwrap();
        let g = exact_gram(&o, &f.one()).unwrap();
        // diag = 2 Tr(Nm_B(b_u)): 4 for b = 1, 8 for b = sqrt 2
        let diag: Vec<BigRational> = (0..8).map(|i| g.entries()[i][i].clone()).collect();
        assert_eq!(diag[0], q(4, 1));
        assert_eq!(diag[1], q(8, 1));
        assert_eq!(diag[2], q(4, 1));
        let m = generator_matrix(&o, &f.one(), 128).unwrap();
        // sqrt(2 sigma_i(1)) = sqrt 2 on each column of the first row
        let r0 = m.rows_f64()[0].clone();
        assert!((r0[0] - 2f64.sqrt()).abs() < 1e-15 && (r0[1] - 2f64.sqrt()).abs() < 1e-15);
        assert!(matches!(det_via_formula(&o, &f.one()), Err(Error::NotMaximal { .. })));
    }

    #[test]
    fn rejects_bad_twists() {
        let f = RealField::quadratic(5).unwrap();
        let o = maximal_order(&f).unwrap();
        assert!(matches!(exact_gram(&o, &f.generator()), Err(Error::NotTotallyPositive)));
        assert!(matches!(generator_matrix(&o, &f.one(), 32), Err(Error::PrecisionTooLow { .. })));
    }

    #[test]
    fn generator_matrix_matches_gram() {
        let f = RealField::quadratic(5).unwrap();
        let o = maximal_order(&f).unwrap();
        let alpha = f.element(vec![q(1, 1), q(-2, 5)]);
        let g = exact_gram(&o, &alpha).unwrap();
        let m128 = generator_matrix(&o, &alpha, 128).unwrap();
        let m256 = generator_matrix(&o, &alpha, 256).unwrap();
        assert!(m128.relative_deviation(&g) <= 1e-9);
        assert!(m256.relative_deviation(&g) <= 1e-20);
        let rows = m128.rows_f64();
        let mmt: Vec<Vec<f64>> =
            rows.iter().map(|a| rows.iter().map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum()).collect()).collect();
        assert!((f64_det(&mmt) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn formula_scaling() {
        let f = RealField::quadratic(13).unwrap();
        let o = maximal_order(&f).unwrap();
        let alpha = f.one();
        let base = det_via_formula(&o, &alpha).unwrap();
        let c = q(3, 2);
        let scaled = det_via_formula(&o, &alpha.scale(&c)).unwrap();
        // Nm(c alpha) = c^2 Nm(alpha) for n = 2, and the Gram determinant is quartic in Nm
        assert_eq!(scaled, base * num::pow(c, 8));
        let g = exact_gram(&o, &alpha).unwrap();
        assert_eq!(g.det(), det_via_formula(&o, &alpha).unwrap());
    }

    #[test]
    fn random_gram_symmetry() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for d in [2u64, 3, 5, 7, 13, 17] {
            let f = RealField::quadratic(d).unwrap();
            let o = maximal_order(&f).unwrap();
            for _ in 0..4 {
                let a: i64 = rng.gen_range(1..20);
                let alpha = f.element(vec![q(a * a * (d as i64) + 1, 1), q(a, 1)]);
                let g = exact_gram(&o, &alpha).unwrap();
                assert!(ExactGram::new(g.entries().to_vec()).is_ok());
                assert!(g.is_positive_definite());
                assert_eq!(g.det(), det_via_formula(&o, &alpha).unwrap());
            }
        }
    }
}
