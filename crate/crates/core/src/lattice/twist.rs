//! Totally positive twists `alpha` making the trace-form lattice even and of
//! the expected determinant.

use num::{BigInt, BigRational, One, Signed};
use serde::{Deserialize, Serialize};

use super::build::{gram_of_basis, z_basis};
use crate::error::{Error, Result};
use crate::field::pell::negative_pell;
use crate::field::{FieldElement, FieldKind, RealField};
use crate::numtheory::v2;
use crate::quaternion::{algebra_discriminant, maximal_order, QuaternionOrder};

/// Named lattice class expected from a twist recipe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExpectedClass {
    E8,
    E8xE8,
    BarnesWall16,
}

impl ExpectedClass {
    pub fn target_det(self) -> BigRational {
        match self {
            ExpectedClass::E8 | ExpectedClass::E8xE8 => BigRational::one(),
            ExpectedClass::BarnesWall16 => BigRational::from_integer(256.into()),
        }
    }
}

/// Outcome of testing one twist candidate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateDiagnostic {
    /// Formula label, e.g. `2/(s4*f')`.
    pub label: String,
    /// Other labels giving the same element.
    pub aliases: Vec<String>,
    /// Unit adjustment applied, e.g. `-r^1*sigma(r)^-2`; `None` if no
    /// adjustment made the candidate totally positive.
    pub adjustment: Option<String>,
    /// Power-basis coordinates of the adjusted candidate.
    pub alpha: Vec<String>,
    pub totally_positive: bool,
    pub integral: bool,
    pub even: bool,
    pub det: Option<String>,
    pub accepted: bool,
}

/// A validated twist with the record of how it was chosen.
#[derive(Debug, Clone)]
pub struct TwistSelection {
    pub alpha: FieldElement,
    pub expected_class: ExpectedClass,
    /// Label of the formula that validated.
    pub label: String,
    /// Every candidate tried, in order.
    pub log: Vec<CandidateDiagnostic>,
}

impl TwistSelection {
    pub fn selected(&self) -> &CandidateDiagnostic {
        self.log.iter().find(|c| c.accepted).expect("a selection has an accepted candidate")
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

struct Validation {
    integral: bool,
    even: bool,
    det: BigRational,
}

fn validate(order: &QuaternionOrder, alpha: &FieldElement) -> Validation {
    let g = gram_of_basis(&z_basis(order), alpha);
    Validation { integral: g.is_integral(), even: g.is_even(), det: g.det() }
}

/// Test `alphas` (label, element) in order, each with the given unit
/// adjustments, accepting the first that is totally positive, even and of
/// the target determinant. Candidates with equal values are merged.
fn select(
    order: &QuaternionOrder,
    candidates: Vec<(String, FieldElement)>,
    adjustments: &[(String, FieldElement)],
    class: ExpectedClass,
) -> Result<TwistSelection> {
    let mut merged: Vec<(String, Vec<String>, FieldElement)> = Vec::new();
    for (label, x) in candidates {
        match merged.iter_mut().find(|(_, _, y)| *y == x) {
            Some(entry) => entry.1.push(label),
            None => merged.push((label, Vec::new(), x)),
        }
    }
    let target = class.target_det();
    let mut log = Vec::new();
    let mut chosen = None;
    for (label, aliases, x) in merged {
        let mut diag = CandidateDiagnostic {
            label: label.clone(),
            aliases,
            adjustment: None,
            alpha: x.coord_strings(),
            totally_positive: false,
            integral: false,
            even: false,
            det: None,
            accepted: false,
        };
        let mut found = None;
        for (adj_label, u) in adjustments {
            let y = &x * u;
            if y.is_totally_positive()? {
                found = Some((adj_label.clone(), y));
                break;
            }
        }
        if let Some((adj_label, y)) = found {
            let v = validate(order, &y);
            diag.adjustment = Some(adj_label);
            diag.alpha = y.coord_strings();
            diag.totally_positive = true;
            diag.integral = v.integral;
            diag.even = v.even;
            diag.det = Some(v.det.to_string());
            if chosen.is_none() && v.integral && v.even && v.det == target {
                diag.accepted = true;
                chosen = Some((label, y));
            }
        }
        log.push(diag);
    }
    match chosen {
        Some((label, alpha)) => Ok(TwistSelection { alpha, expected_class: class, label, log }),
        None => Err(Error::TwistValidation { candidates: log }),
    }
}

fn sign_adjustments(field: &RealField) -> Vec<(String, FieldElement)> {
    vec![("+1".to_string(), field.one()), ("-1".to_string(), -&field.one())]
}

fn require_quadratic(field: &RealField) -> Result<u64> {
    if field.kind() != FieldKind::Quadratic {
        return Err(Error::InvalidParameter(format!("{} is not a quadratic field", field.name())));
    }
    let d = field.parameter();
    if algebra_discriminant(field, None)?.value != 1 {
        return Err(Error::TwistObstruction(format!(
            "D = {d} = 1 (mod 8): 2 splits, the algebra ramifies at both places above 2 and \
             no twist of the maximal order is unimodular"
        )));
    }
    Ok(d)
}

/// `alpha = +-1/(u f'(b))` for a unit `u` of norm -1.
fn twist_from_unit(field: &RealField, unit: &FieldElement, label: String) -> Result<TwistSelection> {
    let order = maximal_order(field)?;
    let alpha = (unit * &field.different_generator()).inverse()?;
    let sel = select(&order, vec![(label, alpha)], &sign_adjustments(field), ExpectedClass::E8)?;
    let nd = &sel.alpha.norm() * BigRational::from_integer(field.discriminant().clone());
    debug_assert!(nd.abs().is_one());
    Ok(sel)
}

/// E8 twist of `Q(sqrt D)` from the fundamental solution of `x^2 - D y^2 = -1`:
/// `alpha = +-1/(eps t)` with `eps = x + y sqrt D` and `t = sqrt D` or `2 sqrt D`.
pub fn twist_e8_selection(field: &RealField) -> Result<TwistSelection> {
    let d = require_quadratic(field)?;
    let sol = negative_pell(d)?.ok_or(Error::NoNormMinusOneUnit(d))?;
    let eps = field.element(vec![
        BigRational::from_integer(BigInt::from(sol.x.clone())),
        BigRational::from_integer(BigInt::from(sol.y.clone())),
    ]);
    twist_from_unit(field, &eps, format!("1/(eps*t), eps = {} + {}*sqrt({d})", sol.x, sol.y))
}

pub fn twist_e8(field: &RealField) -> Result<FieldElement> {
    Ok(twist_e8_selection(field)?.alpha)
}

/// The explicit families `D = s^2 + 4` (`eps = (s + sqrt D)/2`,
/// `alpha = eps/sqrt D`) and, with `plus_one`, `D = s^2 + 1`
/// (`eps = s + sqrt D`, `alpha = eps/f'`, which is `eps/(2 sqrt D)` for odd `s`).
pub fn twist_e8_family(field: &RealField, s: u64, plus_one: bool) -> Result<TwistSelection> {
    let d = require_quadratic(field)?;
    let (shift, den) = if plus_one { (1, 1) } else { (4, 2) };
    if s.checked_mul(s).and_then(|x| x.checked_add(shift)) != Some(d) {
        return Err(Error::InvalidParameter(format!("D = {d} is not s^2 + {shift} for s = {s}")));
    }
    let si = i64::try_from(s).map_err(|_| Error::Overflow(format!("s = {s}")))?;
    let eps = field.element(vec![q(si, den), q(1, den)]);
    // f' is sqrt D for D = 1 (mod 4) and 2 sqrt D otherwise
    let alpha = &eps * &field.different_generator().inverse()?;
    let label =
        if plus_one { format!("eps/f', eps = {s} + sqrt({d})") } else { format!("eps/f', eps = ({s} + sqrt({d}))/2") };
    let order = maximal_order(field)?;
    select(&order, vec![(label, alpha)], &sign_adjustments(field), ExpectedClass::E8)
}

/// `s = (r^3 - m r^2 - 5 r + m)/2`, a unit of norm 1 in `F_m`.
pub fn quartic_s(field: &RealField) -> Result<FieldElement> {
    if field.kind() != FieldKind::SimplestQuartic {
        return Err(Error::InvalidParameter(format!("{} is not a simplest quartic field", field.name())));
    }
    let m = field.parameter() as i64;
    Ok(field.from_ints(&[m, -5, -m, 1]).scale(&q(1, 2)))
}

/// Signs times `r^a sigma(r)^b` with `|a|, |b| <= 3`, smallest exponents first.
pub fn quartic_unit_adjustments(field: &RealField) -> Result<Vec<(String, FieldElement)>> {
    let r = field.generator();
    let sigma = field
        .quartic_sigma_generator()
        .ok_or_else(|| Error::InvalidParameter("unit search needs a quartic field".into()))?;
    let exps = [0i32, 1, -1, 2, -2, 3, -3];
    let mut out = Vec::new();
    for a in exps {
        for b in exps {
            let u = &r.pow(a)? * &sigma.pow(b)?;
            for (sign, su) in [("+", u.clone()), ("-", -&u)] {
                out.push((format!("{sign}r^{a}*sigma(r)^{b}"), su));
            }
        }
    }
    Ok(out)
}

/// Twist of `F_m` (`m` even, `v2(m)` in {1, 2}) selected by exact validation.
///
/// `v2(m) = 1` uses `alpha = 2/(s f')` and expects E8 x E8. `v2(m) = 2` tries
/// `c/(s' f')` for `c` in {1, 2, 4} and `s'` in {s, s/2} and expects a
/// determinant `2^8` lattice.
pub fn twist_quartic(field: &RealField) -> Result<TwistSelection> {
    let s2 = quartic_s(field)?;
    let m = field.parameter();
    let order = maximal_order(field)?;
    let fp = field.different_generator();
    let adjustments = quartic_unit_adjustments(field)?;
    match v2(m) {
        1 => {
            let alpha = (&s2 * &fp).inverse()?.scale(&q(2, 1));
            select(&order, vec![("2/(s2*f')".into(), alpha)], &adjustments, ExpectedClass::E8xE8)
        }
        2 => {
            let s4 = s2.scale(&q(1, 2));
            let mut cands = Vec::new();
            for (sname, s) in [("s2", &s2), ("s4", &s4)] {
                let base = (s * &fp).inverse()?;
                for c in [1i64, 2, 4] {
                    cands.push((format!("{c}/({sname}*f')"), base.scale(&q(c, 1))));
                }
            }
            select(&order, cands, &adjustments, ExpectedClass::BarnesWall16)
        }
        v => Err(Error::InvalidParameter(format!("m = {m} has v2(m) = {v}; twists exist for v2(m) in {{1, 2}}"))),
    }
}
