//! Twisted trace-form lattices of maximal orders.

pub mod build;
pub mod twist;

pub use build::{
    det_via_formula, exact_gram, formula_covolume, generator_matrix, z_basis, ExactGram, FloatGenerator, TwistedLattice,
};
pub use twist::{
    quartic_s, twist_e8, twist_e8_family, twist_e8_selection, twist_quartic, CandidateDiagnostic, ExpectedClass,
    TwistSelection,
};

use crate::error::Result;
use crate::field::RealField;
use crate::quaternion::maximal_order;

/// A lattice together with the record of how its twist was chosen.
#[derive(Debug, Clone)]
pub struct Construction {
    pub lattice: TwistedLattice,
    pub selection: TwistSelection,
}

impl Construction {
    fn new(field: &RealField, selection: TwistSelection) -> Result<Self> {
        let lattice = TwistedLattice::new(maximal_order(field)?, selection.alpha.clone())?;
        Ok(Construction { lattice, selection })
    }
}

/// `Q(sqrt D)` with the twist from the negative Pell equation.
pub fn construct_quadratic(d: u64) -> Result<Construction> {
    let field = RealField::quadratic(d)?;
    let sel = twist_e8_selection(&field)?;
    Construction::new(&field, sel)
}

/// `Q(sqrt(s^2 + 4))`, or `Q(sqrt(s^2 + 1))` with `plus_one`, with the
/// explicit-family twist.
pub fn construct_quadratic_family(s: u64, plus_one: bool) -> Result<Construction> {
    let shift = if plus_one { 1 } else { 4 };
    let d = s
        .checked_mul(s)
        .and_then(|x| x.checked_add(shift))
        .ok_or_else(|| crate::error::Error::Overflow(format!("s = {s}")))?;
    let field = RealField::quadratic(d)?;
    let sel = twist_e8_family(&field, s, plus_one)?;
    Construction::new(&field, sel)
}

/// `F_m` with the validated quartic twist.
pub fn construct_quartic(m: u64) -> Result<Construction> {
    let field = RealField::simplest_quartic(m)?;
    let sel = twist_quartic(&field)?;
    Construction::new(&field, sel)
}
