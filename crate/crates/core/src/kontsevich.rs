//! The Kontsevich integral on B₂.
//!
//! Each graded piece `A₂,ᵢ` is one-dimensional with basis `tⁱ`, so `Z` of a
//! braid sum is an ordinary power series in `t` and `Zᵢ(b)` is a rational
//! number. On generators `Z(σ₁ⁿ) = e^{nt/2}`, which gives
//! `Zᵢ(σ₁ⁿ) = (n/2)ⁱ / i!`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::braid_ring::{BraidSum, FiltrationOrder};
use crate::error::{Error, Result};
use crate::power_series::{exp_scaled, Series};
use crate::scalar::{factorial, rat, Rational};

/// A coordinate in `A₂,ᵢ` with respect to the basis `tⁱ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedValue {
    pub order: usize,
    pub value: Rational,
}

impl GradedValue {
    pub fn new(order: usize, value: Rational) -> Self {
        Self { order, value }
    }
}

/// `Z(b)` through `t^order`.
pub fn z(b: &BraidSum, order: usize) -> Series {
    b.terms().fold(Series::zero(order), |acc, (n, c)| {
        acc.add(&exp_scaled(&rat(n, 2), order).scale(c))
    })
}

/// `Zᵢ(b) = Σ bₙ (n/2)ⁱ / i!`.
pub fn z_i(b: &BraidSum, i: usize) -> Rational {
    let denom = num_traits::pow(BigInt::from(2), i) * factorial(i as u32);
    b.moment(i as u32) / Rational::from_integer(denom)
}

/// The class of `b` in `A₂,ⱼ` for `j` its filtration order.
pub fn residue(b: &BraidSum) -> Result<GradedValue> {
    match b.filtration_order() {
        FiltrationOrder::Infinite => Err(Error::ZeroResidue),
        FiltrationOrder::Finite(j) => {
            let value = z_i(b, j);
            debug_assert!(!value.is_zero());
            Ok(GradedValue::new(j, value))
        }
    }
}

/// `[(j, Zⱼ(b)) for j in 0..=jmax]`.
pub fn focus_profile(b: &BraidSum, jmax: usize) -> Vec<GradedValue> {
    (0..=jmax).map(|j| GradedValue::new(j, z_i(b, j))).collect()
}

/// Whether a profile vanishes everywhere except possibly at order `r`.
///
/// This only certifies focus up to the last order in the profile.
pub fn is_focussed_on(profile: &[GradedValue], r: usize) -> bool {
    profile
        .iter()
        .all(|g| g.order == r || g.value.is_zero())
}
