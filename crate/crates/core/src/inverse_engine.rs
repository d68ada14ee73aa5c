//! Weak and strong inverses of `Z` on B₂.
//!
//! A coherent weak inverse is fixed by a seed braid sum `s` of filtration
//! order one: it lifts `tᵏ` to `(s/a)ᵏ`, where `a = Z₁(s)`. Candidate
//! inverses are therefore polynomials in the seed, stored as a [`LiftPoly`].
//!
//! Strengthening repairs one degree at a time. If `Z(P(s)) = t + c·t^m + …`
//! then subtracting `c·(s/a)^m` kills the `t^m` term and only disturbs
//! higher degrees. For the seed `τ` the limit is `2·arcsinh(τ/2)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::braid_ring::{BraidSum, FiltrationOrder};
use crate::error::{Error, Result};
use crate::kontsevich::{z, z_i};
use crate::power_series::{arcsinh_taylor, Series};
use crate::precision::{four_over_pi, Approx};
use crate::scalar::{int, pow, Rational};

/// A polynomial `Σ cₖ sᵏ` in a seed braid sum `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftPoly {
    coeffs: BTreeMap<u32, Rational>,
    seed: BraidSum,
}

impl LiftPoly {
    /// The unstrengthened weak inverse `t ↦ s / Z₁(s)`.
    pub fn weak(seed: BraidSum) -> Result<Self> {
        let order = seed.filtration_order();
        if order != FiltrationOrder::Finite(1) {
            return Err(Error::BadSeedOrder(order.to_string()));
        }
        let lead = z_i(&seed, 1).recip();
        Ok(LiftPoly {
            coeffs: BTreeMap::from([(1, lead)]),
            seed,
        })
    }

    pub fn tau() -> Self {
        Self::weak(BraidSum::tau()).expect("tau has filtration order 1")
    }

    pub fn from_coeffs(seed: BraidSum, coeffs: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        LiftPoly { coeffs, seed }
    }

    pub fn seed(&self) -> &BraidSum {
        &self.seed
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, Rational> {
        &self.coeffs
    }

    pub fn coefficient(&self, degree: u32) -> Rational {
        self.coeffs.get(&degree).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> u32 {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }

    pub fn seed_is_tau(&self) -> bool {
        self.seed == BraidSum::tau()
    }

    /// The terms of degree at most `degree`.
    pub fn truncate(&self, degree: u32) -> LiftPoly {
        LiftPoly {
            coeffs: self.coeffs.range(..=degree).map(|(k, c)| (*k, c.clone())).collect(),
            seed: self.seed.clone(),
        }
    }

    /// `P(s)` as a braid sum.
    pub fn evaluate(&self) -> BraidSum {
        let mut out = BraidSum::zero();
        let mut power = BraidSum::identity();
        let mut k = 0;
        for (degree, c) in &self.coeffs {
            while k < *degree {
                power = power.multiply(&self.seed);
                k += 1;
            }
            out = BraidSum::combine(&out, &Rational::one(), &power, c);
        }
        out
    }

    /// The coefficients as a power series in the seed variable.
    pub fn as_series(&self, order: usize) -> Series {
        let mut s = Series::zero(order);
        for (k, c) in &self.coeffs {
            s.set_coeff(*k as usize, c.clone());
        }
        s
    }

    fn subtract_term(&mut self, degree: u32, c: Rational) {
        let slot = self.coeffs.entry(degree).or_insert_with(Rational::zero);
        *slot -= c;
        if slot.is_zero() {
            self.coeffs.remove(&degree);
        }
    }
}

/// Checks that `Zᵢ(b) = δᵢ₁` for `i < m`.
fn check_through(b: &BraidSum, m: usize) -> Result<()> {
    for i in 0..m {
        let expected = if i == 1 { Rational::one() } else { Rational::zero() };
        let value = z_i(b, i);
        if value != expected {
            return Err(Error::StepOutOfOrder {
                step: m,
                degree: i,
                value: Box::new(value),
                expected: Box::new(expected),
            });
        }
    }
    Ok(())
}

/// Kills the `t^m` term of `Z(P(s))`.
///
/// Requires `Z(P(s)) = t + O(t^m)`; the result satisfies
/// `Z(P'(s)) = t + O(t^{m+1})`.
pub fn strengthen_step(lift: &LiftPoly, m: usize) -> Result<LiftPoly> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "strengthening starts at degree 2, got {m}"
        )));
    }
    let b = lift.evaluate();
    check_through(&b, m)?;
    let mut out = lift.clone();
    let off = z_i(&b, m);
    if !off.is_zero() {
        let lead = z_i(&lift.seed, 1);
        out.subtract_term(m as u32, off / pow(&lead, m as u32));
    }
    Ok(out)
}

/// Runs [`strengthen_step`] for `m = 2..=order` starting from the weak
/// inverse of `seed`. Even steps are kept even when they are no-ops.
pub fn strengthen_to(seed: &BraidSum, order: usize) -> Result<LiftPoly> {
    let mut lift = LiftPoly::weak(seed.clone())?;
    let lead = z_i(seed, 1);
    // Running value of P(s) and of sᵐ, updated incrementally.
    let mut value = lift.evaluate();
    let mut power = seed.clone();
    for m in 2..=order {
        power = power.multiply(seed);
        check_through(&value, m)?;
        let off = z_i(&value, m);
        if off.is_zero() {
            continue;
        }
        let c = off / pow(&lead, m as u32);
        value = BraidSum::combine(&value, &Rational::one(), &power, &-c.clone());
        lift.subtract_term(m as u32, c);
    }
    Ok(lift)
}

/// The strong inverse of order `order` obtained by reverting `Z(seed)`.
pub fn lift_via_reversion(seed: &BraidSum, order: usize) -> Result<LiftPoly> {
    let order_of_seed = seed.filtration_order();
    if order_of_seed != FiltrationOrder::Finite(1) {
        return Err(Error::BadSeedOrder(order_of_seed.to_string()));
    }
    let inverse = z(seed, order).revert()?;
    Ok(LiftPoly::from_coeffs(
        seed.clone(),
        inverse
            .coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| (k as u32, c.clone())),
    ))
}

/// Coefficients on the antisymmetric pairs `⟨n⟩ = qⁿ − pⁿ`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PairExpansion {
    pair_coeffs: BTreeMap<i64, Rational>,
}

impl PairExpansion {
    pub fn coefficient(&self, n: i64) -> Rational {
        self.pair_coeffs.get(&n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.pair_coeffs.iter().map(|(n, c)| (*n, c))
    }

    pub fn len(&self) -> usize {
        self.pair_coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pair_coeffs.is_empty()
    }

    /// Splits an antisymmetric braid sum into pairs.
    pub fn from_braid_sum(b: &BraidSum) -> Result<Self> {
        let mut pair_coeffs = BTreeMap::new();
        for (n, c) in b.terms() {
            if b.coefficient(-n) != -c.clone() {
                return Err(Error::NotAntisymmetric(n));
            }
            if n > 0 {
                pair_coeffs.insert(n, c.clone());
            }
        }
        Ok(PairExpansion { pair_coeffs })
    }

    /// `Σ cₙ (qⁿ − pⁿ)`.
    pub fn to_braid_sum(&self) -> BraidSum {
        self.pair_coeffs
            .iter()
            .fold(BraidSum::zero(), |acc, (n, c)| {
                BraidSum::combine(&acc, &Rational::one(), &BraidSum::pair(*n), c)
            })
    }
}

/// Expands `P(τ)` in powers of `σ₁` and regroups into pairs.
pub fn q_expand(lift: &LiftPoly) -> Result<PairExpansion> {
    if !lift.seed_is_tau() {
        return Err(Error::SeedNotTau(lift.seed.to_string()));
    }
    PairExpansion::from_braid_sum(&lift.evaluate())
}

/// The limit of the `⟨j⟩` coefficient, `(−1)^{(j−1)/2} · 4/(π j²)`.
pub fn pair_limit(j: u32, digits: usize) -> Approx {
    let magnitude = four_over_pi(digits).div(&Approx::from_rational(&int(i64::from(j * j)), digits));
    if (j / 2) % 2 == 1 {
        magnitude.neg()
    } else {
        magnitude
    }
}

#[derive(Debug, Clone)]
pub struct AsymptoticRow {
    pub order: usize,
    pub coeff: Rational,
    pub coeff_float: Approx,
    pub target: Approx,
    pub abs_error: Approx,
}

/// Distance of the `⟨j⟩` coefficient of the order-`r` strong inverse from
/// its limiting value, for each `r` in `orders`.
///
/// Rows are computed independently (in parallel) and returned in input
/// order.
pub fn asymptotic_check(j: u32, orders: &[usize], digits: usize) -> Result<Vec<AsymptoticRow>> {
    if j.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("pair index must be odd, got {j}")));
    }
    if let Some(r) = orders.iter().find(|r| **r < j as usize || **r % 2 == 0) {
        return Err(Error::InvalidArgument(format!(
            "orders must be odd and at least {j}, got {r}"
        )));
    }
    let target = pair_limit(j, digits);
    orders
        .par_iter()
        .map(|&r| {
            let lift = strengthen_to(&BraidSum::tau(), r)?;
            let coeff = q_expand(&lift)?.coefficient(i64::from(j));
            let coeff_float = Approx::from_rational(&coeff, digits);
            let abs_error = coeff_float.sub(&target).abs();
            Ok(AsymptoticRow {
                order: r,
                coeff,
                coeff_float,
                target: target.clone(),
                abs_error,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientRow {
    pub degree: u32,
    pub numerator: num_bigint::BigInt,
    pub denominator: num_bigint::BigInt,
    /// Numerator of the `x^degree` coefficient of `arcsinh(x)`.
    pub arcsinh_numerator: num_bigint::BigInt,
    pub numerators_agree: bool,
}

/// Numerator and denominator sequences of a `τ`-seeded lift, with the
/// numerators checked against those of the Taylor series of `arcsinh(x)`.
pub fn coefficient_report(lift: &LiftPoly) -> Result<Vec<CoefficientRow>> {
    if !lift.seed_is_tau() {
        return Err(Error::SeedNotTau(lift.seed.to_string()));
    }
    let reference = arcsinh_taylor(lift.degree() as usize);
    Ok(lift
        .coeffs
        .iter()
        .map(|(k, c)| {
            let a = reference.coeff(*k as usize);
            CoefficientRow {
                degree: *k,
                numerator: c.numer().clone(),
                denominator: c.denom().clone(),
                arcsinh_numerator: a.numer().clone(),
                numerators_agree: c.numer() == a.numer(),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid_ring::tau_power;
    use crate::power_series::two_sinh_half;
    use crate::scalar::rat;

    fn tau_lift(coeffs: &[(u32, i64, i64)]) -> LiftPoly {
        LiftPoly::from_coeffs(
            BraidSum::tau(),
            coeffs.iter().map(|(k, n, d)| (*k, rat(*n, *d))),
        )
    }

    #[test]
    fn strengthen_step_examples() {
        let step3 = strengthen_step(&LiftPoly::tau(), 3).unwrap();
        assert_eq!(step3, tau_lift(&[(1, 1, 1), (3, -1, 24)]));
        let step5 = strengthen_step(&step3, 5).unwrap();
        assert_eq!(step5, tau_lift(&[(1, 1, 1), (3, -1, 24), (5, 3, 640)]));
        assert_eq!(strengthen_step(&LiftPoly::tau(), 2).unwrap(), LiftPoly::tau());
    }

    #[test]
    fn strengthen_step_out_of_order() {
        let err = strengthen_step(&LiftPoly::tau(), 5).unwrap_err();
        assert!(matches!(err, Error::StepOutOfOrder { degree: 3, .. }));
        assert!(strengthen_step(&LiftPoly::tau(), 1).is_err());
    }

    #[test]
    fn strengthen_to_examples() {
        let seven = strengthen_to(&BraidSum::tau(), 7).unwrap();
        assert_eq!(
            seven,
            tau_lift(&[(1, 1, 1), (3, -1, 24), (5, 3, 640), (7, -5, 7168)])
        );
        assert_eq!(strengthen_to(&BraidSum::tau(), 1).unwrap(), LiftPoly::tau());
        let thirteen = strengthen_to(&BraidSum::tau(), 13).unwrap();
        assert_eq!(thirteen.coefficient(13), rat(231, 54525952));
    }

    #[test]
    fn strengthen_to_rejects_bad_seed() {
        assert!(matches!(
            strengthen_to(&tau_power(2), 5),
            Err(Error::BadSeedOrder(_))
        ));
        assert!(strengthen_to(&BraidSum::identity(), 5).is_err());
        assert!(strengthen_to(&BraidSum::zero(), 5).is_err());
    }

    #[test]
    fn general_seed_is_strengthened() {
        let seed = BraidSum::from_terms([(1, int(2)), (0, int(-2))]);
        let lift = strengthen_to(&seed, 8).unwrap();
        let profile = z(&lift.evaluate(), 8);
        assert_eq!(profile, Series::variable(8));
        assert_eq!(lift, lift_via_reversion(&seed, 8).unwrap());
    }

    #[test]
    fn strengthened_series_composes_to_t() {
        for n in [3usize, 9, 15] {
            let lift = strengthen_to(&BraidSum::tau(), n).unwrap();
            let composed = lift.as_series(n + 2).compose(&two_sinh_half(n + 2)).unwrap();
            assert_eq!(composed.truncate(n), Series::variable(n));
        }
    }

    #[test]
    fn q_expand_examples() {
        let row2 = q_expand(&tau_lift(&[(1, 1, 1), (3, -1, 24)])).unwrap();
        assert_eq!(row2.coefficient(1), rat(9, 8));
        assert_eq!(row2.coefficient(3), rat(-1, 24));
        assert_eq!(row2.len(), 2);

        let row3 = q_expand(&strengthen_to(&BraidSum::tau(), 7).unwrap()).unwrap();
        let expected = [(1, rat(1225, 1024)), (3, rat(-245, 3072)), (5, rat(49, 5120)), (7, rat(-5, 7168))];
        for (n, c) in expected {
            assert_eq!(row3.coefficient(n), c);
        }
        assert_eq!(row3.len(), 4);

        let single = q_expand(&LiftPoly::tau()).unwrap();
        assert_eq!(single.pairs().collect::<Vec<_>>(), vec![(1, &int(1))]);
    }

    #[test]
    fn q_expand_rejects_other_seeds() {
        let seed = BraidSum::from_terms([(1, int(2)), (0, int(-2))]);
        let lift = LiftPoly::weak(seed).unwrap();
        assert!(matches!(q_expand(&lift), Err(Error::SeedNotTau(_))));
        assert!(matches!(
            PairExpansion::from_braid_sum(&BraidSum::q()),
            Err(Error::NotAntisymmetric(1))
        ));
    }

    #[test]
    fn asymptotic_examples() {
        let rows = asymptotic_check(1, &[7, 9], 50).unwrap();
        assert_eq!(rows[0].coeff, rat(1225, 1024));
        assert_eq!(rows[1].coeff, rat(19845, 16384));
        assert!(rows[1].abs_error < rows[0].abs_error);
        assert!((rows[0].target.to_f64() - 4.0 / std::f64::consts::PI).abs() < 1e-15);
        assert!(asymptotic_check(3, &[1], 50).is_err());
        assert!(asymptotic_check(2, &[7], 50).is_err());
    }

    #[test]
    fn pair_limit_signs() {
        assert!(pair_limit(1, 30).to_f64() > 0.0);
        assert!(pair_limit(3, 30).to_f64() < 0.0);
        assert!(pair_limit(5, 30).to_f64() > 0.0);
        let expected = -4.0 / (9.0 * std::f64::consts::PI);
        assert!((pair_limit(3, 30).to_f64() - expected).abs() < 1e-15);
    }

    #[test]
    fn coefficient_report_examples() {
        let lift = strengthen_to(&BraidSum::tau(), 13).unwrap();
        let rows = coefficient_report(&lift).unwrap();
        let tail: Vec<_> = rows.iter().skip(1).collect();
        let nums: Vec<i64> = tail.iter().map(|r| r.numerator.to_string().parse::<i64>().unwrap().abs()).collect();
        let dens: Vec<i64> = tail.iter().map(|r| r.denominator.to_string().parse().unwrap()).collect();
        assert_eq!(nums, vec![1, 3, 5, 35, 63, 231]);
        assert_eq!(dens, vec![24, 640, 7168, 294912, 2883584, 54525952]);
        assert!(rows.iter().all(|r| r.numerators_agree));
    }
}
