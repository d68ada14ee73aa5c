//! Abel values of the divergent alternating odd-power sums.
//!
//! `Σₘ (−1)ᵐ (2m+1)ᵏ x^{2m+1} = θᵏ(x/(1+x²))` with `θ = x·d/dx`, and the
//! right-hand side is a rational function that is finite at `x = 1`. Its
//! value there is the Abel sum of `1ᵏ − 3ᵏ + 5ᵏ − …`, i.e. the Dirichlet
//! beta function at `−k`. Everything is carried out exactly.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{int, Rational};

/// `numerator(x) / (1 + x²)^denominator_power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunctionRep {
    numerator: Vec<Rational>,
    denominator_power: u32,
}

impl RationalFunctionRep {
    /// The generating function `x / (1 + x²)`.
    pub fn generating() -> Self {
        RationalFunctionRep {
            numerator: vec![Rational::zero(), Rational::one()],
            denominator_power: 1,
        }
    }

    pub fn numerator(&self) -> &[Rational] {
        &self.numerator
    }

    pub fn denominator_power(&self) -> u32 {
        self.denominator_power
    }

    /// `θ = x·d/dx`:
    /// `θ(P/(1+x²)ᵏ) = (x P′ (1+x²) − 2k x² P) / (1+x²)^{k+1}`.
    pub fn theta(&self) -> Self {
        let k = int(i64::from(self.denominator_power));
        let p = &self.numerator;
        let mut out = vec![Rational::zero(); p.len() + 2];
        for (i, c) in p.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // x P′ contributes i·c·xⁱ, times (1 + x²).
            let d = c * int(i as i64);
            out[i] += &d;
            out[i + 2] += &d;
            out[i + 2] -= c * &k * int(2);
        }
        while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        RationalFunctionRep {
            numerator: out,
            denominator_power: self.denominator_power + 1,
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let num = self
            .numerator
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c);
        let base = Rational::one() + x * x;
        num / crate::scalar::pow(&base, self.denominator_power)
    }

    /// Whether the numerator contains only odd powers of `x`.
    pub fn numerator_is_odd(&self) -> bool {
        self.numerator
            .iter()
            .enumerate()
            .all(|(i, c)| i % 2 == 1 || c.is_zero())
    }
}

/// `θᵏ(x/(1+x²))`.
pub fn theta_power(k: u32) -> RationalFunctionRep {
    (0..k).fold(RationalFunctionRep::generating(), |f, _| f.theta())
}

/// The Abel value of `1ᵏ − 3ᵏ + 5ᵏ − 7ᵏ + …`, which is `β(−k)`.
pub fn theta_value(k: u32) -> Rational {
    theta_power(k).eval(&Rational::one())
}

/// `2^{s−3} s! π Z_s(τ̂)` for odd `s ≥ 3`.
///
/// Writing `τ̂ = (4/π) Σ (−1)ᵐ ⟨2m+1⟩ / (2m+1)²` and
/// `Z_s(⟨n⟩) = 2 (n/2)ˢ / s!`, the factors of `π`, `2` and `s!` cancel and
/// the left side reduces to the regularized `Σ (−1)ᵐ (2m+1)^{s−2}`.
pub fn beta_relation_lhs(s: u32) -> Result<Rational> {
    if s < 3 || s.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "the beta relation is stated for odd s >= 3, got {s}"
        )));
    }
    Ok(theta_value(s - 2))
}

/// `Σ_{m<r} (−1)ᵐ / (2m+1)`.
///
/// Summed by binary splitting over the unreduced product of denominators,
/// with a single reduction at the end.
pub fn leibniz_partial(r: usize) -> Rational {
    fn split(a: u64, b: u64) -> (BigInt, BigInt) {
        if b - a == 1 {
            let sign = if a.is_multiple_of(2) { 1 } else { -1 };
            return (BigInt::from(sign), BigInt::from(2 * a + 1));
        }
        let mid = a + (b - a) / 2;
        let (p1, q1) = split(a, mid);
        let (p2, q2) = split(mid, b);
        (p1 * &q2 + p2 * &q1, q1 * q2)
    }
    if r == 0 {
        return Rational::zero();
    }
    let (p, q) = split(0, r as u64);
    Rational::new(p, q)
}

/// `π · Z₁` of the first `r` terms of `τ̂`, i.e. `4 · leibniz_partial(r)`.
pub fn z1_tauhat_partial(r: usize) -> Rational {
    leibniz_partial(r) * int(4)
}

/// The regularized value of `Z_j(τ̂)` when it is rational.
///
/// Even `j` vanish by antisymmetry, `j = 1` gives `1` by Leibniz, and odd
/// `j ≥ 3` give `β(2−j) / (2^{j−3} j! π)`, which is rational only when the
/// Abel value vanishes.
pub fn tauhat_regularized_z(j: u32) -> Option<Rational> {
    match j {
        _ if j.is_multiple_of(2) => Some(Rational::zero()),
        1 => Some(Rational::one()),
        _ => {
            let beta = theta_value(j - 2);
            beta.is_zero().then(Rational::zero)
        }
    }
}
