//! The group algebra of B₂ over the rationals.
//!
//! B₂ is infinite cyclic on the half twist `σ₁`, so a finite formal sum of
//! braids is a Laurent polynomial in `q = σ₁`. Exponent `n < 0` stands for
//! `σ̄₁^{|n|}`. The Vassiliev filtration `A₂,(j)` is realised concretely:
//! `b ∈ A₂,(j)` exactly when `(q − 1)^j` divides `b`, equivalently when the
//! moments `Σ bₙ nⁱ` vanish for `i < j`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{int, parse_rational, Rational};

/// Position of a braid sum in the Vassiliev filtration.
///
/// `Finite(j)` means `b ∈ A₂,(j) \ A₂,(j+1)`; the zero sum lies in every
/// filtration level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiltrationOrder {
    Finite(usize),
    Infinite,
}

impl FiltrationOrder {
    pub fn finite(self) -> Option<usize> {
        match self {
            FiltrationOrder::Finite(j) => Some(j),
            FiltrationOrder::Infinite => None,
        }
    }

    /// Whether the element lies in `A₂,(j)`.
    pub fn at_least(self, j: usize) -> bool {
        self >= FiltrationOrder::Finite(j)
    }
}

impl fmt::Display for FiltrationOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiltrationOrder::Finite(j) => write!(f, "{j}"),
            FiltrationOrder::Infinite => f.write_str("INFINITE"),
        }
    }
}

/// A finite rational combination of elements of B₂.
///
/// Coefficients are keyed by the exponent of `σ₁`. No stored coefficient is
/// ever zero, so structural equality is equality in the group algebra.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BraidSum {
    terms: BTreeMap<i64, Rational>,
}

impl BraidSum {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The trivial braid `e`.
    pub fn identity() -> Self {
        Self::monomial(0, Rational::one())
    }

    /// `q = σ₁`.
    pub fn q() -> Self {
        Self::monomial(1, Rational::one())
    }

    /// `p = σ̄₁ = σ₁⁻¹`.
    pub fn p() -> Self {
        Self::monomial(-1, Rational::one())
    }

    /// `τ = σ₁ − σ̄₁`.
    pub fn tau() -> Self {
        Self::pair(1)
    }

    /// The antisymmetric pair `⟨n⟩ = qⁿ − pⁿ`.
    pub fn pair(n: i64) -> Self {
        Self::from_terms([(n, Rational::one()), (-n, -Rational::one())])
    }

    pub fn monomial(exponent: i64, coeff: Rational) -> Self {
        Self::from_terms([(exponent, coeff)])
    }

    /// Builds a sum from `(exponent, coefficient)` pairs, adding repeated
    /// exponents together.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut out = Self::zero();
        for (n, c) in terms {
            out.add_term(n, c);
        }
        out
    }

    fn add_term(&mut self, exponent: i64, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exponent).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(n, c)| (*n, c))
    }

    pub fn exponents(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().copied()
    }

    /// The coefficient of `σ₁ⁿ`, zero if absent.
    pub fn coefficient(&self, n: i64) -> Rational {
        self.terms.get(&n).cloned().unwrap_or_else(Rational::zero)
    }

    /// `ca·a + cb·b`.
    pub fn combine(a: &BraidSum, ca: &Rational, b: &BraidSum, cb: &Rational) -> BraidSum {
        let mut out = a.scale(ca);
        for (n, c) in b.terms() {
            out.add_term(n, c * cb);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> BraidSum {
        if c.is_zero() {
            return Self::zero();
        }
        BraidSum {
            terms: self.terms.iter().map(|(n, v)| (*n, v * c)).collect(),
        }
    }

    /// Convolution product in the group algebra.
    pub fn multiply(&self, other: &BraidSum) -> BraidSum {
        let mut out = Self::zero();
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                out.add_term(i + j, a * b);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> BraidSum {
        (0..k).fold(Self::identity(), |acc, _| acc.multiply(self))
    }

    /// The image under the involution `q ↔ p`.
    pub fn mirror(&self) -> BraidSum {
        BraidSum {
            terms: self.terms.iter().map(|(n, c)| (-n, c.clone())).collect(),
        }
    }

    /// `Σ bₙ nⁱ`.
    pub fn moment(&self, i: u32) -> Rational {
        self.terms
            .iter()
            .map(|(n, c)| c * Rational::from_integer(num_traits::pow(BigInt::from(*n), i as usize)))
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    /// Filtration order from the vanishing of the leading moments.
    pub fn filtration_order_by_moments(&self) -> FiltrationOrder {
        let (lo, hi) = match (self.terms.keys().next(), self.terms.keys().next_back()) {
            (Some(lo), Some(hi)) => (*lo, *hi),
            _ => return FiltrationOrder::Infinite,
        };
        // Work with integer numerators over a common denominator; powers nⁱ
        // are advanced in place.
        let common = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let nodes: Vec<BigInt> = self.terms.keys().map(|n| BigInt::from(*n)).collect();
        let mut weighted: Vec<BigInt> = self
            .terms
            .values()
            .map(|c| c.numer() * (&common / c.denom()))
            .collect();
        // The multiplicity of the root q = 1 cannot exceed the degree span.
        for i in 0..=(hi - lo) as usize {
            let moment: BigInt = weighted.iter().sum();
            if !moment.is_zero() {
                return FiltrationOrder::Finite(i);
            }
            for (w, n) in weighted.iter_mut().zip(&nodes) {
                *w *= n;
            }
        }
        unreachable!("nonzero Laurent polynomial with root of multiplicity above its degree")
    }

    /// Filtration order as the multiplicity of `(q − 1)` by synthetic division.
    pub fn filtration_order_by_division(&self) -> FiltrationOrder {
        let lo = match self.terms.keys().next() {
            Some(lo) => *lo,
            None => return FiltrationOrder::Infinite,
        };
        let hi = *self.terms.keys().next_back().unwrap();
        // Ordinary polynomial q^{-lo}·b, coefficients from the top degree down.
        let mut poly: Vec<Rational> = (lo..=hi).rev().map(|n| self.coefficient(n)).collect();
        let mut order = 0;
        while poly.len() > 1 {
            let mut quotient = Vec::with_capacity(poly.len() - 1);
            let mut acc = Rational::zero();
            for c in &poly {
                acc = &acc + c;
                quotient.push(acc.clone());
            }
            let remainder = quotient.pop().unwrap();
            if !remainder.is_zero() {
                break;
            }
            poly = quotient;
            order += 1;
        }
        FiltrationOrder::Finite(order)
    }

    /// The largest `j` with `self ∈ A₂,(j)`.
    pub fn filtration_order(&self) -> FiltrationOrder {
        let by_moments = self.filtration_order_by_moments();
        debug_assert_eq!(by_moments, self.filtration_order_by_division());
        by_moments
    }

    /// Whether the sum is fixed up to sign by `q ↔ p`: `b(p) = −b(q)`.
    pub fn is_antisymmetric(&self) -> bool {
        self.mirror() == -self.clone()
    }
}

/// `τᵏ`; `τ⁰` is the identity braid.
pub fn tau_power(k: u32) -> BraidSum {
    BraidSum::tau().pow(k)
}

impl Add for &BraidSum {
    type Output = BraidSum;
    fn add(self, rhs: &BraidSum) -> BraidSum {
        BraidSum::combine(self, &Rational::one(), rhs, &Rational::one())
    }
}

impl Sub for &BraidSum {
    type Output = BraidSum;
    fn sub(self, rhs: &BraidSum) -> BraidSum {
        BraidSum::combine(self, &Rational::one(), rhs, &-Rational::one())
    }
}

impl Mul for &BraidSum {
    type Output = BraidSum;
    fn mul(self, rhs: &BraidSum) -> BraidSum {
        self.multiply(rhs)
    }
}

impl Neg for BraidSum {
    type Output = BraidSum;
    fn neg(self) -> BraidSum {
        BraidSum {
            terms: self.terms.into_iter().map(|(n, c)| (n, -c)).collect(),
        }
    }
}

/// Canonical rendering: decreasing exponents, `c*q^n` joined by ` + `.
impl fmt::Display for BraidSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (n, c)) in self.terms.iter().rev().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*q^{n}")?;
        }
        Ok(())
    }
}

/// Parses the canonical rendering, plus the shorthands `e`, `q`, `p`,
/// `tau`, `tau^k` and `pair(n)`.
impl FromStr for BraidSum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "0" => return Ok(Self::zero()),
            "e" | "1" => return Ok(Self::identity()),
            "q" | "sigma" => return Ok(Self::q()),
            "p" | "sigmabar" => return Ok(Self::p()),
            "tau" => return Ok(Self::tau()),
            _ => {}
        }
        if let Some(k) = s.strip_prefix("tau^") {
            let k: u32 = k
                .parse()
                .map_err(|_| Error::Parse(format!("bad power in {s:?}")))?;
            return Ok(tau_power(k));
        }
        if let Some(n) = s.strip_prefix("pair(").and_then(|r| r.strip_suffix(')')) {
            let n: i64 = n
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad pair index in {s:?}")))?;
            return Ok(Self::pair(n));
        }
        let mut out = Self::zero();
        for term in s.split(" + ") {
            let (coeff, power) = term
                .trim()
                .split_once("*q^")
                .ok_or_else(|| Error::Parse(format!("expected c*q^n, got {term:?}")))?;
            let n: i64 = power
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {term:?}")))?;
            out.add_term(n, parse_rational(coeff)?);
        }
        Ok(out)
    }
}

impl From<i64> for BraidSum {
    fn from(c: i64) -> Self {
        Self::monomial(0, int(c))
    }
}
