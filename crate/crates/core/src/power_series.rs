//! Truncated formal power series in one variable over the rationals.
//!
//! A [`Series`] of truncation order `N` stores the coefficients of
//! `t⁰, …, t^N` and nothing beyond. Binary operations on series of different
//! orders truncate to the smaller one.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{factorial, pow, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    /// Builds a series of the given order from leading coefficients; missing
    /// coefficients are zero and extra ones are dropped.
    pub fn new(order: usize, coeffs: impl IntoIterator<Item = Rational>) -> Self {
        let mut coeffs: Vec<Rational> = coeffs.into_iter().take(order + 1).collect();
        coeffs.resize(order + 1, Rational::zero());
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, [])
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::new(order, [c])
    }

    /// The variable `t` itself.
    pub fn variable(order: usize) -> Self {
        Self::monomial(1, Rational::one(), order)
    }

    pub fn monomial(degree: usize, c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        if degree <= order {
            s.coeffs[degree] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `tⁱ`; zero beyond the truncation order.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set_coeff(&mut self, i: usize, c: Rational) {
        if i <= self.order() {
            self.coeffs[i] = c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(order, self.coeffs.iter().cloned())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn add(&self, other: &Series) -> Self {
        let n = self.order().min(other.order());
        Series {
            coeffs: (0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, other: &Series) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &Series) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series { coeffs: out }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.order()), |acc, _| acc.mul(self))
    }

    /// `self(inner)`, truncated to the smaller of the two orders.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm(inner.coeffs[0].clone()));
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        // Horner from the top coefficient down.
        let mut acc = Series::zero(n);
        for c in self.coeffs.iter().take(n + 1).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// The compositional inverse `r` with `r(s) = t` through the truncation
    /// order.
    ///
    /// Solved degree by degree: once `r` is right below degree `m`, the
    /// coefficient of `t^m` in `r(s)` is off by some `c`, and subtracting
    /// `c / s₁^m · x^m` from `r` fixes it without disturbing lower degrees.
    pub fn revert(&self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NotRevertible("constant term is nonzero"));
        }
        let n = self.order();
        if n == 0 {
            return Ok(Series::zero(0));
        }
        let lead = self.coeffs[1].clone();
        if lead.is_zero() {
            return Err(Error::NotRevertible("linear coefficient is zero"));
        }
        // powers[k] = self^k
        let mut powers = vec![Series::one(n)];
        for k in 1..=n {
            let next = powers[k - 1].mul(self);
            powers.push(next);
        }
        let mut r = Series::zero(n);
        r.coeffs[1] = lead.recip();
        for m in 2..=n {
            let off = (1..m)
                .map(|k| &r.coeffs[k] * &powers[k].coeffs[m])
                .fold(Rational::zero(), |acc, x| acc + x);
            if !off.is_zero() {
                r.coeffs[m] = -off / &powers[m].coeffs[m];
            }
        }
        Ok(r)
    }
}

/// `Σ cⁱ/i! · tⁱ`, the series of `e^{ct}`.
pub fn exp_scaled(c: &Rational, order: usize) -> Series {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = Rational::one();
    for i in 0..=order {
        if i > 0 {
            term = term * c / Rational::from_integer(BigInt::from(i));
        }
        coeffs.push(term.clone());
    }
    Series { coeffs }
}

/// `e^{t/2} − e^{−t/2} = 2 sinh(t/2)`.
pub fn two_sinh_half(order: usize) -> Series {
    exp_scaled(&rat(1, 2), order).sub(&exp_scaled(&rat(-1, 2), order))
}

/// Coefficient of `x^{2k+1}` in the Taylor series of `arcsinh(x)`:
/// `(−1)ᵏ (2k)! / (4ᵏ (k!)² (2k+1))`.
pub fn arcsinh_taylor_coeff(k: u32) -> Rational {
    let num = factorial(2 * k);
    let kf = factorial(k);
    let den = num_traits::pow(BigInt::from(4), k as usize) * &kf * &kf * BigInt::from(2 * k + 1);
    let c = Rational::new(num, den);
    if k % 2 == 1 {
        -c
    } else {
        c
    }
}

/// Taylor series of `arcsinh(x)` through degree `order`.
pub fn arcsinh_taylor(order: usize) -> Series {
    let mut s = Series::zero(order);
    for k in 0.. {
        let d = 2 * k as usize + 1;
        if d > order {
            break;
        }
        s.coeffs[d] = arcsinh_taylor_coeff(k);
    }
    s
}

/// Taylor series of `2·arcsinh(x/2)` through degree `order`, from the closed
/// form of the arcsinh coefficients.
pub fn arcsinh2_closed_form(order: usize) -> Series {
    let half = rat(1, 2);
    let mut s = Series::zero(order);
    for k in 0.. {
        let d = 2 * k as usize + 1;
        if d > order {
            break;
        }
        s.coeffs[d] = arcsinh_taylor_coeff(k) * pow(&half, d as u32) * Rational::from_integer(2.into());
    }
    s
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        Series::add(self, rhs)
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        Series::sub(self, rhs)
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        Series::mul(self, rhs)
    }
}

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.scale(&-Rational::one())
    }
}

/// `c0 + c1*t + c2*t^2 + …`, nonzero terms only.
impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
