//! Extended-precision floating point used only for reporting.
//!
//! Exact values never pass through here on their way to another exact
//! value. The only consumers are comparisons against limits involving `π`
//! and the float columns of CLI tables.

use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};

use crate::scalar::Rational;

/// Default number of significant decimal digits for float columns.
pub const DEFAULT_DIGITS: usize = 50;

const RM: RoundingMode = RoundingMode::ToEven;

/// A high-precision float together with the decimal precision it was
/// requested at.
#[derive(Debug, Clone)]
pub struct Approx {
    value: BigFloat,
    digits: usize,
}

fn bits_for(digits: usize) -> usize {
    // log2(10) < 3.33; 64 guard bits absorb rounding in short chains.
    let bits = (digits as f64 * 3.33).ceil() as usize + 64;
    bits.div_ceil(64) * 64
}

fn consts() -> Consts {
    Consts::new().expect("constant cache allocation")
}

impl Approx {
    pub fn from_rational(r: &Rational, digits: usize) -> Self {
        let p = bits_for(digits);
        let mut cc = consts();
        let num = BigFloat::parse(&r.numer().to_string(), Radix::Dec, p, RM, &mut cc);
        let den = BigFloat::parse(&r.denom().to_string(), Radix::Dec, p, RM, &mut cc);
        Approx {
            value: num.div(&den, p, RM),
            digits,
        }
    }

    pub fn pi(digits: usize) -> Self {
        let p = bits_for(digits);
        Approx {
            value: consts().pi(p, RM),
            digits,
        }
    }

    pub fn digits(&self) -> usize {
        self.digits
    }

    fn bits(&self) -> usize {
        bits_for(self.digits)
    }

    pub fn add(&self, other: &Approx) -> Approx {
        self.with(self.value.add(&other.value, self.bits(), RM))
    }

    pub fn sub(&self, other: &Approx) -> Approx {
        self.with(self.value.sub(&other.value, self.bits(), RM))
    }

    pub fn mul(&self, other: &Approx) -> Approx {
        self.with(self.value.mul(&other.value, self.bits(), RM))
    }

    pub fn div(&self, other: &Approx) -> Approx {
        self.with(self.value.div(&other.value, self.bits(), RM))
    }

    pub fn abs(&self) -> Approx {
        self.with(self.value.abs())
    }

    pub fn neg(&self) -> Approx {
        self.with(self.value.neg())
    }

    fn with(&self, value: BigFloat) -> Approx {
        Approx {
            value,
            digits: self.digits,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.render(20).parse().unwrap_or(f64::NAN)
    }

    /// Scientific notation with `digits` significant digits, e.g.
    /// `1.2732395447e0`.
    pub fn render(&self, digits: usize) -> String {
        if self.value.is_zero() {
            return "0".to_string();
        }
        let raw = self
            .value
            .format(Radix::Dec, RM, &mut consts())
            .unwrap_or_else(|_| "NaN".to_string());
        round_scientific(&raw, digits.max(1)).unwrap_or(raw)
    }
}

/// Rounds a decimal string `[-]d.ddd…e±x` (as produced by astro-float) to
/// `digits` significant digits, half away from zero.
fn round_scientific(raw: &str, digits: usize) -> Option<String> {
    let (negative, body) = match raw.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, raw),
    };
    let (mantissa, exponent) = body.split_once('e')?;
    let mut exponent: i64 = exponent.trim_start_matches('+').parse().ok()?;
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let mut all: Vec<u8> = int_part
        .bytes()
        .chain(frac_part.bytes())
        .map(|b| b - b'0')
        .collect();
    // Position the decimal point after the first significant digit.
    exponent += int_part.len() as i64 - 1;
    while all.first() == Some(&0) && all.len() > 1 {
        all.remove(0);
        exponent -= 1;
    }
    if all.len() > digits {
        let round_up = all[digits] >= 5;
        all.truncate(digits);
        if round_up {
            let mut i = digits;
            loop {
                if i == 0 {
                    all.insert(0, 1);
                    all.truncate(digits);
                    exponent += 1;
                    break;
                }
                i -= 1;
                if all[i] == 9 {
                    all[i] = 0;
                } else {
                    all[i] += 1;
                    break;
                }
            }
        }
    }
    while all.len() > 1 && all.last() == Some(&0) {
        all.pop();
    }
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push((b'0' + all[0]) as char);
    if all.len() > 1 {
        out.push('.');
        out.extend(all[1..].iter().map(|d| (b'0' + d) as char));
    }
    out.push_str(&format!("e{exponent}"));
    Some(out)
}

impl PartialEq for Approx {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Approx {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value
            .cmp(&other.value)
            .map(|c| c.cmp(&0))
    }
}

impl fmt::Display for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(self.digits))
    }
}

/// `4/π` at the requested precision.
pub fn four_over_pi(digits: usize) -> Approx {
    Approx::from_rational(&crate::scalar::int(4), digits).div(&Approx::pi(digits))
}
