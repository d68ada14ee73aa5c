//! Finite-window diagnostics for biconvergence of sequences of braid sums.
//!
//! A sequence `b₁, b₂, …` of finite sums is biconvergent when
//!
//! - (a) every braid coefficient `X_c(bᵢ)` converges,
//! - (b) every `Zⱼ(bᵢ)` converges,
//! - (c) `bᵢ − bⱼ ∈ A₂,(i)` whenever `i < j`.
//!
//! Only a finite window of any sequence can be inspected, so every verdict
//! here is evidence and never a proof of a limit. Sequences are 1-based.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::Deserialize;

use crate::braid_ring::{BraidSum, FiltrationOrder};
use crate::error::{Error, Result};
use crate::inverse_engine::strengthen_to;
use crate::kontsevich::z_i;
use crate::regularization::tauhat_regularized_z;
use crate::scalar::{int, parse_rational, Rational};

pub const CAVEAT: &str =
    "finite-window diagnostic: verdicts are evidence about the inspected terms, not a proof of convergence";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidSumSequence {
    pub items: Vec<BraidSum>,
    pub label: String,
}

impl BraidSumSequence {
    pub fn new(label: impl Into<String>, items: Vec<BraidSum>) -> Self {
        BraidSumSequence {
            items,
            label: label.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// One-based access.
    pub fn get(&self, i: usize) -> Option<&BraidSum> {
        i.checked_sub(1).and_then(|k| self.items.get(k))
    }

    pub fn window(&self, window: usize) -> BraidSumSequence {
        BraidSumSequence::new(
            self.label.clone(),
            self.items.iter().take(window).cloned().collect(),
        )
    }

    /// Elementwise sum over the common length.
    pub fn add(&self, other: &BraidSumSequence) -> BraidSumSequence {
        BraidSumSequence::new(
            format!("{}+{}", self.label, other.label),
            self.items
                .iter()
                .zip(&other.items)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// `P₁(τ), P₃(τ), P₅(τ), …`: the strengthened lifts of odd order.
    pub fn tauhat_lifts(count: usize) -> Result<Self> {
        let full = strengthen_to(&BraidSum::tau(), 2 * count.max(1) - 1)?;
        let items = (1..=count)
            .map(|i| full.truncate(2 * i as u32 - 1).evaluate())
            .collect();
        Ok(Self::new("tauhat", items))
    }

    /// `π` times the partial sums of `(4/π) Σ (−1)ᵐ ⟨2m+1⟩/(2m+1)²`.
    pub fn tauhat_partial_sums_scaled(count: usize) -> Self {
        let mut acc = BraidSum::zero();
        let mut items = Vec::with_capacity(count);
        for m in 0..count as i64 {
            let n = 2 * m + 1;
            let sign = if m % 2 == 0 { 4 } else { -4 };
            let c = Rational::new(sign.into(), (n * n).into());
            acc = BraidSum::combine(&acc, &Rational::one(), &BraidSum::pair(n), &c);
            items.push(acc.clone());
        }
        Self::new("pi-tauhat-partial", items)
    }

    /// `(Σ_{m≤i} (−1)^{m+1}/m) · σ₁`.
    pub fn harmonic_sigma(count: usize) -> Self {
        let mut h = Rational::zero();
        let items = (1..=count as i64)
            .map(|m| {
                let term = Rational::new(1.into(), m.into());
                if m % 2 == 1 {
                    h += term;
                } else {
                    h -= term;
                }
                BraidSum::monomial(1, h.clone())
            })
            .collect();
        Self::new("harmonic", items)
    }

    pub fn constant(b: &BraidSum, count: usize) -> Self {
        Self::new("constant", vec![b.clone(); count])
    }

    /// Reads either a JSON array of term maps or an object
    /// `{"label": …, "items": [...]}`. A term map sends exponent strings to
    /// rational strings (or integers), e.g. `{"1": "1", "-1": "-1"}`.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coeff {
            Text(String),
            Int(i64),
        }
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Doc {
            Bare(Vec<std::collections::BTreeMap<String, Coeff>>),
            Labelled {
                #[serde(default)]
                label: Option<String>,
                items: Vec<std::collections::BTreeMap<String, Coeff>>,
            },
        }
        let doc: Doc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let (label, raw) = match doc {
            Doc::Bare(items) => (None, items),
            Doc::Labelled { label, items } => (label, items),
        };
        let mut items = Vec::with_capacity(raw.len());
        for map in raw {
            let mut terms = Vec::with_capacity(map.len());
            for (k, v) in map {
                let n: i64 = k
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent key {k:?}")))?;
                let c = match v {
                    Coeff::Text(s) => parse_rational(&s)?,
                    Coeff::Int(i) => int(i),
                };
                terms.push((n, c));
            }
            items.push(BraidSum::from_terms(terms));
        }
        Ok(Self::new(label.unwrap_or_else(|| "file".to_string()), items))
    }
}

/// `[X_n(bᵢ)]` over the sequence.
pub fn coefficient_trace(seq: &BraidSumSequence, n: i64) -> Vec<Rational> {
    seq.items.iter().map(|b| b.coefficient(n)).collect()
}

/// `[Zⱼ(bᵢ)]` over the sequence.
pub fn z_trace(seq: &BraidSumSequence, j: usize) -> Vec<Rational> {
    seq.items.iter().map(|b| z_i(b, j)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// Too little of the trace lies inside the window to judge.
    Insufficient,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Insufficient => "insufficient",
        }
    }
}

/// Cauchy-style judgement of a finite trace.
///
/// The trace passes when it is eventually constant, or when the sizes of
/// its increments strictly decrease over the second half of the window.
/// Traces that only become nonzero after the first eighth of the window
/// are `Insufficient`: their increments may still be growing.
pub fn judge_trace(trace: &[Rational]) -> Verdict {
    let len = trace.len();
    if len < 4 {
        return Verdict::Insufficient;
    }
    let increments: Vec<Rational> = trace.windows(2).map(|w| (&w[1] - &w[0]).abs()).collect();
    let tail = &increments[increments.len() - (len / 2).max(2)..];
    if tail.iter().all(Zero::is_zero) {
        return Verdict::Pass;
    }
    let first = trace.iter().position(|x| !x.is_zero()).unwrap_or(0);
    if first >= (len / 8).max(1) {
        return Verdict::Insufficient;
    }
    let ok = tail.windows(2).all(|w| w[1].is_zero() || w[1] < w[0]);
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionC {
    pub satisfied: bool,
    pub pairs_checked: usize,
    /// `(i, j, order of bᵢ − bⱼ)` for the first failing pair.
    pub first_violation: Option<(usize, usize, FiltrationOrder)>,
}

/// Checks `filtration_order(bᵢ − bⱼ) ≥ i` for `1 ≤ i < j ≤ window`.
pub fn filtration_condition_c(seq: &BraidSumSequence, window: usize) -> ConditionC {
    let w = window.min(seq.len());
    let mut pairs_checked = 0;
    for i in 1..=w {
        for j in i + 1..=w {
            pairs_checked += 1;
            let diff = seq.get(i).unwrap() - seq.get(j).unwrap();
            let order = diff.filtration_order();
            if !order.at_least(i) {
                return ConditionC {
                    satisfied: false,
                    pairs_checked,
                    first_violation: Some((i, j, order)),
                };
            }
        }
    }
    ConditionC {
        satisfied: true,
        pairs_checked,
        first_violation: None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRow<K> {
    pub key: K,
    pub last: Rational,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZTraceRow {
    pub j: usize,
    pub last: Rational,
    pub verdict: Verdict,
    /// `Zⱼ(bᵢ) = Zⱼ(b_{j+1})` for all `j < i ≤ window`, where that range is
    /// nonempty.
    pub stabilized: Option<bool>,
    /// Regularized limit when the caller supplies one.
    pub target: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiconvergenceReport {
    pub label: String,
    pub window: usize,
    pub coefficients: Vec<TraceRow<i64>>,
    pub z_values: Vec<ZTraceRow>,
    pub condition_a: Verdict,
    pub condition_b: Verdict,
    pub condition_c: ConditionC,
    pub caveat: &'static str,
}

fn aggregate(verdicts: impl Iterator<Item = Verdict>) -> Verdict {
    let mut any_pass = false;
    for v in verdicts {
        match v {
            Verdict::Fail => return Verdict::Fail,
            Verdict::Pass => any_pass = true,
            Verdict::Insufficient => {}
        }
    }
    if any_pass {
        Verdict::Pass
    } else {
        Verdict::Insufficient
    }
}

/// Diagnoses (a), (b) and (c) over the first `window` terms.
///
/// `targets(j)` may supply a known limit for `Zⱼ`; when it does, (b) also
/// requires the last value in the window to equal it.
pub fn biconvergence_report_with(
    seq: &BraidSumSequence,
    jmax: usize,
    window: usize,
    targets: impl Fn(usize) -> Option<Rational>,
) -> BiconvergenceReport {
    let seq = seq.window(window);
    let exponents: BTreeSet<i64> = seq.items.iter().flat_map(|b| b.exponents()).collect();
    let coefficients: Vec<TraceRow<i64>> = exponents
        .iter()
        .map(|&n| {
            let trace = coefficient_trace(&seq, n);
            TraceRow {
                key: n,
                last: trace.last().cloned().unwrap_or_else(Rational::zero),
                verdict: judge_trace(&trace),
            }
        })
        .collect();
    let z_values: Vec<ZTraceRow> = (0..=jmax)
        .map(|j| {
            let trace = z_trace(&seq, j);
            let last = trace.last().cloned().unwrap_or_else(Rational::zero);
            let stabilized = (trace.len() > j + 1).then(|| trace[j + 1..].iter().all(|x| *x == trace[j]));
            let target = targets(j);
            let mut verdict = judge_trace(&trace);
            if let Some(t) = &target {
                if verdict != Verdict::Fail && trace.len() >= 3 && last != *t {
                    verdict = Verdict::Fail;
                }
            }
            ZTraceRow {
                j,
                last,
                verdict,
                stabilized,
                target,
            }
        })
        .collect();
    let condition_a = aggregate(coefficients.iter().map(|r| r.verdict));
    let condition_b = aggregate(z_values.iter().map(|r| r.verdict));
    let condition_c = filtration_condition_c(&seq, window);
    BiconvergenceReport {
        label: seq.label.clone(),
        window: seq.len(),
        coefficients,
        z_values,
        condition_a,
        condition_b,
        condition_c,
        caveat: CAVEAT,
    }
}

pub fn biconvergence_report(seq: &BraidSumSequence, jmax: usize, window: usize) -> BiconvergenceReport {
    biconvergence_report_with(seq, jmax, window, |_| None)
}

/// Report for the strengthened-lift sequence, checking `Zⱼ` against the
/// regularized values of `Zⱼ(τ̂)`.
pub fn tauhat_report(jmax: usize, window: usize) -> Result<BiconvergenceReport> {
    let seq = BraidSumSequence::tauhat_lifts(window)?;
    Ok(biconvergence_report_with(&seq, jmax, window, |j| {
        tauhat_regularized_z(j as u32)
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Additivity {
    pub coefficients_add: bool,
    pub z_values_add: bool,
    pub exponents_checked: usize,
}

/// Checks that coefficient and `Z` traces of `b + c` are the sums of those
/// of `b` and `c`, over the first `window` terms.
pub fn additivity_check(
    b: &BraidSumSequence,
    c: &BraidSumSequence,
    jmax: usize,
    window: usize,
) -> Additivity {
    let b = b.window(window);
    let c = c.window(window);
    let sum = b.add(&c);
    let exponents: BTreeSet<i64> = b
        .items
        .iter()
        .chain(&c.items)
        .flat_map(|x| x.exponents())
        .collect();
    let add = |x: Vec<Rational>, y: Vec<Rational>| -> Vec<Rational> {
        x.into_iter().zip(y).map(|(a, b)| a + b).collect()
    };
    let coefficients_add = exponents.iter().all(|&n| {
        coefficient_trace(&sum, n) == add(coefficient_trace(&b, n), coefficient_trace(&c, n))
    });
    let z_values_add =
        (0..=jmax).all(|j| z_trace(&sum, j) == add(z_trace(&b, j), z_trace(&c, j)));
    Additivity {
        coefficients_add,
        z_values_add,
        exponents_checked: exponents.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regularization::z1_tauhat_partial;
    use crate::scalar::rat;

    #[test]
    fn coefficient_trace_over_lifts() {
        let seq = BraidSumSequence::tauhat_lifts(5).unwrap();
        let trace = coefficient_trace(&seq, 1);
        assert_eq!(
            trace,
            vec![int(1), rat(9, 8), rat(75, 64), rat(1225, 1024), rat(19845, 16384)]
        );
        let zero = coefficient_trace(&seq, 0);
        assert!(zero.iter().all(Zero::is_zero));
        let constant = BraidSumSequence::constant(&BraidSum::tau(), 3);
        assert_eq!(coefficient_trace(&constant, -1), vec![int(-1); 3]);
    }

    #[test]
    fn z_trace_examples() {
        let scaled = BraidSumSequence::tauhat_partial_sums_scaled(6);
        let expected: Vec<_> = (1..=6).map(z1_tauhat_partial).collect();
        assert_eq!(z_trace(&scaled, 1), expected);
        let pairs = BraidSumSequence::new("pairs", (1..5).map(BraidSum::pair).collect());
        assert!(z_trace(&pairs, 0).iter().all(Zero::is_zero));
        let lifts = BraidSumSequence::tauhat_lifts(6).unwrap();
        assert!(z_trace(&lifts, 2).iter().all(Zero::is_zero));
    }

    #[test]
    fn condition_c_examples() {
        let lifts = BraidSumSequence::tauhat_lifts(6).unwrap();
        assert!(filtration_condition_c(&lifts, 6).satisfied);

        let harmonic = BraidSumSequence::harmonic_sigma(6);
        let verdict = filtration_condition_c(&harmonic, 6);
        assert!(!verdict.satisfied);
        assert_eq!(verdict.first_violation, Some((1, 2, FiltrationOrder::Finite(0))));

        let constant = BraidSumSequence::constant(&BraidSum::q(), 5);
        assert!(filtration_condition_c(&constant, 5).satisfied);
    }

    #[test]
    fn report_examples() {
        let report = tauhat_report(5, 8).unwrap();
        assert_eq!(report.condition_a, Verdict::Pass);
        assert_eq!(report.condition_b, Verdict::Pass);
        assert!(report.condition_c.satisfied);

        let harmonic = biconvergence_report(&BraidSumSequence::harmonic_sigma(10), 4, 10);
        assert_eq!(harmonic.condition_a, Verdict::Pass);
        assert_eq!(harmonic.condition_b, Verdict::Pass);
        assert!(!harmonic.condition_c.satisfied);

        let constant = biconvergence_report(&BraidSumSequence::constant(&BraidSum::tau(), 6), 4, 6);
        assert_eq!(constant.condition_a, Verdict::Pass);
        assert_eq!(constant.condition_b, Verdict::Pass);
        assert!(constant.condition_c.satisfied);
    }

    #[test]
    fn diverging_sequence_fails_a() {
        let items = (1..=8).map(|i| BraidSum::monomial(1, int(i))).collect();
        let report = biconvergence_report(&BraidSumSequence::new("linear", items), 2, 8);
        assert_eq!(report.condition_a, Verdict::Fail);
    }

    #[test]
    fn additivity_examples() {
        let b = BraidSumSequence::tauhat_lifts(5).unwrap();
        let c = BraidSumSequence::harmonic_sigma(5);
        let check = additivity_check(&b, &c, 5, 5);
        assert!(check.coefficients_add && check.z_values_add);
    }

    #[test]
    fn json_sequences() {
        let bare = r#"[{"1": "1", "-1": "-1"}, {"0": 2}]"#;
        let seq = BraidSumSequence::from_json(bare).unwrap();
        assert_eq!(seq.items, vec![BraidSum::tau(), BraidSum::from(2)]);
        let labelled = r#"{"label": "x", "items": [{"3": "1/2"}]}"#;
        let seq = BraidSumSequence::from_json(labelled).unwrap();
        assert_eq!(seq.label, "x");
        assert_eq!(seq.items[0], BraidSum::monomial(3, rat(1, 2)));
        assert!(BraidSumSequence::from_json(r#"[{"a": "1"}]"#).is_err());
    }
}
