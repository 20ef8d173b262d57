//! Coefficient sequences `a_1, a_2, ...` of monotone cosine series.
//!
//! A [`CoefficientSequence`] stores a finite head `a_1..a_N` and describes
//! every later coefficient with a [`TailModel`], so sums running to infinity
//! can be evaluated with an analytic remainder. Indexing starts at 1; the
//! constant term `a_0` is taken to be zero since no difference operator of
//! positive order sees it.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{power_log_tail_integral, EXPONENT_EPS};

/// Value of a sum that may diverge. Serialises as a number or the string
/// `"divergent"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SumValue {
    Finite(f64),
    Divergent,
}

impl SumValue {
    pub fn finite(self) -> Option<f64> {
        match self {
            SumValue::Finite(v) => Some(v),
            SumValue::Divergent => None,
        }
    }

    pub fn is_divergent(self) -> bool {
        matches!(self, SumValue::Divergent)
    }

    pub fn map(self, f: impl FnOnce(f64) -> f64) -> SumValue {
        match self {
            SumValue::Finite(v) => SumValue::Finite(f(v)),
            SumValue::Divergent => SumValue::Divergent,
        }
    }

    /// Combines two values; divergence is absorbing.
    pub fn zip(self, other: SumValue, f: impl FnOnce(f64, f64) -> f64) -> SumValue {
        match (self, other) {
            (SumValue::Finite(a), SumValue::Finite(b)) => SumValue::Finite(f(a, b)),
            _ => SumValue::Divergent,
        }
    }
}

impl Serialize for SumValue {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SumValue::Finite(v) => serializer.serialize_f64(*v),
            SumValue::Divergent => serializer.serialize_str("divergent"),
        }
    }
}

impl fmt::Display for SumValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SumValue::Finite(v) => write!(f, "{v}"),
            SumValue::Divergent => f.write_str("divergent"),
        }
    }
}

/// Coefficients beyond the stored head.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case", deny_unknown_fields)]
pub enum TailModel {
    /// `a_nu = 0`.
    Zero,
    /// `a_nu = c nu^{-beta}`.
    PowerLaw { c: f64, beta: f64 },
    /// `a_nu = c nu^{-beta} (1 + ln nu)^{-gamma}`.
    PowerLog { c: f64, beta: f64, gamma: f64 },
}

impl Default for TailModel {
    fn default() -> Self {
        TailModel::Zero
    }
}

impl TailModel {
    pub fn value(&self, nu: usize) -> f64 {
        let x = nu as f64;
        match *self {
            TailModel::Zero => 0.0,
            TailModel::PowerLaw { c, beta } => c * x.powf(-beta),
            TailModel::PowerLog { c, beta, gamma } => {
                c * x.powf(-beta) * (1.0 + x.ln()).powf(-gamma)
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let check = |name, v: f64, strict: bool| {
            if !v.is_finite() || v < 0.0 || (strict && v == 0.0) {
                let bound = if strict { "positive" } else { "nonnegative" };
                Err(Error::param(name, format!("must be finite and {bound}, got {v}")))
            } else {
                Ok(())
            }
        };
        match *self {
            TailModel::Zero => Ok(()),
            TailModel::PowerLaw { c, beta } => {
                check("c", c, false)?;
                check("beta", beta, true)
            }
            TailModel::PowerLog { c, beta, gamma } => {
                check("c", c, false)?;
                check("beta", beta, false)?;
                check("gamma", gamma, false)
            }
        }
    }

    /// `(c, beta, gamma)` when the tail is not identically zero.
    fn shape(&self) -> Option<(f64, f64, f64)> {
        match *self {
            TailModel::Zero => None,
            TailModel::PowerLaw { c, .. } | TailModel::PowerLog { c, .. } if c == 0.0 => None,
            TailModel::PowerLaw { c, beta } => Some((c, beta, 0.0)),
            TailModel::PowerLog { c, beta, gamma } => Some((c, beta, gamma)),
        }
    }

    fn scaled(self, s: f64) -> Self {
        match self {
            TailModel::Zero => TailModel::Zero,
            TailModel::PowerLaw { c, beta } => TailModel::PowerLaw { c: c * s, beta },
            TailModel::PowerLog { c, beta, gamma } => TailModel::PowerLog {
                c: c * s,
                beta,
                gamma,
            },
        }
    }
}

/// Nonnegative coefficients `a_1, a_2, ...`: a stored head plus a tail model.
///
/// Construction only checks that values are finite and nonnegative;
/// monotonicity is checked separately by [`validate_monotone`] because some
/// inequalities apply to arbitrary nonnegative sequences.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSequence")]
pub struct CoefficientSequence {
    head: Vec<f64>,
    tail: TailModel,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSequence {
    head: Vec<f64>,
    #[serde(default)]
    tail: TailModel,
}

impl TryFrom<RawSequence> for CoefficientSequence {
    type Error = Error;

    fn try_from(raw: RawSequence) -> Result<Self> {
        CoefficientSequence::new(raw.head, raw.tail)
    }
}

impl CoefficientSequence {
    pub fn new(head: Vec<f64>, tail: TailModel) -> Result<Self> {
        if head.is_empty() {
            return Err(Error::param("head", "at least one stored coefficient is required"));
        }
        if let Some(pos) = head.iter().position(|a| !a.is_finite() || *a < 0.0) {
            return Err(Error::param(
                "head",
                format!("a_{} = {} is not a finite nonnegative number", pos + 1, head[pos]),
            ));
        }
        tail.validate()?;
        Ok(Self { head, tail })
    }

    /// Finite sequence: the given head followed by zeros.
    pub fn from_head(head: Vec<f64>) -> Result<Self> {
        Self::new(head, TailModel::Zero)
    }

    pub fn head(&self) -> &[f64] {
        &self.head
    }

    pub fn tail(&self) -> TailModel {
        self.tail
    }

    /// Stored horizon `N`.
    pub fn horizon(&self) -> usize {
        self.head.len()
    }

    /// `a_nu`; `a_0` is zero.
    pub fn value(&self, nu: usize) -> f64 {
        match nu {
            0 => 0.0,
            _ if nu <= self.head.len() => self.head[nu - 1],
            _ => self.tail.value(nu),
        }
    }

    /// The sequence multiplied by `s >= 0`.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        Self::new(self.head.iter().map(|a| a * s).collect(), self.tail.scaled(s))
    }

    /// Whether every coefficient past `nu` is zero.
    pub fn vanishes_after(&self, nu: usize) -> bool {
        self.tail.shape().is_none() && self.head.iter().skip(nu).all(|a| *a == 0.0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("sequence serialisation cannot fail")
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// `a_nu = c nu^{-beta}` stored up to `horizon`, with the same law as tail.
pub fn make_power_law(c: f64, beta: f64, horizon: usize) -> Result<CoefficientSequence> {
    if horizon == 0 {
        return Err(Error::param("horizon", "must be at least 1"));
    }
    let tail = TailModel::PowerLaw { c, beta };
    tail.validate()?;
    let head = (1..=horizon).map(|nu| tail.value(nu)).collect();
    CoefficientSequence::new(head, tail)
}

/// `a_nu = c nu^{-beta} (1 + ln nu)^{-gamma}` stored up to `horizon`.
pub fn make_power_log(
    c: f64,
    beta: f64,
    gamma: f64,
    horizon: usize,
) -> Result<CoefficientSequence> {
    if horizon == 0 {
        return Err(Error::param("horizon", "must be at least 1"));
    }
    let tail = TailModel::PowerLog { c, beta, gamma };
    tail.validate()?;
    let head = (1..=horizon).map(|nu| tail.value(nu)).collect();
    CoefficientSequence::new(head, tail)
}

/// Sorted uniform samples on `[0, scale)`, largest first, zero tail.
pub fn random_monotone<R: Rng + ?Sized>(
    rng: &mut R,
    len: usize,
    scale: f64,
) -> Result<CoefficientSequence> {
    if len == 0 {
        return Err(Error::param("len", "must be at least 1"));
    }
    let mut head: Vec<f64> = (0..len).map(|_| rng.gen::<f64>() * scale).collect();
    head.sort_by(|a, b| b.total_cmp(a));
    CoefficientSequence::from_head(head)
}

/// First place where `a_nu >= a_{nu+1} >= 0` (tending to zero) fails.
#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum MonotoneViolation {
    #[error("a_{index} = {value} is negative")]
    Negative { index: usize, value: f64 },
    #[error("a_{index} = {value} exceeds the previous coefficient {previous}")]
    Increase {
        index: usize,
        value: f64,
        previous: f64,
    },
    #[error("tail value a_{index} = {value} exceeds the last stored coefficient {previous}")]
    Junction {
        index: usize,
        value: f64,
        previous: f64,
    },
    #[error("tail model does not tend to zero")]
    TailNotDecaying,
}

impl MonotoneViolation {
    /// One-based index of the offending coefficient, if any.
    pub fn index(&self) -> Option<usize> {
        match *self {
            MonotoneViolation::Negative { index, .. }
            | MonotoneViolation::Increase { index, .. }
            | MonotoneViolation::Junction { index, .. } => Some(index),
            MonotoneViolation::TailNotDecaying => None,
        }
    }
}

/// Accepts a nonincreasing, nonnegative sequence tending to zero.
///
/// Equal neighbours are allowed. Tail models are nonincreasing by
/// construction, so only the head, the head-to-tail junction and the limit
/// are inspected.
pub fn validate_monotone(seq: &CoefficientSequence) -> Result<(), MonotoneViolation> {
    let mut previous = f64::INFINITY;
    for (i, &a) in seq.head.iter().enumerate() {
        let index = i + 1;
        if a < 0.0 {
            return Err(MonotoneViolation::Negative { index, value: a });
        }
        if a > previous {
            return Err(MonotoneViolation::Increase {
                index,
                value: a,
                previous,
            });
        }
        previous = a;
    }
    let junction = seq.horizon() + 1;
    let value = seq.tail.value(junction);
    if value > previous {
        return Err(MonotoneViolation::Junction {
            index: junction,
            value,
            previous,
        });
    }
    match seq.tail.shape() {
        Some((_, beta, gamma)) if beta == 0.0 && gamma == 0.0 => {
            Err(MonotoneViolation::TailNotDecaying)
        }
        _ => Ok(()),
    }
}

/// Upper end of a summation range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Upper {
    To(usize),
    Infinity,
}

/// Shape of `sum_{nu=m}^{n} a_nu^q nu^s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedSumSpec {
    pub exponent: f64,
    pub weight: f64,
    pub start: usize,
    pub end: Upper,
}

impl WeightedSumSpec {
    pub fn new(exponent: f64, weight: f64, start: usize, end: Upper) -> Result<Self> {
        if !(exponent > 0.0 && exponent.is_finite()) {
            return Err(Error::param("exponent", format!("must be positive, got {exponent}")));
        }
        if !weight.is_finite() {
            return Err(Error::param("weight", "must be finite"));
        }
        if start == 0 {
            return Err(Error::InvalidRange {
                m: start,
                n: match end {
                    Upper::To(n) => n,
                    Upper::Infinity => usize::MAX,
                },
                reason: "indices start at 1".into(),
            });
        }
        Ok(Self {
            exponent,
            weight,
            start,
            end,
        })
    }

    pub fn finite(exponent: f64, weight: f64, start: usize, end: usize) -> Result<Self> {
        Self::new(exponent, weight, start, Upper::To(end))
    }

    pub fn infinite(exponent: f64, weight: f64, start: usize) -> Result<Self> {
        Self::new(exponent, weight, start, Upper::Infinity)
    }
}

/// Relative accuracy targeted for analytic tail remainders.
const TAIL_REL_TOL: f64 = 1e-10;
/// Direct summation never runs past this index.
const TAIL_DIRECT_CAP: usize = 1 << 26;

/// `sum_{nu=m}^{n} a_nu^q nu^s`, with `n` possibly infinite.
///
/// Infinite ranges are summed directly up to a cutoff `M >= N` and closed by
/// the midpoint-shifted integral `\int_{M+1/2}^\infty` of the tail model's
/// term. `M` grows until the convexity error bound `|g'(M+1/2)|/24` of that
/// closure is below `1e-10` of the total. Divergence is decided from the tail
/// exponents and reported as [`SumValue::Divergent`]. An empty finite range
/// (`n < m`) sums to zero.
pub fn weighted_sum(seq: &CoefficientSequence, spec: &WeightedSumSpec) -> SumValue {
    let q = spec.exponent;
    let s = spec.weight;
    let term = |nu: usize| {
        let a = seq.value(nu);
        if a == 0.0 {
            0.0
        } else {
            a.powf(q) * (nu as f64).powf(s)
        }
    };
    let n = match spec.end {
        Upper::To(n) => return SumValue::Finite((spec.start..=n).map(term).sum()),
        Upper::Infinity => spec.start,
    };
    let head_end = seq.horizon();
    let Some((c, beta, gamma)) = seq.tail.shape() else {
        return SumValue::Finite((n..=head_end).map(term).sum());
    };
    // Tail term: c^q x^{-decay} (1 + ln x)^{-log_decay}.
    let decay = q * beta - s;
    let log_decay = q * gamma;
    let converges = decay > 1.0 + EXPONENT_EPS
        || ((decay - 1.0).abs() <= EXPONENT_EPS && log_decay > 1.0 + EXPONENT_EPS);
    if !converges {
        return SumValue::Divergent;
    }
    let scale = c.powf(q);
    let tail_term = |x: f64| scale * x.powf(-decay) * (1.0 + x.ln()).powf(-log_decay);
    let mut cutoff = head_end.max(n - 1);
    let mut partial: f64 = (n..=cutoff).map(term).sum();
    loop {
        let x0 = cutoff as f64 + 0.5;
        let remainder = scale * power_log_tail_integral(x0, decay, log_decay);
        let slope = tail_term(x0) * (decay + log_decay / (1.0 + x0.ln())) / x0;
        let error = slope / 24.0;
        let total = partial + remainder;
        if error <= TAIL_REL_TOL * total || cutoff >= TAIL_DIRECT_CAP {
            return SumValue::Finite(total);
        }
        let next = (2 * cutoff).max(cutoff + 64);
        partial += (cutoff + 1..=next).map(term).sum::<f64>();
        cutoff = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn power_law_head_values() {
        let s = make_power_law(1.0, 1.0, 3).unwrap();
        assert_eq!(s.head(), &[1.0, 0.5, 1.0 / 3.0]);
        assert_eq!(s.tail(), TailModel::PowerLaw { c: 1.0, beta: 1.0 });
        assert!(validate_monotone(&s).is_ok());

        let zero = make_power_law(0.0, 2.0, 5).unwrap();
        assert!(zero.head().iter().all(|a| *a == 0.0));
        assert!(validate_monotone(&zero).is_ok());

        let half = make_power_law(1.0, 0.5, 4).unwrap();
        let expect = [1.0, 0.7071067811865476, 0.5773502691896258, 0.5];
        for (a, e) in half.head().iter().zip(expect) {
            assert!(close(*a, e, 1e-15));
        }
    }

    #[test]
    fn power_law_rejects_bad_parameters() {
        assert!(make_power_law(1.0, 0.0, 3).is_err());
        assert!(make_power_law(1.0, -1.0, 3).is_err());
        assert!(make_power_law(-1.0, 1.0, 3).is_err());
        assert!(make_power_law(1.0, 1.0, 0).is_err());
    }

    #[test]
    fn monotone_validation() {
        let ok = CoefficientSequence::from_head(vec![1.0, 0.5, 0.25]).unwrap();
        assert!(validate_monotone(&ok).is_ok());

        let bad = CoefficientSequence::from_head(vec![1.0, 2.0, 0.5]).unwrap();
        let err = validate_monotone(&bad).unwrap_err();
        assert_eq!(err.index(), Some(2));

        let flat = CoefficientSequence::new(
            vec![0.5, 0.5, 0.5],
            TailModel::PowerLaw { c: 0.5, beta: 1.0 },
        )
        .unwrap();
        assert!(close(flat.value(4), 0.125, 1e-15));
        assert!(validate_monotone(&flat).is_ok());

        let jump = CoefficientSequence::new(vec![0.1], TailModel::PowerLaw { c: 1.0, beta: 1.0 })
            .unwrap();
        assert_eq!(validate_monotone(&jump).unwrap_err().index(), Some(2));

        let flat_tail = CoefficientSequence::new(
            vec![1.0],
            TailModel::PowerLog {
                c: 0.5,
                beta: 0.0,
                gamma: 0.0,
            },
        )
        .unwrap();
        assert_eq!(
            validate_monotone(&flat_tail).unwrap_err(),
            MonotoneViolation::TailNotDecaying
        );
    }

    #[test]
    fn construction_rejects_negative_or_nan() {
        assert!(CoefficientSequence::from_head(vec![]).is_err());
        assert!(CoefficientSequence::from_head(vec![1.0, -0.1]).is_err());
        assert!(CoefficientSequence::from_head(vec![f64::NAN]).is_err());
    }

    #[test]
    fn finite_weighted_sums() {
        let ones = CoefficientSequence::from_head(vec![1.0; 3]).unwrap();
        let spec = WeightedSumSpec::finite(1.0, 0.0, 1, 3).unwrap();
        assert_eq!(weighted_sum(&ones, &spec), SumValue::Finite(3.0));

        let halves = CoefficientSequence::from_head(vec![1.0, 0.5, 0.25]).unwrap();
        let spec = WeightedSumSpec::finite(2.0, 1.0, 1, 3).unwrap();
        assert_eq!(weighted_sum(&halves, &spec), SumValue::Finite(1.6875));
    }

    /// Direct summation of `nu^{-2}` to 10^7 terms closed by the integral
    /// bracket `[1/(N+1), 1/N]` for the remainder.
    fn basel_oracle() -> f64 {
        let n = 10_000_000u64;
        let mut s = 0.0;
        for nu in (1..=n).rev() {
            s += 1.0 / (nu as f64 * nu as f64);
        }
        let lo = 1.0 / (n as f64 + 1.0);
        let hi = 1.0 / n as f64;
        s + 0.5 * (lo + hi)
    }

    #[test]
    fn infinite_power_law_sum() {
        let seq = make_power_law(1.0, 2.0, 10).unwrap();
        let spec = WeightedSumSpec::infinite(1.0, 0.0, 1).unwrap();
        let v = weighted_sum(&seq, &spec).finite().unwrap();
        let oracle = basel_oracle();
        assert!(close(v, oracle, 1e-6), "{v} vs {oracle}");
        assert!(close(v, std::f64::consts::PI.powi(2) / 6.0, 1e-9));
    }

    #[test]
    fn divergence_is_a_value() {
        let seq = make_power_law(1.0, 1.0, 10).unwrap();
        let spec = WeightedSumSpec::infinite(1.0, 0.0, 1).unwrap();
        assert_eq!(weighted_sum(&seq, &spec), SumValue::Divergent);

        // ν^{-1} (1 + ln ν)^{-2} converges at the critical power.
        let seq = make_power_log(1.0, 1.0, 2.0, 10).unwrap();
        assert!(!weighted_sum(&seq, &spec).is_divergent());
        let seq = make_power_log(1.0, 1.0, 1.0, 10).unwrap();
        assert!(weighted_sum(&seq, &spec).is_divergent());
    }

    #[test]
    fn power_log_tail_matches_long_direct_sum() {
        let seq = make_power_log(1.0, 1.5, 2.0, 4).unwrap();
        let spec = WeightedSumSpec::infinite(1.0, 0.0, 1).unwrap();
        let v = weighted_sum(&seq, &spec).finite().unwrap();
        // Direct sum to 4e6 plus a bracketed integral remainder.
        let n = 4_000_000usize;
        let direct: f64 = (1..=n).rev().map(|nu| seq.value(nu)).sum();
        let lo = power_log_tail_integral(n as f64 + 1.0, 1.5, 2.0);
        let hi = power_log_tail_integral(n as f64, 1.5, 2.0);
        let oracle = direct + 0.5 * (lo + hi);
        assert!(close(v, oracle, 1e-9), "{v} vs {oracle}");
    }

    #[test]
    fn json_literal_round_trip() {
        let text = r#"{"head": [1.0, 0.5], "tail": {"variant": "power_law", "c": 1.0, "beta": 1.0}}"#;
        let seq = CoefficientSequence::from_json(text).unwrap();
        assert_eq!(seq.tail(), TailModel::PowerLaw { c: 1.0, beta: 1.0 });
        assert_eq!(CoefficientSequence::from_json(&seq.to_json()).unwrap(), seq);

        let bare = CoefficientSequence::from_json(r#"{"head": [2.0]}"#).unwrap();
        assert_eq!(bare.tail(), TailModel::Zero);
        assert!(CoefficientSequence::from_json(r#"{"head": [1.0], "tial": {}}"#).is_err());
        assert!(CoefficientSequence::from_json(r#"{"head": [-1.0]}"#).is_err());
    }

    fn monotone_head() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(0.0f64..10.0, 1..40).prop_map(|mut v| {
            v.sort_by(|a, b| b.total_cmp(a));
            v
        })
    }

    proptest! {
        #[test]
        fn sums_are_monotone_in_the_sequence(
            head in monotone_head(),
            factors in prop::collection::vec(0.0f64..1.0, 40),
            q in 0.2f64..3.0,
            s in -2.0f64..2.0,
        ) {
            let big = CoefficientSequence::from_head(head.clone()).unwrap();
            // Pointwise smaller and still monotone: scale by a running minimum.
            let mut run = 1.0f64;
            let small: Vec<f64> = head.iter().zip(&factors).map(|(a, f)| { run = run.min(*f); a * run }).collect();
            let small = CoefficientSequence::from_head(small).unwrap();
            let spec = WeightedSumSpec::finite(q, s, 1, head.len()).unwrap();
            let lo = weighted_sum(&small, &spec).finite().unwrap();
            let hi = weighted_sum(&big, &spec).finite().unwrap();
            prop_assert!(lo <= hi * (1.0 + 1e-12));
        }

        #[test]
        fn sums_are_additive_over_ranges(
            beta in 1.2f64..3.0,
            m in 1usize..20,
            split in 0usize..50,
            len in 1usize..50,
        ) {
            let seq = make_power_law(1.0, beta, 16).unwrap();
            let n = m + split;
            let big_m = n + len;
            let whole = weighted_sum(&seq, &WeightedSumSpec::finite(1.0, 0.0, m, big_m).unwrap()).finite().unwrap();
            let left = weighted_sum(&seq, &WeightedSumSpec::finite(1.0, 0.0, m, n).unwrap()).finite().unwrap();
            let right = weighted_sum(&seq, &WeightedSumSpec::finite(1.0, 0.0, n + 1, big_m).unwrap()).finite().unwrap();
            prop_assert!(((left + right) - whole).abs() <= 1e-12 * whole);
        }

        #[test]
        fn infinite_sums_do_not_depend_on_the_horizon(
            beta in 0.8f64..3.0,
            q in 1.0f64..2.0,
            horizon in 4usize..200,
            log in prop::bool::ANY,
        ) {
            let make = |n| if log { make_power_log(1.0, beta, 1.5, n) } else { make_power_law(1.0, beta, n) };
            let spec = WeightedSumSpec::infinite(q, 0.0, 1).unwrap();
            let a = weighted_sum(&make(horizon).unwrap(), &spec);
            let b = weighted_sum(&make(2 * horizon).unwrap(), &spec);
            match (a, b) {
                (SumValue::Finite(x), SumValue::Finite(y)) => prop_assert!((x - y).abs() <= 1e-8 * y),
                (x, y) => prop_assert_eq!(x, y),
            }
        }
    }
}
