//! Discrete Hardy-type inequalities for weighted partial sums.
//!
//! Every inequality here compares a weighted sum of partial sums of `a_nu`
//! with the correspondingly weighted sum of the terms themselves, e.g.
//!
//! ```text
//! sum_{mu=m}^{n} mu^{alpha-1} (sum_{nu=mu}^{n} a_nu nu^lambda)^p
//!     <= C sum_{mu=m}^{n} mu^{alpha-1} (a_mu mu^{lambda+1})^p      (p >= 1)
//! ```
//!
//! The constants are never given numerically, so each check produces a
//! [`RatioReport`] and sweeps over sequences and ranges measure how far the
//! ratio moves. Evaluators use running prefix/suffix sums; the test suite
//! compares them against nested loops.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequences::{
    make_power_law, make_power_log, random_monotone, validate_monotone, CoefficientSequence,
};

/// `(alpha, lambda, p, m, n)` with `alpha > 0`, `p > 0` and `1 <= m < n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HardyParams {
    pub alpha: f64,
    pub lambda: f64,
    pub p: f64,
    pub m: usize,
    pub n: usize,
}

impl HardyParams {
    pub fn new(alpha: f64, lambda: f64, p: f64, m: usize, n: usize) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::param("alpha", format!("must be positive, got {alpha}")));
        }
        if !lambda.is_finite() {
            return Err(Error::param("lambda", "must be finite"));
        }
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::param("p", format!("must be positive, got {p}")));
        }
        if m == 0 || m >= n {
            return Err(Error::InvalidRange {
                m,
                n,
                reason: "need 1 <= m < n".into(),
            });
        }
        Ok(Self {
            alpha,
            lambda,
            p,
            m,
            n,
        })
    }
}

/// Which side the inequality bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    /// `lhs <= C rhs`.
    Upper,
    /// `lhs >= C rhs`.
    Lower,
    /// `c rhs <= lhs <= C rhs`.
    TwoSided,
}

/// `lhs`, `rhs` and `lhs / rhs` for one instance of an inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioReport {
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs / rhs`, undefined when `rhs == 0`.
    pub ratio: Option<f64>,
    pub bound: Bound,
    /// The instance contradicts the inequality for every positive constant.
    pub violated: bool,
}

impl RatioReport {
    pub fn new(lhs: f64, rhs: f64, bound: Bound) -> Self {
        let ratio = (rhs > 0.0).then(|| lhs / rhs);
        let violated = match bound {
            Bound::Upper => rhs == 0.0 && lhs > 0.0,
            Bound::Lower | Bound::TwoSided => lhs == 0.0 && rhs > 0.0,
        };
        Self {
            lhs,
            rhs,
            ratio,
            bound,
            violated,
        }
    }

    /// The ratio turned so that the inequality reads `oriented >= c > 0`:
    /// `rhs / lhs` for upper bounds, `lhs / rhs` otherwise.
    pub fn oriented(&self) -> Option<f64> {
        match self.bound {
            Bound::Upper => (self.lhs > 0.0).then(|| self.rhs / self.lhs),
            Bound::Lower | Bound::TwoSided => self.ratio,
        }
    }
}

/// Partial sums running to the end (`sum_{nu=mu}^{n}`) or from the start
/// (`sum_{nu=m}^{mu}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Form {
    Tail,
    Head,
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::Tail => "tail",
            Form::Head => "head",
        })
    }
}

impl FromStr for Form {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "tail" => Ok(Form::Tail),
            "head" => Ok(Form::Head),
            other => Err(format!("unknown form `{other}` (expected tail or head)")),
        }
    }
}

/// The inequalities that can be checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaId {
    /// `(sum a^beta)^{1/beta} <= (sum a^alpha)^{1/alpha}` for `alpha < beta`.
    Jensen,
    /// Partial-sum bound from above, `p >= 1`, any nonnegative sequence.
    LpUpper,
    /// Partial-sum bound from below, `0 < p <= 1`, any nonnegative sequence.
    LpLower,
    /// Converse of [`LpUpper`](Self::LpUpper) for monotone sequences, `p >= 1`, `n >= 16m`.
    LpConverseUpper,
    /// Converse of [`LpLower`](Self::LpLower) for monotone sequences, `0 < p <= 1`, `n >= 4m`.
    LpConverseLower,
    /// Two-sided bound over `1..n` for monotone sequences, tail partial sums.
    LpCompleteTail,
    /// Two-sided bound over `1..n` for monotone sequences, head partial sums.
    LpCompleteHead,
}

impl LemmaId {
    pub const ALL: [LemmaId; 7] = [
        LemmaId::Jensen,
        LemmaId::LpUpper,
        LemmaId::LpLower,
        LemmaId::LpConverseUpper,
        LemmaId::LpConverseLower,
        LemmaId::LpCompleteTail,
        LemmaId::LpCompleteHead,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::Jensen => "jensen",
            LemmaId::LpUpper => "lp_upper",
            LemmaId::LpLower => "lp_lower",
            LemmaId::LpConverseUpper => "lp_converse_upper",
            LemmaId::LpConverseLower => "lp_converse_lower",
            LemmaId::LpCompleteTail => "lp_complete_tail",
            LemmaId::LpCompleteHead => "lp_complete_head",
        }
    }

    /// The partial-sum form the lemma is fixed to, if any.
    pub fn fixed_form(self) -> Option<Form> {
        match self {
            LemmaId::LpCompleteTail => Some(Form::Tail),
            LemmaId::LpCompleteHead => Some(Form::Head),
            _ => None,
        }
    }

    pub fn bound(self) -> Bound {
        match self {
            LemmaId::Jensen | LemmaId::LpUpper | LemmaId::LpConverseLower => Bound::Upper,
            LemmaId::LpLower | LemmaId::LpConverseUpper => Bound::Lower,
            LemmaId::LpCompleteTail | LemmaId::LpCompleteHead => Bound::TwoSided,
        }
    }

    fn requires_monotone(self) -> bool {
        matches!(
            self,
            LemmaId::LpConverseUpper
                | LemmaId::LpConverseLower
                | LemmaId::LpCompleteTail
                | LemmaId::LpCompleteHead
        )
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LemmaId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        LemmaId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| format!("unknown lemma `{s}`"))
    }
}

/// `sum_{nu=mu}^{n} a_nu nu^lambda`.
pub fn inner_tail(seq: &CoefficientSequence, lambda: f64, mu: usize, n: usize) -> Result<f64> {
    if mu == 0 || mu > n {
        return Err(Error::InvalidRange {
            m: mu,
            n,
            reason: "need 1 <= mu <= n".into(),
        });
    }
    Ok((mu..=n).map(|nu| seq.value(nu) * (nu as f64).powf(lambda)).sum())
}

/// Left- and right-hand sides of one inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SumPair {
    pub lhs: f64,
    pub rhs: f64,
}

fn term(seq: &CoefficientSequence, lambda: f64, nu: usize) -> f64 {
    seq.value(nu) * (nu as f64).powf(lambda)
}

/// `sum_{mu=rhs_from}^{n} mu^{w} (a_mu mu^{lambda+1})^p`.
fn diagonal_sum(seq: &CoefficientSequence, w: f64, lambda: f64, p: f64, from: usize, n: usize) -> f64 {
    (from..=n)
        .map(|mu| {
            let x = mu as f64;
            x.powf(w) * (seq.value(mu) * x.powf(lambda + 1.0)).powf(p)
        })
        .sum()
}

/// `lhs = sum_{mu=outer}^{n} mu^{alpha-1} (sum_{nu=mu}^{n} a_nu nu^lambda)^p`,
/// `rhs = sum_{mu=rhs_from}^{n} mu^{alpha-1} (a_mu mu^{lambda+1})^p`.
fn tail_sums(seq: &CoefficientSequence, hp: &HardyParams, outer: usize, rhs_from: usize) -> SumPair {
    let w = hp.alpha - 1.0;
    let mut inner = 0.0;
    let mut lhs = 0.0;
    for mu in (outer..=hp.n).rev() {
        inner += term(seq, hp.lambda, mu);
        lhs += (mu as f64).powf(w) * inner.powf(hp.p);
    }
    SumPair {
        lhs,
        rhs: diagonal_sum(seq, w, hp.lambda, hp.p, rhs_from, hp.n),
    }
}

/// `lhs = sum_{mu=outer}^{n} mu^{-alpha-1} (sum_{nu=inner_from}^{mu} a_nu nu^lambda)^p`,
/// `rhs = sum_{mu=rhs_from}^{n} mu^{-alpha-1} (a_mu mu^{lambda+1})^p`.
fn head_sums(
    seq: &CoefficientSequence,
    hp: &HardyParams,
    outer: usize,
    inner_from: usize,
    rhs_from: usize,
) -> SumPair {
    let w = -hp.alpha - 1.0;
    let mut inner: f64 = (inner_from..outer).map(|nu| term(seq, hp.lambda, nu)).sum();
    let mut lhs = 0.0;
    for mu in outer..=hp.n {
        inner += term(seq, hp.lambda, mu);
        lhs += (mu as f64).powf(w) * inner.powf(hp.p);
    }
    SumPair {
        lhs,
        rhs: diagonal_sum(seq, w, hp.lambda, hp.p, rhs_from, hp.n),
    }
}

/// Tail-form pair over `m..n`.
pub fn hardy_tail_pair(seq: &CoefficientSequence, hp: &HardyParams) -> SumPair {
    tail_sums(seq, hp, hp.m, hp.m)
}

/// Head-form pair over `m..n`.
pub fn hardy_head_pair(seq: &CoefficientSequence, hp: &HardyParams) -> SumPair {
    head_sums(seq, hp, hp.m, hp.m, hp.m)
}

fn form_for(lemma: LemmaId, form: Form) -> Form {
    lemma.fixed_form().unwrap_or(form)
}

/// Both sides of `lemma` exactly as displayed, with its index offsets
/// (`8m`, `4m`) and ranges, but without checking its side conditions.
///
/// For [`LemmaId::Jensen`] the exponents are `alpha` (smaller) and `p`
/// (larger) and the sums run over `1..n`. The complete forms run over
/// `1..n` and ignore `m`.
pub fn lemma_pair(lemma: LemmaId, form: Form, seq: &CoefficientSequence, hp: &HardyParams) -> SumPair {
    let m = hp.m;
    match (lemma, form_for(lemma, form)) {
        (LemmaId::Jensen, _) => {
            let power_sum = |q: f64| (1..=hp.n).map(|nu| seq.value(nu).powf(q)).sum::<f64>();
            SumPair {
                lhs: power_sum(hp.p).powf(1.0 / hp.p),
                rhs: power_sum(hp.alpha).powf(1.0 / hp.alpha),
            }
        }
        (LemmaId::LpUpper | LemmaId::LpLower, Form::Tail) => tail_sums(seq, hp, m, m),
        (LemmaId::LpUpper | LemmaId::LpLower, Form::Head) => head_sums(seq, hp, m, m, m),
        (LemmaId::LpConverseUpper, Form::Tail) => tail_sums(seq, hp, m, 8 * m),
        (LemmaId::LpConverseUpper, Form::Head) => head_sums(seq, hp, m, m, 4 * m),
        (LemmaId::LpConverseLower, Form::Tail) => tail_sums(seq, hp, 4 * m, m),
        (LemmaId::LpConverseLower, Form::Head) => head_sums(seq, hp, 4 * m, 4 * m, m),
        (LemmaId::LpCompleteTail, _) => tail_sums(seq, hp, 1, 1),
        (LemmaId::LpCompleteHead, _) => head_sums(seq, hp, 1, 1, 1),
    }
}

fn side_condition(lemma: LemmaId, reason: String) -> Error {
    Error::SideCondition {
        lemma: lemma.name(),
        reason,
    }
}

fn check_side_conditions(lemma: LemmaId, seq: &CoefficientSequence, hp: &HardyParams) -> Result<()> {
    let (p, m, n) = (hp.p, hp.m, hp.n);
    match lemma {
        LemmaId::Jensen if hp.alpha >= p => {
            return Err(side_condition(lemma, format!("need alpha < beta, got {} >= {p}", hp.alpha)));
        }
        LemmaId::LpUpper | LemmaId::LpConverseUpper if p < 1.0 => {
            return Err(side_condition(lemma, format!("need p >= 1, got {p}")));
        }
        LemmaId::LpLower | LemmaId::LpConverseLower if p > 1.0 => {
            return Err(side_condition(lemma, format!("need p <= 1, got {p}")));
        }
        LemmaId::LpConverseUpper if n < 16 * m => {
            return Err(side_condition(lemma, format!("need n >= 16m, got n = {n}, m = {m}")));
        }
        LemmaId::LpConverseLower if n < 4 * m => {
            return Err(side_condition(lemma, format!("need n >= 4m, got n = {n}, m = {m}")));
        }
        _ => {}
    }
    if lemma.requires_monotone() {
        validate_monotone(seq)?;
    }
    Ok(())
}

/// One checked instance of an inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LemmaCheck {
    pub lemma: LemmaId,
    pub form: Form,
    pub params: HardyParams,
    pub report: RatioReport,
}

/// Evaluates `lemma` after checking its side conditions.
///
/// Jensen's inequality has the known constant 1, so an instance with
/// `lhs > rhs` beyond rounding is flagged as violated as well.
pub fn verify_lemma(
    lemma: LemmaId,
    form: Form,
    seq: &CoefficientSequence,
    hp: &HardyParams,
) -> Result<LemmaCheck> {
    check_side_conditions(lemma, seq, hp)?;
    let pair = lemma_pair(lemma, form, seq, hp);
    let mut report = RatioReport::new(pair.lhs, pair.rhs, lemma.bound());
    if lemma == LemmaId::Jensen && pair.lhs > pair.rhs * (1.0 + 1e-12) {
        report.violated = true;
    }
    Ok(LemmaCheck {
        lemma,
        form: form_for(lemma, form),
        params: *hp,
        report,
    })
}

/// Min, max and median of a ratio family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BandStats {
    pub count: usize,
    pub min: f64,
    pub max: f64,
    pub median: f64,
}

impl BandStats {
    /// `None` when `values` is empty.
    pub fn from_values(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let k = v.len();
        let median = if k % 2 == 1 {
            v[k / 2]
        } else {
            0.5 * (v[k / 2 - 1] + v[k / 2])
        };
        Some(Self {
            count: k,
            min: v[0],
            max: v[k - 1],
            median,
        })
    }

    /// `max / min`, the width of the band.
    pub fn spread(&self) -> f64 {
        self.max / self.min
    }
}

/// Sequences drawn for a sweep; each is stored up to the sweep's `n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum SequenceFamily {
    /// `a_nu = nu^{-beta}` for each listed `beta`.
    PowerLaw { betas: Vec<f64> },
    /// `a_nu = nu^{-beta} (1 + ln nu)^{-gamma}` for each listed `beta`.
    PowerLog { betas: Vec<f64>, gamma: f64 },
    /// `trials` sorted uniform samples per `n`, seeded.
    RandomMonotone { seed: u64 },
    /// The zero sequence; every ratio is undefined.
    Zero,
}

/// Fixed `(alpha, lambda, p, m)` with a list of `n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HardyFamily {
    pub alpha: f64,
    pub lambda: f64,
    pub p: f64,
    pub m: usize,
    pub n_grid: Vec<usize>,
}

/// One evaluated instance of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    /// Family member, e.g. `beta=0.5` or `trial=3`.
    pub member: String,
    pub check: LemmaCheck,
}

/// All instances of a sweep with statistics of the oriented ratios.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub lemma: LemmaId,
    pub form: Form,
    pub rows: Vec<SweepRow>,
    /// Statistics of [`RatioReport::oriented`] over rows where it is defined.
    pub stats: Option<BandStats>,
    /// Instances whose ratio is undefined (`0/0`).
    pub skipped: usize,
    /// Instances rejected before evaluation, with reasons.
    pub errors: Vec<String>,
}

impl SweepReport {
    pub fn violations(&self) -> usize {
        self.rows.iter().filter(|r| r.check.report.violated).count()
    }
}

fn family_members(
    family: &SequenceFamily,
    n: usize,
    trials: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<(String, Result<CoefficientSequence>)> {
    match family {
        SequenceFamily::PowerLaw { betas } => betas
            .iter()
            .map(|&b| (format!("beta={b}"), make_power_law(1.0, b, n)))
            .collect(),
        SequenceFamily::PowerLog { betas, gamma } => betas
            .iter()
            .map(|&b| (format!("beta={b};gamma={gamma}"), make_power_log(1.0, b, *gamma, n)))
            .collect(),
        SequenceFamily::RandomMonotone { .. } => (0..trials)
            .map(|t| (format!("trial={t}"), random_monotone(rng, n, 1.0)))
            .collect(),
        SequenceFamily::Zero => vec![("zero".into(), CoefficientSequence::from_head(vec![0.0; n]))],
    }
}

/// Sweeps `lemma` over `hp_family.n_grid` and the members of `sequences`,
/// measuring the band of oriented ratios.
///
/// `trials` is the number of draws per `n` for the random family. Instances
/// that fail their side conditions are recorded in `errors` and skipped.
pub fn estimate_constant(
    lemma: LemmaId,
    form: Form,
    hp_family: &HardyFamily,
    sequences: &SequenceFamily,
    trials: usize,
) -> Result<SweepReport> {
    if trials == 0 {
        return Err(Error::param("trials", "must be at least 1"));
    }
    let seed = match sequences {
        SequenceFamily::RandomMonotone { seed } => *seed,
        _ => 0,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    let mut oriented = Vec::new();
    let mut skipped = 0;
    for &n in &hp_family.n_grid {
        for (member, seq) in family_members(sequences, n, trials, &mut rng) {
            let outcome = seq.and_then(|seq| {
                let hp = HardyParams::new(hp_family.alpha, hp_family.lambda, hp_family.p, hp_family.m, n)?;
                verify_lemma(lemma, form, &seq, &hp)
            });
            match outcome {
                Ok(check) => {
                    match check.report.oriented() {
                        Some(r) => oriented.push(r),
                        None => skipped += 1,
                    }
                    rows.push(SweepRow { member, check });
                }
                Err(e) => errors.push(format!("n={n} {member}: {e}")),
            }
        }
    }
    Ok(SweepReport {
        lemma,
        form: form_for(lemma, form),
        rows,
        stats: BandStats::from_values(&oriented),
        skipped,
        errors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(head: &[f64]) -> CoefficientSequence {
        CoefficientSequence::from_head(head.to_vec()).unwrap()
    }

    /// Nested-loop evaluation of the tail-form pair.
    fn naive_tail(s: &CoefficientSequence, hp: &HardyParams) -> (f64, f64) {
        let mut lhs = 0.0;
        let mut rhs = 0.0;
        for mu in hp.m..=hp.n {
            let mut inner = 0.0;
            for nu in mu..=hp.n {
                inner += s.value(nu) * (nu as f64).powf(hp.lambda);
            }
            let w = (mu as f64).powf(hp.alpha - 1.0);
            lhs += w * inner.powf(hp.p);
            rhs += w * (s.value(mu) * (mu as f64).powf(hp.lambda + 1.0)).powf(hp.p);
        }
        (lhs, rhs)
    }

    fn naive_head(s: &CoefficientSequence, hp: &HardyParams) -> (f64, f64) {
        let mut lhs = 0.0;
        let mut rhs = 0.0;
        for mu in hp.m..=hp.n {
            let mut inner = 0.0;
            for nu in hp.m..=mu {
                inner += s.value(nu) * (nu as f64).powf(hp.lambda);
            }
            let w = (mu as f64).powf(-hp.alpha - 1.0);
            lhs += w * inner.powf(hp.p);
            rhs += w * (s.value(mu) * (mu as f64).powf(hp.lambda + 1.0)).powf(hp.p);
        }
        (lhs, rhs)
    }

    #[test]
    fn inner_tail_examples() {
        assert_eq!(inner_tail(&seq(&[1.0, 1.0, 1.0]), 0.0, 2, 3).unwrap(), 2.0);
        assert_eq!(inner_tail(&seq(&[1.0, 0.5]), 1.0, 1, 2).unwrap(), 2.0);
        let s = make_power_law(1.0, 2.0, 100).unwrap();
        let harmonic: f64 = (1..=100).map(|k| 1.0 / k as f64).sum();
        let v = inner_tail(&s, 1.0, 1, 100).unwrap();
        assert!((v - harmonic).abs() < 1e-12);
        assert!((v - 5.187377517639621).abs() < 1e-12);
        assert!(inner_tail(&s, 1.0, 0, 3).is_err());
        assert!(inner_tail(&s, 1.0, 4, 3).is_err());
    }

    #[test]
    fn tail_pair_examples() {
        let hp = HardyParams::new(1.0, 0.0, 1.0, 1, 3).unwrap();
        assert_eq!(hardy_tail_pair(&seq(&[1.0; 3]), &hp), SumPair { lhs: 6.0, rhs: 6.0 });
        assert_eq!(hardy_tail_pair(&seq(&[1.0, 0.0, 0.0]), &hp), SumPair { lhs: 1.0, rhs: 1.0 });

        let s = make_power_law(1.0, 2.0, 50).unwrap();
        let hp = HardyParams::new(2.0, 0.0, 2.0, 1, 50).unwrap();
        let pair = hardy_tail_pair(&s, &hp);
        let (lhs, rhs) = naive_tail(&s, &hp);
        assert!((pair.lhs - lhs).abs() <= 1e-12 * lhs);
        assert!((pair.rhs - rhs).abs() <= 1e-12 * rhs);
        assert!(pair.lhs / pair.rhs > 0.0 && (pair.lhs / pair.rhs).is_finite());
    }

    #[test]
    fn head_pair_examples() {
        let hp = HardyParams::new(1.0, 0.0, 1.0, 1, 3).unwrap();
        let pair = hardy_head_pair(&seq(&[1.0; 3]), &hp);
        let expect = 1.0 + 0.5 + 1.0 / 3.0;
        assert!((pair.lhs - expect).abs() < 1e-15 && (pair.rhs - expect).abs() < 1e-15);

        let hp = HardyParams::new(1.0, 0.0, 1.0, 1, 2).unwrap();
        let pair = hardy_head_pair(&seq(&[1.0, 0.0, 0.0]), &hp);
        assert_eq!(pair, SumPair { lhs: 1.25, rhs: 1.0 });

        let s = make_power_law(1.0, 1.0, 100).unwrap();
        let hp = HardyParams::new(1.0, 0.0, 2.0, 1, 100).unwrap();
        let pair = hardy_head_pair(&s, &hp);
        let (lhs, rhs) = naive_head(&s, &hp);
        assert!((pair.lhs - lhs).abs() <= 1e-12 * lhs);
        assert!((pair.rhs - rhs).abs() <= 1e-12 * rhs);
    }

    #[test]
    fn jensen_three_four_five() {
        let hp = HardyParams::new(1.0, 0.0, 2.0, 1, 2).unwrap();
        let check = verify_lemma(LemmaId::Jensen, Form::Tail, &seq(&[3.0, 4.0]), &hp).unwrap();
        assert_eq!(check.report.lhs, 5.0);
        assert_eq!(check.report.rhs, 7.0);
        assert_eq!(check.report.ratio, Some(5.0 / 7.0));
        assert!(!check.report.violated);
        let bad = HardyParams::new(2.0, 0.0, 1.0, 1, 2).unwrap();
        assert!(verify_lemma(LemmaId::Jensen, Form::Tail, &seq(&[3.0, 4.0]), &bad).is_err());
    }

    #[test]
    fn complete_tail_constant_sequence() {
        let hp = HardyParams::new(1.0, 0.0, 1.0, 1, 4).unwrap();
        let check = verify_lemma(LemmaId::LpCompleteTail, Form::Head, &seq(&[1.0; 4]), &hp).unwrap();
        assert_eq!(check.form, Form::Tail);
        assert_eq!((check.report.lhs, check.report.rhs), (10.0, 10.0));
        assert_eq!(check.report.ratio, Some(1.0));
    }

    #[test]
    fn converse_upper_uses_offset_ranges() {
        let s = make_power_law(1.0, 1.0, 32).unwrap();
        let hp = HardyParams::new(1.0, 0.0, 2.0, 1, 32).unwrap();
        let check = verify_lemma(LemmaId::LpConverseUpper, Form::Tail, &s, &hp).unwrap();
        // Nested loops over mu in 1..=32 for lhs and 8..=32 for rhs.
        let mut lhs = 0.0;
        for mu in 1..=32usize {
            let inner: f64 = (mu..=32).map(|nu| 1.0 / nu as f64).sum();
            lhs += inner * inner;
        }
        let rhs = 25.0;
        assert!((check.report.lhs - lhs).abs() <= 1e-12 * lhs);
        assert!((check.report.rhs - rhs).abs() <= 1e-12 * rhs);
        let r = check.report.oriented().unwrap();
        assert!(r.is_finite() && r >= 1.0, "{r}");
    }

    #[test]
    fn side_conditions_are_enforced() {
        let s = make_power_law(1.0, 1.0, 40).unwrap();
        let hp = HardyParams::new(1.0, 0.0, 2.0, 2, 31).unwrap();
        assert!(matches!(
            verify_lemma(LemmaId::LpConverseUpper, Form::Tail, &s, &hp),
            Err(Error::SideCondition { .. })
        ));
        let hp = HardyParams::new(1.0, 0.0, 0.5, 2, 7).unwrap();
        assert!(verify_lemma(LemmaId::LpConverseLower, Form::Tail, &s, &hp).is_err());
        assert!(verify_lemma(LemmaId::LpUpper, Form::Tail, &s, &hp).is_err());
        let rising = seq(&[1.0, 2.0, 3.0, 4.0]);
        let hp = HardyParams::new(1.0, 0.0, 2.0, 1, 4).unwrap();
        assert!(verify_lemma(LemmaId::LpUpper, Form::Tail, &rising, &hp).is_ok());
        assert!(matches!(
            verify_lemma(LemmaId::LpCompleteTail, Form::Tail, &rising, &hp),
            Err(Error::NotMonotone(_))
        ));
        assert!(HardyParams::new(0.0, 0.0, 1.0, 1, 2).is_err());
        assert!(HardyParams::new(1.0, 0.0, 1.0, 2, 2).is_err());
    }

    #[test]
    fn sweep_statistics() {
        let family = HardyFamily {
            alpha: 1.0,
            lambda: 0.0,
            p: 1.0,
            m: 1,
            n_grid: vec![16, 64, 256],
        };
        let powers = SequenceFamily::PowerLaw {
            betas: vec![0.5, 1.0, 2.0],
        };
        let report = estimate_constant(LemmaId::LpCompleteTail, Form::Tail, &family, &powers, 1).unwrap();
        assert_eq!(report.rows.len(), 9);
        let stats = report.stats.unwrap();
        assert_eq!(stats.count, 9);
        assert!(stats.min > 0.0 && stats.spread().is_finite());
        assert_eq!(report.violations(), 0);

        let single = HardyFamily {
            n_grid: vec![16],
            ..family.clone()
        };
        let one = estimate_constant(
            LemmaId::LpCompleteTail,
            Form::Tail,
            &single,
            &SequenceFamily::PowerLaw { betas: vec![1.0] },
            1,
        )
        .unwrap();
        let direct = verify_lemma(
            LemmaId::LpCompleteTail,
            Form::Tail,
            &make_power_law(1.0, 1.0, 16).unwrap(),
            &HardyParams::new(1.0, 0.0, 1.0, 1, 16).unwrap(),
        )
        .unwrap();
        assert_eq!(one.rows[0].check, direct);
        assert_eq!(one.stats.unwrap().median, direct.report.ratio.unwrap());

        let zero = estimate_constant(LemmaId::LpCompleteTail, Form::Tail, &family, &SequenceFamily::Zero, 1).unwrap();
        assert_eq!(zero.skipped, 3);
        assert!(zero.stats.is_none());
    }

    #[test]
    fn random_sweeps_are_reproducible() {
        let family = HardyFamily {
            alpha: 0.5,
            lambda: 1.0,
            p: 2.0,
            m: 1,
            n_grid: vec![8, 12],
        };
        let fam = SequenceFamily::RandomMonotone { seed: 7 };
        let a = estimate_constant(LemmaId::LpUpper, Form::Head, &family, &fam, 5).unwrap();
        let b = estimate_constant(LemmaId::LpUpper, Form::Head, &family, &fam, 5).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rows.len(), 10);
    }

    #[test]
    fn names_round_trip() {
        for id in LemmaId::ALL {
            assert_eq!(id.name().parse::<LemmaId>().unwrap(), id);
        }
        assert!("lp_uper".parse::<LemmaId>().is_err());
    }

    proptest! {
        #[test]
        fn jensen_holds_for_nonnegative_sequences(
            head in prop::collection::vec(0.0f64..100.0, 2..30),
            alpha in 0.1f64..3.0,
            gap in 0.01f64..3.0,
        ) {
            let n = head.len();
            let s = CoefficientSequence::from_head(head).unwrap();
            let hp = HardyParams::new(alpha, 0.0, alpha + gap, 1, n).unwrap();
            let check = verify_lemma(LemmaId::Jensen, Form::Tail, &s, &hp).unwrap();
            prop_assert!(!check.report.violated);
        }

        #[test]
        fn jensen_is_tight_for_one_nonzero_term(
            value in 0.1f64..100.0,
            pos in 0usize..10,
            alpha in 0.1f64..3.0,
            gap in 0.01f64..3.0,
        ) {
            let mut head = vec![0.0; 10];
            head[pos] = value;
            let s = CoefficientSequence::from_head(head).unwrap();
            let hp = HardyParams::new(alpha, 0.0, alpha + gap, 1, 10).unwrap();
            let pair = lemma_pair(LemmaId::Jensen, Form::Tail, &s, &hp);
            prop_assert!((pair.lhs - pair.rhs).abs() <= 1e-12 * pair.rhs);
        }
    }
}
