use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{
    coefficient_functional, discrete_seminorm_with, integral_seminorm_with, phi_eval, ClassParams, ModulusSource,
    OmegaTable, PhiSpec,
};
use crate::error::{Error, Result};
use crate::sequences::{weighted_sum, CoefficientSequence, SumValue, TailModel, WeightedSumSpec};

/// Largest relative growth of the running supremum over the last doubling
/// of `n` that still counts as bounded.
pub const BOUNDED_GROWTH: f64 = 1e-2;

/// Which functional a membership test uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Functional {
    /// `I(1/(n+1)) / phi(1/(n+1))`.
    I,
    /// `J(n) / phi(1/n)`.
    J,
    /// `K(n) / phi(1/n)`.
    K,
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Functional::I => "I",
            Functional::J => "J",
            Functional::K => "K",
        })
    }
}

impl FromStr for Functional {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" | "i" => Ok(Functional::I),
            "J" | "j" => Ok(Functional::J),
            "K" | "k" => Ok(Functional::K),
            _ => Err(Error::param("functional", format!("expected I, J or K, got `{s}`"))),
        }
    }
}

/// Grid-evidence verdict; never a proof.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// The running supremum settled over the last doubling of `n`.
    Bounded,
    /// The ratio kept rising over the last doubling.
    Unbounded,
    /// A functional diverged.
    NotInClass,
    /// Neither pattern is visible on this grid.
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Bounded => "bounded",
            Verdict::Unbounded => "unbounded",
            Verdict::NotInClass => "not_in_class",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipReport {
    pub functional: Functional,
    pub phi: PhiSpec,
    /// Grid points actually evaluated; evaluation stops at the first divergence.
    pub grid: Vec<usize>,
    pub values: Vec<SumValue>,
    /// `value / phi` for the finite values.
    pub ratios: Vec<f64>,
    pub running_sup: Vec<f64>,
    pub sup_ratio: f64,
    /// Relative growth of the running supremum over the last doubling.
    pub growth: Option<f64>,
    pub verdict: Verdict,
    pub evidence: String,
}

/// Evaluates `functional(n) / phi` over `n_grid` and classifies the running
/// supremum.
///
/// `n_grid` must be strictly ascending with `n >= 2`. `source` is used for
/// `I` and `J` only.
pub fn membership_test(
    seq: &CoefficientSequence,
    cp: &ClassParams,
    phi: &PhiSpec,
    functional: Functional,
    n_grid: &[usize],
    source: ModulusSource,
) -> Result<MembershipReport> {
    phi.validate(cp.lambda)?;
    if n_grid.is_empty() {
        return Err(Error::param("n_grid", "must not be empty"));
    }
    if n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::param("n_grid", "must be strictly ascending"));
    }
    if n_grid[0] < 2 {
        return Err(Error::param("n_grid", "entries must be at least 2"));
    }
    let mut table = match functional {
        Functional::K => None,
        _ => Some(OmegaTable::new(seq, cp.smoothness(), source)?),
    };
    let mut report = MembershipReport {
        functional,
        phi: *phi,
        grid: Vec::new(),
        values: Vec::new(),
        ratios: Vec::new(),
        running_sup: Vec::new(),
        sup_ratio: 0.0,
        growth: None,
        verdict: Verdict::Inconclusive,
        evidence: String::new(),
    };
    for &n in n_grid {
        let (value, scale) = match (functional, table.as_mut()) {
            (Functional::K, _) => (coefficient_functional(seq, cp, n)?, 1.0 / n as f64),
            (Functional::J, Some(t)) => (discrete_seminorm_with(t, cp, n)?, 1.0 / n as f64),
            (Functional::I, Some(t)) => {
                let delta = 1.0 / (n + 1) as f64;
                (integral_seminorm_with(t, cp, delta)?, delta)
            }
            _ => unreachable!("moduli table exists for I and J"),
        };
        report.grid.push(n);
        report.values.push(value);
        let Some(v) = value.finite() else {
            report.verdict = Verdict::NotInClass;
            report.evidence = format!("{functional}({n}) diverges");
            return Ok(report);
        };
        let ratio = v / phi_eval(phi, scale)?;
        report.sup_ratio = report.sup_ratio.max(ratio);
        report.ratios.push(ratio);
        report.running_sup.push(report.sup_ratio);
    }
    classify(&mut report);
    Ok(report)
}

fn classify(report: &mut MembershipReport) {
    let last = report.grid.len() - 1;
    let n_last = report.grid[last];
    let Some(half) = report.grid.iter().rposition(|&n| 2 * n <= n_last) else {
        report.evidence = "grid spans less than one doubling".into();
        return;
    };
    let before = report.running_sup[half];
    let after = report.running_sup[last];
    let growth = if before > 0.0 {
        after / before - 1.0
    } else if after == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    report.growth = Some(growth);
    let rising = report.ratios[half..].windows(2).all(|w| w[1] >= w[0]);
    report.verdict = if growth < BOUNDED_GROWTH {
        Verdict::Bounded
    } else if rising {
        Verdict::Unbounded
    } else {
        Verdict::Inconclusive
    };
    report.evidence = format!(
        "running sup {before:.6e} at n={} and {after:.6e} at n={n_last} (growth {:.3}%)",
        report.grid[half],
        100.0 * growth
    );
}

/// `sum_{nu>=1} a_nu^theta nu^{r theta + theta - theta/p - 1}`, whose
/// convergence decides membership when `phi` is constant.
pub fn besov_series(seq: &CoefficientSequence, cp: &ClassParams) -> Result<SumValue> {
    let theta = cp.theta;
    let weight = cp.r * theta + theta - theta / cp.p - 1.0;
    Ok(weighted_sum(seq, &WeightedSumSpec::infinite(theta, weight, 1)?))
}

/// `sup_nu a_nu nu^{r + alpha + 1 - 1/p}`, or `Divergent` when the tail makes
/// it infinite.
pub fn nikolskii_criterion(seq: &CoefficientSequence, r: f64, alpha: f64, p: f64) -> Result<SumValue> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::param("p", format!("must lie in (1, inf), got {p}")));
    }
    let s = r + alpha + 1.0 - 1.0 / p;
    let g = |nu: usize| seq.value(nu) * (nu as f64).powf(s);
    let mut sup = (1..=seq.horizon()).map(g).fold(0.0, f64::max);
    let (c, beta) = match seq.tail() {
        TailModel::Zero => return Ok(SumValue::Finite(sup)),
        TailModel::PowerLaw { c, beta } | TailModel::PowerLog { c, beta, .. } => (c, beta),
    };
    if c == 0.0 {
        return Ok(SumValue::Finite(sup));
    }
    // gamma >= 0, so the tail term x^{s - beta} (1 + ln x)^{-gamma} is
    // bounded iff beta >= s and then largest at the first tail index.
    if beta < s {
        return Ok(SumValue::Divergent);
    }
    sup = sup.max(g(seq.horizon() + 1));
    Ok(SumValue::Finite(sup))
}
