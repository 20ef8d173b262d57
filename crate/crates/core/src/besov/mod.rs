//! Seminorms of the Nikol'skii-Besov classes and their coefficient
//! characterisations.
//!
//! For class parameters `(theta, r, lambda, k, p)` three functionals are
//! computed:
//!
//! ```text
//! I(delta) = ( int_0^delta t^{-r theta - 1} omega(t)^theta dt
//!            + delta^{lambda theta} int_delta^1 t^{-(r+lambda) theta - 1} omega(t)^theta dt )^{1/theta}
//! J(n)     = ( sum_{nu>n} omega(1/nu)^theta nu^{r theta - 1}
//!            + n^{-lambda theta} sum_{nu<=n} omega(1/nu)^theta nu^{(r+lambda) theta - 1} )^{1/theta}
//! K(n)     = ( sum_{nu>n} a_nu^theta nu^{r theta + theta - theta/p - 1}
//!            + n^{-lambda theta} sum_{nu<=n} a_nu^theta nu^{(r+lambda) theta + theta - theta/p - 1} )^{1/theta}
//! ```
//!
//! `I` is discretised on the cells `[1/(nu+1), 1/nu]` with `omega` frozen at
//! `1/nu` and the power weight integrated exactly. Infinite sums follow
//! [`TailRule::default`]: they stop once the power-law-corrected total
//! settles to `1e-4`, and are reported divergent if the remainder is still
//! above 10% of the partial sum at `2^20` terms.

mod equivalence;
mod membership;
mod omega;
mod phi;

pub use equivalence::{equivalence_report, Bands, EquivalenceReport, EquivalenceRow};
pub use membership::{
    besov_series, membership_test, nikolskii_criterion, Functional, MembershipReport, Verdict,
    BOUNDED_GROWTH,
};
pub use omega::{DirectConfig, FnOracle, ModulusOracle, ModulusSource, OmegaTable};
pub use phi::{phi_eval, phi_validate, PhiSpec};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequences::{weighted_sum, CoefficientSequence, SumValue, WeightedSumSpec};
use crate::series::{sum_to_infinity, TailRule};
use crate::smoothness::SmoothnessParams;

/// `theta, r, lambda > 0`, integer `k > r + lambda`, `1 < p < inf`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassParams {
    pub theta: f64,
    pub r: f64,
    pub lambda: f64,
    pub k: usize,
    pub p: f64,
}

impl ClassParams {
    pub fn new(theta: f64, r: f64, lambda: f64, k: usize, p: f64) -> Result<Self> {
        Self::violations(theta, r, lambda, k, p)
            .into_iter()
            .next()
            .map_or(Ok(Self { theta, r, lambda, k, p }), Err)
    }

    /// Every constraint the arguments break, in a fixed order.
    pub fn violations(theta: f64, r: f64, lambda: f64, k: usize, p: f64) -> Vec<Error> {
        let mut out = Vec::new();
        for (name, v) in [("theta", theta), ("r", r), ("lambda", lambda)] {
            if !(v > 0.0 && v.is_finite()) {
                out.push(Error::param(name, format!("must lie in (0, inf), got {v}")));
            }
        }
        if !(p > 1.0 && p.is_finite()) {
            out.push(Error::param("p", format!("must lie in (1, inf), got {p}")));
        }
        if !(k as f64 > r + lambda) {
            out.push(Error::param("k", format!("must exceed r + lambda = {}, got {k}", r + lambda)));
        }
        out
    }

    pub fn smoothness(&self) -> SmoothnessParams {
        SmoothnessParams { k: self.k, p: self.p }
    }
}

/// `int_{lo}^{hi} t^{-a-1} dt` for `a > 0`, written to stay accurate for
/// thin cells.
fn power_weight(a: f64, lo: f64, hi: f64) -> f64 {
    if hi <= lo {
        return 0.0;
    }
    hi.powf(-a) * (a * (hi / lo).ln()).exp_m1() / a
}

/// `int_{1/(nu+1)}^{1/nu} t^{-a-1} dt`.
fn cell_weight(a: f64, nu: usize) -> f64 {
    let x = nu as f64;
    x.powf(a) * (a * (1.0 / x).ln_1p()).exp_m1() / a
}

/// `sum_{nu >= start} omega(1/nu)^theta w(nu)`, divergence included.
fn omega_tail(
    oracle: &mut dyn ModulusOracle,
    theta: f64,
    start: usize,
    weight: impl Fn(usize) -> f64,
) -> Result<SumValue> {
    let mut diverged = false;
    let sum = sum_to_infinity(
        start,
        |nu| match oracle.omega(nu)? {
            SumValue::Finite(w) => Ok(pow_theta(w, theta) * weight(nu)),
            SumValue::Divergent => {
                diverged = true;
                Ok(0.0)
            }
        },
        &TailRule::default(),
    )?;
    Ok(if diverged { SumValue::Divergent } else { sum.value })
}

/// `sum_{nu=1}^{end} omega(1/nu)^theta w(nu)`.
fn omega_head(
    oracle: &mut dyn ModulusOracle,
    theta: f64,
    end: usize,
    weight: impl Fn(usize) -> f64,
) -> Result<SumValue> {
    let mut total = 0.0;
    for nu in 1..=end {
        match oracle.omega(nu)? {
            SumValue::Finite(w) => total += pow_theta(w, theta) * weight(nu),
            SumValue::Divergent => return Ok(SumValue::Divergent),
        }
    }
    Ok(SumValue::Finite(total))
}

fn pow_theta(w: f64, theta: f64) -> f64 {
    if w == 0.0 {
        0.0
    } else if theta == 1.0 {
        w
    } else {
        w.powf(theta)
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::param("n", "must be at least 1"))
    } else {
        Ok(())
    }
}

/// `I(delta)` from moduli supplied by `oracle`.
///
/// With `n0 = floor(1/delta)`, the first integral covers the full cells
/// `nu > n0` and the part `[1/(n0+1), delta]` of cell `n0`; the second covers
/// `[delta, 1/n0]` and the full cells `nu < n0`.
pub fn integral_seminorm_with(oracle: &mut dyn ModulusOracle, cp: &ClassParams, delta: f64) -> Result<SumValue> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::param("delta", format!("must lie in (0, 1), got {delta}")));
    }
    let theta = cp.theta;
    let a = cp.r * theta;
    let b = (cp.r + cp.lambda) * theta;
    let n0 = (1.0 / delta + 1e-9).floor() as usize;
    let cell_lo = 1.0 / (n0 + 1) as f64;
    let cell_hi = 1.0 / n0 as f64;

    let Some(w0) = oracle.omega(n0)?.finite() else {
        return Ok(SumValue::Divergent);
    };
    let w0 = pow_theta(w0, theta);
    let near = omega_tail(oracle, theta, n0 + 1, |nu| cell_weight(a, nu))?
        .map(|s| s + w0 * power_weight(a, cell_lo, delta.max(cell_lo)));
    let far = omega_head(oracle, theta, n0 - 1, |nu| cell_weight(b, nu))?
        .map(|s| s + w0 * power_weight(b, delta.min(cell_hi), cell_hi));
    Ok(near.zip(far, |x, y| (x + delta.powf(cp.lambda * theta) * y).powf(1.0 / theta)))
}

/// `J(n)` from moduli supplied by `oracle`.
pub fn discrete_seminorm_with(oracle: &mut dyn ModulusOracle, cp: &ClassParams, n: usize) -> Result<SumValue> {
    check_n(n)?;
    let theta = cp.theta;
    let s1 = cp.r * theta - 1.0;
    let s2 = (cp.r + cp.lambda) * theta - 1.0;
    let tail = omega_tail(oracle, theta, n + 1, |nu| (nu as f64).powf(s1))?;
    let head = omega_head(oracle, theta, n, |nu| (nu as f64).powf(s2))?;
    Ok(tail.zip(head, |x, y| {
        (x + (n as f64).powf(-cp.lambda * theta) * y).powf(1.0 / theta)
    }))
}

/// `I(delta)` with `omega` taken from `source`.
pub fn integral_seminorm(
    seq: &CoefficientSequence,
    cp: &ClassParams,
    delta: f64,
    source: ModulusSource,
) -> Result<SumValue> {
    let mut table = OmegaTable::new(seq, cp.smoothness(), source)?;
    integral_seminorm_with(&mut table, cp, delta)
}

/// `J(n)` with `omega` taken from `source`.
pub fn discrete_seminorm(
    seq: &CoefficientSequence,
    cp: &ClassParams,
    n: usize,
    source: ModulusSource,
) -> Result<SumValue> {
    let mut table = OmegaTable::new(seq, cp.smoothness(), source)?;
    discrete_seminorm_with(&mut table, cp, n)
}

/// `K(n)`, both pieces through [`weighted_sum`].
pub fn coefficient_functional(seq: &CoefficientSequence, cp: &ClassParams, n: usize) -> Result<SumValue> {
    check_n(n)?;
    let theta = cp.theta;
    let shift = theta - theta / cp.p - 1.0;
    let tail = weighted_sum(seq, &WeightedSumSpec::infinite(theta, cp.r * theta + shift, n + 1)?);
    let head = weighted_sum(
        seq,
        &WeightedSumSpec::finite(theta, (cp.r + cp.lambda) * theta + shift, 1, n)?,
    );
    Ok(tail.zip(head, |x, y| {
        (x + (n as f64).powf(-cp.lambda * theta) * y).powf(1.0 / theta)
    }))
}

#[cfg(test)]
mod tests;
