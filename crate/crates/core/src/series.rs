//! Summation of nonnegative series over infinite ranges.
//!
//! Two tools live here. [`power_log_tail_integral`] integrates the model
//! tail `x^{-a} (1 + ln x)^{-b}` in closed form or by double-exponential
//! quadrature; it backs the analytic remainders of
//! [`weighted_sum`](crate::sequences::weighted_sum). [`sum_to_infinity`]
//! handles series whose terms are only available pointwise (moduli of
//! smoothness sampled at `t = 1/nu`): it sums by doubling blocks and closes
//! the tail with a locally fitted power law.

use std::f64::consts::FRAC_PI_2;

use crate::error::Result;
use crate::sequences::SumValue;

/// `\int_x^\infty t^{-a} (1 + \ln t)^{-b} dt` for `x >= 1`, `b >= 0`.
///
/// Returns `f64::INFINITY` when the integral diverges, i.e. unless `a > 1`,
/// or `a == 1` and `b > 1`.
pub fn power_log_tail_integral(x: f64, a: f64, b: f64) -> f64 {
    debug_assert!(x >= 1.0 && b >= 0.0);
    let s = a - 1.0;
    let u = 1.0 + x.ln();
    if s.abs() <= EXPONENT_EPS {
        return if b > 1.0 + EXPONENT_EPS {
            u.powf(1.0 - b) / (b - 1.0)
        } else {
            f64::INFINITY
        };
    }
    if s < 0.0 {
        return f64::INFINITY;
    }
    if b == 0.0 {
        return x.powf(-s) / s;
    }
    // u = U (1 + v) turns the integral into U^{1-b} x^{-s} \int_0^\infty e^{-sUv} (1+v)^{-b} dv.
    let kappa = s * u;
    let inner = exp_sinh(|v| (-kappa * v).exp() * (1.0 + v).powf(-b));
    x.powf(-s) * u.powf(1.0 - b) * inner
}

/// Exponents closer than this are treated as equal when deciding convergence.
pub(crate) const EXPONENT_EPS: f64 = 1e-12;

/// Exp-sinh quadrature of `\int_0^\infty f(x) dx` for smooth, decaying `f`.
fn exp_sinh<F: Fn(f64) -> f64>(f: F) -> f64 {
    const T_MIN: f64 = -4.5;
    const T_MAX: f64 = 6.5;
    let term = |t: f64| {
        let x = (FRAC_PI_2 * t.sinh()).exp();
        let v = f(x) * FRAC_PI_2 * t.cosh() * x;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let mut h = 0.25;
    let mut count = ((T_MAX - T_MIN) / h).round() as usize;
    let mut sum: f64 = (0..=count).map(|i| term(T_MIN + i as f64 * h)).sum();
    let mut estimate = sum * h;
    for _ in 0..12 {
        h *= 0.5;
        sum += (0..count).map(|i| term(T_MIN + (2 * i + 1) as f64 * h)).sum::<f64>();
        count *= 2;
        let refined = sum * h;
        if (refined - estimate).abs() <= 1e-14 * refined.abs() {
            return refined;
        }
        estimate = refined;
    }
    estimate
}

/// Stopping rule for [`sum_to_infinity`].
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct TailRule {
    /// Stop once two successive tail-corrected totals agree to this relative tolerance.
    pub rel_tol: f64,
    /// Largest index ever summed directly.
    pub max_terms: usize,
    /// At the cap, a remainder estimate above this fraction of the partial
    /// sum is reported as divergence.
    pub divergence_fraction: f64,
}

impl Default for TailRule {
    fn default() -> Self {
        Self {
            rel_tol: 1e-4,
            max_terms: 1 << 20,
            divergence_fraction: 0.1,
        }
    }
}

/// Outcome of [`sum_to_infinity`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailSum {
    pub value: SumValue,
    /// Last index summed directly (`N_max`).
    pub last_index: usize,
    /// Power-law estimate of everything beyond `last_index`.
    pub remainder: f64,
}

/// Sums `term(nu)` for `nu = start, start + 1, ...` to infinity.
///
/// Terms are summed directly over doubling blocks. After each block the
/// remainder is estimated by fitting `g(nu) ~ C nu^{-e}` through the terms at
/// `end / 2` and `end` and integrating the fit from `end + 1/2`. Summation
/// stops when successive totals (partial + remainder) agree to
/// `rule.rel_tol`. At `rule.max_terms` the series is declared divergent if
/// the fitted exponent is at most one or the remainder still exceeds
/// `rule.divergence_fraction` of the partial sum.
///
/// Terms must be nonnegative and eventually nonincreasing.
pub fn sum_to_infinity<F>(start: usize, mut term: F, rule: &TailRule) -> Result<TailSum>
where
    F: FnMut(usize) -> Result<f64>,
{
    let start = start.max(1);
    let mut values: Vec<f64> = Vec::new();
    let mut partial = 0.0;
    let mut end = (2 * start).max(start + 63);
    let mut previous_total: Option<f64> = None;
    let mut next = start;
    loop {
        while next <= end {
            let g = term(next)?;
            values.push(g);
            partial += g;
            next += 1;
        }
        let g_end = values[end - start];
        let mid = (end / 2).max(start);
        let g_mid = values[mid - start];
        let remainder = fitted_remainder(mid, g_mid, end, g_end);
        let total = partial + remainder;
        let settled = match previous_total {
            Some(prev) if remainder.is_finite() => {
                (total - prev).abs() <= rule.rel_tol * total.abs() || total == 0.0
            }
            _ => false,
        };
        if settled {
            return Ok(TailSum {
                value: SumValue::Finite(total),
                last_index: end,
                remainder,
            });
        }
        if 2 * end > rule.max_terms {
            let value = if remainder.is_finite()
                && remainder <= rule.divergence_fraction * partial
            {
                SumValue::Finite(total)
            } else {
                SumValue::Divergent
            };
            return Ok(TailSum {
                value,
                last_index: end,
                remainder,
            });
        }
        previous_total = remainder.is_finite().then_some(total);
        end *= 2;
    }
}

/// Tail beyond `end` of a power law through `(mid, g_mid)` and `(end, g_end)`.
fn fitted_remainder(mid: usize, g_mid: f64, end: usize, g_end: f64) -> f64 {
    if g_end == 0.0 {
        return if g_mid == 0.0 { 0.0 } else { f64::INFINITY };
    }
    if mid == end || g_mid <= 0.0 {
        return f64::INFINITY;
    }
    let (m, e_) = (mid as f64, end as f64);
    let exponent = (g_mid / g_end).ln() / (e_ / m).ln();
    if exponent <= 1.0 {
        return f64::INFINITY;
    }
    // C x^{-e} with C = g_end * end^e, integrated over [end + 1/2, inf).
    let x0 = e_ + 0.5;
    g_end * (e_ / x0).powf(exponent) * x0 / (exponent - 1.0)
}
