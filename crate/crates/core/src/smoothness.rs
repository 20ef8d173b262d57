//! Finite differences, `L^p` norms and moduli of smoothness of truncated
//! cosine series.
//!
//! The k-th difference acts on each harmonic by a multiplier:
//!
//! ```text
//! Delta_h^k cos(nu x) = Re[ e^{i nu x} (e^{i nu h} - 1)^k ]
//!                     = (2 sin(nu h / 2))^k cos(nu x + k (nu h + pi) / 2)
//! ```
//!
//! so `Delta_h^k f` on the uniform grid `x_j = 2 pi j / M` is one inverse FFT
//! of the multiplied coefficients. For `p = 2` the grid sum is evaluated
//! through the discrete Parseval identity instead, which is exact once
//! `M > 2 N`.
//!
//! Norms are integrals over `[0, 2 pi]` without a `1/(2 pi)` factor.

use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequences::{validate_monotone, weighted_sum, CoefficientSequence, SumValue, WeightedSumSpec};

/// Difference order `k >= 1` and exponent `p > 0` (`p = inf` allowed for
/// direct norms).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SmoothnessParams {
    pub k: usize,
    pub p: f64,
}

impl SmoothnessParams {
    pub fn new(k: usize, p: f64) -> Result<Self> {
        check_order(k)?;
        if !(p > 0.0) {
            return Err(Error::param("p", format!("must be positive, got {p}")));
        }
        Ok(Self { k, p })
    }

    pub(crate) fn require_coefficient_range(&self) -> Result<()> {
        if self.p > 1.0 && self.p.is_finite() {
            Ok(())
        } else {
            Err(Error::param(
                "p",
                format!("coefficient bounds need 1 < p < inf, got {}", self.p),
            ))
        }
    }
}

fn check_order(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::param("k", "difference order must be at least 1"))
    } else {
        Ok(())
    }
}

/// Grid size `M` for the `x`-integral and number `H` of `h`-samples for the
/// supremum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuadratureSpec {
    pub points: usize,
    pub h_samples: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            points: 8192,
            h_samples: 64,
        }
    }
}

impl QuadratureSpec {
    pub fn new(points: usize, h_samples: usize) -> Result<Self> {
        if !points.is_power_of_two() || points < 4 {
            return Err(Error::param("points", format!("must be a power of two >= 4, got {points}")));
        }
        if h_samples < 16 {
            return Err(Error::param("h_samples", format!("must be at least 16, got {h_samples}")));
        }
        Ok(Self { points, h_samples })
    }

    /// Smallest admissible grid for `horizon` harmonics and order `k`.
    pub fn fitted(horizon: usize, k: usize, h_samples: usize) -> Result<Self> {
        Self::new(Self::required_points(horizon, k).next_power_of_two(), h_samples)
    }

    /// `2 N k + 2`.
    pub fn required_points(horizon: usize, k: usize) -> usize {
        2 * horizon * k + 2
    }

    pub fn check(&self, horizon: usize, k: usize) -> Result<()> {
        let required = Self::required_points(horizon, k);
        if self.points < required {
            return Err(Error::QuadratureTooCoarse {
                points: self.points,
                horizon,
                k,
                required,
            });
        }
        Ok(())
    }
}

/// `sum_{nu=1}^{horizon} a_nu cos(nu x)`.
pub fn synthesize(seq: &CoefficientSequence, horizon: usize, x: f64) -> f64 {
    (1..=horizon)
        .map(|nu| seq.value(nu) * (nu as f64 * x).cos())
        .sum()
}

/// `C(k, j)` as a float.
fn binomial(k: usize, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (k - i) as f64 / (i + 1) as f64)
}

/// `sum_{j=0}^{k} (-1)^{k-j} C(k, j) f(x + j h)` with `f = synthesize`.
pub fn k_difference(seq: &CoefficientSequence, horizon: usize, k: usize, h: f64, x: f64) -> Result<f64> {
    check_order(k)?;
    Ok((0..=k)
        .map(|j| {
            let sign = if (k - j) % 2 == 0 { 1.0 } else { -1.0 };
            sign * binomial(k, j) * synthesize(seq, horizon, x + j as f64 * h)
        })
        .sum())
}

/// Evaluates `||Delta_h^k f||_p` for many `h` with shared buffers.
pub struct DifferenceNorm {
    coefficients: Vec<f64>,
    squares: Vec<f64>,
    k: usize,
    p: f64,
    points: usize,
    fft: Option<Arc<dyn Fft<f64>>>,
    buffer: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl DifferenceNorm {
    pub fn new(seq: &CoefficientSequence, horizon: usize, k: usize, p: f64, quad: &QuadratureSpec) -> Result<Self> {
        check_order(k)?;
        if !(p > 0.0) {
            return Err(Error::param("p", format!("must be positive, got {p}")));
        }
        quad.check(horizon, k)?;
        let coefficients: Vec<f64> = (1..=horizon).map(|nu| seq.value(nu)).collect();
        Ok(Self {
            squares: if p == 2.0 { coefficients.iter().map(|a| a * a).collect() } else { Vec::new() },
            coefficients,
            k,
            p,
            points: quad.points,
            fft: None,
            buffer: Vec::new(),
            scratch: Vec::new(),
        })
    }

    /// `||Delta_h^k f||_p`; `p = 2` goes through the Parseval identity.
    pub fn norm(&mut self, h: f64) -> f64 {
        if self.p == 2.0 {
            self.parseval(h)
        } else {
            self.grid_norm(h)
        }
    }

    /// `(pi sum_nu a_nu^2 (2 sin(nu h / 2))^{2k})^{1/2}`, equal to the grid
    /// trapezoid sum for `p = 2`.
    fn parseval(&self, h: f64) -> f64 {
        const REANCHOR: usize = 512;
        let half = 0.5 * h;
        let step = Complex64::new(half.cos(), half.sin());
        let mut z = step;
        let mut sum = 0.0;
        let k = self.k as i32;
        for (i, &b) in self.squares.iter().enumerate() {
            let nu = i + 1;
            if nu % REANCHOR == 0 {
                let angle = nu as f64 * half;
                z = Complex64::new(angle.cos(), angle.sin());
            }
            sum += b * (4.0 * z.im * z.im).powi(k);
            z *= step;
        }
        (PI * sum).sqrt()
    }

    /// `((2 pi / M) sum_j |Delta_h^k f(x_j)|^p)^{1/p}` through one inverse FFT.
    pub fn grid_norm(&mut self, h: f64) -> f64 {
        let m = self.points;
        let fft = self
            .fft
            .get_or_insert_with(|| FftPlanner::new().plan_fft_inverse(m))
            .clone();
        self.buffer.clear();
        self.buffer.resize(m, Complex64::new(0.0, 0.0));
        let k = self.k as f64;
        for (i, &a) in self.coefficients.iter().enumerate() {
            let nu = (i + 1) as f64;
            let amp = (2.0 * (0.5 * nu * h).sin()).powi(self.k as i32);
            let phase = 0.5 * k * (nu * h + PI);
            self.buffer[i + 1] = Complex64::from_polar(a * amp, phase);
        }
        self.scratch.resize(fft.get_inplace_scratch_len(), Complex64::new(0.0, 0.0));
        fft.process_with_scratch(&mut self.buffer, &mut self.scratch);
        let values = self.buffer.iter().map(|c| c.re.abs());
        if self.p.is_infinite() {
            return values.fold(0.0, f64::max);
        }
        let p = self.p;
        let sum: f64 = if p == 1.0 {
            values.sum()
        } else if p == 2.0 {
            values.map(|v| v * v).sum()
        } else {
            values.map(|v| v.powf(p)).sum()
        };
        (TAU / m as f64 * sum).powf(1.0 / p)
    }

    /// `max_{i=1..H} ||Delta_{t i / H}^k f||_p`.
    pub fn modulus(&mut self, t: f64, h_samples: usize) -> Result<f64> {
        check_t(t)?;
        Ok((1..=h_samples)
            .map(|i| self.norm(t * i as f64 / h_samples as f64))
            .fold(0.0, f64::max))
    }
}

fn check_t(t: f64) -> Result<()> {
    if t > 0.0 && t <= PI {
        Ok(())
    } else {
        Err(Error::param("t", format!("must lie in (0, pi], got {t}")))
    }
}

/// `||Delta_h^k f||_p` of the series truncated at `horizon`, on `M` points.
pub fn lp_norm(
    seq: &CoefficientSequence,
    horizon: usize,
    k: usize,
    h: f64,
    p: f64,
    quad: &QuadratureSpec,
) -> Result<f64> {
    Ok(DifferenceNorm::new(seq, horizon, k, p, quad)?.norm(h))
}

/// `omega(f; t)_p`: the largest `||Delta_h^k f||_p` over `h = t i / H`,
/// `i = 1..H`.
///
/// Negative shifts are not sampled: for an even function
/// `Delta_{-h}^k f(x) = (-1)^k Delta_h^k f(-x - k h)`, a reflection and a
/// translation, which leave the periodic norm unchanged.
pub fn modulus_direct(
    seq: &CoefficientSequence,
    horizon: usize,
    params: &SmoothnessParams,
    t: f64,
    quad: &QuadratureSpec,
) -> Result<f64> {
    check_t(t)?;
    DifferenceNorm::new(seq, horizon, params.k, params.p, quad)?.modulus(t, quad.h_samples)
}

/// Sampled `omega(f; t)_p` with the settings that produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModulusCurve {
    pub t: Vec<f64>,
    pub omega: Vec<f64>,
    pub params: SmoothnessParams,
    pub quad: QuadratureSpec,
    pub horizon: usize,
}

/// `omega(f; t)_p` over an ascending `t` grid.
pub fn modulus_curve(
    seq: &CoefficientSequence,
    horizon: usize,
    params: &SmoothnessParams,
    t_grid: &[f64],
    quad: &QuadratureSpec,
) -> Result<ModulusCurve> {
    if t_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::param("t_grid", "must be strictly ascending"));
    }
    let mut engine = DifferenceNorm::new(seq, horizon, params.k, params.p, quad)?;
    let omega = t_grid
        .iter()
        .map(|&t| engine.modulus(t, quad.h_samples))
        .collect::<Result<Vec<_>>>()?;
    Ok(ModulusCurve {
        t: t_grid.to_vec(),
        omega,
        params: *params,
        quad: *quad,
        horizon,
    })
}

/// Coefficient expression bracketing `omega(f; 1/n)_p` for monotone
/// coefficients and `1 < p < inf`:
///
/// ```text
/// E(n) = n^{-k} (sum_{nu=1}^{n} a_nu^p nu^{(k+1)p-2})^{1/p}
///      + (sum_{nu=n+1}^{inf} a_nu^p nu^{p-2})^{1/p}
/// ```
pub fn modulus_core(seq: &CoefficientSequence, params: &SmoothnessParams, n: usize) -> Result<SumValue> {
    params.require_coefficient_range()?;
    if n == 0 {
        return Err(Error::param("n", "must be at least 1"));
    }
    validate_monotone(seq)?;
    let p = params.p;
    let k = params.k as f64;
    let head = weighted_sum(seq, &WeightedSumSpec::finite(p, (k + 1.0) * p - 2.0, 1, n)?);
    let tail = weighted_sum(seq, &WeightedSumSpec::infinite(p, p - 2.0, n + 1)?);
    Ok(head.zip(tail, |h, t| (n as f64).powf(-k) * h.powf(1.0 / p) + t.powf(1.0 / p)))
}

/// `(lower_core, upper_core)`; both equal [`modulus_core`], the constants
/// multiplying them being unknown.
pub fn modulus_bounds(
    seq: &CoefficientSequence,
    params: &SmoothnessParams,
    n: usize,
) -> Result<(SumValue, SumValue)> {
    let e = modulus_core(seq, params, n)?;
    Ok((e, e))
}

/// Horizon chosen for a direct computation and what it leaves out.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Truncation {
    pub horizon: usize,
    /// Upper bound on the discarded harmonics' contribution to
    /// `||Delta_h^k f||_p`.
    pub tail_bound: f64,
    /// Whether `tail_bound` met the requested relative tolerance.
    pub reached: bool,
}

/// Bound on `||Delta_h^k (f - S_N f)||_p` from the discarded coefficients:
/// `(2 pi)^{1/p} 2^k sum a_nu` (uniform norm), and for `p <= 2` also
/// `(2 pi)^{1/p - 1/2} sqrt(pi) 2^k (sum a_nu^2)^{1/2}`.
pub fn truncation_bound(seq: &CoefficientSequence, horizon: usize, params: &SmoothnessParams) -> f64 {
    if seq.vanishes_after(horizon) {
        return 0.0;
    }
    let amp = 2f64.powi(params.k as i32);
    let p = params.p;
    let tail = |q: f64| {
        WeightedSumSpec::infinite(q, 0.0, horizon + 1)
            .map(|spec| weighted_sum(seq, &spec).finite().unwrap_or(f64::INFINITY))
            .unwrap_or(f64::INFINITY)
    };
    let measure = if p.is_infinite() { 1.0 } else { TAU.powf(1.0 / p) };
    let uniform = measure * amp * tail(1.0);
    if p <= 2.0 {
        let l2 = TAU.powf(1.0 / p - 0.5) * PI.sqrt() * amp * tail(2.0).sqrt();
        uniform.min(l2)
    } else {
        uniform
    }
}

/// Smallest horizon in `floor, 2 floor, 4 floor, ...` (capped at `cap`)
/// whose [`truncation_bound`] is at most `rel_tol * estimate`. Finite
/// sequences are never extended past their last nonzero coefficient.
pub fn choose_horizon(
    seq: &CoefficientSequence,
    params: &SmoothnessParams,
    estimate: f64,
    rel_tol: f64,
    floor: usize,
    cap: usize,
) -> Truncation {
    let support = last_nonzero(seq);
    let mut horizon = floor.max(1).min(cap);
    loop {
        let candidate = support.map_or(horizon, |s| horizon.min(s.max(1)));
        let tail_bound = truncation_bound(seq, candidate, params);
        let reached = tail_bound <= rel_tol * estimate;
        if reached || horizon >= cap {
            return Truncation {
                horizon: candidate,
                tail_bound,
                reached,
            };
        }
        horizon = (2 * horizon).min(cap);
    }
}

/// Index of the last nonzero coefficient of a finitely supported sequence.
pub(crate) fn last_nonzero(seq: &CoefficientSequence) -> Option<usize> {
    if !seq.vanishes_after(seq.horizon()) {
        return None;
    }
    Some(seq.head().iter().rposition(|a| *a != 0.0).map_or(0, |i| i + 1))
}
