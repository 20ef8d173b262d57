//! Sources of `omega(f; 1/nu)_p` for the seminorms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequences::{validate_monotone, weighted_sum, CoefficientSequence, SumValue, WeightedSumSpec};
use crate::smoothness::{last_nonzero, truncation_bound, DifferenceNorm, QuadratureSpec, SmoothnessParams};

/// Supplies `omega(1/nu)` for `nu = 1, 2, ...`.
pub trait ModulusOracle {
    fn omega(&mut self, nu: usize) -> Result<SumValue>;
}

/// Any closure `nu -> omega(1/nu)` is an oracle; handy for synthetic moduli.
pub struct FnOracle<F>(pub F);

impl<F: FnMut(usize) -> f64> ModulusOracle for FnOracle<F> {
    fn omega(&mut self, nu: usize) -> Result<SumValue> {
        Ok(SumValue::Finite((self.0)(nu)))
    }
}

/// Truncation and sampling for directly computed moduli.
///
/// `omega(1/nu)` is computed from the first
/// `clamp(horizon_factor * nu, min_horizon, horizon_cap)` harmonics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DirectConfig {
    pub h_samples: usize,
    pub horizon_factor: usize,
    pub min_horizon: usize,
    pub horizon_cap: usize,
}

impl Default for DirectConfig {
    fn default() -> Self {
        Self {
            h_samples: 64,
            horizon_factor: 16,
            min_horizon: 256,
            horizon_cap: 1 << 17,
        }
    }
}

impl DirectConfig {
    pub fn validate(&self) -> Result<()> {
        if self.h_samples < 16 {
            return Err(Error::param("h_samples", "must be at least 16"));
        }
        if self.horizon_factor == 0 || self.min_horizon == 0 {
            return Err(Error::param("horizon_factor", "horizon settings must be positive"));
        }
        if self.horizon_cap < self.min_horizon {
            return Err(Error::param("horizon_cap", "must be at least min_horizon"));
        }
        Ok(())
    }

    pub fn horizon(&self, nu: usize) -> usize {
        nu.saturating_mul(self.horizon_factor)
            .clamp(self.min_horizon, self.horizon_cap)
    }
}

/// Where `omega(1/nu)` comes from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModulusSource {
    /// Sampled supremum of grid norms of the truncated series.
    Direct(DirectConfig),
    /// The coefficient expression `E(nu)`; needs `1 < p < inf` and monotone
    /// coefficients.
    Bounds,
}

impl Default for ModulusSource {
    fn default() -> Self {
        ModulusSource::Direct(DirectConfig::default())
    }
}

/// Memoised `omega(1/nu)` of one sequence for one `(k, p)`.
pub struct OmegaTable {
    seq: CoefficientSequence,
    params: SmoothnessParams,
    source: ModulusSource,
    support: Option<usize>,
    values: Vec<Option<SumValue>>,
    worst_truncation: f64,
    /// `head_prefix[n] = sum_{nu <= n} a_nu^p nu^{(k+1)p - 2}`, grown on demand
    /// so that `E(nu)` costs amortised O(1) for the bounds source.
    head_prefix: Vec<f64>,
    /// `tail_suffix[n] = sum_{nu >= n} a_nu^p nu^{p - 2}` for `n` up to an
    /// anchor, filled backwards from one infinite sum at the anchor.
    tail_suffix: Vec<f64>,
    tail_divergent: bool,
}

impl OmegaTable {
    pub fn new(seq: &CoefficientSequence, params: SmoothnessParams, source: ModulusSource) -> Result<Self> {
        if let ModulusSource::Direct(cfg) = &source {
            cfg.validate()?;
        }
        Ok(Self {
            seq: seq.clone(),
            params,
            source,
            support: last_nonzero(seq),
            values: Vec::new(),
            worst_truncation: 0.0,
            head_prefix: Vec::new(),
            tail_suffix: Vec::new(),
            tail_divergent: false,
        })
    }

    pub fn source(&self) -> ModulusSource {
        self.source
    }

    /// Largest ratio of [`truncation_bound`] to the computed modulus over all
    /// directly evaluated entries so far.
    pub fn worst_truncation(&self) -> f64 {
        self.worst_truncation
    }

    fn compute(&mut self, nu: usize) -> Result<SumValue> {
        match self.source {
            ModulusSource::Bounds => self.coefficient_bound(nu),
            ModulusSource::Direct(cfg) => {
                let mut horizon = cfg.horizon(nu);
                if let Some(s) = self.support {
                    horizon = horizon.min(s);
                }
                if horizon == 0 {
                    return Ok(SumValue::Finite(0.0));
                }
                let quad = QuadratureSpec::fitted(horizon, self.params.k, cfg.h_samples)?;
                let mut engine = DifferenceNorm::new(&self.seq, horizon, self.params.k, self.params.p, &quad)?;
                let omega = engine.modulus(1.0 / nu as f64, cfg.h_samples)?;
                let bound = truncation_bound(&self.seq, horizon, &self.params);
                if bound > 0.0 {
                    let ratio = if omega > 0.0 { bound / omega } else { f64::INFINITY };
                    self.worst_truncation = self.worst_truncation.max(ratio);
                }
                Ok(SumValue::Finite(omega))
            }
        }
    }
}

impl OmegaTable {
    /// `E(nu)`, equal to `modulus_core` up to summation order.
    fn coefficient_bound(&mut self, nu: usize) -> Result<SumValue> {
        let p = self.params.p;
        let k = self.params.k as f64;
        if self.head_prefix.is_empty() {
            self.params.require_coefficient_range()?;
            validate_monotone(&self.seq)?;
            self.head_prefix.push(0.0);
        }
        let w = (k + 1.0) * p - 2.0;
        while self.head_prefix.len() <= nu {
            let j = self.head_prefix.len();
            let a = self.seq.value(j);
            let term = if a == 0.0 { 0.0 } else { a.powf(p) * (j as f64).powf(w) };
            let last = self.head_prefix[j - 1];
            self.head_prefix.push(last + term);
        }
        let head = self.head_prefix[nu];
        if self.tail_suffix.len() <= nu + 1 && !self.tail_divergent {
            self.fill_tail(2 * (nu + 1))?;
        }
        if self.tail_divergent {
            return Ok(SumValue::Divergent);
        }
        let tail = self.tail_suffix[nu + 1];
        Ok(SumValue::Finite((nu as f64).powf(-k) * head.powf(1.0 / p) + tail.powf(1.0 / p)))
    }

    fn fill_tail(&mut self, anchor: usize) -> Result<()> {
        let p = self.params.p;
        let anchor = anchor.max(1024).max(self.seq.horizon() + 1);
        let SumValue::Finite(mut acc) = weighted_sum(&self.seq, &WeightedSumSpec::infinite(p, p - 2.0, anchor)?) else {
            self.tail_divergent = true;
            return Ok(());
        };
        let mut suffix = vec![0.0; anchor + 1];
        suffix[anchor] = acc;
        for j in (1..anchor).rev() {
            let a = self.seq.value(j);
            if a != 0.0 {
                acc += a.powf(p) * (j as f64).powf(p - 2.0);
            }
            suffix[j] = acc;
        }
        self.tail_suffix = suffix;
        Ok(())
    }
}

impl ModulusOracle for OmegaTable {
    fn omega(&mut self, nu: usize) -> Result<SumValue> {
        if nu == 0 {
            return Err(Error::param("nu", "must be at least 1"));
        }
        if let Some(Some(v)) = self.values.get(nu) {
            return Ok(*v);
        }
        let v = self.compute(nu)?;
        if self.values.len() <= nu {
            self.values.resize(nu + 1, None);
        }
        self.values[nu] = Some(v);
        Ok(v)
    }
}
