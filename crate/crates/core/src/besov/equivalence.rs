use serde::Serialize;

use super::{
    coefficient_functional, discrete_seminorm_with, integral_seminorm_with, ClassParams, DirectConfig,
    ModulusOracle, ModulusSource, OmegaTable,
};
use crate::error::{Error, Result};
use crate::hardy::BandStats;
use crate::sequences::{CoefficientSequence, SumValue};
use crate::smoothness::modulus_core;

/// All functionals at one grid point, with `delta = 1/(n+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquivalenceRow {
    pub n: usize,
    pub delta: f64,
    pub i: SumValue,
    pub j: SumValue,
    pub k: SumValue,
    /// Directly computed `omega(1/n)`.
    pub omega: f64,
    pub e: SumValue,
}

/// Bands of `J(n)/I(1/(n+1))`, `K(n)/J(n)` and `omega(1/n)/E(n)`; `None`
/// when no ratio in the family is defined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bands {
    pub ji: Option<BandStats>,
    pub kj: Option<BandStats>,
    pub we: Option<BandStats>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub params: ClassParams,
    /// Source of the moduli inside `I` and `J`.
    pub source: ModulusSource,
    pub rows: Vec<EquivalenceRow>,
    pub bands: Bands,
    /// Whether any functional diverged.
    pub divergent: bool,
    /// Largest truncation bound relative to a directly computed modulus.
    pub worst_truncation: f64,
}

/// Evaluates `I`, `J`, `K`, `omega` and `E` over `n_grid` and measures the
/// three ratio bands. Ratios with a zero or divergent side are left out.
pub fn equivalence_report(
    seq: &CoefficientSequence,
    cp: &ClassParams,
    n_grid: &[usize],
    source: ModulusSource,
) -> Result<EquivalenceReport> {
    if n_grid.is_empty() || n_grid[0] == 0 {
        return Err(Error::param("n_grid", "must be nonempty with entries >= 1"));
    }
    if n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::param("n_grid", "must be strictly ascending"));
    }
    let direct_cfg = match source {
        ModulusSource::Direct(cfg) => cfg,
        ModulusSource::Bounds => DirectConfig::default(),
    };
    let mut table = OmegaTable::new(seq, cp.smoothness(), source)?;
    let mut direct = match source {
        ModulusSource::Direct(_) => None,
        ModulusSource::Bounds => Some(OmegaTable::new(seq, cp.smoothness(), ModulusSource::Direct(direct_cfg))?),
    };
    let mut rows = Vec::with_capacity(n_grid.len());
    for &n in n_grid {
        let delta = 1.0 / (n + 1) as f64;
        let i = integral_seminorm_with(&mut table, cp, delta)?;
        let j = discrete_seminorm_with(&mut table, cp, n)?;
        let k = coefficient_functional(seq, cp, n)?;
        let omega_table = direct.as_mut().unwrap_or(&mut table);
        let omega = omega_table.omega(n)?.finite().unwrap_or(f64::INFINITY);
        let e = modulus_core(seq, &cp.smoothness(), n)?;
        rows.push(EquivalenceRow { n, delta, i, j, k, omega, e });
    }
    let band = |f: &dyn Fn(&EquivalenceRow) -> (SumValue, SumValue)| {
        let ratios: Vec<f64> = rows
            .iter()
            .filter_map(|row| {
                let (num, den) = f(row);
                match (num.finite(), den.finite()) {
                    (Some(a), Some(b)) if a > 0.0 && b > 0.0 => Some(a / b),
                    _ => None,
                }
            })
            .collect();
        BandStats::from_values(&ratios)
    };
    let bands = Bands {
        ji: band(&|r| (r.j, r.i)),
        kj: band(&|r| (r.k, r.j)),
        we: band(&|r| (SumValue::Finite(r.omega), r.e)),
    };
    let divergent = rows
        .iter()
        .any(|r| r.i.is_divergent() || r.j.is_divergent() || r.k.is_divergent() || r.e.is_divergent());
    let worst_truncation = table
        .worst_truncation()
        .max(direct.as_ref().map_or(0.0, |t| t.worst_truncation()));
    Ok(EquivalenceReport {
        params: *cp,
        source,
        rows,
        bands,
        divergent,
        worst_truncation,
    })
}
