use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weight functions `phi` on `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case", deny_unknown_fields)]
pub enum PhiSpec {
    /// `delta^alpha`.
    Power { alpha: f64 },
    /// `c`.
    Constant { c: f64 },
    /// `delta^alpha (1 + |ln delta|)^gamma`.
    PowerLog { alpha: f64, gamma: f64 },
}

impl PhiSpec {
    /// Checks the family parameters; `lambda` bounds the power from above.
    pub fn validate(&self, lambda: f64) -> Result<()> {
        match *self {
            PhiSpec::Power { alpha } if !(alpha > 0.0 && alpha < lambda) => Err(Error::param(
                "alpha",
                format!("power weight needs 0 < alpha < lambda = {lambda}, got {alpha}"),
            )),
            PhiSpec::Constant { c } if !(c > 0.0 && c.is_finite()) => {
                Err(Error::param("c", format!("must be positive, got {c}")))
            }
            PhiSpec::PowerLog { alpha, gamma } if !(alpha >= 0.0 && alpha < lambda && gamma.is_finite()) => {
                Err(Error::param(
                    "alpha",
                    format!("power-log weight needs 0 <= alpha < lambda = {lambda} and finite gamma"),
                ))
            }
            _ => Ok(()),
        }
    }
}

/// `phi(delta)`.
pub fn phi_eval(phi: &PhiSpec, delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::param("delta", format!("must lie in (0, 1), got {delta}")));
    }
    Ok(match *phi {
        PhiSpec::Power { alpha } => delta.powf(alpha),
        PhiSpec::Constant { c } => c,
        PhiSpec::PowerLog { alpha, gamma } => delta.powf(alpha) * (1.0 - delta.ln()).powf(gamma),
    })
}

/// Empirical `(C1, C2)`: the largest `phi(d1) / phi(d2)` over grid pairs
/// `d1 <= d2`, and the largest `phi(2 d) / phi(d)` over the grid.
///
/// The grid must be ascending within `(0, 1/2]`, and `phi` may not vanish
/// at any of its points.
pub fn phi_validate(phi: &PhiSpec, grid: &[f64]) -> Result<(f64, f64)> {
    if grid.is_empty() {
        return Err(Error::param("grid", "must not be empty"));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::param("grid", "must be strictly ascending"));
    }
    if !(grid[0] > 0.0 && grid[grid.len() - 1] <= 0.5) {
        return Err(Error::param("grid", "must lie in (0, 1/2]"));
    }
    let values = grid.iter().map(|&d| phi_eval(phi, d)).collect::<Result<Vec<_>>>()?;
    if values.iter().any(|&v| !(v > 0.0)) {
        return Err(Error::param("phi", "vanishes on the grid"));
    }
    let mut running = 0.0f64;
    let mut c1 = 0.0f64;
    for &v in &values {
        running = running.max(v);
        c1 = c1.max(running / v);
    }
    let mut c2 = 0.0f64;
    for (&d, &v) in grid.iter().zip(&values) {
        let doubled = if 2.0 * d < 1.0 {
            phi_eval(phi, 2.0 * d)?
        } else {
            continue;
        };
        c2 = c2.max(doubled / v);
    }
    Ok((c1, c2))
}
