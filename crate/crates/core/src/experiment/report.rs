use std::fmt::Write as _;

use serde_json::{json, Value};

use super::config::{ClassTask, ExperimentConfig, Format, Task};
use super::ExperimentError;
use crate::besov::{
    coefficient_functional, discrete_seminorm_with, equivalence_report, integral_seminorm_with, membership_test,
    Functional, ModulusSource, OmegaTable,
};
use crate::hardy::estimate_constant;
use crate::sequences::{validate_monotone, CoefficientSequence, SumValue};
use crate::smoothness::{
    choose_horizon, modulus_core, modulus_curve, modulus_direct, truncation_bound, QuadratureSpec, SmoothnessParams,
};

const NORM: &str = "L^p norms integrate over [0, 2pi] without a 1/(2pi) factor";
const SUMS: &str = "stored-sequence tails closed analytically to 1e-10 relative; \
    modulus sums stop when the power-law-corrected total settles to 1e-4 relative, \
    divergent if the remainder exceeds 10% of the partial sum at 2^20 terms";

/// Header fields shared by every report.
struct Meta {
    task: &'static str,
    seed: u64,
    quadrature: String,
    extra: Vec<(&'static str, String)>,
}

impl Meta {
    fn new(cfg: &ExperimentConfig, quadrature: String) -> Self {
        Self {
            task: cfg.task.name(),
            seed: cfg.seed,
            quadrature,
            extra: Vec::new(),
        }
    }

    fn fields(&self) -> Vec<(&'static str, String)> {
        let mut out = vec![
            ("tool", "mbesov".to_string()),
            ("version", env!("CARGO_PKG_VERSION").to_string()),
            ("task", self.task.to_string()),
            ("seed", self.seed.to_string()),
            ("norm", NORM.to_string()),
            ("infinite_sums", SUMS.to_string()),
            ("quadrature", self.quadrature.clone()),
        ];
        out.extend(self.extra.iter().cloned());
        out
    }

    fn csv(&self) -> String {
        self.fields()
            .into_iter()
            .map(|(k, v)| format!("# {k}: {v}\n"))
            .collect()
    }

    fn json(&self) -> Value {
        let map = self
            .fields()
            .into_iter()
            .map(|(k, v)| (k.to_string(), Value::String(v)))
            .collect::<serde_json::Map<_, _>>();
        Value::Object(map)
    }
}

fn to_json(v: &impl serde::Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialise")
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report values serialise");
    s.push('\n');
    s
}

fn source_description(source: &ModulusSource, k: usize) -> String {
    match source {
        ModulusSource::Direct(cfg) => format!(
            "direct: H={} h-samples, horizon clamp({} nu, {}, {}), M = next power of two >= {}*horizon + 2 (Parseval sum for p = 2)",
            cfg.h_samples,
            cfg.horizon_factor,
            cfg.min_horizon,
            cfg.horizon_cap,
            2 * k
        ),
        ModulusSource::Bounds => "bounds: omega(1/nu) replaced by the coefficient expression E(nu)".into(),
    }
}

/// Renders the report for `cfg` without writing it anywhere.
pub fn render(cfg: &ExperimentConfig) -> Result<String, ExperimentError> {
    match &cfg.task {
        Task::Gen { sequence } => {
            let seq = sequence.build(cfg.seed)?;
            let meta = Meta::new(cfg, "none".into());
            Ok(match cfg.format {
                Format::Json => pretty(&json!({ "meta": meta.json(), "sequence": to_json(&seq) })),
                Format::Csv => {
                    let mut out = meta.csv();
                    let _ = writeln!(out, "# tail: {}", serde_json::to_string(&seq.tail()).expect("tail serialises"));
                    out.push_str("nu,a\n");
                    for (i, a) in seq.head().iter().enumerate() {
                        let _ = writeln!(out, "{},{a}", i + 1);
                    }
                    out
                }
            })
        }
        Task::Modulus {
            sequence,
            params,
            t_grid,
            quad,
            horizon,
        } => render_modulus(cfg, &sequence.build(cfg.seed)?, params, t_grid, quad, *horizon),
        Task::Seminorm(class) => render_seminorm(cfg, class),
        Task::Equivalence { class, phi } => {
            let seq = class.sequence.build(cfg.seed)?;
            let rep = equivalence_report(&seq, &class.params, &class.n_grid, class.source)?;
            let verdict = match phi {
                Some(phi) => {
                    let grid: Vec<usize> = class.n_grid.iter().copied().filter(|&n| n >= 2).collect();
                    if grid.is_empty() {
                        Value::Null
                    } else {
                        let m = membership_test(&seq, &class.params, phi, Functional::K, &grid, class.source)?;
                        json!({ "functional": "K", "verdict": m.verdict, "sup_ratio": m.sup_ratio, "evidence": m.evidence })
                    }
                }
                None => Value::Null,
            };
            let mut meta = Meta::new(cfg, source_description(&class.source, class.params.k));
            meta.extra.push(("delta_rule", "delta_n = 1/(n+1)".into()));
            let col = |f: &dyn Fn(&crate::besov::EquivalenceRow) -> Value| -> Vec<Value> { rep.rows.iter().map(f).collect() };
            match cfg.format {
                Format::Json => Ok(pretty(&json!({
                    "meta": meta.json(),
                    "params": to_json(&class.params),
                    "phi": to_json(phi),
                    "source": to_json(&class.source),
                    "sequence": to_json(&seq),
                    "grid": class.n_grid,
                    "values": {
                        "I": col(&|r| to_json(&r.i)),
                        "J": col(&|r| to_json(&r.j)),
                        "K": col(&|r| to_json(&r.k)),
                        "omega": col(&|r| to_json(&r.omega)),
                        "E": col(&|r| to_json(&r.e)),
                    },
                    "bands": { "JI": to_json(&rep.bands.ji), "KJ": to_json(&rep.bands.kj), "wE": to_json(&rep.bands.we) },
                    "divergent": rep.divergent,
                    "worst_truncation": rep.worst_truncation,
                    "verdict": verdict,
                }))),
                Format::Csv => {
                    let mut out = meta.csv();
                    for (name, band) in [("JI", rep.bands.ji), ("KJ", rep.bands.kj), ("wE", rep.bands.we)] {
                        let _ = match band {
                            Some(b) => writeln!(out, "# band {name}: min={} max={} spread={}", b.min, b.max, b.spread()),
                            None => writeln!(out, "# band {name}: undefined"),
                        };
                    }
                    let _ = writeln!(out, "# verdict: {verdict}");
                    out.push_str("n,delta,I,J,K,omega,E\n");
                    for r in &rep.rows {
                        let _ = writeln!(out, "{},{},{},{},{},{},{}", r.n, r.delta, r.i, r.j, r.k, r.omega, r.e);
                    }
                    Ok(out)
                }
            }
        }
        Task::Membership { class, phi, functional } => {
            let seq = class.sequence.build(cfg.seed)?;
            let m = membership_test(&seq, &class.params, phi, *functional, &class.n_grid, class.source)?;
            let mut meta = Meta::new(cfg, source_description(&class.source, class.params.k));
            meta.extra.push(("verdict_rule", format!(
                "bounded when the running sup of value/phi grows by less than {} over the last doubling of n",
                crate::besov::BOUNDED_GROWTH
            )));
            match cfg.format {
                Format::Json => Ok(pretty(&json!({
                    "meta": meta.json(),
                    "params": to_json(&class.params),
                    "source": to_json(&class.source),
                    "sequence": to_json(&seq),
                    "report": to_json(&m),
                }))),
                Format::Csv => {
                    let mut out = meta.csv();
                    let _ = writeln!(out, "# verdict: {} ({})", m.verdict, m.evidence);
                    out.push_str("n,value,ratio,running_sup\n");
                    for (i, n) in m.grid.iter().enumerate() {
                        let ratio = m.ratios.get(i).map_or("NA".into(), |r| r.to_string());
                        let sup = m.running_sup.get(i).map_or("NA".into(), |r| r.to_string());
                        let _ = writeln!(out, "{n},{},{ratio},{sup}", m.values[i]);
                    }
                    Ok(out)
                }
            }
        }
        Task::VerifyLemma {
            lemma,
            forms,
            family,
            sequences,
            trials,
        } => {
            let sweeps = forms
                .iter()
                .map(|&form| estimate_constant(*lemma, form, family, sequences, *trials))
                .collect::<crate::Result<Vec<_>>>()?;
            let meta = Meta::new(cfg, "none".into());
            match cfg.format {
                Format::Json => Ok(pretty(&json!({ "meta": meta.json(), "sweeps": to_json(&sweeps) }))),
                Format::Csv => {
                    let mut out = meta.csv();
                    let _ = writeln!(out, "# ratio = lhs/rhs; oriented = rhs/lhs for upper bounds and lhs/rhs otherwise, so that the inequality reads oriented >= c > 0");
                    for s in &sweeps {
                        let _ = match s.stats {
                            Some(b) => writeln!(
                                out,
                                "# {} {}: oriented min={} max={} median={} violations={} skipped={}",
                                s.lemma, s.form, b.min, b.max, b.median, s.violations(), s.skipped
                            ),
                            None => writeln!(out, "# {} {}: no defined ratios", s.lemma, s.form),
                        };
                        for e in &s.errors {
                            let _ = writeln!(out, "# rejected: {e}");
                        }
                    }
                    out.push_str("lemma,form,member,alpha,lambda,p,m,n,lhs,rhs,ratio,oriented,violated\n");
                    for s in &sweeps {
                        for row in &s.rows {
                            let c = &row.check;
                            let hp = &c.params;
                            let opt = |v: Option<f64>| v.map_or("NA".to_string(), |x| x.to_string());
                            let _ = writeln!(
                                out,
                                "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                                c.lemma,
                                c.form,
                                row.member.replace(',', ";"),
                                hp.alpha,
                                hp.lambda,
                                hp.p,
                                hp.m,
                                hp.n,
                                c.report.lhs,
                                c.report.rhs,
                                opt(c.report.ratio),
                                opt(c.report.oriented()),
                                c.report.violated
                            );
                        }
                    }
                    Ok(out)
                }
            }
        }
    }
}

fn render_modulus(
    cfg: &ExperimentConfig,
    seq: &CoefficientSequence,
    params: &SmoothnessParams,
    t_grid: &[f64],
    quad: &QuadratureSpec,
    horizon: Option<usize>,
) -> Result<String, ExperimentError> {
    const TARGET: f64 = 1e-6;
    let cap = ((quad.points - 2) / (2 * params.k)).max(1);
    let (horizon, tail_bound, reached) = match horizon {
        Some(h) => {
            let b = truncation_bound(seq, h, params);
            (h, b, None)
        }
        None => {
            let estimate = modulus_direct(seq, cap, params, t_grid[0], quad)?;
            let t = choose_horizon(seq, params, estimate, TARGET, 64.min(cap), cap);
            (t.horizon, t.tail_bound, Some(t.reached))
        }
    };
    let curve = modulus_curve(seq, horizon, params, t_grid, quad)?;
    let e_available = params.p > 1.0 && params.p.is_finite() && validate_monotone(seq).is_ok();
    let mut meta = Meta::new(cfg, format!("M={} H={}", quad.points, quad.h_samples));
    meta.extra.push(("k", params.k.to_string()));
    meta.extra.push(("p", params.p.to_string()));
    meta.extra.push(("horizon", horizon.to_string()));
    meta.extra.push(("tail_bound", tail_bound.to_string()));
    meta.extra.push((
        "horizon_rule",
        match reached {
            Some(true) => format!("tail bound below {TARGET} of omega at the smallest t"),
            Some(false) => format!("tail bound target {TARGET} not reached within M; horizon capped"),
            None => "fixed by configuration".into(),
        },
    ));
    meta.extra.push(("E_rule", "E evaluated at n = max(1, floor(1/t)); NA unless 1 < p < inf and coefficients are monotone".into()));
    let rows = t_grid
        .iter()
        .zip(&curve.omega)
        .map(|(&t, &w)| {
            let n = ((1.0 / t + 1e-9).floor() as usize).max(1);
            let e = if e_available {
                Some(modulus_core(seq, params, n)?)
            } else {
                None
            };
            Ok((t, w, n, e))
        })
        .collect::<crate::Result<Vec<(f64, f64, usize, Option<SumValue>)>>>()?;
    Ok(match cfg.format {
        Format::Csv => {
            let mut out = meta.csv();
            out.push_str("t,omega_direct,E_lower_core,n\n");
            for (t, w, n, e) in rows {
                let e = e.map_or("NA".to_string(), |v| v.to_string());
                let _ = writeln!(out, "{t},{w},{e},{n}");
            }
            out
        }
        Format::Json => pretty(&json!({
            "meta": meta.json(),
            "params": to_json(params),
            "t": t_grid,
            "omega_direct": curve.omega,
            "n": rows.iter().map(|r| r.2).collect::<Vec<_>>(),
            "E_lower_core": rows.iter().map(|r| r.3.map_or(Value::Null, |v| to_json(&v))).collect::<Vec<_>>(),
        })),
    })
}

fn render_seminorm(cfg: &ExperimentConfig, class: &ClassTask) -> Result<String, ExperimentError> {
    let seq = class.sequence.build(cfg.seed)?;
    let cp = &class.params;
    let mut table = OmegaTable::new(&seq, cp.smoothness(), class.source)?;
    let mut rows = Vec::with_capacity(class.n_grid.len());
    for &n in &class.n_grid {
        let delta = 1.0 / (n + 1) as f64;
        let i = integral_seminorm_with(&mut table, cp, delta)?;
        let j = discrete_seminorm_with(&mut table, cp, n)?;
        let k = coefficient_functional(&seq, cp, n)?;
        rows.push((n, delta, i, j, k));
    }
    let mut meta = Meta::new(cfg, source_description(&class.source, cp.k));
    meta.extra.push(("delta_rule", "I evaluated at delta = 1/(n+1)".into()));
    Ok(match cfg.format {
        Format::Json => pretty(&json!({
            "meta": meta.json(),
            "params": to_json(cp),
            "source": to_json(&class.source),
            "sequence": to_json(&seq),
            "grid": class.n_grid,
            "delta": rows.iter().map(|r| r.1).collect::<Vec<_>>(),
            "values": {
                "I": rows.iter().map(|r| to_json(&r.2)).collect::<Vec<_>>(),
                "J": rows.iter().map(|r| to_json(&r.3)).collect::<Vec<_>>(),
                "K": rows.iter().map(|r| to_json(&r.4)).collect::<Vec<_>>(),
            },
            "worst_truncation": table.worst_truncation(),
        })),
        Format::Csv => {
            let mut out = meta.csv();
            let _ = writeln!(out, "# worst_truncation: {}", table.worst_truncation());
            out.push_str("n,delta,I,J,K\n");
            for (n, d, i, j, k) in rows {
                let _ = writeln!(out, "{n},{d},{i},{j},{k}");
            }
            out
        }
    })
}
