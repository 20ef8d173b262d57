//! Strict parsing of experiment configurations.

use std::collections::BTreeSet;
use std::path::PathBuf;

use serde_json::{Map, Value};

use super::ExperimentError;
use crate::besov::{ClassParams, DirectConfig, Functional, ModulusSource, PhiSpec};
use crate::hardy::{Form, HardyFamily, LemmaId, SequenceFamily};
use crate::sequences::{make_power_law, make_power_log, random_monotone, CoefficientSequence};
use crate::smoothness::{QuadratureSpec, SmoothnessParams};

/// Report encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Where the coefficients come from.
#[derive(Debug, Clone, PartialEq)]
pub enum SequenceSpec {
    PowerLaw { c: f64, beta: f64, horizon: usize },
    PowerLog { c: f64, beta: f64, gamma: f64, horizon: usize },
    /// Sorted uniform samples drawn with the experiment seed.
    RandomMonotone { len: usize, scale: f64 },
    Inline(CoefficientSequence),
    /// A JSON file holding `{"head": [...], "tail": {...}}`.
    File(PathBuf),
}

impl Default for SequenceSpec {
    fn default() -> Self {
        SequenceSpec::PowerLaw {
            c: 1.0,
            beta: 2.0,
            horizon: 64,
        }
    }
}

impl SequenceSpec {
    pub fn build(&self, seed: u64) -> Result<CoefficientSequence, ExperimentError> {
        use rand::SeedableRng;
        Ok(match self {
            SequenceSpec::PowerLaw { c, beta, horizon } => make_power_law(*c, *beta, *horizon)?,
            SequenceSpec::PowerLog { c, beta, gamma, horizon } => make_power_log(*c, *beta, *gamma, *horizon)?,
            SequenceSpec::RandomMonotone { len, scale } => {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                random_monotone(&mut rng, *len, *scale)?
            }
            SequenceSpec::Inline(seq) => seq.clone(),
            SequenceSpec::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| ExperimentError::Io {
                    path: path.clone(),
                    source,
                })?;
                CoefficientSequence::from_json(&text)
                    .map_err(|e| ExperimentError::Config(vec![format!("{}: {e}", path.display())]))?
            }
        })
    }
}

/// Inputs shared by the seminorm-based tasks.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassTask {
    pub sequence: SequenceSpec,
    pub params: ClassParams,
    pub n_grid: Vec<usize>,
    pub source: ModulusSource,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Task {
    Gen {
        sequence: SequenceSpec,
    },
    Modulus {
        sequence: SequenceSpec,
        params: SmoothnessParams,
        t_grid: Vec<f64>,
        quad: QuadratureSpec,
        /// Fixed truncation; chosen from the tail bound when absent.
        horizon: Option<usize>,
    },
    Seminorm(ClassTask),
    Equivalence {
        class: ClassTask,
        phi: Option<PhiSpec>,
    },
    Membership {
        class: ClassTask,
        phi: PhiSpec,
        functional: Functional,
    },
    VerifyLemma {
        lemma: LemmaId,
        forms: Vec<Form>,
        family: HardyFamily,
        sequences: SequenceFamily,
        trials: usize,
    },
}

impl Task {
    pub fn name(&self) -> &'static str {
        match self {
            Task::Gen { .. } => "gen",
            Task::Modulus { .. } => "modulus",
            Task::Seminorm(_) => "seminorm",
            Task::Equivalence { .. } => "equivalence",
            Task::Membership { .. } => "membership",
            Task::VerifyLemma { .. } => "verify-lemma",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub task: Task,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub seed: u64,
}

pub const TASKS: [&str; 6] = ["gen", "modulus", "seminorm", "verify-lemma", "equivalence", "membership"];

/// Reads keys from one JSON object, remembering which were consumed.
struct Reader<'a> {
    map: &'a Map<String, Value>,
    used: BTreeSet<&'static str>,
    scope: &'static str,
    errors: &'a mut Vec<String>,
}

impl<'a> Reader<'a> {
    fn new(map: &'a Map<String, Value>, scope: &'static str, errors: &'a mut Vec<String>) -> Self {
        Self {
            map,
            used: BTreeSet::new(),
            scope,
            errors,
        }
    }

    fn key(&self, key: &str) -> String {
        if self.scope.is_empty() {
            format!("`{key}`")
        } else {
            format!("`{}.{key}`", self.scope)
        }
    }

    fn fail(&mut self, key: &str, what: impl std::fmt::Display) {
        let k = self.key(key);
        self.errors.push(format!("{k}: {what}"));
    }

    fn raw(&mut self, key: &'static str) -> Option<&'a Value> {
        self.used.insert(key);
        self.map.get(key).filter(|v| !v.is_null())
    }

    fn f64(&mut self, key: &'static str) -> Option<f64> {
        let v = self.raw(key)?;
        match v.as_f64() {
            Some(x) => Some(x),
            None => {
                self.fail(key, format!("expected a number, got {v}"));
                None
            }
        }
    }

    fn f64_or(&mut self, key: &'static str, default: f64) -> f64 {
        self.f64(key).unwrap_or(default)
    }

    fn usize(&mut self, key: &'static str) -> Option<usize> {
        let v = self.raw(key)?;
        match v.as_u64() {
            Some(x) => Some(x as usize),
            None => {
                self.fail(key, format!("expected a nonnegative integer, got {v}"));
                None
            }
        }
    }

    fn usize_or(&mut self, key: &'static str, default: usize) -> usize {
        self.usize(key).unwrap_or(default)
    }

    fn str(&mut self, key: &'static str) -> Option<&'a str> {
        let v = self.raw(key)?;
        match v.as_str() {
            Some(s) => Some(s),
            None => {
                self.fail(key, format!("expected a string, got {v}"));
                None
            }
        }
    }

    fn object(&mut self, key: &'static str) -> Option<&'a Map<String, Value>> {
        let v = self.raw(key)?;
        match v.as_object() {
            Some(m) => Some(m),
            None => {
                self.fail(key, format!("expected an object, got {v}"));
                None
            }
        }
    }

    fn list<T>(&mut self, key: &'static str, item: impl Fn(&Value) -> Option<T>, what: &str) -> Option<Vec<T>> {
        let v = self.raw(key)?;
        let parsed = v
            .as_array()
            .and_then(|items| items.iter().map(&item).collect::<Option<Vec<T>>>());
        if parsed.is_none() {
            self.fail(key, format!("expected an array of {what}, got {v}"));
        }
        parsed
    }

    fn require<T>(&mut self, key: &'static str, value: Option<T>) -> Option<T> {
        if value.is_none() && !self.map.get(key).is_some_and(|v| !v.is_null()) {
            self.fail(key, "is required");
        }
        value
    }

    fn finish(self) {
        for key in self.map.keys() {
            if !self.used.contains(key.as_str()) {
                let k = self.key(key);
                self.errors.push(format!("{k}: unknown key"));
            }
        }
    }
}

fn ascending<T: PartialOrd>(v: &[T]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

fn dyadic(lo: u32, hi: u32) -> Vec<usize> {
    (lo..=hi).map(|i| 1usize << i).collect()
}

fn push_err(errors: &mut Vec<String>, e: impl std::fmt::Display) {
    errors.push(e.to_string());
}

fn parse_sequence(reader: &mut Reader<'_>) -> SequenceSpec {
    let Some(map) = reader.object("sequence") else {
        return SequenceSpec::default();
    };
    let mut r = Reader::new(map, "sequence", reader.errors);
    let family = r.str("family").unwrap_or("power_law");
    let spec = match family {
        "power_law" => SequenceSpec::PowerLaw {
            c: r.f64_or("c", 1.0),
            beta: r.f64_or("beta", 2.0),
            horizon: r.usize_or("horizon", 64),
        },
        "power_log" => SequenceSpec::PowerLog {
            c: r.f64_or("c", 1.0),
            beta: r.f64_or("beta", 1.0),
            gamma: r.f64_or("gamma", 2.0),
            horizon: r.usize_or("horizon", 64),
        },
        "random_monotone" => SequenceSpec::RandomMonotone {
            len: r.usize_or("len", 64),
            scale: r.f64_or("scale", 1.0),
        },
        "inline" => {
            let mut body = Map::new();
            for key in ["head", "tail"] {
                if let Some(v) = r.raw(key) {
                    body.insert(key.to_string(), v.clone());
                }
            }
            match serde_json::from_value::<CoefficientSequence>(Value::Object(body)) {
                Ok(seq) => SequenceSpec::Inline(seq),
                Err(e) => {
                    r.fail("head", e);
                    SequenceSpec::default()
                }
            }
        }
        "file" => match r.str("path") {
            Some(p) => SequenceSpec::File(PathBuf::from(p)),
            None => {
                r.fail("path", "is required for family `file`");
                SequenceSpec::default()
            }
        },
        other => {
            r.fail("family", format!("unknown family `{other}`"));
            SequenceSpec::default()
        }
    };
    r.finish();
    let check = match &spec {
        SequenceSpec::PowerLaw { c, beta, horizon } => make_power_law(*c, *beta, *horizon).err(),
        SequenceSpec::PowerLog { c, beta, gamma, horizon } => make_power_log(*c, *beta, *gamma, *horizon).err(),
        SequenceSpec::RandomMonotone { scale, .. } if !(*scale > 0.0) => {
            Some(crate::Error::InvalidParameter {
                name: "scale",
                reason: "must be positive".into(),
            })
        }
        _ => None,
    };
    if let Some(e) = check {
        push_err(reader.errors, format!("`sequence`: {e}"));
    }
    spec
}

fn parse_n_grid(r: &mut Reader<'_>, default: Vec<usize>, min: usize) -> Vec<usize> {
    let grid = r
        .list("n_grid", |v| v.as_u64().map(|x| x as usize), "nonnegative integers")
        .unwrap_or(default);
    if grid.is_empty() || !ascending(&grid) || grid[0] < min {
        r.fail("n_grid", format!("must be nonempty, strictly ascending, with entries >= {min}"));
    }
    grid
}

fn parse_class(r: &mut Reader<'_>, default_grid: Vec<usize>, min_n: usize) -> ClassTask {
    let sequence = parse_sequence(r);
    let theta = r.f64_or("theta", 1.0);
    let rr = r.f64_or("r", 0.5);
    let lambda = r.f64_or("lambda", 0.5);
    let k = r.usize_or("k", 2);
    let p = r.f64_or("p", 2.0);
    let violations = ClassParams::violations(theta, rr, lambda, k, p);
    let params = ClassParams { theta, r: rr, lambda, k, p };
    for e in violations {
        push_err(r.errors, e);
    }
    let n_grid = parse_n_grid(r, default_grid, min_n);
    let source = parse_source(r);
    ClassTask {
        sequence,
        params,
        n_grid,
        source,
    }
}

fn parse_source(r: &mut Reader<'_>) -> ModulusSource {
    let defaults = DirectConfig::default();
    let cfg = DirectConfig {
        h_samples: r.usize_or("h_samples", defaults.h_samples),
        horizon_factor: r.usize_or("horizon_factor", defaults.horizon_factor),
        min_horizon: r.usize_or("min_horizon", defaults.min_horizon),
        horizon_cap: r.usize_or("horizon_cap", defaults.horizon_cap),
    };
    match r.str("source").unwrap_or("direct") {
        "direct" => {
            if let Err(e) = cfg.validate() {
                push_err(r.errors, e);
            }
            ModulusSource::Direct(cfg)
        }
        "bounds" => {
            if cfg != defaults {
                r.fail("source", "direct-modulus settings given with source `bounds`");
            }
            ModulusSource::Bounds
        }
        other => {
            r.fail("source", format!("expected `direct` or `bounds`, got `{other}`"));
            ModulusSource::default()
        }
    }
}

fn parse_phi(r: &mut Reader<'_>, lambda: f64) -> Option<PhiSpec> {
    let v = r.raw("phi")?;
    match serde_json::from_value::<PhiSpec>(v.clone()) {
        Ok(phi) => {
            if let Err(e) = phi.validate(lambda) {
                r.fail("phi", e);
            }
            Some(phi)
        }
        Err(e) => {
            r.fail("phi", e);
            None
        }
    }
}

fn parse_family(r: &mut Reader<'_>, seed: u64) -> SequenceFamily {
    let Some(map) = r.object("family") else {
        return SequenceFamily::PowerLaw {
            betas: vec![0.5, 1.0, 2.0],
        };
    };
    let mut f = Reader::new(map, "family", r.errors);
    let betas = |f: &mut Reader<'_>| {
        f.list("betas", Value::as_f64, "numbers")
            .unwrap_or_else(|| vec![0.5, 1.0, 2.0])
    };
    let family = match f.str("family").unwrap_or("power_law") {
        "power_law" => SequenceFamily::PowerLaw { betas: betas(&mut f) },
        "power_log" => SequenceFamily::PowerLog {
            betas: betas(&mut f),
            gamma: f.f64_or("gamma", 1.0),
        },
        "random_monotone" => SequenceFamily::RandomMonotone {
            seed: f.usize("seed").map_or(seed, |s| s as u64),
        },
        "zero" => SequenceFamily::Zero,
        other => {
            f.fail("family", format!("unknown family `{other}`"));
            SequenceFamily::Zero
        }
    };
    f.finish();
    family
}

/// Parses and validates a configuration document, reporting every problem
/// found rather than the first.
pub fn parse_config(doc: &Value) -> Result<ExperimentConfig, ExperimentError> {
    let mut errors = Vec::new();
    let Some(map) = doc.as_object() else {
        return Err(ExperimentError::Config(vec!["configuration must be a JSON object".into()]));
    };
    let mut r = Reader::new(map, "", &mut errors);
    let task_name = r.str("task");
    let task_name = r.require("task", task_name).unwrap_or("");
    let seed = r.usize_or("seed", 0) as u64;
    let output = r.str("output").map(PathBuf::from);
    let format = match r.str("format") {
        None => None,
        Some("csv") => Some(Format::Csv),
        Some("json") => Some(Format::Json),
        Some(other) => {
            r.fail("format", format!("expected `csv` or `json`, got `{other}`"));
            None
        }
    };

    let task = match task_name {
        "gen" => Some(Task::Gen {
            sequence: parse_sequence(&mut r),
        }),
        "modulus" => {
            let sequence = parse_sequence(&mut r);
            let k = r.usize("k");
            let k = r.require("k", k).unwrap_or(1);
            let p = r.f64("p");
            let p = r.require("p", p).unwrap_or(2.0);
            let params = SmoothnessParams::new(k, p);
            if let Err(e) = &params {
                push_err(r.errors, e);
            }
            let t_grid = r.list("t_grid", Value::as_f64, "numbers");
            let t_grid = r.require("t_grid", t_grid).unwrap_or_default();
            if !t_grid.is_empty()
                && (!ascending(&t_grid) || !t_grid.iter().all(|&t| t > 0.0 && t <= std::f64::consts::PI))
            {
                r.fail("t_grid", "must be strictly ascending within (0, pi]");
            }
            let defaults = QuadratureSpec::default();
            let points = r.usize_or("points", defaults.points);
            let h_samples = r.usize_or("h_samples", defaults.h_samples);
            let quad = QuadratureSpec::new(points, h_samples);
            if let Err(e) = &quad {
                push_err(r.errors, e);
            }
            let horizon = r.usize("horizon");
            if let (Some(h), Ok(q)) = (horizon, &quad) {
                if h == 0 {
                    r.fail("horizon", "must be at least 1");
                } else if let Err(e) = q.check(h, k) {
                    push_err(r.errors, e);
                }
            }
            Some(Task::Modulus {
                sequence,
                params: params.unwrap_or(SmoothnessParams { k: 1, p: 2.0 }),
                t_grid,
                quad: quad.unwrap_or(defaults),
                horizon,
            })
        }
        "seminorm" => Some(Task::Seminorm(parse_class(&mut r, dyadic(1, 8), 1))),
        "equivalence" => {
            let class = parse_class(&mut r, dyadic(1, 8), 1);
            let phi = parse_phi(&mut r, class.params.lambda);
            Some(Task::Equivalence { class, phi })
        }
        "membership" => {
            let class = parse_class(&mut r, dyadic(1, 12), 2);
            let phi = parse_phi(&mut r, class.params.lambda);
            let phi = r.require("phi", phi);
            let functional = match r.str("functional").map(str::parse::<Functional>) {
                None => Functional::K,
                Some(Ok(f)) => f,
                Some(Err(e)) => {
                    r.fail("functional", e);
                    Functional::K
                }
            };
            phi.map(|phi| Task::Membership { class, phi, functional })
        }
        "verify-lemma" => {
            let lemma = match r.str("lemma").map(str::parse::<LemmaId>) {
                Some(Ok(l)) => Some(l),
                Some(Err(e)) => {
                    r.fail("lemma", e);
                    None
                }
                None => {
                    r.fail("lemma", "is required");
                    None
                }
            };
            let forms = match r.str("form") {
                None | Some("both") => vec![Form::Tail, Form::Head],
                Some(s) => match s.parse::<Form>() {
                    Ok(f) => vec![f],
                    Err(e) => {
                        r.fail("form", e);
                        vec![]
                    }
                },
            };
            let alpha = r.f64_or("alpha", 1.0);
            let lambda = r.f64_or("lambda", 0.0);
            let p = r.f64_or("p", 2.0);
            let m = r.usize_or("m", 1);
            let n_grid = parse_n_grid(&mut r, dyadic(3, 10), 2);
            let sequences = parse_family(&mut r, seed);
            let trials = r.usize_or("trials", 20);
            if trials == 0 {
                r.fail("trials", "must be at least 1");
            }
            if !(alpha > 0.0) {
                r.fail("alpha", "must be positive");
            }
            if !(p > 0.0) {
                r.fail("p", "must be positive");
            }
            if m == 0 {
                r.fail("m", "must be at least 1");
            }
            lemma.map(|lemma| {
                let forms = match lemma.fixed_form() {
                    Some(f) => vec![f],
                    // The form does not enter Jensen's inequality.
                    None if lemma == LemmaId::Jensen => forms.into_iter().take(1).collect(),
                    None => forms,
                };
                Task::VerifyLemma {
                    lemma,
                    forms,
                    family: HardyFamily {
                        alpha,
                        lambda,
                        p,
                        m,
                        n_grid,
                    },
                    sequences,
                    trials,
                }
            })
        }
        "" => None,
        other => {
            r.fail("task", format!("unknown task `{other}`; expected one of {}", TASKS.join(", ")));
            None
        }
    };
    r.finish();
    match task {
        Some(task) if errors.is_empty() => {
            let format = format.unwrap_or(match task {
                Task::Modulus { .. } | Task::VerifyLemma { .. } => Format::Csv,
                _ => Format::Json,
            });
            Ok(ExperimentConfig {
                task,
                output,
                format,
                seed,
            })
        }
        _ => {
            if errors.is_empty() {
                errors.push("no task could be configured".into());
            }
            Err(ExperimentError::Config(errors))
        }
    }
}
