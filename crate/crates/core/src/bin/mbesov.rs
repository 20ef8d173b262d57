//! Command-line front end: flags are merged over an optional JSON config and
//! handed to the experiment runner.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use monotone_besov::experiment::{parse_config, run_experiment, ExperimentError};
use serde_json::{Map, Value};

#[derive(Parser)]
#[command(name = "mbesov", version, about = "Moduli of smoothness, Besov-type seminorms and Hardy inequalities for monotone cosine series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Materialise a coefficient sequence.
    #[command(allow_negative_numbers = true)]
    Gen(Flags),
    /// Sample omega(f; t)_p directly, next to the coefficient expression E(n).
    #[command(allow_negative_numbers = true)]
    Modulus(Flags),
    /// Evaluate I(1/(n+1)), J(n) and K(n) over an n-grid.
    #[command(allow_negative_numbers = true)]
    Seminorm(Flags),
    /// Sweep one Hardy-type inequality and report its ratios.
    #[command(allow_negative_numbers = true)]
    VerifyLemma(Flags),
    /// Measure the J/I, K/J and omega/E ratio bands.
    #[command(allow_negative_numbers = true)]
    Equivalence(Flags),
    /// Classify sup functional(n)/phi over an n-grid.
    #[command(allow_negative_numbers = true)]
    Membership(Flags),
}

impl Command {
    fn task(&self) -> (&'static str, &Flags) {
        match self {
            Command::Gen(f) => ("gen", f),
            Command::Modulus(f) => ("modulus", f),
            Command::Seminorm(f) => ("seminorm", f),
            Command::VerifyLemma(f) => ("verify-lemma", f),
            Command::Equivalence(f) => ("equivalence", f),
            Command::Membership(f) => ("membership", f),
        }
    }
}

/// Every flag mirrors the config key of the same name (dashes become
/// underscores). Keys that do not apply to the task are rejected.
#[derive(Args)]
struct Flags {
    /// JSON config file; flags given on the command line override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Report path (default: $MBESOV_OUT_DIR/<task>.<ext>, else stdout).
    #[arg(long)]
    output: Option<String>,
    /// csv or json.
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Sequence as inline JSON (`{"family": "power_law", ...}`) or a path to a
    /// `{"head": [...], "tail": {...}}` file.
    #[arg(long)]
    sequence: Option<String>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    m: Option<usize>,
    /// Comma-separated t values.
    #[arg(long, value_delimiter = ',')]
    t_grid: Option<Vec<f64>>,
    /// Comma-separated n values.
    #[arg(long, value_delimiter = ',')]
    n_grid: Option<Vec<usize>>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    h_samples: Option<usize>,
    #[arg(long)]
    horizon: Option<usize>,
    /// direct or bounds.
    #[arg(long)]
    source: Option<String>,
    #[arg(long)]
    horizon_factor: Option<usize>,
    #[arg(long)]
    min_horizon: Option<usize>,
    #[arg(long)]
    horizon_cap: Option<usize>,
    /// Weight as JSON, e.g. `{"variant": "power", "alpha": 0.25}`.
    #[arg(long)]
    phi: Option<String>,
    /// I, J or K.
    #[arg(long)]
    functional: Option<String>,
    #[arg(long)]
    lemma: Option<String>,
    /// tail, head or both.
    #[arg(long)]
    form: Option<String>,
    /// Sequence family for verify-lemma as JSON, e.g. `{"family": "random_monotone"}`.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    trials: Option<usize>,
}

fn parse_json_flag(name: &str, text: &str) -> Result<Value, ExperimentError> {
    serde_json::from_str(text).map_err(|e| ExperimentError::Config(vec![format!("`--{name}`: {e}")]))
}

fn document(task: &str, flags: &Flags) -> Result<Value, ExperimentError> {
    let mut map = match &flags.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| ExperimentError::Io {
                path: path.clone(),
                source,
            })?;
            match serde_json::from_str::<Value>(&text) {
                Ok(Value::Object(m)) => m,
                Ok(_) => return Err(ExperimentError::Config(vec![format!("{}: expected a JSON object", path.display())])),
                Err(e) => return Err(ExperimentError::Config(vec![format!("{}: {e}", path.display())])),
            }
        }
        None => Map::new(),
    };
    if let Some(other) = map.get("task").and_then(Value::as_str).filter(|t| *t != task) {
        return Err(ExperimentError::Config(vec![format!(
            "config file describes task `{other}`, not `{task}`"
        )]));
    }
    map.insert("task".into(), Value::from(task));
    let mut set = |key: &str, v: Option<Value>| {
        if let Some(v) = v {
            map.insert(key.to_string(), v);
        }
    };
    set("output", flags.output.clone().map(Value::from));
    set("format", flags.format.clone().map(Value::from));
    set("seed", flags.seed.map(Value::from));
    if let Some(s) = &flags.sequence {
        let v = if s.trim_start().starts_with('{') {
            parse_json_flag("sequence", s)?
        } else {
            serde_json::json!({ "family": "file", "path": s })
        };
        set("sequence", Some(v));
    }
    set("k", flags.k.map(Value::from));
    set("p", flags.p.map(Value::from));
    set("theta", flags.theta.map(Value::from));
    set("r", flags.r.map(Value::from));
    set("lambda", flags.lambda.map(Value::from));
    set("alpha", flags.alpha.map(Value::from));
    set("m", flags.m.map(Value::from));
    set("t_grid", flags.t_grid.clone().map(Value::from));
    set("n_grid", flags.n_grid.clone().map(Value::from));
    set("points", flags.points.map(Value::from));
    set("h_samples", flags.h_samples.map(Value::from));
    set("horizon", flags.horizon.map(Value::from));
    set("source", flags.source.clone().map(Value::from));
    set("horizon_factor", flags.horizon_factor.map(Value::from));
    set("min_horizon", flags.min_horizon.map(Value::from));
    set("horizon_cap", flags.horizon_cap.map(Value::from));
    set("functional", flags.functional.clone().map(Value::from));
    set("lemma", flags.lemma.clone().map(Value::from));
    set("form", flags.form.clone().map(Value::from));
    set("trials", flags.trials.map(Value::from));
    if let Some(s) = &flags.phi {
        set("phi", Some(parse_json_flag("phi", s)?));
    }
    if let Some(s) = &flags.family {
        set("family", Some(parse_json_flag("family", s)?));
    }
    Ok(Value::Object(map))
}

fn run(cli: &Cli) -> Result<(), ExperimentError> {
    let (task, flags) = cli.command.task();
    let cfg = parse_config(&document(task, flags)?)?;
    if let Some(path) = run_experiment(&cfg)? {
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mbesov: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
