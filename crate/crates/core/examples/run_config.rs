//! Drive a task from a JSON configuration, as the command line does.

use monotone_besov::experiment::{parse_config, render};
use serde_json::json;

fn main() {
    let doc = json!({
        "task": "seminorm",
        "sequence": {"family": "power_log", "c": 1.0, "beta": 1.5, "gamma": 1.0, "horizon": 32},
        "theta": 2.0, "r": 0.25, "lambda": 0.5, "k": 1, "p": 2.0,
        "n_grid": [2, 4, 8, 16],
        "source": "bounds",
        "format": "csv"
    });
    match parse_config(&doc).and_then(|cfg| render(&cfg)) {
        Ok(text) => print!("{text}"),
        Err(e) => eprintln!("{e}"),
    }
    let bad = json!({"task": "seminorm", "theta": -1.0, "lamda": 0.5});
    if let Err(e) = parse_config(&bad) {
        eprintln!("{e}");
    }
}
