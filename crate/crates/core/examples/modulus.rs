//! Compare the directly computed modulus with the coefficient expression E(n).

use monotone_besov::sequences::make_power_law;
use monotone_besov::smoothness::{modulus_core, modulus_curve, QuadratureSpec, SmoothnessParams};

fn main() -> monotone_besov::Result<()> {
    let seq = make_power_law(1.0, 2.0, 8)?;
    let params = SmoothnessParams::new(2, 2.0)?;
    let horizon = 2048;
    let quad = QuadratureSpec::fitted(horizon, params.k, 64)?;
    let t: Vec<f64> = (1..=6).map(|i| 1.0 / (1u32 << i) as f64).rev().collect();
    let curve = modulus_curve(&seq, horizon, &params, &t, &quad)?;
    println!("{:>10} {:>12} {:>12} {:>8}", "t", "omega", "E(1/t)", "ratio");
    for (t, w) in curve.t.iter().zip(&curve.omega) {
        let n = (1.0 / t).round() as usize;
        let e = modulus_core(&seq, &params, n)?.finite().unwrap();
        println!("{t:>10.5} {w:>12.5e} {e:>12.5e} {:>8.4}", w / e);
    }
    Ok(())
}
