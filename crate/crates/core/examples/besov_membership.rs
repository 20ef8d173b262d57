//! Constant weight: membership follows convergence of a coefficient series.

use monotone_besov::besov::{besov_series, membership_test, ClassParams, Functional, ModulusSource, PhiSpec};
use monotone_besov::sequences::make_power_law;

fn main() -> monotone_besov::Result<()> {
    let cp = ClassParams::new(1.0, 0.5, 0.5, 3, 2.0)?;
    let phi = PhiSpec::Constant { c: 1.0 };
    let grid: Vec<usize> = (1..=10).map(|i| 1 << i).collect();
    let boundary = cp.r + 1.0 - 1.0 / cp.p;
    for beta in [boundary + 0.2, boundary - 0.2] {
        let seq = make_power_law(1.0, beta, 8)?;
        let series = besov_series(&seq, &cp)?;
        for functional in [Functional::J, Functional::K] {
            let m = membership_test(&seq, &cp, &phi, functional, &grid, ModulusSource::Bounds)?;
            println!("beta {beta:.2}: series {series:?}, {functional} verdict {}", m.verdict);
        }
    }
    Ok(())
}
