//! Power-weight membership decided from single coefficients.

use monotone_besov::besov::{membership_test, nikolskii_criterion, ClassParams, Functional, ModulusSource, PhiSpec};
use monotone_besov::sequences::make_power_law;

fn main() -> monotone_besov::Result<()> {
    let (r, alpha, p) = (0.5, 0.25, 2.0);
    let cp = ClassParams::new(2.0, r, 0.5, 2, p)?;
    let phi = PhiSpec::Power { alpha };
    let grid: Vec<usize> = (1..=12).map(|i| 1 << i).collect();
    let critical = r + alpha + 1.0 - 1.0 / p;
    for beta in [critical + 0.2, critical, critical - 0.2] {
        let seq = make_power_law(1.0, beta, 8)?;
        let sup = nikolskii_criterion(&seq, r, alpha, p)?;
        let m = membership_test(&seq, &cp, &phi, Functional::K, &grid, ModulusSource::Bounds)?;
        println!("beta {beta:.3}: sup a_nu nu^s = {sup:?}, K/phi verdict {} ({})", m.verdict, m.evidence);
    }
    Ok(())
}
