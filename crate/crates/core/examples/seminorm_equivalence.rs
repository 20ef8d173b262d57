//! The integral, discrete and coefficient seminorms side by side.

use monotone_besov::besov::{equivalence_report, ClassParams, ModulusSource};
use monotone_besov::sequences::make_power_law;

fn main() -> monotone_besov::Result<()> {
    let seq = make_power_law(1.0, 2.0, 8)?;
    let cp = ClassParams::new(1.0, 0.5, 0.5, 2, 2.0)?;
    let grid: Vec<usize> = (1..=6).map(|i| 1 << i).collect();
    let report = equivalence_report(&seq, &cp, &grid, ModulusSource::Bounds)?;
    println!("{:>4} {:>12} {:>12} {:>12}", "n", "I", "J", "K");
    for row in &report.rows {
        let show = |v: monotone_besov::SumValue| v.finite().map_or("divergent".into(), |x| format!("{x:.5e}"));
        println!("{:>4} {:>12} {:>12} {:>12}", row.n, show(row.i), show(row.j), show(row.k));
    }
    for (name, band) in [("J/I", report.bands.ji), ("K/J", report.bands.kj), ("omega/E", report.bands.we)] {
        if let Some(b) = band {
            println!("{name}: [{:.4}, {:.4}], spread {:.4}", b.min, b.max, b.spread());
        }
    }
    Ok(())
}
