//! Evaluate Hardy-type inequalities on single sequences and sweep families.

use monotone_besov::hardy::{estimate_constant, verify_lemma, Form, HardyFamily, HardyParams, LemmaId, SequenceFamily};
use monotone_besov::sequences::make_power_law;

fn main() -> monotone_besov::Result<()> {
    let seq = make_power_law(1.0, 1.0, 64)?;
    let hp = HardyParams::new(1.0, 0.0, 2.0, 1, 256)?;
    for form in [Form::Tail, Form::Head] {
        let check = verify_lemma(LemmaId::LpUpper, form, &seq, &hp)?;
        println!("{} {form}: lhs {:.4e} rhs {:.4e} ratio {:.4}", check.lemma, check.report.lhs, check.report.rhs, check.report.ratio.unwrap());
    }

    // Side conditions are enforced: the p >= 1 converse needs n >= 16 m.
    let short = HardyParams::new(1.0, 0.0, 2.0, 4, 32)?;
    if let Err(e) = verify_lemma(LemmaId::LpConverseUpper, Form::Tail, &seq, &short) {
        println!("rejected: {e}");
    }

    let family = HardyFamily {
        alpha: 1.0,
        lambda: 0.0,
        p: 2.0,
        m: 1,
        n_grid: vec![16, 64, 256, 1024],
    };
    let sweep = estimate_constant(
        LemmaId::LpCompleteHead,
        Form::Head,
        &family,
        &SequenceFamily::RandomMonotone { seed: 1 },
        20,
    )?;
    let stats = sweep.stats.unwrap();
    println!(
        "{} over {} instances: oriented ratio in [{:.4}, {:.4}], median {:.4}",
        sweep.lemma, stats.count, stats.min, stats.max, stats.median
    );
    Ok(())
}
