//! Build coefficient sequences and evaluate weighted sums over them.

use monotone_besov::sequences::{make_power_law, make_power_log, random_monotone, weighted_sum, WeightedSumSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> monotone_besov::Result<()> {
    let power = make_power_law(1.0, 2.0, 16)?;
    let log = make_power_log(1.0, 1.0, 2.0, 16)?;
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let random = random_monotone(&mut rng, 8, 1.0)?;

    println!("power law head: {:?}", &power.head()[..4]);
    println!("random head:    {:?}", random.head());

    // sum nu^{-2} = pi^2/6, and sum nu^{-1} (1 + ln nu)^{-2} converges slowly.
    let zeta = weighted_sum(&power, &WeightedSumSpec::infinite(1.0, 0.0, 1)?);
    let slow = weighted_sum(&log, &WeightedSumSpec::infinite(1.0, 0.0, 1)?);
    let diverges = weighted_sum(&power, &WeightedSumSpec::infinite(1.0, 1.0, 1)?);
    println!("sum nu^-2 = {zeta:?}");
    println!("sum nu^-1 (1 + ln nu)^-2 = {slow:?}");
    println!("sum nu^-1 = {diverges:?}");

    println!("{}", power.to_json());
    Ok(())
}
