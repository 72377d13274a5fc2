//! The additive family x -> x^(p^m) + ax: iterates in binomial tap form,
//! oracle counts, and the closed form p^((n - p^(v_p(n))) m) at indices
//! divisible by p^m - 1. The count never depends on the multiplier a.
//!
//! Run with: cargo run --example additive_map_counts

use ffzeta::dynamics::{count_additive, count_oracle, MapSpec, DEFAULT_CAP};
use ffzeta::field::FieldDesc;
use ffzeta::poly::additive_iterate;

fn main() -> ffzeta::Result<()> {
    let f3 = FieldDesc::new(3, 1)?;
    let a = f3.one();
    let map = MapSpec::additive(a.clone())?;
    println!("map: {}", map.describe());

    // the second iterate in tap form: taps are binomials times powers of a
    let form = additive_iterate(&a, 2)?;
    println!(
        "\nsecond iterate as a polynomial: {}",
        form.to_poly(&f3, DEFAULT_CAP)?
    );

    println!("\ncounts at indices divisible by p^m - 1 = 2:");
    println!("{:>4}  {:>8}  {:>8}", "n", "oracle", "closed");
    for n in [2u64, 4, 6, 8, 10] {
        let closed = count_additive(3, 1, n)?;
        let oracle = count_oracle(&map, n, DEFAULT_CAP)?;
        assert_eq!(oracle, closed);
        println!("{n:>4}  {oracle:>8}  {closed:>8}");
    }

    // same counts for the other unit multiplier
    let other = MapSpec::additive(f3.scalar(2))?;
    for n in [2u64, 4, 6] {
        assert_eq!(count_oracle(&other, n, DEFAULT_CAP)?, count_additive(3, 1, n)?);
    }
    println!("\ncounts agree for every unit multiplier a");
    Ok(())
}
