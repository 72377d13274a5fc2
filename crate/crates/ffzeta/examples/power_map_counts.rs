//! Fixed-point counts of the squaring map over the algebraic closure of
//! F_3, computed two ways: the brute-force oracle (distinct roots of
//! f^n(x) - x) and the closed form 1 + (m^n - 1)/p^(v_p(m^n - 1)), followed
//! by exact-period counts from Moebius inversion.
//!
//! Run with: cargo run --example power_map_counts

use ffzeta::dynamics::{exact_period_counts, fix_seq, MapSpec, MethodChoice, DEFAULT_CAP};

fn main() -> ffzeta::Result<()> {
    let map = MapSpec::power(3, 2)?;
    println!("map: {}", map.describe());
    println!();

    let ns: Vec<u64> = (1..=12).collect();
    let seq = fix_seq(&map, &ns, MethodChoice::Both, DEFAULT_CAP)?;
    println!("{:>4}  {:>10}  method", "n", "a_n");
    for (n, a, method) in &seq.entries {
        println!("{n:>4}  {a:>10}  {method}");
    }

    println!();
    println!("points of exact period n (b_n, always divisible by n):");
    for (n, b) in exact_period_counts(&seq)? {
        println!("  b_{n} = {b}");
    }
    Ok(())
}
