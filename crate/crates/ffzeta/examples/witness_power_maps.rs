//! Reduction-chain reports for the power map: in characteristic 2 the
//! even-index counts reduce mod an odd prime divisor of the exponent to a
//! function of v_2(n) mod d; in odd characteristic a subsequence reduces
//! mod an auxiliary prime to membership in a valuation fiber Y decided both
//! by direct arithmetic and by the digit pipeline. Each report carries
//! explicit pairs breaking every candidate eventual period k.
//!
//! Run with: cargo run --example witness_power_maps

use ffzeta::poly::DEFAULT_DEGREE_CAP;
use ffzeta::witness::{char2_power_report, odd_power_report};

fn main() -> ffzeta::Result<()> {
    let report = char2_power_report(3, 3, 32, 6, DEFAULT_DEGREE_CAP)?;
    println!("=== cubing map over the closure of F_2, reduced mod 3 ===");
    println!("{}", report.to_json());

    let report = odd_power_report(3, 2, 32, 6, DEFAULT_DEGREE_CAP)?;
    println!("\n=== squaring map over the closure of F_3, reduced mod 5 ===");
    println!("{}", report.to_json());
    Ok(())
}
