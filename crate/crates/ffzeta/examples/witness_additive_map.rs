//! Reduction-chain report for the additive map x -> x^3 + x over the
//! closure of F_3: the product sequence c_n collapses to a function of
//! v_3(n) mod 6, realized by a 12-state automaton, with counterexample
//! pairs against every candidate eventual period.
//!
//! Run with: cargo run --example witness_additive_map

use ffzeta::field::FieldDesc;
use ffzeta::poly::DEFAULT_DEGREE_CAP;
use ffzeta::witness::additive_report;

fn main() -> ffzeta::Result<()> {
    let f3 = FieldDesc::new(3, 1)?;
    let report = additive_report(&f3.one(), 32, 6, DEFAULT_DEGREE_CAP)?;
    println!("{}", report.to_json());
    Ok(())
}
