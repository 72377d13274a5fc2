//! Functional-graph censuses of x^2 + 1 on single finite fields: cycle
//! lengths, tail nodes, components. A single field sees only a slice of
//! the closure-level dynamics, but the rho-shaped statistics are exactly
//! what a random-mapping heuristic would predict.
//!
//! Run with: cargo run --example cycle_census

use ffzeta::dynamics::cycle_census;
use ffzeta::field::FieldDesc;
use ffzeta::poly::parse_poly;

fn main() -> ffzeta::Result<()> {
    for (p, k) in [(5u64, 1usize), (7, 1), (11, 1), (3, 4), (101, 1)] {
        let field = FieldDesc::new(p, k)?;
        let f = parse_poly(&field, "x^2 + 1")?;
        let census = cycle_census(&f)?;
        println!(
            "x^2 + 1 on F_{p}^{k} ({} points): {}",
            field.order().unwrap(),
            serde_json::to_string(&census).unwrap()
        );
    }
    Ok(())
}
