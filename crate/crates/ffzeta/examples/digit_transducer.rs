//! The streaming digit map n -> (q-1)n + 1 in base p: output digits are
//! emitted as input digits arrive, carries stay bounded, and distinct
//! inputs always produce distinct digit strings.
//!
//! Run with: cargo run --example digit_transducer

use num_bigint::BigUint;

use ffzeta::automata::AffineTransducer;

fn main() -> ffzeta::Result<()> {
    let t = AffineTransducer::for_prime_pair(3, 5)?;
    println!("base {} transducer for n -> {}n + {}", t.base, t.multiplier, t.offset);
    println!("\n{:>4}  {:>6}  digits (LSD first)", "n", "4n+1");
    for n in 0..12u64 {
        let (digits, value) = t.apply(&BigUint::from(n));
        println!("{n:>4}  {value:>6}  {digits:?}");
    }

    let mut seen = std::collections::BTreeSet::new();
    for n in 0..100_000u64 {
        let (digits, value) = t.apply(&BigUint::from(n));
        assert_eq!(value, BigUint::from(4 * n + 1));
        assert!(seen.insert(digits), "distinct inputs, distinct strings");
    }
    println!("\nchecked value and injectivity for n < 100000");
    Ok(())
}
