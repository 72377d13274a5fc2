//! The 2d-state automaton computing v_p(n) mod d from the base-p digits of
//! n, least significant first: d counting states advance on zeros, the
//! first nonzero digit settles the answer. Its output sequence is not
//! eventually periodic at any scanned scale.
//!
//! Run with: cargo run --example valuation_automaton

use ffzeta::automata::{detect_eventual_period, vp_mod_dfao};
use ffzeta::numtheory::padic_valuation_u64;

fn main() -> ffzeta::Result<()> {
    let dfao = vp_mod_dfao(2, 2, &[0, 1])?;
    println!("v_2(n) mod 2 recognizer: {} states over alphabet {{0,1}}", dfao.states);
    println!("\nserialized form:\n{}", dfao.to_json());

    let prefix: Vec<i64> = (1..=32u64).map(|n| dfao.run_u64(n).unwrap()).collect();
    println!("\noutputs for n = 1..32: {prefix:?}");
    for n in 1..=1024u64 {
        assert_eq!(dfao.run_u64(n)? as u64, padic_valuation_u64(2, n) % 2);
    }
    println!("agrees with direct valuation for n <= 1024");

    let long: Vec<i64> = (1..=1024u64).map(|n| dfao.run_u64(n).unwrap()).collect();
    match detect_eventual_period(&long, 256, 64)? {
        Some((s, t)) => println!("eventually periodic with preperiod {s}, period {t} (!)"),
        None => println!("no eventual period with preperiod <= 256, period <= 64"),
    }
    Ok(())
}
