//! Congruence recognizers, automaton products, and arithmetic-progression
//! subsequences: the closure operations that combine digit automata.
//!
//! Run with: cargo run --example congruence_and_products

use ffzeta::automata::{congruence_dfao, dfao_product, dfao_subsequence, vp_mod_dfao};

fn main() -> ffzeta::Result<()> {
    // n = 1 (mod 4) over base-3 digits
    let mod4 = congruence_dfao(3, 4, &[1])?;
    println!("residue recognizer (base 3, n = 1 mod 4): {} states", mod4.states);
    let sample: Vec<i64> = (0..16u64).map(|n| mod4.run_u64(n).unwrap()).collect();
    println!("accepts n = 0..15: {sample:?}");

    // product with the valuation recognizer: both conditions at once
    let v3 = vp_mod_dfao(3, 4, &[1, 0, 0, 0])?;
    let both = dfao_product(&mod4, &v3, |c, v| c * v)?;
    println!(
        "\nproduct (n = 1 mod 4 AND v_3(n) = 0 mod 4): {} states",
        both.states
    );
    for n in [1u64, 5, 9, 13, 45, 81 * 5] {
        println!("  n = {n:>4}: {}", both.run_u64(n)?);
    }

    // subsequence: runs along n -> 2n + 1 (odd numbers have valuation 0)
    let v2 = vp_mod_dfao(2, 2, &[0, 1])?;
    let odd = dfao_subsequence(&v2, 2, 1)?;
    let outputs: Vec<i64> = (0..12u64).map(|n| odd.run_u64(n).unwrap()).collect();
    println!("\nv_2(2n+1) mod 2 for n = 0..11: {outputs:?} (constant, as it must be)");

    let doubled = dfao_subsequence(&v2, 2, 0)?;
    let outputs: Vec<i64> = (1..13u64).map(|n| doubled.run_u64(n).unwrap()).collect();
    println!("v_2(2n) mod 2 for n = 1..12:   {outputs:?} (valuation shifted by one)");
    Ok(())
}
