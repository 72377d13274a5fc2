//! Maps whose every exponent is divisible by the characteristic have
//! identically vanishing derivative, so every iterate minus x is squarefree
//! and a_n = d^n exactly. Their zeta series is the geometric expansion of
//! 1/(1 - d t), and the recurrence detector recovers that closed form.
//!
//! Run with: cargo run --example rational_zeta

use num_bigint::BigInt;

use ffzeta::dynamics::{fix_seq, MapSpec, MethodChoice, DEFAULT_CAP};
use ffzeta::field::FieldDesc;
use ffzeta::poly::parse_poly;
use ffzeta::zeta::{detect_linear_recurrence, induced_zeta, zeta_from_fix_seq};

fn main() -> ffzeta::Result<()> {
    let f2 = FieldDesc::new(2, 1)?;
    let map = MapSpec::pth_power_coeff(parse_poly(&f2, "x^4 + x^2")?)?;
    println!("map: {}", map.describe());

    let order = 12;
    let ns: Vec<u64> = (1..=order as u64).collect();
    let seq = fix_seq(&map, &ns, MethodChoice::Both, DEFAULT_CAP)?;
    let series = zeta_from_fix_seq(&seq, order)?;
    println!("\nzeta series coefficients:");
    print!("{series}");

    let counts: Vec<BigInt> = series.counts.iter().map(|a| BigInt::from(a.clone())).collect();
    match detect_linear_recurrence(&counts, order / 2)? {
        Some(rec) => {
            println!("\ndetected recurrence of order {}: {rec}", rec.order());
            if let Some(zeta_fn) = induced_zeta(&rec, &counts) {
                println!("closed form: zeta = {zeta_fn}");
            }
        }
        None => println!("\nno linear recurrence found (unexpected for this family)"),
    }
    Ok(())
}
