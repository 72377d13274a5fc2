//! The zeta series of the squaring map over the closure of F_3 in exact
//! rationals, and a rationality probe: a rational zeta function would force
//! the counts a_n to satisfy a constant-coefficient linear recurrence, so
//! the detector's "none" on the window is finite-scale evidence against
//! one (never a proof; truncation cannot certify irrationality).
//!
//! Run with: cargo run --example zeta_rationality_scan

use num_bigint::BigInt;

use ffzeta::dynamics::{fix_seq, MapSpec, MethodChoice, DEFAULT_CAP};
use ffzeta::zeta::{detect_linear_recurrence, zeta_from_fix_seq};

fn main() -> ffzeta::Result<()> {
    let map = MapSpec::power(3, 2)?;
    println!("map: {}", map.describe());

    let order = 16;
    let ns: Vec<u64> = (1..=order as u64).collect();
    let seq = fix_seq(&map, &ns, MethodChoice::Both, DEFAULT_CAP)?;
    let series = zeta_from_fix_seq(&seq, order)?;
    println!("\nzeta series coefficients (exact):");
    print!("{series}");

    // round trip: the logarithmic derivative returns the counts exactly
    let back = series.log_derivative();
    println!("\nlog-derivative round trip: {:?}", back.iter().take(6).map(|c| c.to_string()).collect::<Vec<_>>());

    let counts: Vec<BigInt> = series.counts.iter().map(|a| BigInt::from(a.clone())).collect();
    match detect_linear_recurrence(&counts, 4)? {
        Some(rec) => println!("\nfound a recurrence of order {} (!)", rec.order()),
        None => println!(
            "\nno linear recurrence of order <= 4 fits the {order}-term window"
        ),
    }
    Ok(())
}
