//! The counting oracle from the ground up: exact field arithmetic in
//! F_9 = F_3[t]/(t^2 + 1), Frobenius and its inverse, and the
//! characteristic-3 squarefree part whose degree counts distinct roots in
//! the algebraic closure.
//!
//! Run with: cargo run --example squarefree_oracle

use ffzeta::field::FieldDesc;
use ffzeta::poly::{parse_poly, Poly, DEFAULT_DEGREE_CAP};

fn main() -> ffzeta::Result<()> {
    let f9 = FieldDesc::new(3, 2)?;
    println!("field {f9} with modulus t^2 + 1 (coefficients low degree first: {:?})", f9.modulus());

    let t = f9.element(&[0, 1])?;
    println!("t * t = {} (t^2 = -1)", t.mul(&t));
    println!("t^3   = {} (Frobenius)", t.frobenius(1));
    println!("inverse Frobenius undoes it: {}", t.frobenius(1).frobenius(-1));

    // x^3 - 1 = (x - 1)^3 over F_3: the squarefree part strips the cube
    let f3 = FieldDesc::new(3, 1)?;
    let cube = parse_poly(&f3, "x^3 + 2")?;
    println!("\nsquarefree part of {cube} is {}", cube.squarefree_part()?);

    // iterate the additive map and count fixed points of the second iterate
    let f = parse_poly(&f3, "x^3 + x")?;
    let second = f.iterate(2, DEFAULT_DEGREE_CAP)?;
    println!("second iterate of {f} is {second}");
    let shifted = second.sub(&Poly::x(&f3));
    println!(
        "distinct closure roots of ({second}) - x: {}",
        shifted.distinct_root_count()?
    );
    Ok(())
}
