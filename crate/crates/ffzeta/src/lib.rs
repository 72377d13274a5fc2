//! Exact arithmetic dynamics over finite fields and their algebraic closure.
//!
//! The crate computes fixed-point counts `a_n = #Fix(f^n)` for polynomial
//! self-maps of the affine line over the algebraic closure of `F_p`, expands
//! the associated dynamical zeta series `exp(sum a_n t^n / n)` in exact
//! rational arithmetic, and builds the base-p digit automata (valuation
//! recognizers, congruence recognizers, affine transducers) that govern the
//! behaviour of those counts after reduction mod a prime.
//!
//! Every closed-form count has an independent brute-force oracle: the number
//! of distinct roots of `f^n(x) - x` in the algebraic closure, obtained from
//! the characteristic-p squarefree part. The `witness` module replays the
//! reduction chains that relate counts to digit automata and produces
//! explicit counterexamples to eventual periodicity of the reduced
//! sequences.
//!
//! Start with the runnable examples (`cargo run --example ...`) or the
//! `ffzeta` binary for the command-line surface.
//!
//! ```
//! use ffzeta::dynamics::{fix_seq, MapSpec, MethodChoice, DEFAULT_CAP};
//! use ffzeta::zeta::zeta_from_fix_seq;
//!
//! let map = MapSpec::power(3, 2)?;
//! let ns: Vec<u64> = (1..=8).collect();
//! let seq = fix_seq(&map, &ns, MethodChoice::Both, DEFAULT_CAP)?;
//! let series = zeta_from_fix_seq(&seq, 8)?;
//! assert_eq!(series.coeffs[3].to_string(), "6");
//! # Ok::<(), ffzeta::Error>(())
//! ```

pub mod automata;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod field;
pub mod numtheory;
pub mod poly;
pub mod witness;
pub mod zeta;

pub use error::{Error, Result};
