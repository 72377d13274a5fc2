//! Exact integer number theory: p-adic valuations, multiplicative orders,
//! linear congruences, prime search in arithmetic progressions, valuations
//! of binomial coefficients by borrow counting, and the lifting-the-exponent
//! valuation of `m^(kn) - 1`.
//!
//! Everything is arbitrary precision; `m^n - 1` for `n` in the thousands is
//! routine. All functions are pure.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// p-adic valuation of an integer; `Infinite` only for input 0.
///
/// Convention: `v_p(p) = 1`, i.e. the valuation counts the exponent of `p`
/// dividing the argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    /// Unwraps a finite valuation; panics on `Infinite`.
    pub fn expect_finite(self) -> u64 {
        self.finite().expect("valuation of zero is infinite")
    }
}

impl std::fmt::Display for Valuation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "infinite"),
        }
    }
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime_u64(p) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{p} is not prime")))
    }
}

/// v_p(n): the exponent of the prime `p` in `n`; `Infinite` iff `n = 0`.
pub fn padic_valuation(p: u64, n: &BigInt) -> Result<Valuation> {
    require_prime(p)?;
    if n.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let mut m = n.magnitude().clone();
    let p_big = BigUint::from(p);
    let mut v = 0u64;
    loop {
        let (q, r) = m.div_rem(&p_big);
        if !r.is_zero() {
            return Ok(Valuation::Finite(v));
        }
        v += 1;
        m = q;
    }
}

/// v_p(n) for unsigned n, as a plain integer. Errors on n = 0.
pub fn padic_valuation_finite(p: u64, n: &BigUint) -> Result<u64> {
    match padic_valuation(p, &BigInt::from_biguint(Sign::Plus, n.clone()))? {
        Valuation::Finite(v) => Ok(v),
        Valuation::Infinite => Err(Error::InvalidArgument(
            "valuation of zero is infinite".into(),
        )),
    }
}

/// v_p(n) for machine-sized n >= 1 without allocation.
pub fn padic_valuation_u64(p: u64, mut n: u64) -> u64 {
    debug_assert!(n > 0);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Least k >= 1 with a^k = 1 (mod n), for gcd(a, n) = 1 and n >= 2.
///
/// Computed by factoring the Carmichael exponent of n and stripping prime
/// factors while the power stays 1.
pub fn multiplicative_order(a: &BigUint, n: &BigUint) -> Result<BigUint> {
    let two = BigUint::from(2u32);
    if n < &two {
        return Err(Error::InvalidArgument("modulus must be at least 2".into()));
    }
    let a_red = a % n;
    if a_red.gcd(n) != BigUint::one() {
        return Err(Error::InvalidArgument(format!(
            "gcd({a}, {n}) != 1, order undefined"
        )));
    }
    let mut ord = carmichael(n);
    debug_assert!(a_red.modpow(&ord, n).is_one());
    for (q, _) in factorize(&ord.clone()) {
        while (&ord % &q).is_zero() {
            let cand = &ord / &q;
            if a_red.modpow(&cand, n).is_one() {
                ord = cand;
            } else {
                break;
            }
        }
    }
    Ok(ord)
}

/// Carmichael function: the exponent of the unit group mod n.
pub fn carmichael(n: &BigUint) -> BigUint {
    let mut lambda = BigUint::one();
    for (p, e) in factorize(n) {
        let le = if p == BigUint::from(2u32) {
            match e {
                1 => BigUint::one(),
                2 => BigUint::from(2u32),
                _ => BigUint::from(2u32).pow(e - 2),
            }
        } else {
            p.pow(e - 1) * (&p - 1u32)
        };
        lambda = lambda.lcm(&le);
    }
    lambda
}

/// v_p(C(n, l)) by counting borrows in the base-p subtraction n - l.
///
/// Kummer's theorem makes this the valuation of the binomial coefficient;
/// the tests confirm the identity against direct big-integer valuations.
pub fn binomial_valuation(p: u64, n: &BigUint, l: &BigUint) -> Result<u64> {
    require_prime(p)?;
    if l > n {
        return Err(Error::InvalidArgument(format!(
            "l = {l} exceeds n = {n} in binomial valuation"
        )));
    }
    let n_digits = digits_base(n, p);
    let l_digits = digits_base(l, p);
    let mut borrows = 0u64;
    let mut borrow = 0u64;
    for i in 0..n_digits.len() {
        let ld = l_digits.get(i).copied().unwrap_or(0) + borrow;
        if n_digits[i] < ld {
            borrow = 1;
            borrows += 1;
        } else {
            borrow = 0;
        }
    }
    debug_assert_eq!(borrow, 0, "l <= n guarantees the final borrow clears");
    Ok(borrows)
}

/// C(n, k) mod p for a prime p, via Lucas' theorem.
pub fn binomial_mod_p(n: u64, k: u64, p: u64) -> u64 {
    if k > n {
        return 0;
    }
    let (mut n, mut k) = (n, k);
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = acc * binomial_small_mod(nd, kd, p) % p;
        n /= p;
        k /= p;
    }
    acc
}

fn binomial_small_mod(n: u64, k: u64, p: u64) -> u64 {
    // n, k < p; plain multiplicative formula with inverse factorials avoided
    // since p is small at desk scale.
    let k = k.min(n - k);
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num = num * ((n - i) as u128) % (p as u128);
        den = den * ((i + 1) as u128) % (p as u128);
    }
    let den_inv = mod_inverse_u64(den as u64 % p, p).expect("p prime, den nonzero");
    (num as u64 % p) * den_inv % p
}

fn mod_inverse_u64(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = extended_gcd_i128(a as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(((x % m as i128 + m as i128) % m as i128) as u64)
}

fn extended_gcd_i128(a: i128, b: i128) -> (i128, i128, i128) {
    if a == 0 {
        return (b, 0, 1);
    }
    let (g, x, y) = extended_gcd_i128(b % a, a);
    (g, y - (b / a) * x, x)
}

/// Valuation of `m^(2n) - 1` at p = 2 (m odd), or of `m^((p-1)n) - 1` at an
/// odd prime p (p not dividing m), computed through the unit-group identity
/// v_p = v_p(n) + v_p(m^2 - 1) resp. v_p(n) + v_p(m^(p-1) - 1).
pub fn lte_valuation(p: u64, m: &BigUint, n: &BigUint) -> Result<u64> {
    require_prime(p)?;
    if n.is_zero() {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if m.is_one() || m.is_zero() {
        return Err(Error::InvalidArgument(
            "base m must exceed 1 for a finite valuation".into(),
        ));
    }
    let p_big = BigUint::from(p);
    if (m % &p_big).is_zero() {
        return Err(Error::InvalidArgument(format!(
            "p = {p} divides m = {m}; the unit-group identity does not apply"
        )));
    }
    let exponent: u32 = if p == 2 {
        2
    } else {
        u32::try_from(p - 1).map_err(|_| {
            Error::InvalidArgument(format!("p = {p} out of supported range"))
        })?
    };
    let base_term = m.pow(exponent) - BigUint::one();
    let v_n = padic_valuation_finite(p, n)?;
    let v_base = padic_valuation_finite(p, &base_term)?;
    Ok(v_n + v_base)
}

/// A residue class `x = residue (mod modulus)` with 0 <= residue < modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueClass {
    pub residue: BigUint,
    pub modulus: BigUint,
}

impl ResidueClass {
    pub fn contains(&self, x: &BigInt) -> bool {
        let m = BigInt::from(self.modulus.clone());
        let r = ((x % &m) + &m) % &m;
        r.magnitude() == &self.residue
    }

    /// Smallest member of the class strictly greater than `bound`.
    pub fn smallest_above(&self, bound: &BigInt) -> BigInt {
        let m = BigInt::from(self.modulus.clone());
        let r = BigInt::from(self.residue.clone());
        // first candidate >= bound + 1
        let lo = bound + 1;
        let diff: BigInt = &lo - &r;
        let mut k = diff.div_floor(&m);
        let mut x = &r + &k * &m;
        while x < lo {
            k += 1;
            x = &r + &k * &m;
        }
        x
    }
}

impl std::fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "x = {} (mod {})", self.residue, self.modulus)
    }
}

/// Solves a*x = b (mod modulus). Returns the full solution set as a residue
/// class mod `modulus / gcd(a, modulus)`, or `None` when no solution exists.
pub fn solve_linear_congruence(
    a: &BigInt,
    b: &BigInt,
    modulus: &BigInt,
) -> Result<Option<ResidueClass>> {
    if modulus < &BigInt::one() {
        return Err(Error::InvalidArgument("modulus must be at least 1".into()));
    }
    let m = modulus.magnitude().clone();
    let a_red = normalize_mod(a, &m);
    let b_red = normalize_mod(b, &m);
    let g = a_red.gcd(&m);
    if !(&b_red % &g).is_zero() {
        return Ok(None);
    }
    let m_red = &m / &g;
    if m_red.is_one() {
        return Ok(Some(ResidueClass {
            residue: BigUint::zero(),
            modulus: BigUint::one(),
        }));
    }
    let a1 = (&a_red / &g) % &m_red;
    let b1 = (&b_red / &g) % &m_red;
    let inv = mod_inverse(&a1, &m_red)
        .ok_or_else(|| Error::Internal("a/g must be invertible mod m/g".into()))?;
    let x0 = (inv * b1) % &m_red;
    Ok(Some(ResidueClass {
        residue: x0,
        modulus: m_red,
    }))
}

fn normalize_mod(x: &BigInt, m: &BigUint) -> BigUint {
    let m_int = BigInt::from(m.clone());
    let r = ((x % &m_int) + &m_int) % &m_int;
    r.magnitude().clone()
}

/// Modular inverse of a mod m, when gcd(a, m) = 1.
pub fn mod_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    let (g, x, _) = extended_gcd(
        &BigInt::from(a.clone()),
        &BigInt::from(m.clone()),
    );
    if !g.is_one() {
        return None;
    }
    let m_int = BigInt::from(m.clone());
    let r = ((x % &m_int) + &m_int) % &m_int;
    Some(r.magnitude().clone())
}

fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    if a.is_zero() {
        return (b.clone(), BigInt::zero(), BigInt::one());
    }
    let (g, x, y) = extended_gcd(&(b % a), a);
    (g, y - (b / a) * &x, x)
}

/// Default candidate budget for [`find_prime_in_progression`].
pub const DEFAULT_PRIME_SEARCH_CAP: u64 = 2_000_000;

/// Smallest prime q > lower_bound with q = residue (mod modulus).
///
/// Requires gcd(residue, modulus) = 1 so the progression contains primes.
pub fn find_prime_in_progression(
    residue: &BigUint,
    modulus: &BigUint,
    lower_bound: &BigUint,
) -> Result<BigUint> {
    find_prime_in_progression_capped(residue, modulus, lower_bound, DEFAULT_PRIME_SEARCH_CAP)
}

/// As [`find_prime_in_progression`] with an explicit candidate budget.
pub fn find_prime_in_progression_capped(
    residue: &BigUint,
    modulus: &BigUint,
    lower_bound: &BigUint,
    max_candidates: u64,
) -> Result<BigUint> {
    if modulus.is_zero() {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let r = residue % modulus;
    if r.gcd(modulus) != BigUint::one() {
        return Err(Error::InvalidArgument(format!(
            "gcd({residue}, {modulus}) != 1: progression contains at most one prime"
        )));
    }
    // smallest candidate > lower_bound congruent to r
    let lo = lower_bound + 1u32;
    let mut q = if &lo % modulus <= r {
        (&lo / modulus) * modulus + &r
    } else {
        (&lo / modulus + 1u32) * modulus + &r
    };
    if q < lo {
        q += modulus;
    }
    for tried in 0..max_candidates {
        if is_prime(&q) {
            return Ok(q);
        }
        q += modulus;
        let _ = tried;
    }
    Err(Error::SearchExhausted {
        candidates: max_candidates,
        detail: format!("no prime = {residue} (mod {modulus}) above {lower_bound}"),
    })
}

// Below 3.317e24 the first twelve primes are a deterministic Miller-Rabin
// witness set; above it we fall back to the first 64 primes as bases, which
// desk-scale inputs never reach.
const MR_DETERMINISTIC_LIMIT: &str = "3317044064679887385961981";

const SMALL_PRIMES: [u64; 64] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
    193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293,
    307, 311,
];

pub fn is_prime_u64(n: u64) -> bool {
    is_prime(&BigUint::from(n))
}

/// Deterministic Miller-Rabin primality test for desk-scale integers.
pub fn is_prime(n: &BigUint) -> bool {
    if n < &BigUint::from(2u32) {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p_big = BigUint::from(p);
        if n == &p_big {
            return true;
        }
        if (n % &p_big).is_zero() {
            return false;
        }
    }
    let limit: BigUint = MR_DETERMINISTIC_LIMIT.parse().expect("static literal");
    let bases: &[u64] = if n < &limit {
        &SMALL_PRIMES[..12]
    } else {
        &SMALL_PRIMES[..]
    };
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for &b in bases {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division then Pollard rho, sorted by prime.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    if n < &BigUint::from(2u32) {
        return factors;
    }
    let mut rest = n.clone();
    for &p in &SMALL_PRIMES {
        let p_big = BigUint::from(p);
        if &p_big * &p_big > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % &p_big).is_zero() {
            rest /= &p_big;
            e += 1;
        }
        if e > 0 {
            factors.push((p_big, e));
        }
    }
    let mut stack = vec![rest];
    let mut found: Vec<BigUint> = Vec::new();
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            found.push(m);
            continue;
        }
        let d = pollard_rho(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    found.sort();
    for p in found {
        match factors.iter_mut().find(|(q, _)| q == &p) {
            Some((_, e)) => *e += 1,
            None => factors.push((p, 1)),
        }
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    factors
}

fn pollard_rho(n: &BigUint) -> BigUint {
    debug_assert!(!is_prime(n));
    if n.is_even() {
        return BigUint::from(2u32);
    }
    // deterministic Brent walk with incrementing offset
    let one = BigUint::one();
    for c in 1u64.. {
        let c_big = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c_big) % n;
        let mut x = BigUint::from(2u32);
        let mut y = BigUint::from(2u32);
        let mut d = BigUint::one();
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
        }
        if !d.is_one() && &d != n {
            return d;
        }
        let _ = &one;
    }
    unreachable!("pollard rho always terminates for composite n")
}

/// Moebius function of n >= 1.
pub fn mobius(n: u64) -> i64 {
    debug_assert!(n >= 1);
    if n == 1 {
        return 1;
    }
    let factors = factorize(&BigUint::from(n));
    if factors.iter().any(|(_, e)| *e > 1) {
        return 0;
    }
    if factors.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All divisors of n >= 1, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    debug_assert!(n >= 1);
    let mut divs = vec![1u64];
    for (p, e) in factorize(&BigUint::from(n)) {
        let p = p.to_u64().expect("divisor fits in u64");
        let mut extended = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = 1u64;
            for _ in 0..=e {
                extended.push(d * pk);
                pk = pk.saturating_mul(p);
            }
        }
        divs = extended;
    }
    divs.sort_unstable();
    divs.dedup();
    divs
}

/// Base-p digits of n, least significant first; empty for n = 0.
pub fn digits_base(n: &BigUint, base: u64) -> Vec<u64> {
    let mut digits = Vec::new();
    let b = BigUint::from(base);
    let mut m = n.clone();
    while !m.is_zero() {
        let (q, r) = m.div_rem(&b);
        digits.push(r.to_u64().expect("digit fits"));
        m = q;
    }
    digits
}

/// Reassembles a little-endian digit string into an integer.
pub fn digits_to_value(digits: &[u64], base: u64) -> BigUint {
    let b = BigUint::from(base);
    let mut acc = BigUint::zero();
    for &d in digits.iter().rev() {
        acc = acc * &b + BigUint::from(d);
    }
    acc
}
