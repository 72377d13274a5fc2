//! Exact zeta-series expansion from fixed-point counts, its logarithmic
//! derivative, and linear-recurrence detection over the rationals.
//!
//! The series exp(sum a_n t^n / n) is expanded through the recurrence
//! k c_k = sum_{j=1..k} a_j c_{k-j} in exact rational arithmetic; floating
//! point is banned in this module. The recurrence detector is a
//! Berlekamp-Massey fit over Q and reports "none up to (order, window)";
//! a truncated window can never certify that no recurrence exists.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::dynamics::FixSeq;
use crate::error::{Error, Result};

/// Exact rational coefficients c_0..c_K of the zeta series of a count
/// sequence, together with the counts that produced them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaSeries {
    /// c_0..c_K, with c_0 = 1.
    pub coeffs: Vec<BigRational>,
    /// The counts a_1..a_K the series was built from.
    pub counts: Vec<BigUint>,
    pub order: usize,
}

/// Expands exp(sum a_n t^n / n) to order K from counts a_1..a_K.
pub fn zeta_from_counts(counts: &[BigUint], order: usize) -> Result<ZetaSeries> {
    if counts.len() < order {
        return Err(Error::MissingEntry(counts.len() as u64 + 1));
    }
    let counts = &counts[..order];
    let a: Vec<BigRational> = counts
        .iter()
        .map(|x| BigRational::from_integer(BigInt::from(x.clone())))
        .collect();
    let mut c = Vec::with_capacity(order + 1);
    c.push(BigRational::one());
    for k in 1..=order {
        let mut sum = BigRational::zero();
        for j in 1..=k {
            sum += &a[j - 1] * &c[k - j];
        }
        c.push(sum / BigRational::from_integer(BigInt::from(k)));
    }
    Ok(ZetaSeries {
        coeffs: c,
        counts: counts.to_vec(),
        order,
    })
}

/// As [`zeta_from_counts`], reading a_1..a_K out of a [`FixSeq`].
pub fn zeta_from_fix_seq(seq: &FixSeq, order: usize) -> Result<ZetaSeries> {
    let counts = seq.contiguous_counts(order as u64)?;
    zeta_from_counts(&counts, order)
}

impl ZetaSeries {
    /// Coefficients of z'/z to order K-1. Index n-1 carries a_n, so this is
    /// the exact inverse of [`zeta_from_counts`].
    pub fn log_derivative(&self) -> Vec<BigRational> {
        let k_max = self.order;
        let mut d: Vec<BigRational> = Vec::with_capacity(k_max);
        for k in 1..=k_max {
            // k c_k = sum_{i=0}^{k-1} d_i c_{k-1-i}, with c_0 = 1
            let mut val = BigRational::from_integer(BigInt::from(k)) * &self.coeffs[k];
            for (i, di) in d.iter().enumerate().take(k - 1) {
                val -= di * &self.coeffs[k - 1 - i];
            }
            d.push(val);
        }
        d
    }
}

impl std::fmt::Display for ZetaSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "c_{k} = {c}")?;
        }
        Ok(())
    }
}

/// A linear recurrence s_i = sum_{j=1..order} coeffs[j-1] s_(i-j), valid on
/// the window it was fitted to. Order 0 is the all-zero sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRecurrence {
    pub coeffs: Vec<BigRational>,
}

impl LinearRecurrence {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Checks validity on the whole window.
    pub fn is_valid_on(&self, seq: &[BigRational]) -> bool {
        let r = self.order();
        for i in r..seq.len() {
            let mut expect = BigRational::zero();
            for (j, c) in self.coeffs.iter().enumerate() {
                expect += c * &seq[i - 1 - j];
            }
            if expect != seq[i] {
                return false;
            }
        }
        if r == 0 {
            return seq.iter().all(|s| s.is_zero());
        }
        true
    }
}

impl std::fmt::Display for LinearRecurrence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "s_n = 0");
        }
        write!(f, "s_n = ")?;
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*s_(n-{})", j + 1)?;
        }
        Ok(())
    }
}

/// Minimal-order recurrence with rational coefficients valid on the whole
/// window, or `None` when every order <= max_order fails. The window must
/// contain at least 2*max_order terms.
pub fn detect_linear_recurrence(
    seq: &[BigInt],
    max_order: usize,
) -> Result<Option<LinearRecurrence>> {
    if seq.len() < 2 * max_order {
        return Err(Error::InvalidArgument(format!(
            "window of {} terms is too short for order {max_order} (need {})",
            seq.len(),
            2 * max_order
        )));
    }
    let rational: Vec<BigRational> = seq
        .iter()
        .map(|x| BigRational::from_integer(x.clone()))
        .collect();
    let rec = berlekamp_massey(&rational);
    debug_assert!(rec.is_valid_on(&rational));
    if rec.order() <= max_order {
        Ok(Some(rec))
    } else {
        Ok(None)
    }
}

/// Berlekamp-Massey over Q: the shortest linear recurrence generating the
/// whole input window.
fn berlekamp_massey(seq: &[BigRational]) -> LinearRecurrence {
    // connection polynomial c(x) with c[0] = 1: sum_j c_j s_(i-j) = 0
    let mut conn: Vec<BigRational> = vec![BigRational::one()];
    let mut prev: Vec<BigRational> = vec![BigRational::one()];
    let mut l = 0usize;
    let mut shift = 1usize;
    let mut last_discrepancy = BigRational::one();
    for i in 0..seq.len() {
        let mut d = seq[i].clone();
        for j in 1..conn.len() {
            d += &conn[j] * &seq[i - j];
        }
        if d.is_zero() {
            shift += 1;
            continue;
        }
        let adjust = &d / &last_discrepancy;
        if 2 * l <= i {
            let snapshot = conn.clone();
            if conn.len() < prev.len() + shift {
                conn.resize(prev.len() + shift, BigRational::zero());
            }
            for (j, pj) in prev.iter().enumerate() {
                let delta = &adjust * pj;
                conn[j + shift] -= delta;
            }
            l = i + 1 - l;
            prev = snapshot;
            last_discrepancy = d;
            shift = 1;
        } else {
            if conn.len() < prev.len() + shift {
                conn.resize(prev.len() + shift, BigRational::zero());
            }
            for (j, pj) in prev.iter().enumerate() {
                let delta = &adjust * pj;
                conn[j + shift] -= delta;
            }
            shift += 1;
        }
    }
    // s_i = sum_{j=1..L} (-c_j) s_(i-j); pad to length L
    let mut coeffs: Vec<BigRational> = (1..=l)
        .map(|j| conn.get(j).cloned().unwrap_or_else(BigRational::zero))
        .map(|c| -c)
        .collect();
    while coeffs.len() < l {
        coeffs.push(BigRational::zero());
    }
    LinearRecurrence { coeffs }
}

/// A rational function in t with integer-coefficient numerator and
/// denominator, reduced over Q, denominator constant term positive (and 1
/// for every power-series expansion produced here).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFn {
    /// numerator coefficients, ascending powers of t
    pub num: Vec<BigInt>,
    /// denominator coefficients, ascending powers of t
    pub den: Vec<BigInt>,
}

impl RationalFn {
    /// 1 / (1 - d t): the zeta function of any map with a_n = d^n.
    pub fn geometric_zeta(d: u64) -> RationalFn {
        RationalFn {
            num: vec![BigInt::one()],
            den: vec![BigInt::one(), -BigInt::from(d)],
        }
    }

    pub fn one() -> RationalFn {
        RationalFn {
            num: vec![BigInt::one()],
            den: vec![BigInt::one()],
        }
    }

    /// Power-series expansion to `order` terms (t^0..t^(order-1)); the
    /// denominator must have a nonzero constant term.
    pub fn series(&self, order: usize) -> Result<Vec<BigRational>> {
        let d0 = self.den.first().cloned().unwrap_or_else(BigInt::zero);
        if d0.is_zero() {
            return Err(Error::InvalidArgument(
                "denominator constant term vanishes; no power-series expansion".into(),
            ));
        }
        let d0 = BigRational::from_integer(d0);
        let mut out: Vec<BigRational> = Vec::with_capacity(order);
        for k in 0..order {
            let mut val = self
                .num
                .get(k)
                .map(|c| BigRational::from_integer(c.clone()))
                .unwrap_or_else(BigRational::zero);
            for j in 1..=k.min(self.den.len().saturating_sub(1)) {
                val -= BigRational::from_integer(self.den[j].clone()) * &out[k - j];
            }
            out.push(val / &d0);
        }
        Ok(out)
    }
}

impl std::fmt::Display for RationalFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let num = format_int_poly(&self.num);
        if self.den.len() == 1 && self.den[0].is_one() {
            write!(f, "{num}")
        } else {
            write!(f, "{num} / ({})", format_int_poly(&self.den))
        }
    }
}

fn format_int_poly(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                out.push('-');
            }
            first = false;
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let show_mag = !mag.is_one() || i == 0;
        if show_mag {
            out.push_str(&mag.to_string());
        }
        if i > 0 {
            if show_mag {
                out.push('*');
            }
            out.push('t');
            if i > 1 {
                out.push_str(&format!("^{i}"));
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Generating function of the fitted window as a reduced rational function:
/// with S(t) = sum s_n t^n this is P/Q for Q = 1 - c_1 t - ... - c_r t^r.
/// When the window is a_1, a_2, ... this is the closed form of
/// sum a_n t^(n-1).
pub fn recurrence_to_rational(
    rec: &LinearRecurrence,
    initial: &[BigInt],
) -> Result<RationalFn> {
    let r = rec.order();
    if initial.len() < r {
        return Err(Error::InvalidArgument(format!(
            "need at least {r} initial terms, got {}",
            initial.len()
        )));
    }
    let rational: Vec<BigRational> = initial
        .iter()
        .map(|x| BigRational::from_integer(x.clone()))
        .collect();
    if !rec.is_valid_on(&rational) {
        return Err(Error::InvalidArgument(
            "recurrence does not reproduce the supplied initial terms".into(),
        ));
    }
    // Q(t) = 1 - sum c_j t^j; P(t) = (S * Q) truncated below t^r
    let mut den_q: Vec<BigRational> = Vec::with_capacity(r + 1);
    den_q.push(BigRational::one());
    for c in &rec.coeffs {
        den_q.push(-c.clone());
    }
    let mut num_q: Vec<BigRational> = Vec::with_capacity(r.max(1));
    for i in 0..r {
        let mut val = rational[i].clone();
        for j in 1..=i {
            val -= &rec.coeffs[j - 1] * &rational[i - j];
        }
        num_q.push(val);
    }
    if r == 0 {
        num_q.push(BigRational::zero());
    }
    let (num_q, den_q) = reduce_rational_polys(&num_q, &den_q);
    Ok(make_rational_fn(num_q, den_q))
}

/// The zeta function induced by a detected recurrence, in the cases where
/// it has a rational closed form here: the zero sequence (zeta = 1) and the
/// pure power a_n = d^n (zeta = 1/(1 - d t)).
pub fn induced_zeta(rec: &LinearRecurrence, initial: &[BigInt]) -> Option<RationalFn> {
    if rec.order() == 0 {
        return Some(RationalFn::one());
    }
    if rec.order() != 1 || initial.is_empty() {
        return None;
    }
    let c = &rec.coeffs[0];
    if !c.is_integer() || !c.is_positive() {
        return None;
    }
    let d = c.to_integer();
    if initial[0] != d {
        return None; // a_1 must equal the ratio for a_n = d^n
    }
    let d_u64 = u64::try_from(d.magnitude().clone()).ok()?;
    Some(RationalFn::geometric_zeta(d_u64))
}

// -- rational-polynomial helpers (small degrees only) -----------------------

fn poly_q_trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_q_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = poly_q_trim(a.to_vec());
    let db = b.len() - 1;
    while r.len() > db {
        let factor = r.last().unwrap() / &b[db];
        let shift = r.len() - 1 - db;
        for (i, bc) in b.iter().enumerate() {
            let delta = &factor * bc;
            r[i + shift] -= delta;
        }
        r = poly_q_trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn poly_q_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r0 = poly_q_trim(a.to_vec());
    let mut r1 = poly_q_trim(b.to_vec());
    while !r1.is_empty() {
        let r = poly_q_rem(&r0, &r1);
        r0 = r1;
        r1 = r;
    }
    if r0.is_empty() {
        return vec![BigRational::one()];
    }
    let lead = r0.last().unwrap().clone();
    r0.iter().map(|c| c / &lead).collect()
}

fn poly_q_div_exact(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = poly_q_trim(a.to_vec());
    let db = b.len() - 1;
    if r.is_empty() {
        return vec![];
    }
    let mut q = vec![BigRational::zero(); r.len().saturating_sub(db)];
    while r.len() > db {
        let factor = r.last().unwrap() / &b[db];
        let shift = r.len() - 1 - db;
        q[shift] = factor.clone();
        for (i, bc) in b.iter().enumerate() {
            let delta = &factor * bc;
            r[i + shift] -= delta;
        }
        r = poly_q_trim(r);
    }
    debug_assert!(r.is_empty(), "division was expected to be exact");
    q
}

fn reduce_rational_polys(
    num: &[BigRational],
    den: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>) {
    let num = poly_q_trim(num.to_vec());
    let den = poly_q_trim(den.to_vec());
    assert!(!den.is_empty(), "denominator must be nonzero");
    if num.is_empty() {
        return (vec![], vec![BigRational::one()]);
    }
    let g = poly_q_gcd(&num, &den);
    if g.len() > 1 {
        (poly_q_div_exact(&num, &g), poly_q_div_exact(&den, &g))
    } else {
        (num, den)
    }
}

/// Clears denominators and contents; the denominator constant term ends up
/// positive, and equal to 1 whenever the cleared form permits it.
fn make_rational_fn(num: Vec<BigRational>, den: Vec<BigRational>) -> RationalFn {
    let mut lcm = BigInt::one();
    for c in num.iter().chain(den.iter()) {
        lcm = num_integer::lcm(lcm, c.denom().clone());
    }
    let scale = BigRational::from_integer(lcm);
    let mut num_int: Vec<BigInt> = num.iter().map(|c| (c * &scale).to_integer()).collect();
    let mut den_int: Vec<BigInt> = den.iter().map(|c| (c * &scale).to_integer()).collect();
    let mut content = BigInt::zero();
    for c in num_int.iter().chain(den_int.iter()) {
        content = num_integer::gcd(content, c.clone());
    }
    if !content.is_zero() && !content.is_one() {
        for c in num_int.iter_mut().chain(den_int.iter_mut()) {
            *c /= &content;
        }
    }
    let negate = den_int
        .iter()
        .find(|c| !c.is_zero())
        .map_or(false, |c| c.is_negative());
    if negate {
        for c in num_int.iter_mut().chain(den_int.iter_mut()) {
            *c = -c.clone();
        }
    }
    if num_int.is_empty() {
        num_int.push(BigInt::zero());
    }
    RationalFn {
        num: num_int,
        den: den_int,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn counts_of(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    fn ints_of(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn geometric_counts_give_geometric_coefficients() {
        let counts: Vec<BigUint> = (1..=12u32).map(|n| BigUint::from(2u64).pow(n)).collect();
        let z = zeta_from_counts(&counts, 12).unwrap();
        for (k, c) in z.coeffs.iter().enumerate() {
            assert_eq!(
                c,
                &BigRational::from_integer(BigInt::from(2u64).pow(k as u32))
            );
        }
    }

    #[test]
    fn zero_counts_give_constant_one() {
        let z = zeta_from_counts(&counts_of(&[0, 0, 0, 0]), 4).unwrap();
        assert!(z.coeffs[0].is_one());
        assert!(z.coeffs[1..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn power_map_prefix_from_counts() {
        // a = 2, 2, 8, 6 for the squaring map over the closure of F_3
        let z = zeta_from_counts(&counts_of(&[2, 2, 8, 6]), 4).unwrap();
        let expect: Vec<i64> = vec![1, 2, 3, 6];
        for (c, e) in z.coeffs.iter().zip(&expect) {
            assert_eq!(c, &BigRational::from_integer(BigInt::from(*e)));
        }
        assert!(zeta_from_counts(&counts_of(&[2, 2]), 4).is_err());
    }

    #[test]
    fn log_derivative_round_trips() {
        let counts = counts_of(&[2, 2, 8, 6, 32, 22, 128, 86]);
        let z = zeta_from_counts(&counts, 8).unwrap();
        let d = z.log_derivative();
        assert_eq!(d.len(), 8);
        for (i, a) in counts.iter().enumerate() {
            assert_eq!(d[i], BigRational::from_integer(BigInt::from(a.clone())));
        }
        // zeta = 1 has zero logarithmic derivative
        let one = zeta_from_counts(&counts_of(&[0, 0, 0]), 3).unwrap();
        assert!(one.log_derivative().iter().all(|c| c.is_zero()));
    }

    #[test]
    fn detector_examples() {
        let rec = detect_linear_recurrence(&ints_of(&[2, 4, 8, 16, 32, 64]), 3)
            .unwrap()
            .unwrap();
        assert_eq!(rec.order(), 1);
        assert_eq!(rec.coeffs[0], BigRational::from_integer(BigInt::from(2)));

        let rec = detect_linear_recurrence(&ints_of(&[1, 1, 2, 3, 5, 8, 13, 21]), 3)
            .unwrap()
            .unwrap();
        assert_eq!(rec.order(), 2);
        assert_eq!(rec.coeffs[0], BigRational::one());
        assert_eq!(rec.coeffs[1], BigRational::one());

        let rec = detect_linear_recurrence(&ints_of(&[0, 0, 0, 0, 0, 0]), 3)
            .unwrap()
            .unwrap();
        assert_eq!(rec.order(), 0);

        assert!(detect_linear_recurrence(&ints_of(&[1, 2, 3]), 3).is_err());
    }

    #[test]
    fn detector_rejects_power_map_counts() {
        // first 16 counts of the squaring map over the closure of F_3
        let counts: Vec<BigInt> = (1..=16u64)
            .map(|n| BigInt::from(crate::dynamics::count_power_map(3, 2, n).unwrap()))
            .collect();
        assert!(detect_linear_recurrence(&counts, 4).unwrap().is_none());
    }

    #[test]
    fn recurrence_to_rational_examples() {
        // a_n = 3^n: generating function of sum a_n t^(n-1) is 3/(1-3t)
        let seq = ints_of(&[3, 9, 27, 81, 243, 729]);
        let rec = detect_linear_recurrence(&seq, 2).unwrap().unwrap();
        let gf = recurrence_to_rational(&rec, &seq).unwrap();
        assert_eq!(gf.num, vec![BigInt::from(3)]);
        assert_eq!(gf.den, vec![BigInt::from(1), BigInt::from(-3)]);
        assert_eq!(gf.den[0], BigInt::one());

        // induced zeta 1/(1-3t) expands to the zeta series of a_n = 3^n
        let zfn = induced_zeta(&rec, &seq).unwrap();
        let counts: Vec<BigUint> = (1..=20u32).map(|n| BigUint::from(3u64).pow(n)).collect();
        let z = zeta_from_counts(&counts, 20).unwrap();
        assert_eq!(zfn.series(21).unwrap(), z.coeffs);

        // zero sequence: zeta = 1
        let zero = ints_of(&[0, 0, 0, 0]);
        let rec0 = detect_linear_recurrence(&zero, 2).unwrap().unwrap();
        let gf0 = recurrence_to_rational(&rec0, &zero).unwrap();
        assert_eq!(gf0.num, vec![BigInt::zero()]);
        assert_eq!(induced_zeta(&rec0, &zero).unwrap(), RationalFn::one());

        // inconsistent initial segment is rejected
        let bad = LinearRecurrence {
            coeffs: vec![BigRational::from_integer(BigInt::from(2))],
        };
        assert!(recurrence_to_rational(&bad, &ints_of(&[1, 3])).is_err());
    }

    #[test]
    fn rational_fn_display() {
        assert_eq!(RationalFn::geometric_zeta(2).to_string(), "1 / (1 - 2*t)");
        assert_eq!(RationalFn::one().to_string(), "1");
        let f = RationalFn {
            num: vec![BigInt::from(0), BigInt::from(1)],
            den: vec![BigInt::from(1), BigInt::from(0), BigInt::from(-1)],
        };
        assert_eq!(f.to_string(), "t / (1 - t^2)");
    }

    #[test]
    fn geometric_zeta_series_is_geometric() {
        let f = RationalFn::geometric_zeta(4);
        let s = f.series(10).unwrap();
        for (k, c) in s.iter().enumerate() {
            assert_eq!(
                c,
                &BigRational::from_integer(BigInt::from(4u64).pow(k as u32))
            );
        }
    }

    #[test]
    fn planted_recurrences_recover_exact_order() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(42);
        // roots are distinct nonzero integers, weights nonzero, so the
        // minimal recurrence has order exactly r
        for _ in 0..60 {
            let r = rng.gen_range(1..=6usize);
            let mut roots: Vec<i64> = Vec::new();
            while roots.len() < r {
                let cand = rng.gen_range(-6i64..=6);
                if cand != 0 && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
            let weights: Vec<i64> = (0..r)
                .map(|_| {
                    let w = rng.gen_range(1i64..=5);
                    if rng.gen_bool(0.5) {
                        -w
                    } else {
                        w
                    }
                })
                .collect();
            let len = 2 * 6 + 4;
            let seq: Vec<BigInt> = (0..len)
                .map(|n| {
                    let mut acc = BigInt::zero();
                    for (root, w) in roots.iter().zip(&weights) {
                        acc += BigInt::from(*w) * BigInt::from(*root).pow(n as u32);
                    }
                    acc
                })
                .collect();
            let rec = detect_linear_recurrence(&seq, 6).unwrap().unwrap();
            assert_eq!(rec.order(), r, "roots {roots:?} weights {weights:?}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn round_trip_recovers_counts(counts in proptest::collection::vec(0u64..500, 1..24)) {
            let counts = counts_of(&counts);
            let k = counts.len();
            let z = zeta_from_counts(&counts, k).unwrap();
            let d = z.log_derivative();
            for (i, a) in counts.iter().enumerate() {
                prop_assert_eq!(&d[i], &BigRational::from_integer(BigInt::from(a.clone())));
            }
            // nonnegative counts force nonnegative coefficients
            prop_assert!(z.coeffs.iter().all(|c| !c.is_negative()));
        }

        #[test]
        fn detected_recurrences_hold_on_window(
            coeffs_raw in proptest::collection::vec(-4i64..=4, 1..4),
            init_raw in proptest::collection::vec(-9i64..=9, 4),
            len in 12usize..20,
        ) {
            // generate by an arbitrary integer recurrence, then recheck the fit
            let order = coeffs_raw.len();
            let coeffs: Vec<BigRational> = coeffs_raw
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect();
            let mut seq: Vec<BigInt> = init_raw.iter().map(|&c| BigInt::from(c)).collect();
            seq.truncate(order);
            while seq.len() < len {
                let i = seq.len();
                let mut next = BigRational::zero();
                for (j, c) in coeffs.iter().enumerate() {
                    next += c * BigRational::from_integer(seq[i - 1 - j].clone());
                }
                seq.push(next.to_integer());
            }
            let found = detect_linear_recurrence(&seq, seq.len() / 2).unwrap();
            prop_assert!(found.is_some());
            let found = found.unwrap();
            prop_assert!(found.order() <= order);
            let rational: Vec<BigRational> =
                seq.iter().map(|x| BigRational::from_integer(x.clone())).collect();
            prop_assert!(found.is_valid_on(&rational));
        }
    }
}
