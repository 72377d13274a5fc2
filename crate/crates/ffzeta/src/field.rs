//! Exact arithmetic in F_p and F_{p^m}, represented as F_p[t] modulo an
//! explicit irreducible polynomial chosen deterministically (the
//! lexicographically smallest monic irreducible, coefficients compared low
//! degree first), so constructions are bit-reproducible across runs.
//!
//! Elements are dense coefficient vectors over the prime field. Extension
//! degrees stay small at desk scale, so no tower representations.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numtheory::is_prime_u64;

#[derive(Debug, PartialEq, Eq)]
struct FieldInner {
    p: u64,
    m: usize,
    /// Monic modulus of degree m, coefficients low degree first (length m+1).
    modulus: Vec<u64>,
}

/// Descriptor of F_{p^m}; cheap to clone, immutable after construction.
#[derive(Debug, Clone)]
pub struct FieldDesc {
    inner: Arc<FieldInner>,
}

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }
}

impl Eq for FieldDesc {}

impl FieldDesc {
    /// Builds F_{p^m} with the lexicographically smallest monic irreducible
    /// modulus of degree m. For m = 1 the modulus is t, i.e. the prime field.
    pub fn new(p: u64, m: usize) -> Result<FieldDesc> {
        if !is_prime_u64(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::InvalidArgument("extension degree must be >= 1".into()));
        }
        let modulus = smallest_irreducible(p, m);
        Ok(FieldDesc {
            inner: Arc::new(FieldInner { p, m, modulus }),
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> usize {
        self.inner.m
    }

    /// Modulus coefficients, low degree first (length m + 1, leading 1).
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    /// Field size p^m, when it fits in u64.
    pub fn order(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for _ in 0..self.inner.m {
            acc = acc.checked_mul(self.inner.p)?;
        }
        Some(acc)
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem {
            coeffs: vec![0; self.inner.m],
            field: self.clone(),
        }
    }

    pub fn one(&self) -> FieldElem {
        let mut coeffs = vec![0; self.inner.m];
        coeffs[0] = 1 % self.inner.p;
        FieldElem {
            coeffs,
            field: self.clone(),
        }
    }

    /// Element with the given coefficients (low degree first); shorter
    /// vectors are zero-padded, values are reduced mod p.
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElem> {
        if coeffs.len() > self.inner.m {
            return Err(Error::InvalidArgument(format!(
                "coefficient vector of length {} exceeds extension degree {}",
                coeffs.len(),
                self.inner.m
            )));
        }
        let mut c = vec![0; self.inner.m];
        for (i, &v) in coeffs.iter().enumerate() {
            c[i] = v % self.inner.p;
        }
        Ok(FieldElem {
            coeffs: c,
            field: self.clone(),
        })
    }

    /// Element of the prime subfield from an integer residue.
    pub fn scalar(&self, v: u64) -> FieldElem {
        let mut coeffs = vec![0; self.inner.m];
        coeffs[0] = v % self.inner.p;
        FieldElem {
            coeffs,
            field: self.clone(),
        }
    }

    /// Bijection index -> element, indices running over 0..p^m in base-p
    /// digit order (coefficient of 1 is the least significant digit).
    pub fn element_from_index(&self, index: u64) -> FieldElem {
        let mut coeffs = vec![0; self.inner.m];
        let mut rest = index;
        for c in coeffs.iter_mut() {
            *c = rest % self.inner.p;
            rest /= self.inner.p;
        }
        debug_assert_eq!(rest, 0, "index within field order");
        FieldElem {
            coeffs,
            field: self.clone(),
        }
    }

    pub fn index_of(&self, elem: &FieldElem) -> u64 {
        debug_assert!(elem.field == *self);
        let mut acc = 0u64;
        for &c in elem.coeffs.iter().rev() {
            acc = acc * self.inner.p + c;
        }
        acc
    }

    /// Iterator over all p^m elements; intended for small fields.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        let order = self.order().expect("field too large to enumerate");
        (0..order).map(move |i| self.element_from_index(i))
    }

    /// Parses `[c0,c1,...]` or a bare residue (prime-field shorthand).
    pub fn parse_element(&self, text: &str) -> Result<FieldElem> {
        let t = text.trim();
        let coeffs: Vec<u64> = if let Some(stripped) =
            t.strip_prefix('[').and_then(|s| s.strip_suffix(']'))
        {
            if stripped.trim().is_empty() {
                vec![]
            } else {
                stripped
                    .split(',')
                    .map(|part| {
                        part.trim().parse::<u64>().map_err(|_| {
                            Error::Parse(format!("bad coefficient {part:?} in element {t:?}"))
                        })
                    })
                    .collect::<Result<_>>()?
            }
        } else {
            vec![t
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad field element {t:?}")))?]
        };
        self.element(&coeffs)
    }
}

impl std::fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}^{}", self.inner.p, self.inner.m)
    }
}

/// An element of F_{p^m}: residue vector on the basis 1, t, ..., t^(m-1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElem {
    coeffs: Vec<u64>,
    field: FieldDesc,
}

impl FieldElem {
    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn assert_same_field(&self, other: &FieldElem) {
        assert!(
            self.field == other.field,
            "elements from different fields never mix"
        );
    }

    pub fn add(&self, other: &FieldElem) -> FieldElem {
        self.assert_same_field(other);
        let p = self.field.inner.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        FieldElem {
            coeffs,
            field: self.field.clone(),
        }
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        self.assert_same_field(other);
        let p = self.field.inner.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        FieldElem {
            coeffs,
            field: self.field.clone(),
        }
    }

    pub fn neg(&self) -> FieldElem {
        let p = self.field.inner.p;
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        FieldElem {
            coeffs,
            field: self.field.clone(),
        }
    }

    pub fn mul(&self, other: &FieldElem) -> FieldElem {
        self.assert_same_field(other);
        let inner = &self.field.inner;
        let prod = fp_mul(&self.coeffs, &other.coeffs, inner.p);
        let red = fp_rem(&prod, &inner.modulus, inner.p);
        let mut coeffs = vec![0; inner.m];
        coeffs[..red.len()].copy_from_slice(&red);
        FieldElem {
            coeffs,
            field: self.field.clone(),
        }
    }

    /// Fallible variants for callers that cannot guarantee matching fields.
    pub fn checked_add(&self, other: &FieldElem) -> Result<FieldElem> {
        if self.field != other.field {
            return Err(Error::InvalidArgument("field descriptors differ".into()));
        }
        Ok(self.add(other))
    }

    pub fn checked_mul(&self, other: &FieldElem) -> Result<FieldElem> {
        if self.field != other.field {
            return Err(Error::InvalidArgument("field descriptors differ".into()));
        }
        Ok(self.mul(other))
    }

    /// Multiplicative inverse; zero has none.
    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inner = &self.field.inner;
        let inv = fp_poly_inverse(&self.coeffs, &inner.modulus, inner.p)
            .ok_or(Error::DivisionByZero)?;
        let mut coeffs = vec![0; inner.m];
        coeffs[..inv.len()].copy_from_slice(&inv);
        Ok(FieldElem {
            coeffs,
            field: self.field.clone(),
        })
    }

    pub fn pow_u64(&self, e: u64) -> FieldElem {
        self.pow(&BigUint::from(e))
    }

    /// Square-and-multiply power by an arbitrary non-negative exponent.
    pub fn pow(&self, e: &BigUint) -> FieldElem {
        let mut base = self.clone();
        let mut acc = self.field.one();
        let mut e = e.clone();
        while !e.is_zero() {
            if e.bit(0) {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// x^(p^k) for k >= 0; for k < 0, the unique inverse-Frobenius image,
    /// computed as x^(p^(k mod m)) using x^(p^m) = x.
    pub fn frobenius(&self, k: i64) -> FieldElem {
        let m = self.field.inner.m as i64;
        let j = k.rem_euclid(m) as u64;
        let mut x = self.clone();
        for _ in 0..j {
            x = x.pow_u64(self.field.inner.p);
        }
        x
    }
}

impl std::fmt::Display for FieldElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

// ---------------------------------------------------------------------------
// Prime-field polynomial helpers used for modulus construction and inverses.
// Polynomials are Vec<u64> of residues, low degree first, no trailing zeros.

fn fp_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if bj == 0 {
                continue;
            }
            let idx = i + j;
            out[idx] = ((out[idx] as u128 + ai as u128 * bj as u128) % p as u128) as u64;
        }
    }
    fp_trim(out)
}

fn fp_rem(a: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = fp_trim(a.to_vec());
    let dm = modulus.len() - 1;
    let lead_inv = inverse_mod_p(modulus[dm], p);
    while r.len() > dm {
        let dr = r.len() - 1;
        let factor = r[dr] as u128 * lead_inv as u128 % p as u128;
        let shift = dr - dm;
        for (i, &mc) in modulus.iter().enumerate() {
            if mc == 0 {
                continue;
            }
            let sub = factor * mc as u128 % p as u128;
            let cur = r[i + shift] as u128;
            r[i + shift] = ((cur + p as u128 - sub) % p as u128) as u64;
        }
        r = fp_trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn inverse_mod_p(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a != 0 mod p.
    debug_assert!(a % p != 0);
    let mut acc = 1u128;
    let mut base = (a % p) as u128;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    acc as u64
}

/// Extended Euclid in F_p[t]: inverse of a mod `modulus`, if coprime.
fn fp_poly_inverse(a: &[u64], modulus: &[u64], p: u64) -> Option<Vec<u64>> {
    let mut r0 = fp_trim(modulus.to_vec());
    let mut r1 = fp_rem(a, modulus, p);
    let mut s0: Vec<u64> = vec![];
    let mut s1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let qs1 = fp_mul(&q, &s1, p);
        let s2 = fp_sub(&s0, &qs1, p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    if r0.len() != 1 {
        return None; // gcd not a unit
    }
    let scale = inverse_mod_p(r0[0], p);
    Some(fp_trim(
        s0.iter()
            .map(|&c| (c as u128 * scale as u128 % p as u128) as u64)
            .collect(),
    ))
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let av = a.get(i).copied().unwrap_or(0);
        let bv = b.get(i).copied().unwrap_or(0);
        out[i] = (av + p - bv) % p;
    }
    fp_trim(out)
}

fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    debug_assert!(!b.is_empty());
    let db = b.len() - 1;
    let mut r = fp_trim(a.to_vec());
    if r.len() <= db {
        return (vec![], r);
    }
    let mut q = vec![0u64; r.len() - db];
    let lead_inv = inverse_mod_p(b[db], p);
    while r.len() > db {
        let dr = r.len() - 1;
        let factor = (r[dr] as u128 * lead_inv as u128 % p as u128) as u64;
        let shift = dr - db;
        q[shift] = factor;
        for (i, &bc) in b.iter().enumerate() {
            if bc == 0 {
                continue;
            }
            let sub = factor as u128 * bc as u128 % p as u128;
            let cur = r[i + shift] as u128;
            r[i + shift] = ((cur + p as u128 - sub) % p as u128) as u64;
        }
        r = fp_trim(r);
        if r.is_empty() {
            break;
        }
    }
    (fp_trim(q), r)
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r0 = fp_trim(a.to_vec());
    let mut r1 = fp_trim(b.to_vec());
    while !r1.is_empty() {
        let (_, r) = fp_divrem(&r0, &r1, p);
        r0 = r1;
        r1 = r;
    }
    r0
}

/// t^(p^k) mod f, by k successive p-th powers mod f.
fn fp_frobenius_power(f: &[u64], p: u64, k: usize) -> Vec<u64> {
    let mut h = fp_rem(&[0, 1], f, p); // t mod f
    for _ in 0..k {
        h = fp_powmod(&h, p, f, p);
    }
    h
}

fn fp_powmod(base: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = fp_rem(base, modulus, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_rem(&fp_mul(&acc, &b, p), modulus, p);
        }
        b = fp_rem(&fp_mul(&b, &b, p), modulus, p);
        e >>= 1;
    }
    acc
}

/// Monic f of degree m is irreducible iff no irreducible of degree <= m/2
/// divides it; each such factor of degree k divides t^(p^k) - t.
fn fp_is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    for k in 1..=(m / 2) {
        let tpk = fp_frobenius_power(f, p, k);
        let diff = fp_sub(&tpk, &[0, 1], p);
        let g = fp_gcd(f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    // and t^(p^m) = t mod f
    let tpm = fp_frobenius_power(f, p, m);
    fp_sub(&tpm, &[0, 1], p).is_empty()
}

/// Lexicographically smallest monic irreducible of degree m over F_p, with
/// coefficient vectors (c0, ..., c_{m-1}) compared low degree first.
fn smallest_irreducible(p: u64, m: usize) -> Vec<u64> {
    let mut lower = vec![0u64; m];
    loop {
        let mut f = lower.clone();
        f.push(1);
        if fp_is_irreducible(&f, p) {
            return f;
        }
        // increment (c_{m-1}, ..., c_0) with c0 most significant in lex order,
        // i.e. the last coefficient varies fastest
        let mut i = m;
        loop {
            debug_assert!(i > 0, "an irreducible of every degree exists");
            i -= 1;
            lower[i] += 1;
            if lower[i] < p {
                break;
            }
            lower[i] = 0;
        }
    }
}
