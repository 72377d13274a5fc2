//! Dense univariate polynomials over a finite field: ring arithmetic,
//! composition and iteration under a degree cap, the characteristic-p
//! squarefree part, and distinct-root counting over the algebraic closure.
//!
//! The squarefree-part degree is the brute-force oracle for fixed-point
//! counts: the number of distinct roots of `f^n(x) - x` in the closure.
//!
//! Composition walks the outer polynomial's nonzero terms (Horner with
//! zero-run batching), so iterating the sparse families that arise in
//! characteristic p stays far below the schoolbook bound.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::field::{FieldDesc, FieldElem};
use crate::numtheory::binomial_mod_p;

/// Default cap on the degree any iterate is allowed to reach.
pub const DEFAULT_DEGREE_CAP: u64 = 200_000;

/// Dense polynomial, coefficients low degree first, trailing zeros stripped.
/// The zero polynomial has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<FieldElem>,
    field: FieldDesc,
}

impl Poly {
    pub fn zero(field: &FieldDesc) -> Poly {
        Poly {
            coeffs: vec![],
            field: field.clone(),
        }
    }

    pub fn one(field: &FieldDesc) -> Poly {
        Poly::constant(field.one())
    }

    pub fn constant(c: FieldElem) -> Poly {
        let field = c.field().clone();
        let coeffs = if c.is_zero() { vec![] } else { vec![c] };
        Poly { coeffs, field }
    }

    pub fn x(field: &FieldDesc) -> Poly {
        Poly::monomial(field.one(), 1)
    }

    pub fn monomial(coeff: FieldElem, exp: usize) -> Poly {
        let field = coeff.field().clone();
        if coeff.is_zero() {
            return Poly::zero(&field);
        }
        let mut coeffs = vec![field.zero(); exp + 1];
        coeffs[exp] = coeff;
        Poly { coeffs, field }
    }

    /// Builds a polynomial from low-first coefficients, stripping trailing zeros.
    pub fn from_coeffs(field: &FieldDesc, coeffs: Vec<FieldElem>) -> Poly {
        for c in &coeffs {
            assert!(c.field() == field, "coefficients must share the field");
        }
        let mut coeffs = coeffs;
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            coeffs,
            field: field.clone(),
        }
    }

    /// Prime-field convenience: coefficients as integer residues.
    pub fn from_scalars(field: &FieldDesc, scalars: &[u64]) -> Poly {
        let coeffs = scalars.iter().map(|&s| field.scalar(s)).collect();
        Poly::from_coeffs(field, coeffs)
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    fn assert_same_field(&self, other: &Poly) {
        assert!(
            self.field == other.field,
            "polynomials over different fields never mix"
        );
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.assert_same_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(&self.field, out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        let coeffs = self.coeffs.iter().map(|c| c.neg()).collect();
        Poly {
            coeffs,
            field: self.field.clone(),
        }
    }

    pub fn scale(&self, by: &FieldElem) -> Poly {
        if by.is_zero() {
            return Poly::zero(&self.field);
        }
        let coeffs = self.coeffs.iter().map(|c| c.mul(by)).collect();
        Poly {
            coeffs,
            field: self.field.clone(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.assert_same_field(other);
        let out = mul_vec(&self.coeffs, &other.coeffs, &self.field);
        Poly::from_coeffs(&self.field, out)
    }

    /// Monic rescaling; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lead) if lead.is_one() => self.clone(),
            Some(lead) => {
                let inv = lead.inv().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    /// Exact division with remainder; the divisor must be nonzero.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.assert_same_field(divisor);
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let db = divisor.degree().unwrap();
        if self.coeffs.len() <= db {
            return Ok((Poly::zero(&self.field), self.clone()));
        }
        let lead_inv = divisor.leading_coeff().unwrap().inv()?;
        let nonzero: Vec<(usize, &FieldElem)> = divisor
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); rem.len() - db];
        let mut top = rem.len();
        while top > db {
            let dr = top - 1;
            if rem[dr].is_zero() {
                top -= 1;
                continue;
            }
            let factor = rem[dr].mul(&lead_inv);
            let shift = dr - db;
            for &(i, c) in &nonzero {
                let sub = factor.mul(c);
                rem[i + shift] = rem[i + shift].sub(&sub);
            }
            quot[shift] = factor;
            top -= 1;
        }
        Ok((
            Poly::from_coeffs(&self.field, quot),
            Poly::from_coeffs(&self.field, rem),
        ))
    }

    fn div_exact(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.divrem(divisor).expect("divisor nonzero");
        debug_assert!(r.is_zero(), "division was expected to be exact");
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.assert_same_field(other);
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        while !r1.is_zero() {
            let (_, r) = r0.divrem(&r1).expect("nonzero divisor in gcd loop");
            r0 = r1;
            r1 = r;
        }
        r0.monic()
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(&self.field);
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let scalar = self.field.scalar((i as u64 + 1) % self.field.characteristic());
                c.mul(&scalar)
            })
            .collect();
        Poly::from_coeffs(&self.field, coeffs)
    }

    pub fn eval(&self, x: &FieldElem) -> FieldElem {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// outer(inner(x)). Dense outers run classic Horner; sparse outers (the
    /// characteristic-p families stay sparse under iteration) run Horner
    /// over nonzero terms with zero runs batched into powers of the inner
    /// polynomial.
    pub fn compose(&self, inner: &Poly) -> Poly {
        self.assert_same_field(inner);
        if self.is_zero() {
            return Poly::zero(&self.field);
        }
        if self.degree() == Some(0) {
            return self.clone();
        }
        if inner.degree().map_or(true, |d| d == 0) {
            let v = inner.coeff(0);
            return Poly::constant(self.eval(&v));
        }
        let nonzero = self.coeffs.iter().filter(|c| !c.is_zero()).count();
        if nonzero * 8 > self.coeffs.len() {
            return self.compose_dense(inner);
        }
        let inner_terms = to_sparse(inner);
        // nonzero terms of the outer polynomial, highest exponent first
        let terms: Vec<(usize, &FieldElem)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut acc: Sparse = vec![(0, terms[0].1.clone())];
        let mut prev_exp = terms[0].0;
        for &(exp, coeff) in &terms[1..] {
            let gap = prev_exp - exp;
            acc = sparse_mul(&acc, &sparse_pow(&inner_terms, gap, &self.field), &self.field);
            acc = sparse_add(acc, (0, coeff.clone()));
            prev_exp = exp;
        }
        if prev_exp > 0 {
            acc = sparse_mul(&acc, &sparse_pow(&inner_terms, prev_exp, &self.field), &self.field);
        }
        from_sparse(acc, &self.field)
    }

    fn compose_dense(&self, inner: &Poly) -> Poly {
        let mut acc = vec![self.coeffs.last().unwrap().clone()];
        for c in self.coeffs.iter().rev().skip(1) {
            acc = mul_vec(&acc, &inner.coeffs, &self.field);
            if acc.is_empty() {
                acc.push(c.clone());
            } else {
                acc[0] = acc[0].add(c);
            }
        }
        Poly::from_coeffs(&self.field, acc)
    }

    /// n-fold self-composition with an explicit degree cap: refuses (rather
    /// than thrashes) when deg(f)^n would exceed `degree_cap`.
    pub fn iterate(&self, n: u64, degree_cap: u64) -> Result<Poly> {
        let d = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => {
                return Err(Error::InvalidArgument(
                    "iteration needs degree at least 1".into(),
                ))
            }
        };
        if n == 0 {
            return Err(Error::InvalidArgument("iteration count must be positive".into()));
        }
        let required = BigUint::from(d).pow(
            u32::try_from(n).map_err(|_| Error::InvalidArgument("iteration count too large".into()))?,
        );
        if required > BigUint::from(degree_cap) {
            return Err(Error::ResourceLimit {
                required,
                cap: degree_cap,
            });
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.compose(self);
        }
        debug_assert_eq!(acc.degree(), Some(d.pow(n as u32)));
        Ok(acc)
    }

    /// Monic product of the distinct irreducible factors.
    ///
    /// When the derivative is nonzero, factors with multiplicity prime to p
    /// come out of `g / gcd(g, g')`; the factors whose multiplicity is
    /// divisible by p survive in the gcd as an exact p-th power, whose root
    /// is extracted through the inverse Frobenius on coefficients and
    /// processed recursively.
    pub fn squarefree_part(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::InvalidArgument(
                "the zero polynomial has no squarefree part".into(),
            ));
        }
        if self.degree() == Some(0) {
            return Ok(Poly::one(&self.field));
        }
        let deriv = self.derivative();
        if deriv.is_zero() {
            return self.pth_root().squarefree_part();
        }
        let common = self.gcd(&deriv);
        let simple = self.monic().div_exact(&common);
        // peel the simple factors out of the gcd; what remains is a p-th power
        let mut power_part = common;
        loop {
            let shared = power_part.gcd(&simple);
            if shared.degree() == Some(0) {
                break;
            }
            power_part = power_part.div_exact(&shared);
        }
        if power_part.degree() == Some(0) {
            return Ok(simple.monic());
        }
        let rest = power_part.squarefree_part()?;
        Ok(simple.monic().mul(&rest))
    }

    /// Number of distinct roots in the algebraic closure: the degree of the
    /// squarefree part. This is the brute-force oracle for fixed-point counts.
    pub fn distinct_root_count(&self) -> Result<u64> {
        Ok(self.squarefree_part()?.degree().unwrap_or(0) as u64)
    }

    /// Exact p-th root of a polynomial all of whose exponents are divisible
    /// by p: g = h(x^p) = (inverse-Frobenius h)(x)^p.
    fn pth_root(&self) -> Poly {
        let p = self.field.characteristic() as usize;
        debug_assert!(self
            .coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| i % p == 0 || c.is_zero()));
        let coeffs = self
            .coeffs
            .iter()
            .step_by(p)
            .map(|c| c.frobenius(-1))
            .collect();
        Poly::from_coeffs(&self.field, coeffs)
    }
}

// Prime-field coefficients print as bare residues, extension coefficients
// as bracketed vectors; terms run from high degree to low.
impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let prime_field = self.field.degree() == 1;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff_txt = if prime_field {
                format!("{}", c.coeffs()[0])
            } else {
                format!("{c}")
            };
            match i {
                0 => write!(f, "{coeff_txt}")?,
                _ => {
                    if c.is_one() {
                        write!(f, "x")?;
                    } else {
                        write!(f, "{coeff_txt}*x")?;
                    }
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Dense multiplication: schoolbook skipping zero coefficients, Karatsuba
// above degree 64.

fn mul_vec(a: &[FieldElem], b: &[FieldElem], field: &FieldDesc) -> Vec<FieldElem> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    if a.len().min(b.len()) <= 64 {
        return schoolbook(a, b, field);
    }
    karatsuba(a, b, field)
}

fn schoolbook(a: &[FieldElem], b: &[FieldElem], field: &FieldDesc) -> Vec<FieldElem> {
    let (outer, inner) = {
        let nz_a = a.iter().filter(|c| !c.is_zero()).count();
        let nz_b = b.iter().filter(|c| !c.is_zero()).count();
        if nz_a <= nz_b {
            (a, b)
        } else {
            (b, a)
        }
    };
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, ci) in outer.iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        for (j, cj) in inner.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&ci.mul(cj));
        }
    }
    out
}

fn add_assign_shifted(target: &mut Vec<FieldElem>, src: &[FieldElem], shift: usize, field: &FieldDesc) {
    if target.len() < src.len() + shift {
        target.resize(src.len() + shift, field.zero());
    }
    for (i, c) in src.iter().enumerate() {
        target[i + shift] = target[i + shift].add(c);
    }
}

fn karatsuba(a: &[FieldElem], b: &[FieldElem], field: &FieldDesc) -> Vec<FieldElem> {
    let h = a.len().max(b.len()).div_ceil(2);
    let (a0, a1) = a.split_at(a.len().min(h));
    let (b0, b1) = b.split_at(b.len().min(h));
    let z0 = mul_vec(a0, b0, field);
    let z2 = mul_vec(a1, b1, field);
    let a01 = add_slices(a0, a1, field);
    let b01 = add_slices(b0, b1, field);
    let mut z1 = mul_vec(&a01, &b01, field);
    sub_assign(&mut z1, &z0);
    sub_assign(&mut z1, &z2);
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    add_assign_shifted(&mut out, &z0, 0, field);
    add_assign_shifted(&mut out, &z1, h, field);
    add_assign_shifted(&mut out, &z2, 2 * h, field);
    out.truncate(a.len() + b.len() - 1);
    out
}

fn add_slices(a: &[FieldElem], b: &[FieldElem], field: &FieldDesc) -> Vec<FieldElem> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.add(y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => field.zero(),
        });
    }
    out
}

fn sub_assign(target: &mut [FieldElem], src: &[FieldElem]) {
    for (i, c) in src.iter().enumerate() {
        target[i] = target[i].sub(c);
    }
}

// ---------------------------------------------------------------------------
// Sparse term lists used by composition: (exponent, nonzero coefficient),
// ascending exponents.

type Sparse = Vec<(usize, FieldElem)>;

fn to_sparse(p: &Poly) -> Sparse {
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

fn from_sparse(terms: Sparse, field: &FieldDesc) -> Poly {
    let len = terms.last().map_or(0, |(e, _)| e + 1);
    let mut coeffs = vec![field.zero(); len];
    for (e, c) in terms {
        coeffs[e] = c;
    }
    Poly::from_coeffs(field, coeffs)
}

fn sparse_add(mut terms: Sparse, extra: (usize, FieldElem)) -> Sparse {
    match terms.binary_search_by_key(&extra.0, |t| t.0) {
        Ok(i) => {
            let sum = terms[i].1.add(&extra.1);
            if sum.is_zero() {
                terms.remove(i);
            } else {
                terms[i].1 = sum;
            }
        }
        Err(i) => terms.insert(i, extra),
    }
    terms
}

fn sparse_mul(a: &Sparse, b: &Sparse, field: &FieldDesc) -> Sparse {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    // fall back to dense convolution when the term product would be larger
    // than the dense representation
    let dense_len = a.last().unwrap().0 + b.last().unwrap().0 + 1;
    if a.len().saturating_mul(b.len()) > dense_len.saturating_mul(4) {
        let pa = from_sparse(a.clone(), field);
        let pb = from_sparse(b.clone(), field);
        return to_sparse(&pa.mul(&pb));
    }
    let mut prods: Vec<(usize, FieldElem)> = Vec::with_capacity(a.len() * b.len());
    for (ea, ca) in a {
        for (eb, cb) in b {
            prods.push((ea + eb, ca.mul(cb)));
        }
    }
    prods.sort_by_key(|t| t.0);
    let mut out: Sparse = Vec::with_capacity(prods.len());
    for (e, c) in prods {
        match out.last_mut() {
            Some((le, lc)) if *le == e => {
                *lc = lc.add(&c);
                if lc.is_zero() {
                    out.pop();
                }
            }
            _ => {
                if !c.is_zero() {
                    out.push((e, c));
                }
            }
        }
    }
    out
}

fn sparse_pow(base: &Sparse, mut e: usize, field: &FieldDesc) -> Sparse {
    let mut acc: Sparse = vec![(0, field.one())];
    if e == 0 {
        return acc;
    }
    // small exponents by repeated multiplication, large by squaring
    if e <= 4 {
        for _ in 0..e {
            acc = sparse_mul(&acc, base, field);
        }
        return acc;
    }
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = sparse_mul(&acc, &b, field);
        }
        e >>= 1;
        if e > 0 {
            b = sparse_mul(&b, &b, field);
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// Additive family: closed form for iterates of x^(p^m) + a x.

/// Iterate of an additive map in tap form: entry k is the coefficient on
/// x^(p^(k m)), so the polynomial is `sum taps[k] * x^(p^(km))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveForm {
    pub p: u64,
    pub m: usize,
    pub taps: Vec<FieldElem>,
}

/// n-th iterate of f = x^(p^m) + a x via the binomial expansion of the two
/// commuting additive summands: taps[k] = C(n, k) a^(n-k) mod p.
pub fn additive_iterate(a: &FieldElem, n: u64) -> Result<AdditiveForm> {
    if a.is_zero() {
        return Err(Error::InvalidArgument("additive map needs a != 0".into()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("iteration count must be positive".into()));
    }
    let field = a.field();
    let p = field.characteristic();
    let m = field.degree();
    let taps = (0..=n)
        .map(|k| {
            let binom = binomial_mod_p(n, k, p);
            field.scalar(binom).mul(&a.pow_u64(n - k))
        })
        .collect();
    Ok(AdditiveForm {
        p,
        m,
        taps,
    })
}

impl AdditiveForm {
    /// Materializes the tap form as a dense polynomial, degree p^(nm).
    pub fn to_poly(&self, field: &FieldDesc, degree_cap: u64) -> Result<Poly> {
        assert_eq!(field.characteristic(), self.p);
        assert_eq!(field.degree(), self.m);
        let n = self.taps.len() - 1;
        let required = BigUint::from(self.p).pow((n * self.m) as u32);
        if required > BigUint::from(degree_cap) {
            return Err(Error::ResourceLimit {
                required,
                cap: degree_cap,
            });
        }
        let top = required.to_usize().expect("within cap");
        let mut coeffs = vec![field.zero(); top + 1];
        let step = self.p.pow(self.m as u32) as usize;
        let mut exp = 1usize;
        for (k, tap) in self.taps.iter().enumerate() {
            coeffs[exp] = tap.clone();
            if k < self.taps.len() - 1 {
                exp *= step;
            }
        }
        Ok(Poly::from_coeffs(field, coeffs))
    }
}

/// The additive map itself, f = x^(p^m) + a x, as a polynomial over a's field.
pub fn additive_map_poly(a: &FieldElem) -> Poly {
    let field = a.field().clone();
    let q = field
        .order()
        .expect("additive map field must fit in memory") as usize;
    let mut coeffs = vec![field.zero(); q + 1];
    coeffs[1] = a.clone();
    coeffs[q] = field.one();
    Poly::from_coeffs(&field, coeffs)
}

// ---------------------------------------------------------------------------
// Text grammar: terms `c*x^e` joined by `+`; c a residue (prime field) or
// `[c0,c1,...]` (extension), e >= 0, whitespace insignificant.

pub fn parse_poly(field: &FieldDesc, text: &str) -> Result<Poly> {
    if text.trim().is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut acc = Poly::zero(field);
    for raw_term in text.split('+') {
        let term = raw_term.trim();
        if term.is_empty() {
            return Err(Error::Parse(format!("empty term in {text:?}")));
        }
        acc = acc.add(&parse_term(field, term)?);
    }
    Ok(acc)
}

fn parse_term(field: &FieldDesc, term: &str) -> Result<Poly> {
    match term.find('x') {
        None => Ok(Poly::constant(field.parse_element(term)?)),
        Some(pos) => {
            let coeff_part = term[..pos].trim().trim_end_matches('*').trim();
            let coeff = if coeff_part.is_empty() {
                field.one()
            } else {
                field.parse_element(coeff_part)?
            };
            let exp_part = term[pos + 1..].trim();
            let exp = if exp_part.is_empty() {
                1usize
            } else {
                let digits = exp_part
                    .strip_prefix('^')
                    .ok_or_else(|| Error::Parse(format!("bad exponent in term {term:?}")))?
                    .trim();
                digits
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad exponent {digits:?}")))?
            };
            Ok(Poly::monomial(coeff, exp))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn prime_field(p: u64) -> FieldDesc {
        FieldDesc::new(p, 1).unwrap()
    }

    #[test]
    fn gcd_of_known_factors_is_monic() {
        let f5 = prime_field(5);
        // x^2 - 1 and x - 1 share the monic factor x - 1
        let a = Poly::from_scalars(&f5, &[4, 0, 1]);
        let b = Poly::from_scalars(&f5, &[4, 1]);
        assert_eq!(a.gcd(&b), Poly::from_scalars(&f5, &[4, 1]));
        // gcd scaling: 3*(x - 1) still yields the monic x - 1
        let b3 = b.scale(&f5.scalar(3));
        assert_eq!(a.gcd(&b3), Poly::from_scalars(&f5, &[4, 1]));
    }

    #[test]
    fn mul_identity_and_divrem_examples() {
        let f3 = prime_field(3);
        let f = Poly::from_scalars(&f3, &[1, 2, 0, 1]);
        assert_eq!(f.mul(&Poly::one(&f3)), f);
        let x3 = Poly::from_scalars(&f3, &[0, 0, 0, 1]);
        let x2 = Poly::from_scalars(&f3, &[0, 0, 1]);
        let (q, r) = x3.divrem(&x2).unwrap();
        assert_eq!(q, Poly::x(&f3));
        assert!(r.is_zero());
        assert!(x3.divrem(&Poly::zero(&f3)).is_err());
    }

    #[test]
    fn divrem_reconstructs_dividend() {
        let f7 = prime_field(7);
        let a = Poly::from_scalars(&f7, &[3, 1, 4, 1, 5, 6]);
        let b = Poly::from_scalars(&f7, &[2, 0, 3]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(b.mul(&q).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn iterate_monomial_power_tower() {
        let f5 = prime_field(5);
        let f = Poly::from_scalars(&f5, &[0, 0, 1]); // x^2
        let it = f.iterate(3, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(it, Poly::monomial(f5.one(), 8));
    }

    #[test]
    fn iterate_additive_example_over_f3() {
        let f3 = prime_field(3);
        let f = Poly::from_scalars(&f3, &[0, 1, 0, 1]); // x^3 + x
        let it = f.iterate(2, DEFAULT_DEGREE_CAP).unwrap();
        // (x^3 + x)^3 + (x^3 + x) = x^9 + 2x^3 + x over F_3
        let expect = Poly::from_scalars(&f3, &[0, 1, 0, 2, 0, 0, 0, 0, 0, 1]);
        assert_eq!(it, expect);
    }

    #[test]
    fn iterate_respects_cap() {
        let f3 = prime_field(3);
        let f = Poly::from_scalars(&f3, &[0, 0, 1]);
        match f.iterate(40, DEFAULT_DEGREE_CAP) {
            Err(Error::ResourceLimit { required, cap }) => {
                assert_eq!(required, BigUint::from(2u32).pow(40));
                assert_eq!(cap, DEFAULT_DEGREE_CAP);
            }
            other => panic!("expected resource limit, got {other:?}"),
        }
    }

    #[test]
    fn compose_matches_direct_evaluation() {
        // (g o f)(x) evaluated pointwise over all of F_25
        let f25 = FieldDesc::new(5, 2).unwrap();
        let g = Poly::from_coeffs(
            &f25,
            vec![
                f25.element(&[1, 2]).unwrap(),
                f25.element(&[0, 3]).unwrap(),
                f25.element(&[4, 0]).unwrap(),
                f25.one(),
            ],
        );
        let f = Poly::from_coeffs(
            &f25,
            vec![f25.element(&[2, 1]).unwrap(), f25.element(&[3, 3]).unwrap(), f25.one()],
        );
        let comp = g.compose(&f);
        for x in f25.elements() {
            assert_eq!(comp.eval(&x), g.eval(&f.eval(&x)));
        }
        assert_eq!(comp.degree(), Some(6));
    }

    #[test]
    fn squarefree_part_examples() {
        let f3 = prime_field(3);
        // x^3 - 1 = (x - 1)^3 over F_3; derivative vanishes
        let g = Poly::from_scalars(&f3, &[2, 0, 0, 1]);
        assert_eq!(g.squarefree_part().unwrap(), Poly::from_scalars(&f3, &[2, 1]));
        // x^9 - x is already squarefree (derivative is -1)
        let mut coeffs = vec![0u64; 10];
        coeffs[1] = 2;
        coeffs[9] = 1;
        let g = Poly::from_scalars(&f3, &coeffs);
        assert_eq!(g.squarefree_part().unwrap(), g.monic());
        // mixed multiplicities: x * (x-1)^3 over F_3 (= x^4 - x)
        let g = Poly::from_scalars(&f3, &[0, 2, 0, 0, 1]);
        let sf = g.squarefree_part().unwrap();
        assert_eq!(sf.degree(), Some(2));
        assert_eq!(g.distinct_root_count().unwrap(), 2);
        assert!(Poly::zero(&f3).squarefree_part().is_err());
    }

    #[test]
    fn squarefree_catches_p_multiplicity_factors_with_nonzero_derivative() {
        // f = (x - 1)^3 * (x - 2) over F_3 has f' != 0 but a factor of
        // multiplicity divisible by p; both roots must be reported.
        let f3 = prime_field(3);
        let cube = Poly::from_scalars(&f3, &[2, 1]); // x - 1
        let lin = Poly::from_scalars(&f3, &[1, 1]); // x - 2 = x + 1
        let f = cube.mul(&cube).mul(&cube).mul(&lin);
        assert!(!f.derivative().is_zero());
        assert_eq!(f.distinct_root_count().unwrap(), 2);
        let sf = f.squarefree_part().unwrap();
        assert_eq!(sf, cube.mul(&lin).monic());
    }

    #[test]
    fn distinct_root_count_examples() {
        let f3 = prime_field(3);
        let x2 = Poly::from_scalars(&f3, &[0, 0, 1]);
        assert_eq!(x2.distinct_root_count().unwrap(), 1);
        // f^2 - x for f = x^3 + x over F_3
        let f = Poly::from_scalars(&f3, &[0, 1, 0, 1]);
        let g = f.iterate(2, DEFAULT_DEGREE_CAP).unwrap().sub(&Poly::x(&f3));
        assert_eq!(g.distinct_root_count().unwrap(), 3);
    }

    #[test]
    fn power_minus_one_with_p_power_multiplicity() {
        // (x^b - 1)^(p^a) has exactly b distinct roots when p does not divide b
        for (p, bs) in [(2u64, vec![1u64, 3, 5, 7, 15]), (3, vec![1, 2, 4, 8]), (5, vec![2, 3, 6])] {
            let field = prime_field(p);
            for a in 0..3u32 {
                for &b in &bs {
                    let mut base = vec![0u64; b as usize + 1];
                    base[0] = p - 1;
                    base[b as usize] = 1;
                    let mut g = Poly::one(&field);
                    let factor = Poly::from_scalars(&field, &base);
                    for _ in 0..p.pow(a) {
                        g = g.mul(&factor);
                    }
                    assert_eq!(
                        g.distinct_root_count().unwrap(),
                        b,
                        "p={p} a={a} b={b}"
                    );
                }
            }
        }
    }

    fn count_roots_by_eval(g: &Poly, ext_degree: usize) -> u64 {
        // g has prime-field coefficients; count its roots in F_(p^k)
        let p = g.field().characteristic();
        let ext = FieldDesc::new(p, ext_degree).unwrap();
        let lifted = Poly::from_coeffs(
            &ext,
            g.coeffs().iter().map(|c| ext.scalar(c.coeffs()[0])).collect(),
        );
        ext.elements().filter(|x| lifted.eval(x).is_zero()).count() as u64
    }

    #[test]
    fn squarefree_part_preserves_roots_in_extensions() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(7);
        for p in [2u64, 3, 5] {
            let field = prime_field(p);
            for _ in 0..40 {
                let deg = rng.gen_range(1..=12);
                let mut coeffs: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..p)).collect();
                coeffs.push(rng.gen_range(1..p));
                let g = Poly::from_scalars(&field, &coeffs);
                let sf = g.squarefree_part().unwrap();
                // sf divides g and is squarefree
                let (_, r) = g.divrem(&sf).unwrap();
                assert!(r.is_zero(), "squarefree part divides the input");
                assert!(!sf.derivative().is_zero());
                assert_eq!(sf.gcd(&sf.derivative()).degree(), Some(0));
                let closure_count = g.distinct_root_count().unwrap();
                for k in 1..=4 {
                    let direct = count_roots_by_eval(&g, k);
                    assert_eq!(direct, count_roots_by_eval(&sf, k), "k={k} g={g}");
                    assert!(direct <= closure_count);
                }
            }
        }
    }

    #[test]
    fn closure_count_reached_in_splitting_extension() {
        // products of linear and quadratic factors split by F_(p^2)
        let f3 = prime_field(3);
        let lin0 = Poly::from_scalars(&f3, &[0, 1]);
        let lin1 = Poly::from_scalars(&f3, &[2, 1]);
        let quad = Poly::from_scalars(&f3, &[1, 0, 1]); // x^2 + 1, irreducible
        let g = lin0.mul(&lin1).mul(&lin1).mul(&quad);
        let closure = g.distinct_root_count().unwrap();
        assert_eq!(closure, 4);
        assert_eq!(count_roots_by_eval(&g, 2), closure);
    }

    #[test]
    fn additive_iterate_examples() {
        let f3 = prime_field(3);
        let one = f3.one();
        let form = additive_iterate(&one, 2).unwrap();
        assert_eq!(
            form.taps,
            vec![f3.scalar(1), f3.scalar(2), f3.scalar(1)]
        );
        let poly = form.to_poly(&f3, DEFAULT_DEGREE_CAP).unwrap();
        let expect = Poly::from_scalars(&f3, &[0, 1, 0, 2, 0, 0, 0, 0, 0, 1]);
        assert_eq!(poly, expect);

        let form1 = additive_iterate(&one, 1).unwrap();
        assert_eq!(form1.taps, vec![f3.one(), f3.one()]);

        // n = p: interior binomials vanish
        let form_p = additive_iterate(&one, 3).unwrap();
        assert!(form_p.taps[1].is_zero());
        assert!(form_p.taps[2].is_zero());
        assert!(!form_p.taps[0].is_zero());
        assert!(!form_p.taps[3].is_zero());

        assert!(additive_iterate(&f3.zero(), 2).is_err());
    }

    #[test]
    fn additive_iterate_matches_generic_iterate() {
        for (p, m) in [(3u64, 1usize), (3, 2), (5, 1)] {
            let field = FieldDesc::new(p, m).unwrap();
            for a_idx in 1..field.order().unwrap().min(6) {
                let a = field.element_from_index(a_idx);
                if a.is_zero() {
                    continue;
                }
                let f = additive_map_poly(&a);
                for n in 1..=5u64 {
                    let required = BigUint::from(p).pow((n as usize * m) as u32);
                    if required > BigUint::from(DEFAULT_DEGREE_CAP) {
                        break;
                    }
                    let direct = f.iterate(n, DEFAULT_DEGREE_CAP).unwrap();
                    let form = additive_iterate(&a, n).unwrap();
                    assert_eq!(form.to_poly(&field, DEFAULT_DEGREE_CAP).unwrap(), direct);
                }
            }
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        let f3 = prime_field(3);
        let f = parse_poly(&f3, "x^9 + 2*x^3 + x").unwrap();
        let expect = Poly::from_scalars(&f3, &[0, 1, 0, 2, 0, 0, 0, 0, 0, 1]);
        assert_eq!(f, expect);
        assert_eq!(f.to_string(), "x^9 + 2*x^3 + x");
        let g = parse_poly(&f3, " 2 * x ^ 2 + 1 ").unwrap();
        assert_eq!(g, Poly::from_scalars(&f3, &[1, 0, 2]));

        let f9 = FieldDesc::new(3, 2).unwrap();
        let h = parse_poly(&f9, "[1,2]*x^2 + [0,1]*x + 2").unwrap();
        assert_eq!(h.coeff(2), f9.element(&[1, 2]).unwrap());
        assert_eq!(h.coeff(1), f9.element(&[0, 1]).unwrap());
        assert_eq!(h.coeff(0), f9.scalar(2));

        assert!(parse_poly(&f3, "").is_err());
        assert!(parse_poly(&f3, "x^-1").is_err());
        assert!(parse_poly(&f3, "y + 1").is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn karatsuba_matches_schoolbook(
            a in proptest::collection::vec(0u64..5, 1..200),
            b in proptest::collection::vec(0u64..5, 1..200),
        ) {
            let f5 = prime_field(5);
            let pa = Poly::from_scalars(&f5, &a);
            let pb = Poly::from_scalars(&f5, &b);
            let dense = mul_vec(&pa.coeffs, &pb.coeffs, &f5);
            let school = if pa.is_zero() || pb.is_zero() {
                vec![]
            } else {
                schoolbook(&pa.coeffs, &pb.coeffs, &f5)
            };
            prop_assert_eq!(
                Poly::from_coeffs(&f5, dense),
                Poly::from_coeffs(&f5, school)
            );
        }

        #[test]
        fn iterate_degree_is_multiplicative(
            coeffs in proptest::collection::vec(0u64..3, 2..5),
            lead in 1u64..3,
            n in 1u64..4,
        ) {
            let f3 = prime_field(3);
            let mut c = coeffs.clone();
            c.push(lead);
            let f = Poly::from_scalars(&f3, &c);
            let d = f.degree().unwrap() as u64;
            prop_assume!(d >= 1);
            if let Ok(it) = f.iterate(n, 100_000) {
                prop_assert_eq!(it.degree().unwrap() as u64, d.pow(n as u32));
            }
        }

        #[test]
        fn gcd_divides_both_operands(
            a in proptest::collection::vec(0u64..3, 1..16),
            b in proptest::collection::vec(0u64..3, 1..16),
        ) {
            let f3 = prime_field(3);
            let pa = Poly::from_scalars(&f3, &a);
            let pb = Poly::from_scalars(&f3, &b);
            prop_assume!(!pa.is_zero() && !pb.is_zero());
            let g = pa.gcd(&pb);
            prop_assert!(pa.divrem(&g).unwrap().1.is_zero());
            prop_assert!(pb.divrem(&g).unwrap().1.is_zero());
        }
    }
}
