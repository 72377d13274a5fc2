//! Fixed-point counting for polynomial self-maps of the affine line over
//! the algebraic closure of F_p: the squarefree-degree oracle, the closed
//! forms for the power / p-th-power-coefficient / additive families, exact
//! period counts by Moebius inversion, and single-field cycle censuses.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldDesc, FieldElem};
use crate::numtheory::{divisors, mobius, padic_valuation_finite, padic_valuation_u64};
use crate::poly::{additive_map_poly, Poly, DEFAULT_DEGREE_CAP};

/// A polynomial self-map in one of the four recognized forms.
#[derive(Debug, Clone)]
pub enum MapSpec {
    /// x -> x^m over the closure of F_p, with p not dividing m, m >= 2.
    Power { p: u64, m: u64 },
    /// x -> x^(p^m) + a x with a a unit of F_(p^m). The closed-form count
    /// is stated for odd p; even p is permitted but flagged out of scope.
    Additive { a: FieldElem },
    /// A polynomial whose every exponent with nonzero coefficient is
    /// divisible by p (so the derivative vanishes identically).
    PthPowerCoeff { poly: Poly },
    /// Any other polynomial of degree >= 2; only the oracle applies.
    General { poly: Poly },
}

impl MapSpec {
    pub fn power(p: u64, m: u64) -> Result<MapSpec> {
        if !crate::numtheory::is_prime_u64(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if m < 2 {
            return Err(Error::InvalidArgument("power map needs exponent >= 2".into()));
        }
        if m % p == 0 {
            return Err(Error::InvalidArgument(format!(
                "p = {p} divides m = {m}; use the p-th-power family instead"
            )));
        }
        Ok(MapSpec::Power { p, m })
    }

    pub fn additive(a: FieldElem) -> Result<MapSpec> {
        if a.is_zero() {
            return Err(Error::InvalidArgument("additive map needs a != 0".into()));
        }
        if a.field().order().is_none() {
            return Err(Error::InvalidArgument(
                "field order overflows; the additive map degree p^m must fit in u64".into(),
            ));
        }
        Ok(MapSpec::Additive { a })
    }

    pub fn pth_power_coeff(poly: Poly) -> Result<MapSpec> {
        let p = poly.field().characteristic() as usize;
        let deg = poly.degree().unwrap_or(0);
        if deg < 2 {
            return Err(Error::InvalidArgument("map must have degree >= 2".into()));
        }
        for (i, c) in poly.coeffs().iter().enumerate() {
            if !c.is_zero() && i % p != 0 {
                return Err(Error::InvalidArgument(format!(
                    "exponent {i} is not divisible by the characteristic {p}"
                )));
            }
        }
        Ok(MapSpec::PthPowerCoeff { poly })
    }

    pub fn general(poly: Poly) -> Result<MapSpec> {
        if poly.degree().unwrap_or(0) < 2 {
            return Err(Error::InvalidArgument("map must have degree >= 2".into()));
        }
        Ok(MapSpec::General { poly })
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            MapSpec::Power { p, .. } => *p,
            MapSpec::Additive { a } => a.field().characteristic(),
            MapSpec::PthPowerCoeff { poly } | MapSpec::General { poly } => {
                poly.field().characteristic()
            }
        }
    }

    /// Whether the closed-form count for this variant is inside the scope
    /// of its hypotheses; the additive formula assumes odd characteristic,
    /// so even-characteristic additive maps fall back to the oracle alone.
    pub fn closed_form_in_scope(&self) -> bool {
        match self {
            MapSpec::Additive { a } => a.field().characteristic() != 2,
            _ => true,
        }
    }

    pub fn degree(&self) -> u64 {
        match self {
            MapSpec::Power { m, .. } => *m,
            MapSpec::Additive { a } => a.field().order().expect("desk-scale field"),
            MapSpec::PthPowerCoeff { poly } | MapSpec::General { poly } => {
                poly.degree().unwrap_or(0) as u64
            }
        }
    }

    /// The map as a concrete polynomial over its coefficient field.
    pub fn to_poly(&self) -> Poly {
        match self {
            MapSpec::Power { p, m } => {
                let field = FieldDesc::new(*p, 1).expect("p validated prime");
                Poly::monomial(field.one(), *m as usize)
            }
            MapSpec::Additive { a } => additive_map_poly(a),
            MapSpec::PthPowerCoeff { poly } | MapSpec::General { poly } => poly.clone(),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            MapSpec::Power { p, m } => format!("x^{m} over closure of F_{p}"),
            MapSpec::Additive { a } => {
                let f = a.field();
                format!(
                    "x^{} + {}x over closure of F_{}",
                    f.order().expect("desk-scale field"),
                    a,
                    f.characteristic()
                )
            }
            MapSpec::PthPowerCoeff { poly } => format!(
                "{poly} (derivative-free family) over closure of F_{}",
                poly.field().characteristic()
            ),
            MapSpec::General { poly } => {
                format!("{poly} over closure of F_{}", poly.field().characteristic())
            }
        }
    }
}

/// How an entry of a [`FixSeq`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CountMethod {
    #[serde(rename = "oracle")]
    Oracle,
    #[serde(rename = "closed_form")]
    ClosedForm,
    #[serde(rename = "both-agree")]
    BothAgree,
}

impl std::fmt::Display for CountMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CountMethod::Oracle => "oracle",
            CountMethod::ClosedForm => "closed_form",
            CountMethod::BothAgree => "both-agree",
        };
        write!(f, "{s}")
    }
}

/// Preferred computation route when assembling a [`FixSeq`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    Oracle,
    Closed,
    Both,
}

/// The sequence a_n = #Fix(f^n) with per-entry provenance.
#[derive(Debug, Clone)]
pub struct FixSeq {
    pub map: MapSpec,
    /// (n, a_n, how it was computed), ascending in n.
    pub entries: Vec<(u64, BigUint, CountMethod)>,
}

impl FixSeq {
    pub fn get(&self, n: u64) -> Option<&BigUint> {
        self.entries
            .iter()
            .find(|(k, _, _)| *k == n)
            .map(|(_, a, _)| a)
    }

    /// Counts a_1..a_k as a contiguous vector; errors on gaps.
    pub fn contiguous_counts(&self, k: u64) -> Result<Vec<BigUint>> {
        (1..=k)
            .map(|n| self.get(n).cloned().ok_or(Error::MissingEntry(n)))
            .collect()
    }
}

/// Number of distinct roots of f^n(x) - x in the closure, by iteration and
/// the squarefree-part degree. Fails with a resource limit when deg(f)^n
/// exceeds the cap, before the map is even materialized.
pub fn count_oracle(map: &MapSpec, n: u64, degree_cap: u64) -> Result<BigUint> {
    let required = BigUint::from(map.degree()).pow(
        u32::try_from(n).map_err(|_| Error::InvalidArgument("iteration count too large".into()))?,
    );
    if required > BigUint::from(degree_cap) {
        return Err(Error::ResourceLimit {
            required,
            cap: degree_cap,
        });
    }
    let f = map.to_poly();
    let iterate = f.iterate(n, degree_cap)?;
    let shifted = iterate.sub(&Poly::x(f.field()));
    Ok(BigUint::from(shifted.distinct_root_count()?))
}

/// Closed-form count for the power map x -> x^m: 1 + (m^n - 1) / p^(v_p(m^n - 1)).
pub fn count_power_map(p: u64, m: u64, n: u64) -> Result<BigUint> {
    if !crate::numtheory::is_prime_u64(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if m < 2 || m % p == 0 {
        return Err(Error::InvalidArgument(format!(
            "power-map count needs m >= 2 with p = {p} not dividing m = {m}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let mn = BigUint::from(m).pow(u32::try_from(n).map_err(|_| {
        Error::InvalidArgument("iteration count too large".into())
    })?);
    let mn_minus_1 = mn - BigUint::one();
    let v = padic_valuation_finite(p, &mn_minus_1)?;
    let unit_part = mn_minus_1 / BigUint::from(p).pow(u32::try_from(v).expect("desk scale"));
    Ok(unit_part + BigUint::one())
}

/// Count for maps with identically vanishing derivative: exactly d^n.
pub fn count_pth_power_family(map: &MapSpec, n: u64) -> Result<BigUint> {
    match map {
        MapSpec::PthPowerCoeff { poly } => {
            let d = poly.degree().unwrap() as u64;
            Ok(BigUint::from(d).pow(u32::try_from(n).map_err(|_| {
                Error::InvalidArgument("iteration count too large".into())
            })?))
        }
        _ => Err(Error::InvalidArgument(
            "count applies to the derivative-free family only".into(),
        )),
    }
}

/// Closed-form count for the additive map x -> x^(p^m) + a x when p^m - 1
/// divides n: p^((n - p^(v_p(n))) m), independent of a.
pub fn count_additive(p: u64, m: u64, n: u64) -> Result<BigUint> {
    if p == 2 || !crate::numtheory::is_prime_u64(p) {
        return Err(Error::InvalidArgument(format!(
            "{p} is not an odd prime; the additive closed form assumes odd characteristic"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let q_minus_1 = p
        .checked_pow(u32::try_from(m).map_err(|_| Error::InvalidArgument("degree too large".into()))?)
        .ok_or_else(|| Error::InvalidArgument("field order overflows".into()))?
        - 1;
    if n % q_minus_1 != 0 {
        return Err(Error::InvalidArgument(format!(
            "the additive closed form needs {q_minus_1} | n; got n = {n} (use the oracle)"
        )));
    }
    let drop = p.pow(padic_valuation_u64(p, n) as u32);
    let exponent = (n - drop) * m;
    Ok(BigUint::from(p).pow(u32::try_from(exponent).map_err(|_| {
        Error::InvalidArgument("count exponent too large".into())
    })?))
}

/// The closed-form count for `map` at `n`, when one applies.
pub fn closed_count(map: &MapSpec, n: u64) -> Option<BigUint> {
    if !map.closed_form_in_scope() {
        return None;
    }
    match map {
        MapSpec::Power { p, m } => count_power_map(*p, *m, n).ok(),
        MapSpec::PthPowerCoeff { .. } => count_pth_power_family(map, n).ok(),
        MapSpec::Additive { a } => {
            let field = a.field();
            count_additive(field.characteristic(), field.degree() as u64, n).ok()
        }
        MapSpec::General { .. } => None,
    }
}

/// Assembles a_n for the requested indices. With [`MethodChoice::Both`] each
/// entry records whether the oracle, the closed form, or their agreement
/// produced it; a disagreement is reported as an internal error.
///
/// Requests that would need the oracle past the degree cap are refused up
/// front, before any iteration runs.
pub fn fix_seq(map: &MapSpec, ns: &[u64], choice: MethodChoice, degree_cap: u64) -> Result<FixSeq> {
    let degree = map.degree();
    for &n in ns {
        let oracle_required = match choice {
            MethodChoice::Oracle => true,
            MethodChoice::Closed => false,
            MethodChoice::Both => closed_count(map, n).is_none(),
        };
        if oracle_required {
            let required = BigUint::from(degree).pow(u32::try_from(n).map_err(|_| {
                Error::InvalidArgument("iteration count too large".into())
            })?);
            if required > BigUint::from(degree_cap) {
                return Err(Error::ResourceLimit {
                    required,
                    cap: degree_cap,
                });
            }
        }
    }
    let mut entries = Vec::with_capacity(ns.len());
    for &n in ns {
        let entry = match choice {
            MethodChoice::Oracle => (n, count_oracle(map, n, degree_cap)?, CountMethod::Oracle),
            MethodChoice::Closed => {
                let a = closed_count(map, n).ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "no closed form applies to this map at n = {n}"
                    ))
                })?;
                (n, a, CountMethod::ClosedForm)
            }
            MethodChoice::Both => {
                let closed = closed_count(map, n);
                let oracle = match count_oracle(map, n, degree_cap) {
                    Ok(a) => Some(a),
                    Err(Error::ResourceLimit { .. }) if closed.is_some() => None,
                    Err(e) => return Err(e),
                };
                match (oracle, closed) {
                    (Some(o), Some(c)) => {
                        if o != c {
                            return Err(Error::Internal(format!(
                                "oracle {o} and closed form {c} disagree at n = {n} for {}",
                                map.describe()
                            )));
                        }
                        (n, o, CountMethod::BothAgree)
                    }
                    (Some(o), None) => (n, o, CountMethod::Oracle),
                    (None, Some(c)) => (n, c, CountMethod::ClosedForm),
                    (None, None) => unreachable!("oracle error would have returned"),
                }
            }
        };
        entries.push(entry);
    }
    entries.sort_by_key(|(n, _, _)| *n);
    Ok(FixSeq {
        map: map.clone(),
        entries,
    })
}

/// Points of exact period n via Moebius inversion: b_n = sum over k | n of
/// mu(n/k) a_k. Requires every divisor of every requested n to be present.
pub fn exact_period_counts(seq: &FixSeq) -> Result<Vec<(u64, BigInt)>> {
    let mut out = Vec::with_capacity(seq.entries.len());
    for (n, _, _) in &seq.entries {
        let mut b = BigInt::zero();
        for k in divisors(*n) {
            let a_k = seq.get(k).ok_or(Error::MissingEntry(k))?;
            b += mobius(*n / k) * BigInt::from(a_k.clone());
        }
        out.push((*n, b));
    }
    Ok(out)
}

/// Enumeration bound for [`cycle_census`].
pub const CENSUS_BOUND: u64 = 10_000_000;

/// Cycle structure of the functional graph of f on one finite field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleCensus {
    /// cycle length -> number of cycles of that length
    pub cycle_lengths: BTreeMap<u64, u64>,
    /// points that are not periodic
    pub tails: u64,
    /// connected components (one cycle each)
    pub components: u64,
}

/// Walks the functional graph x -> f(x) on the whole coefficient field of f.
/// This is a single-field census, not the closure-level fixed-point count.
pub fn cycle_census(f: &Poly) -> Result<CycleCensus> {
    let field = f.field();
    let order = field
        .order()
        .filter(|&o| o <= CENSUS_BOUND)
        .ok_or_else(|| Error::ResourceLimit {
            required: field
                .order()
                .map(BigUint::from)
                .unwrap_or_else(|| BigUint::from(u64::MAX)),
            cap: CENSUS_BOUND,
        })?;
    let n = order.to_usize().expect("bounded above");
    let mut next = vec![0u64; n];
    for i in 0..n {
        let x = field.element_from_index(i as u64);
        next[i] = field.index_of(&f.eval(&x));
    }

    // 0 = unvisited, 1 = on current path, 2 = finished
    let mut state = vec![0u8; n];
    let mut cycle_lengths: BTreeMap<u64, u64> = BTreeMap::new();
    let mut on_cycle = vec![false; n];
    let mut components = 0u64;
    let mut path: Vec<usize> = Vec::new();
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        path.clear();
        let mut x = start;
        while state[x] == 0 {
            state[x] = 1;
            path.push(x);
            x = next[x] as usize;
        }
        if state[x] == 1 {
            // closed a new cycle inside the current path
            let pos = path.iter().position(|&y| y == x).expect("x is on the path");
            let len = (path.len() - pos) as u64;
            *cycle_lengths.entry(len).or_insert(0) += 1;
            components += 1;
            for &y in &path[pos..] {
                on_cycle[y] = true;
            }
        }
        for &y in &path {
            state[y] = 2;
        }
    }
    let periodic: u64 = on_cycle.iter().filter(|&&b| b).count() as u64;
    Ok(CycleCensus {
        cycle_lengths,
        tails: order - periodic,
        components,
    })
}

/// Default cap re-exported for callers assembling sequences.
pub const DEFAULT_CAP: u64 = DEFAULT_DEGREE_CAP;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn ubig(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn oracle_examples() {
        let x2_f3 = MapSpec::power(3, 2).unwrap();
        assert_eq!(count_oracle(&x2_f3, 1, DEFAULT_CAP).unwrap(), ubig(2));

        let f2 = FieldDesc::new(2, 1).unwrap();
        let x2 = parse_poly(&f2, "x^2").unwrap();
        let map = MapSpec::pth_power_coeff(x2).unwrap();
        assert_eq!(count_oracle(&map, 3, DEFAULT_CAP).unwrap(), ubig(8));

        let f3 = FieldDesc::new(3, 1).unwrap();
        let additive = MapSpec::additive(f3.one()).unwrap();
        assert_eq!(count_oracle(&additive, 2, DEFAULT_CAP).unwrap(), ubig(3));
    }

    #[test]
    fn power_map_closed_form_examples() {
        assert_eq!(count_power_map(3, 2, 2).unwrap(), ubig(2));
        assert_eq!(count_power_map(3, 2, 3).unwrap(), ubig(8));
        assert_eq!(count_power_map(3, 2, 1).unwrap(), ubig(2));
        assert!(count_power_map(3, 6, 1).is_err());
        assert!(count_power_map(3, 1, 1).is_err());
    }

    #[test]
    fn pth_power_family_examples() {
        let f2 = FieldDesc::new(2, 1).unwrap();
        let map = MapSpec::pth_power_coeff(parse_poly(&f2, "x^2").unwrap()).unwrap();
        assert_eq!(count_pth_power_family(&map, 5).unwrap(), ubig(32));
        assert_eq!(count_pth_power_family(&map, 1).unwrap(), ubig(2));

        let quartic = MapSpec::pth_power_coeff(parse_poly(&f2, "x^4 + x^2").unwrap()).unwrap();
        assert_eq!(count_pth_power_family(&quartic, 3).unwrap(), ubig(64));
        assert_eq!(count_oracle(&quartic, 3, DEFAULT_CAP).unwrap(), ubig(64));

        let other = MapSpec::power(3, 2).unwrap();
        assert!(count_pth_power_family(&other, 1).is_err());
        // odd exponents are rejected by the constructor
        assert!(MapSpec::pth_power_coeff(parse_poly(&f2, "x^3 + x^2").unwrap()).is_err());
    }

    #[test]
    fn additive_closed_form_examples() {
        assert_eq!(count_additive(3, 1, 2).unwrap(), ubig(3));
        assert_eq!(count_additive(3, 1, 6).unwrap(), ubig(27));
        assert!(count_additive(3, 1, 3).is_err());
        assert!(count_additive(2, 1, 1).is_err());
        // oracle agreement at n = 6 (degree 3^6 = 729)
        let f3 = FieldDesc::new(3, 1).unwrap();
        let map = MapSpec::additive(f3.one()).unwrap();
        assert_eq!(count_oracle(&map, 6, DEFAULT_CAP).unwrap(), ubig(27));
    }

    #[test]
    fn fix_seq_methods_and_bounds() {
        let map = MapSpec::power(3, 2).unwrap();
        let ns: Vec<u64> = (1..=6).collect();
        let seq = fix_seq(&map, &ns, MethodChoice::Both, DEFAULT_CAP).unwrap();
        let d = map.degree();
        for (i, (n, a, method)) in seq.entries.iter().enumerate() {
            assert_eq!(*n, ns[i]);
            assert_eq!(*method, CountMethod::BothAgree);
            assert!(*a >= ubig(1));
            assert!(*a <= BigUint::from(d).pow(*n as u32));
        }
        // nesting: a_j <= a_n when j | n
        for (j, aj, _) in &seq.entries {
            for (n, an, _) in &seq.entries {
                if n % j == 0 {
                    assert!(aj <= an, "a_{j} <= a_{n}");
                }
            }
        }
        // oracle-only request over the cap reports the required degree
        match fix_seq(&map, &[40], MethodChoice::Oracle, DEFAULT_CAP) {
            Err(Error::ResourceLimit { required, .. }) => {
                assert_eq!(required, BigUint::from(2u64).pow(40));
            }
            other => panic!("expected resource limit, got {other:?}"),
        }
        // with Both, large n falls back to the closed form
        let seq = fix_seq(&map, &[40], MethodChoice::Both, DEFAULT_CAP).unwrap();
        assert_eq!(seq.entries[0].2, CountMethod::ClosedForm);
    }

    #[test]
    fn even_characteristic_additive_is_oracle_only() {
        let f2 = FieldDesc::new(2, 1).unwrap();
        let map = MapSpec::additive(f2.one()).unwrap();
        assert!(!map.closed_form_in_scope());
        let seq = fix_seq(&map, &[1, 2, 3], MethodChoice::Both, DEFAULT_CAP).unwrap();
        for (_, _, method) in &seq.entries {
            assert_eq!(*method, CountMethod::Oracle);
        }
        assert!(fix_seq(&map, &[1], MethodChoice::Closed, DEFAULT_CAP).is_err());
    }

    #[test]
    fn exact_period_count_examples() {
        let map = MapSpec::power(3, 2).unwrap();
        let seq = fix_seq(&map, &[1, 2, 3, 4], MethodChoice::Both, DEFAULT_CAP).unwrap();
        let b = exact_period_counts(&seq).unwrap();
        let expect: Vec<(u64, i64)> = vec![(1, 2), (2, 0), (3, 6), (4, 4)];
        for ((n, got), (en, ev)) in b.iter().zip(expect) {
            assert_eq!(*n, en);
            assert_eq!(got, &BigInt::from(ev));
            assert!(got >= &BigInt::zero());
            assert!((got % BigInt::from(*n)).is_zero(), "n | b_n");
        }
        // missing divisor entries are an error
        let partial = FixSeq {
            map: map.clone(),
            entries: vec![(2, ubig(2), CountMethod::ClosedForm)],
        };
        assert!(matches!(
            exact_period_counts(&partial),
            Err(Error::MissingEntry(1))
        ));
    }

    #[test]
    fn exact_period_degenerate_sequences() {
        let map = MapSpec::power(3, 2).unwrap();
        // constant a_n = c: all mass in period 1
        let constant = FixSeq {
            map: map.clone(),
            entries: (1..=6).map(|n| (n, ubig(5), CountMethod::ClosedForm)).collect(),
        };
        for (n, b) in exact_period_counts(&constant).unwrap() {
            if n == 1 {
                assert_eq!(b, BigInt::from(5));
            } else {
                assert!(b.is_zero());
            }
        }
        // a_n = 2^n: b_2 = 2
        let geometric = FixSeq {
            map,
            entries: (1..=4)
                .map(|n| (n, BigUint::from(2u64).pow(n as u32), CountMethod::ClosedForm))
                .collect(),
        };
        let b = exact_period_counts(&geometric).unwrap();
        assert_eq!(b[1], (2, BigInt::from(2)));
    }

    #[test]
    fn census_examples() {
        let f5 = FieldDesc::new(5, 1).unwrap();
        let census = cycle_census(&parse_poly(&f5, "x^2 + 1").unwrap()).unwrap();
        // 0 -> 1 -> 2 -> 0 is the only cycle; 3 and 4 are tails
        assert_eq!(census.cycle_lengths, BTreeMap::from([(3, 1)]));
        assert_eq!(census.tails, 2);
        assert_eq!(census.components, 1);

        let f7 = FieldDesc::new(7, 1).unwrap();
        let ident = cycle_census(&parse_poly(&f7, "x").unwrap()).unwrap();
        assert_eq!(ident.cycle_lengths, BTreeMap::from([(1, 7)]));
        assert_eq!(ident.tails, 0);
        assert_eq!(ident.components, 7);

        let squares = cycle_census(&parse_poly(&f7, "x^2").unwrap()).unwrap();
        assert_eq!(squares.cycle_lengths, BTreeMap::from([(1, 2), (2, 1)]));
        assert_eq!(squares.tails, 3);
        assert_eq!(squares.components, 3);
    }

    #[test]
    fn census_counts_are_consistent() {
        let f9 = FieldDesc::new(3, 2).unwrap();
        let f = parse_poly(&f9, "x^2 + [1,1]").unwrap();
        let census = cycle_census(&f).unwrap();
        let periodic: u64 = census
            .cycle_lengths
            .iter()
            .map(|(len, count)| len * count)
            .sum();
        assert_eq!(periodic + census.tails, 9);
        let cycles: u64 = census.cycle_lengths.values().sum();
        assert_eq!(cycles, census.components);
    }
}
