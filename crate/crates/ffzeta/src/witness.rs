//! Finite-scale replays of the reduction chains that connect fixed-point
//! counts to digit automata, with explicit counterexamples to eventual
//! periodicity of the reduced sequences.
//!
//! Three scenarios are covered: the power map in characteristic 2 (reduce
//! a_{2n} mod an odd prime divisor q of the exponent), the power map in odd
//! characteristic (reduce a subsequence mod an auxiliary prime q = 2 mod p
//! and track membership in the set Y of indices whose shifted valuation is
//! 0 mod d), and the additive map (the product sequence c_n). Every
//! identity a report marks verified was recomputed exactly over the stated
//! range, by two independent routes wherever the chain supplies one.
//!
//! Reports are finite-scale evidence about explicit ranges, never claims
//! beyond them.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::automata::{congruence_dfao, dfao_product, vp_mod_dfao, AffineTransducer, Dfao};
use crate::dynamics::{count_additive, count_oracle, count_power_map, MapSpec};
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::numtheory::{
    find_prime_in_progression, is_prime_u64, mod_inverse, multiplicative_order,
    padic_valuation_finite, padic_valuation_u64, solve_linear_congruence,
};
use crate::poly::DEFAULT_DEGREE_CAP;

fn ser_biguint<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// One verified identity: `name` held at every checked index.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub verified_count: u64,
}

/// A pair breaking periodicity with candidate period k: the indices n and
/// n + a*k land in different fibers, witnessed by the two valuations.
#[derive(Debug, Clone, Serialize)]
pub struct CounterexamplePair {
    pub k: u64,
    #[serde(serialize_with = "ser_biguint")]
    pub n: BigUint,
    #[serde(serialize_with = "ser_biguint")]
    pub a: BigUint,
    pub v_left: u64,
    pub v_right: u64,
}

impl CounterexamplePair {
    /// The second index of the pair, n + a*k.
    pub fn partner(&self) -> BigUint {
        &self.n + &self.a * BigUint::from(self.k)
    }
}

/// Everything a scenario run verified, with its parameters and ranges.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub scenario: String,
    pub params: BTreeMap<String, String>,
    pub range: u64,
    pub identities: Vec<IdentityCheck>,
    pub counterexamples: Vec<CounterexamplePair>,
}

impl WitnessReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn pow_mod_u64(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut acc = 1u128;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

fn inverse_mod(a: u64, modulus: u64) -> Result<u64> {
    mod_inverse(&BigUint::from(a), &BigUint::from(modulus))
        .and_then(|x| x.to_u64())
        .ok_or_else(|| Error::InvalidArgument(format!("{a} is not invertible mod {modulus}")))
}

fn order_u64(a: u64, modulus: u64) -> Result<u64> {
    multiplicative_order(&BigUint::from(a), &BigUint::from(modulus))?
        .to_u64()
        .ok_or_else(|| Error::Internal("order exceeds u64".into()))
}

/// k = M * p^N with p not dividing M.
fn split_p_part(k: u64, p: u64) -> (u64, u64) {
    let n = padic_valuation_u64(p, k);
    (k / p.pow(n as u32), n)
}

// ---------------------------------------------------------------------------
// Shared counterexample constructors. Both solve a pair of congruences so
// that the valuation of interest is exactly d*N at the first index and
// d*N + 1 at the second; d > 1 then splits the fiber.

/// Pair (n, a) with v_p(n) = d*N and v_p(n + a*k) = d*N + 1, n > min_n.
pub fn valuation_split_pair(
    p: u64,
    d: u64,
    k: u64,
    min_n: &BigUint,
) -> Result<CounterexamplePair> {
    if k == 0 {
        return Err(Error::InvalidArgument("candidate period must be >= 1".into()));
    }
    let (m_part, n_exp) = split_p_part(k, p);
    let dn = d
        .checked_mul(n_exp)
        .ok_or_else(|| Error::InvalidArgument("period's p-part too large".into()))?;
    let modulus = BigInt::from(p).pow(dn as u32 + 2);
    let target = BigInt::from(p).pow(dn as u32);
    // n = p^(dN) mod p^(dN+2), taken above min_n
    let n_class = solve_linear_congruence(&BigInt::one(), &target, &modulus)?
        .expect("unit coefficient always solvable");
    let n = n_class
        .smallest_above(&BigInt::from(min_n.clone()))
        .magnitude()
        .clone();
    // a M = p^((d-1)N) (p - 1) mod p^(dN+2); M is prime to p so a is unique
    let rhs = BigInt::from(p).pow(((d - 1) * n_exp) as u32) * BigInt::from(p - 1);
    let a_class = solve_linear_congruence(&BigInt::from(m_part), &rhs, &modulus)?
        .ok_or_else(|| Error::Internal("p-free part must be invertible".into()))?;
    let a = if a_class.residue.is_zero() {
        a_class.modulus.clone()
    } else {
        a_class.residue.clone()
    };
    let pair = CounterexamplePair {
        k,
        n: n.clone(),
        a: a.clone(),
        v_left: dn,
        v_right: dn + 1,
    };
    // re-verify by direct valuation
    let v_n = padic_valuation_finite(p, &n)?;
    let v_partner = padic_valuation_finite(p, &pair.partner())?;
    if v_n != dn || v_partner != dn + 1 {
        return Err(Error::Internal(format!(
            "valuation split failed: v({n}) = {v_n}, v(partner) = {v_partner}, wanted {dn}/{}",
            dn + 1
        )));
    }
    Ok(pair)
}

/// Pair (n, a) with v_p((q-1)n + 1) = d*N and v_p((q-1)(n + a*k) + 1) =
/// d*N + 1, n > min_n. Needs q != 1 mod p so q - 1 is invertible mod
/// p-powers.
pub fn affine_valuation_split_pair(
    p: u64,
    q: u64,
    d: u64,
    k: u64,
    min_n: &BigUint,
) -> Result<CounterexamplePair> {
    if k == 0 {
        return Err(Error::InvalidArgument("candidate period must be >= 1".into()));
    }
    if (q - 1) % p == 0 {
        return Err(Error::InvalidArgument(
            "q = 1 mod p; the shift q - 1 is not invertible mod p-powers".into(),
        ));
    }
    let (m_part, n_exp) = split_p_part(k, p);
    let dn = d
        .checked_mul(n_exp)
        .ok_or_else(|| Error::InvalidArgument("period's p-part too large".into()))?;
    let modulus = BigInt::from(p).pow(dn as u32 + 2);
    // (q-1) n = -1 + p^(dN) mod p^(dN+2)
    let rhs_n = BigInt::from(p).pow(dn as u32) - BigInt::one();
    let n_class = solve_linear_congruence(&BigInt::from(q - 1), &rhs_n, &modulus)?
        .ok_or_else(|| Error::Internal("q - 1 must be invertible".into()))?;
    let n = n_class
        .smallest_above(&BigInt::from(min_n.clone()))
        .magnitude()
        .clone();
    // (q-1) M a = p^((d-1)N) (p-1) mod p^(dN+2)
    let rhs_a = BigInt::from(p).pow(((d - 1) * n_exp) as u32) * BigInt::from(p - 1);
    let coeff = BigInt::from(q - 1) * BigInt::from(m_part);
    let a_class = solve_linear_congruence(&coeff, &rhs_a, &modulus)?
        .ok_or_else(|| Error::Internal("coefficient must be invertible".into()))?;
    let a = if a_class.residue.is_zero() {
        a_class.modulus.clone()
    } else {
        a_class.residue.clone()
    };
    let pair = CounterexamplePair {
        k,
        n: n.clone(),
        a: a.clone(),
        v_left: dn,
        v_right: dn + 1,
    };
    let shift = |x: &BigUint| BigUint::from(q - 1) * x + BigUint::one();
    let v_n = padic_valuation_finite(p, &shift(&n))?;
    let v_partner = padic_valuation_finite(p, &shift(&pair.partner()))?;
    if v_n != dn || v_partner != dn + 1 {
        return Err(Error::Internal(format!(
            "affine valuation split failed: got {v_n}/{v_partner}, wanted {dn}/{}",
            dn + 1
        )));
    }
    Ok(pair)
}

// ---------------------------------------------------------------------------
// Scenario: power map x -> x^m in characteristic 2.

/// Parameters of the characteristic-2 reduction: q an odd prime divisor of
/// the exponent m, r the inverse of 2 mod q, ord_r its multiplicative order.
#[derive(Debug, Clone)]
pub struct Char2PowerParams {
    pub m: u64,
    pub q: u64,
    pub r: u64,
    pub ord_r: u64,
    /// v_2(m^2 - 1)
    pub v2_base: u64,
}

pub fn char2_power_setup(m: u64, q: u64) -> Result<Char2PowerParams> {
    if m < 3 || m % 2 == 0 {
        return Err(Error::InvalidArgument("exponent m must be odd and >= 3".into()));
    }
    if q == 2 || !is_prime_u64(q) || m % q != 0 {
        return Err(Error::InvalidArgument(format!(
            "q = {q} must be an odd prime divisor of m = {m}"
        )));
    }
    let r = inverse_mod(2, q)?;
    let ord_r = order_u64(r, q)?;
    debug_assert!(ord_r > 1, "r = 1 would need q | 1");
    let v2_base = padic_valuation_finite(2, &(BigUint::from(m) * BigUint::from(m) - 1u32))?;
    Ok(Char2PowerParams {
        m,
        q,
        r,
        ord_r,
        v2_base,
    })
}

impl Char2PowerParams {
    /// b value attached to the residue class of v_2(n) mod ord_r.
    pub fn fiber_value(&self, v2_class: u64) -> u64 {
        pow_mod_u64(self.r, v2_class % self.ord_r + self.v2_base, self.q)
    }

    pub fn fiber_dfao(&self) -> Result<Dfao> {
        let outputs: Vec<i64> = (0..self.ord_r)
            .map(|i| self.fiber_value(i) as i64)
            .collect();
        vp_mod_dfao(2, self.ord_r, &outputs)
    }
}

/// Replays the characteristic-2 chain for n = 1..range: the even-index
/// count a_{2n} reduces to 1 - r^(v_2(m^(2n)-1)) mod q, the shifted fiber
/// value b_n = -(a_{2n}-1) equals r^(v_2(n) + v_2(m^2-1)), the valuation
/// identity behind that equality holds, and the 2d-state automaton built
/// from the fiber reproduces b_n. Counterexample pairs are produced for
/// every candidate period k = 1..k_max.
pub fn char2_power_report(
    m: u64,
    q: u64,
    range: u64,
    k_max: u64,
    degree_cap: u64,
) -> Result<WitnessReport> {
    let params = char2_power_setup(m, q)?;
    let fiber_dfao = params.fiber_dfao()?;
    let map = MapSpec::power(2, m)?;

    let mut count_congruence = 0u64;
    let mut fiber_formula = 0u64;
    let mut valuation_additivity = 0u64;
    let mut automaton_agreement = 0u64;
    let mut oracle_crosscheck = 0u64;
    for n in 1..=range {
        let a_2n = count_power_map(2, m, 2 * n)?;
        let a_red = (&a_2n % q).to_u64().expect("reduced mod q");
        // direct valuation of m^(2n) - 1, independent of the shortcut
        let v_direct =
            padic_valuation_finite(2, &(BigUint::from(m).pow(2 * n as u32) - 1u32))?;
        let expect_a = (1 + q - pow_mod_u64(params.r, v_direct, q)) % q;
        if a_red != expect_a {
            return Err(Error::Internal(format!(
                "count congruence failed at n = {n}: {a_red} != {expect_a}"
            )));
        }
        count_congruence += 1;

        let v_split = padic_valuation_u64(2, n) + params.v2_base;
        if v_direct != v_split {
            return Err(Error::Internal(format!(
                "valuation additivity failed at n = {n}: {v_direct} != {v_split}"
            )));
        }
        valuation_additivity += 1;

        let b_n = (q - (a_red + q - 1) % q) % q;
        let expect_b = params.fiber_value(padic_valuation_u64(2, n));
        if b_n != expect_b {
            return Err(Error::Internal(format!(
                "fiber formula failed at n = {n}: {b_n} != {expect_b}"
            )));
        }
        fiber_formula += 1;

        if fiber_dfao.run_u64(n)? != b_n as i64 {
            return Err(Error::Internal(format!("fiber automaton differs at n = {n}")));
        }
        automaton_agreement += 1;

        if BigUint::from(m).pow(2 * n as u32) <= BigUint::from(degree_cap) {
            let direct = count_oracle(&map, 2 * n, degree_cap)?;
            if direct != a_2n {
                return Err(Error::Internal(format!(
                    "oracle disagrees with closed form at n = {}",
                    2 * n
                )));
            }
            oracle_crosscheck += 1;
        }
    }

    let mut counterexamples = Vec::new();
    for k in 1..=k_max {
        let pair = valuation_split_pair(2, params.ord_r, k, &BigUint::zero())?;
        // the two fiber values really differ
        debug_assert_ne!(
            params.fiber_value(pair.v_left),
            params.fiber_value(pair.v_right)
        );
        counterexamples.push(pair);
    }

    let mut p_map = BTreeMap::new();
    p_map.insert("p".into(), "2".into());
    p_map.insert("m".into(), params.m.to_string());
    p_map.insert("q".into(), params.q.to_string());
    p_map.insert("r".into(), params.r.to_string());
    p_map.insert("ord_r".into(), params.ord_r.to_string());
    p_map.insert("v2_base".into(), params.v2_base.to_string());
    let fiber: Vec<String> = (0..params.ord_r)
        .map(|i| params.fiber_value(i).to_string())
        .collect();
    p_map.insert(
        "fiber_by_valuation_class".into(),
        format!("[{}]", fiber.join(",")),
    );
    Ok(WitnessReport {
        scenario: "power_map_char2".into(),
        params: p_map,
        range,
        identities: vec![
            IdentityCheck {
                name: "count_congruence".into(),
                verified_count: count_congruence,
            },
            IdentityCheck {
                name: "valuation_additivity".into(),
                verified_count: valuation_additivity,
            },
            IdentityCheck {
                name: "fiber_formula".into(),
                verified_count: fiber_formula,
            },
            IdentityCheck {
                name: "fiber_automaton_agreement".into(),
                verified_count: automaton_agreement,
            },
            IdentityCheck {
                name: "oracle_crosscheck".into(),
                verified_count: oracle_crosscheck,
            },
        ],
        counterexamples,
    })
}

// ---------------------------------------------------------------------------
// Scenario: power map x -> x^m in odd characteristic.

/// Parameters of the odd-characteristic reduction: the auxiliary prime
/// q = 2 mod p above m^(p-1), r the inverse of p mod q, ord_r its order,
/// and the base valuation v_p(m^(p-1) - 1).
#[derive(Debug, Clone)]
pub struct OddPowerParams {
    pub p: u64,
    pub m: u64,
    pub q: u64,
    pub r: u64,
    pub ord_r: u64,
    pub v_base: u64,
}

/// Chooses the smallest prime q = 2 mod p with q > m^(p-1) and derives the
/// fiber data. The set Y = { n : v_p((q-1)n + 1) = 0 mod ord_r } is then
/// decidable both by direct valuation and by the digit pipeline.
pub fn odd_power_setup(p: u64, m: u64) -> Result<OddPowerParams> {
    if p == 2 || !is_prime_u64(p) {
        return Err(Error::InvalidArgument("characteristic must be an odd prime".into()));
    }
    if m < 2 || m % p == 0 {
        return Err(Error::InvalidArgument(format!(
            "exponent m = {m} must be >= 2 and prime to p = {p}"
        )));
    }
    let bound = BigUint::from(m).pow(p as u32 - 1);
    let q = find_prime_in_progression(&BigUint::from(2u32), &BigUint::from(p), &bound)?
        .to_u64()
        .ok_or_else(|| Error::Internal("auxiliary prime exceeds u64".into()))?;
    let r = inverse_mod(p, q)?;
    let ord_r = order_u64(r, q)?;
    if ord_r <= 1 {
        return Err(Error::Internal("fiber order must exceed 1".into()));
    }
    let v_base = padic_valuation_finite(p, &(BigUint::from(m).pow(p as u32 - 1) - 1u32))?;
    Ok(OddPowerParams {
        p,
        m,
        q,
        r,
        ord_r,
        v_base,
    })
}

impl OddPowerParams {
    /// Direct-valuation membership in Y.
    pub fn member_direct(&self, n: u64) -> Result<bool> {
        let w = BigUint::from(self.q - 1) * BigUint::from(n) + BigUint::one();
        Ok(padic_valuation_finite(self.p, &w)? % self.ord_r == 0)
    }

    /// The digit pipeline for Y: the affine transducer n -> (q-1)n + 1
    /// feeding the product of a congruence recognizer (= 1 mod q-1) and the
    /// v_p-mod-d recognizer of the residue class 0.
    pub fn membership_pipeline(&self) -> Result<(AffineTransducer, Dfao)> {
        let transducer = AffineTransducer::for_prime_pair(self.p, self.q)?;
        let congruence = congruence_dfao(self.p, self.q - 1, &[1 % (self.q - 1)])?;
        let mut indicator = vec![0i64; self.ord_r as usize];
        indicator[0] = 1;
        let valuation = vp_mod_dfao(self.p, self.ord_r, &indicator)?;
        let product = dfao_product(&congruence, &valuation, |c, v| c * v)?;
        Ok((transducer, product))
    }

    /// Membership via the pipeline; must agree with [`Self::member_direct`].
    pub fn member_by_automata(
        &self,
        pipeline: &(AffineTransducer, Dfao),
        n: u64,
    ) -> bool {
        let (digits, _) = pipeline.0.apply(&BigUint::from(n));
        pipeline.1.run_digits(&digits) == 1
    }
}

/// Counterexample to any candidate eventual period k of the characteristic
/// sequence of Y in the odd-characteristic power scenario.
pub fn counterexample_odd_power(
    params: &OddPowerParams,
    k: u64,
    min_n: &BigUint,
) -> Result<CounterexamplePair> {
    affine_valuation_split_pair(params.p, params.q, params.ord_r, k, min_n)
}

/// Replays the odd-characteristic chain for n = 1..range: the subsequence
/// count a_((p-1)((q-1)n+1)) reduces to 1 + (m^(p-1)-1) r^v mod q with v
/// the direct valuation, v splits as v_p((q-1)n+1) + v_base, the extracted
/// fiber value equals r^v, and Y-membership agrees between the direct
/// valuation and the digit pipeline.
pub fn odd_power_report(
    p: u64,
    m: u64,
    range: u64,
    k_max: u64,
    degree_cap: u64,
) -> Result<WitnessReport> {
    let params = odd_power_setup(p, m)?;
    let pipeline = params.membership_pipeline()?;
    let map = MapSpec::power(p, m)?;
    let unit = pow_mod_u64(params.m, p - 1, params.q);
    let unit_minus_1 = (unit + params.q - 1) % params.q;
    let unit_inv = inverse_mod(unit_minus_1, params.q)?;

    let mut count_congruence = 0u64;
    let mut valuation_additivity = 0u64;
    let mut fiber_formula = 0u64;
    let mut membership_two_route = 0u64;
    let mut oracle_crosscheck = 0u64;
    for n in 1..=range {
        let w = (params.q - 1) * n + 1;
        let index = (p - 1) * w;
        let a_sub = count_power_map(p, m, index)?;
        let a_red = (&a_sub % params.q).to_u64().expect("reduced mod q");
        let v_direct = padic_valuation_finite(
            p,
            &(BigUint::from(m).pow(index as u32) - 1u32),
        )?;
        let expect =
            (1 + (unit_minus_1 as u128 * pow_mod_u64(params.r, v_direct, params.q) as u128)
                % params.q as u128) as u64
                % params.q;
        if a_red != expect {
            return Err(Error::Internal(format!(
                "subsequence congruence failed at n = {n}"
            )));
        }
        count_congruence += 1;

        let v_split = padic_valuation_finite(p, &BigUint::from(w))? + params.v_base;
        if v_direct != v_split {
            return Err(Error::Internal(format!(
                "valuation additivity failed at n = {n}"
            )));
        }
        valuation_additivity += 1;

        // b_n = (a - 1) (m^(p-1) - 1)^(-1) = r^v mod q
        let b_n = (a_red + params.q - 1) % params.q * unit_inv % params.q;
        if b_n != pow_mod_u64(params.r, v_direct, params.q) {
            return Err(Error::Internal(format!("fiber formula failed at n = {n}")));
        }
        fiber_formula += 1;

        if params.member_direct(n)? != params.member_by_automata(&pipeline, n) {
            return Err(Error::Internal(format!(
                "membership routes disagree at n = {n}"
            )));
        }
        membership_two_route += 1;

        if BigUint::from(m).pow(index as u32) <= BigUint::from(degree_cap) {
            if count_oracle(&map, index, degree_cap)? != a_sub {
                return Err(Error::Internal(format!(
                    "oracle disagrees with closed form at index {index}"
                )));
            }
            oracle_crosscheck += 1;
        }
    }

    let mut counterexamples = Vec::new();
    for k in 1..=k_max {
        let pair = counterexample_odd_power(&params, k, &BigUint::zero())?;
        // membership really splits when the indices fit in u64
        if let (Some(n1), Some(n2)) = (pair.n.to_u64(), pair.partner().to_u64()) {
            debug_assert!(params.member_direct(n1)?);
            debug_assert!(!params.member_direct(n2)?);
        }
        counterexamples.push(pair);
    }

    let mut p_map = BTreeMap::new();
    p_map.insert("p".into(), params.p.to_string());
    p_map.insert("m".into(), params.m.to_string());
    p_map.insert("q".into(), params.q.to_string());
    p_map.insert("r".into(), params.r.to_string());
    p_map.insert("ord_r".into(), params.ord_r.to_string());
    p_map.insert("v_base".into(), params.v_base.to_string());
    Ok(WitnessReport {
        scenario: "power_map_odd_char".into(),
        params: p_map,
        range,
        identities: vec![
            IdentityCheck {
                name: "subsequence_count_congruence".into(),
                verified_count: count_congruence,
            },
            IdentityCheck {
                name: "valuation_additivity".into(),
                verified_count: valuation_additivity,
            },
            IdentityCheck {
                name: "fiber_formula".into(),
                verified_count: fiber_formula,
            },
            IdentityCheck {
                name: "membership_two_route".into(),
                verified_count: membership_two_route,
            },
            IdentityCheck {
                name: "oracle_crosscheck".into(),
                verified_count: oracle_crosscheck,
            },
        ],
        counterexamples,
    })
}

// ---------------------------------------------------------------------------
// Scenario: additive map x -> x^(p^m) + a x, p odd.

/// Parameters of the additive reduction: q = 2 mod p^m above p^(mp),
/// r = p^(-1) mod q, the order of r^m mod q (which exceeds p), and
/// ord_p = the order of p modulo that order (which exceeds 1).
#[derive(Debug, Clone)]
pub struct AdditiveParams {
    pub p: u64,
    pub m: u64,
    pub q: u64,
    pub r: u64,
    pub ord_rm: u64,
    pub ord_p: u64,
}

pub fn additive_setup(p: u64, m: u64) -> Result<AdditiveParams> {
    if p == 2 || !is_prime_u64(p) {
        return Err(Error::InvalidArgument("characteristic must be an odd prime".into()));
    }
    if m < 1 {
        return Err(Error::InvalidArgument("extension degree must be >= 1".into()));
    }
    let pm = p
        .checked_pow(m as u32)
        .ok_or_else(|| Error::InvalidArgument("field order overflows".into()))?;
    let bound = BigUint::from(p).pow((m * p) as u32);
    let q = find_prime_in_progression(&BigUint::from(2u32), &BigUint::from(pm), &bound)?
        .to_u64()
        .ok_or_else(|| Error::Internal("auxiliary prime exceeds u64".into()))?;
    let r = inverse_mod(p, q)?;
    let rm = pow_mod_u64(r, m, q);
    let ord_rm = order_u64(rm, q)?;
    if ord_rm <= p {
        return Err(Error::Internal(format!(
            "order of r^m mod q is {ord_rm}, expected > {p}"
        )));
    }
    let ord_p = order_u64(p % ord_rm, ord_rm)?;
    if ord_p <= 1 {
        return Err(Error::Internal("order of p mod ord_rm must exceed 1".into()));
    }
    Ok(AdditiveParams {
        p,
        m,
        q,
        r,
        ord_rm,
        ord_p,
    })
}

impl AdditiveParams {
    /// The fiber value c_n predicted from v_p(n): (r^m)^(p^(v_p(n))) mod q.
    pub fn fiber_value(&self, v_p_n: u64) -> u64 {
        let rm = pow_mod_u64(self.r, self.m, self.q);
        // reduce the tower exponent mod the order of r^m
        let tower = pow_mod_u64(self.p % self.ord_rm, v_p_n, self.ord_rm);
        // p^(v_p(n)) = tower + multiple of ord_rm; recover the true residue
        pow_mod_u64(rm, tower, self.q)
    }
}

/// Counterexample to any candidate eventual period k of the characteristic
/// sequence of { n : v_p(n) = 0 mod d } in the additive scenario.
pub fn counterexample_additive(
    p: u64,
    d: u64,
    k: u64,
    min_n: &BigUint,
) -> Result<CounterexamplePair> {
    valuation_split_pair(p, d, k, min_n)
}

/// Replays the additive chain for n = 1..range: with A_n the closed-form
/// count at index (p^m - 1)n, the product c_n = A_n r^((p^m-1)nm) mod q
/// equals (r^m)^(p^(v_p(n))), membership in { v_p(n) = 0 mod ord_p } agrees
/// between direct valuation and the v_p automaton, and the oracle confirms
/// A_n wherever the iterate fits under the cap. The multiplier a of the map
/// only fixes the oracle instance; the closed form never sees it.
pub fn additive_report(
    a: &FieldElem,
    range: u64,
    k_max: u64,
    degree_cap: u64,
) -> Result<WitnessReport> {
    if a.is_zero() {
        return Err(Error::InvalidArgument("additive map needs a != 0".into()));
    }
    let p = a.field().characteristic();
    let m = a.field().degree() as u64;
    let params = additive_setup(p, m)?;
    let map = MapSpec::additive(a.clone())?;
    let pm_minus_1 = p.pow(m as u32) - 1;
    let mut indicator = vec![0i64; params.ord_p as usize];
    indicator[0] = 1;
    let membership_dfao = vp_mod_dfao(p, params.ord_p, &indicator)?;

    let mut product_fiber = 0u64;
    let mut membership_agreement = 0u64;
    let mut oracle_crosscheck = 0u64;
    for n in 1..=range {
        let index = pm_minus_1 * n;
        let a_n = count_additive(p, m, index)?;
        let a_red = (&a_n % params.q).to_u64().expect("reduced mod q");
        let twist = pow_mod_u64(params.r, index * m, params.q);
        let c_n = (a_red as u128 * twist as u128 % params.q as u128) as u64;
        let expect = params.fiber_value(padic_valuation_u64(p, n));
        if c_n != expect {
            return Err(Error::Internal(format!(
                "product fiber failed at n = {n}: {c_n} != {expect}"
            )));
        }
        product_fiber += 1;

        let direct = padic_valuation_u64(p, n) % params.ord_p == 0;
        if direct != (membership_dfao.run_u64(n)? == 1) {
            return Err(Error::Internal(format!(
                "membership automaton differs at n = {n}"
            )));
        }
        membership_agreement += 1;

        if BigUint::from(p).pow((index * m) as u32) <= BigUint::from(degree_cap) {
            if count_oracle(&map, index, degree_cap)? != a_n {
                return Err(Error::Internal(format!(
                    "oracle disagrees with closed form at index {index}"
                )));
            }
            oracle_crosscheck += 1;
        }
    }

    let mut counterexamples = Vec::new();
    for k in 1..=k_max {
        let pair = counterexample_additive(p, params.ord_p, k, &BigUint::zero())?;
        debug_assert_ne!(
            pair.v_left % params.ord_p == 0,
            pair.v_right % params.ord_p == 0
        );
        counterexamples.push(pair);
    }

    let mut p_map = BTreeMap::new();
    p_map.insert("p".into(), params.p.to_string());
    p_map.insert("m".into(), params.m.to_string());
    p_map.insert("a".into(), a.to_string());
    p_map.insert("q".into(), params.q.to_string());
    p_map.insert("r".into(), params.r.to_string());
    p_map.insert("ord_rm".into(), params.ord_rm.to_string());
    p_map.insert("ord_p".into(), params.ord_p.to_string());
    Ok(WitnessReport {
        scenario: "additive_map".into(),
        params: p_map,
        range,
        identities: vec![
            IdentityCheck {
                name: "product_fiber_formula".into(),
                verified_count: product_fiber,
            },
            IdentityCheck {
                name: "membership_automaton_agreement".into(),
                verified_count: membership_agreement,
            },
            IdentityCheck {
                name: "oracle_crosscheck".into(),
                verified_count: oracle_crosscheck,
            },
        ],
        counterexamples,
    })
}

/// Default degree cap shared with the oracle layer.
pub const DEFAULT_CAP: u64 = DEFAULT_DEGREE_CAP;
