//! One reduction chain traversed end to end, with every stage computed by
//! at least two independent routes: closed-form counts against the root
//! oracle, the zeta round trip, and valuation-fiber membership decided by
//! direct arithmetic, by the transducer-fed product automaton, and by a
//! subsequence automaton built over the shift n -> (q-1)n + 1.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use ffzeta::automata::{dfao_subsequence, vp_mod_dfao};
use ffzeta::dynamics::{fix_seq, MapSpec, MethodChoice, DEFAULT_CAP};
use ffzeta::numtheory::padic_valuation_finite;
use ffzeta::witness::{counterexample_odd_power, odd_power_setup};
use ffzeta::zeta::{detect_linear_recurrence, zeta_from_fix_seq};

#[test]
fn counts_to_zeta_to_fibers_to_automata() {
    // counts via oracle and closed form simultaneously
    let map = MapSpec::power(3, 2).unwrap();
    let ns: Vec<u64> = (1..=16).collect();
    let seq = fix_seq(&map, &ns, MethodChoice::Both, DEFAULT_CAP).unwrap();

    // zeta series reproduces the counts through the logarithmic derivative
    let series = zeta_from_fix_seq(&seq, 16).unwrap();
    let back = series.log_derivative();
    for (i, (_, a, _)) in seq.entries.iter().enumerate() {
        assert_eq!(back[i].to_integer(), BigInt::from(a.clone()));
    }

    // and admits no short recurrence on this window
    let counts: Vec<BigInt> = series.counts.iter().map(|a| BigInt::from(a.clone())).collect();
    assert!(detect_linear_recurrence(&counts, 4).unwrap().is_none());

    // fiber membership: three routes across 10^4 indices
    let params = odd_power_setup(3, 2).unwrap();
    assert_eq!((params.q, params.r, params.ord_r), (5, 2, 4));
    let pipeline = params.membership_pipeline().unwrap();
    let mut indicator = vec![0i64; params.ord_r as usize];
    indicator[0] = 1;
    let valuation = vp_mod_dfao(params.p, params.ord_r, &indicator).unwrap();
    let shifted = dfao_subsequence(&valuation, params.q - 1, 1).unwrap();
    for n in 0..10_000u64 {
        let direct = params.member_direct(n).unwrap();
        let by_pipeline = params.member_by_automata(&pipeline, n);
        let by_subsequence = shifted.run_u64(n).unwrap() == 1;
        assert_eq!(direct, by_pipeline, "pipeline route at n = {n}");
        assert_eq!(direct, by_subsequence, "subsequence route at n = {n}");
    }

    // counterexample pairs split membership on every route that can see them
    for k in [1u64, 2, 5, 8] {
        let pair = counterexample_odd_power(&params, k, &BigUint::zero()).unwrap();
        let w = |x: &BigUint| BigUint::from(params.q - 1) * x + 1u32;
        assert_eq!(padic_valuation_finite(3, &w(&pair.n)).unwrap(), pair.v_left);
        assert_eq!(
            padic_valuation_finite(3, &w(&pair.partner())).unwrap(),
            pair.v_right
        );
        if let (Some(n1), Some(n2)) = (pair.n.to_u64(), pair.partner().to_u64()) {
            assert!(shifted.run_u64(n1).unwrap() == 1);
            assert!(shifted.run_u64(n2).unwrap() == 0);
        }
    }
}
