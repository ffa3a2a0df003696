//! Property-based tests: serialization round trips, the distance/inner
//! product involution, and dominance of the bound over exhaustive search.

use num_bigint::BigInt;
use proptest::prelude::*;

use codebounds::algebra::interval::Interval;
use codebounds::algebra::scalar::{rat, Scalar};
use codebounds::diagnostics::distance_distribution;
use codebounds::energy::{Potential, PotentialSpec};
use codebounds::krawtchouk::HammingSpace;
use codebounds::levenshtein::{cardinality_bound, BoundReport, LevenshteinInstance, ProblemParams};
use codebounds::oracle::{exhaustive_max_code, DEFAULT_BUDGET};

fn rational() -> impl Strategy<Value = Scalar> {
    (-10_000i64..=10_000, 1i64..=5_000).prop_map(|(p, q)| rat(p, q))
}

/// `(q, n, d, D, k)` with `1 ≤ d < D ≤ n` and `2k ≤ n`.
fn instance(max_n: u32) -> impl Strategy<Value = (u32, u32, u32, u32, usize)> {
    (2u32..=3, 4u32..=max_n)
        .prop_flat_map(|(q, n)| (Just(q), Just(n), 2u32..=n, 1usize..=(n as usize / 2).min(3)))
        .prop_flat_map(|(q, n, dmax, k)| (Just(q), Just(n), 1u32..dmax, Just(dmax), Just(k)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distances_and_inner_products_are_inverse((q, n, d, dmax, k) in instance(40)) {
        let p = ProblemParams::from_distances(n, q, d, dmax, k).unwrap();
        let nn = Scalar::from(BigInt::from(n));
        prop_assert_eq!(&p.ell, &(Scalar::from(BigInt::from(1)) - Scalar::from(BigInt::from(2 * dmax)) / &nn));
        prop_assert_eq!(&p.s, &(Scalar::from(BigInt::from(1)) - Scalar::from(BigInt::from(2 * d)) / &nn));
        let back = ProblemParams::from_inner(p.space.clone(), p.ell.clone(), p.s.clone(), k).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn params_round_trip_through_json((q, n, d, dmax, k) in instance(40)) {
        let p = ProblemParams::from_distances(n, q, d, dmax, k).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<ProblemParams>(&text).unwrap(), p);
    }

    #[test]
    fn intervals_round_trip_through_json(a in rational(), b in rational()) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let x = Interval::new(lo, hi);
        let text = serde_json::to_string(&x).unwrap();
        prop_assert!(!text.contains('.'), "rationals are never floats: {}", text);
        prop_assert_eq!(serde_json::from_str::<Interval>(&text).unwrap(), x);
    }

    #[test]
    fn potential_descriptors_round_trip(p in 1i64..50, q in 1i64..50, m in 1u32..9) {
        for h in [Potential::exponential(rat(p, q)).unwrap(), Potential::inverse_power(rat(p, q)).unwrap(), Potential::Monomial { m }] {
            prop_assert_eq!(h.descriptor().parse::<PotentialSpec>().unwrap(), PotentialSpec::Builtin(h.clone()));
            let text = serde_json::to_string(&h).unwrap();
            prop_assert_eq!(serde_json::from_str::<Potential>(&text).unwrap(), h);
        }
    }
}

// Most random parameter sets admit no valid bound, so these reject freely.
proptest! {
    #![proptest_config(ProptestConfig { cases: 48, max_global_rejects: 20_000, ..ProptestConfig::default() })]

    #[test]
    fn reports_round_trip_through_json((q, n, d, dmax, k) in instance(20)) {
        let p = ProblemParams::from_distances(n, q, d, dmax, k).unwrap();
        let report = cardinality_bound(&p);
        prop_assume!(report.is_ok());
        let report = report.unwrap();
        let text = serde_json::to_string(&report).unwrap();
        prop_assert_eq!(serde_json::from_str::<BoundReport>(&text).unwrap(), report);
        let dist = distance_distribution(&p, 128).unwrap();
        let text = serde_json::to_string(&dist).unwrap();
        prop_assert_eq!(serde_json::from_str::<codebounds::diagnostics::DistanceDistribution>(&text).unwrap(), dist);
    }

    #[test]
    fn exhaustive_codes_never_beat_the_bound((n, dmax, d, k) in (3u32..=7).prop_flat_map(|n| (Just(n), 2u32..=n)).prop_flat_map(|(n, dmax)| (Just(n), Just(dmax), 1u32..dmax, 1usize..=(n as usize / 2)))) {
        let p = ProblemParams::from_distances(n, 2, d, dmax, k).unwrap();
        let inst = LevenshteinInstance::with_precision(&p, 128);
        prop_assume!(inst.is_ok());
        let bound = inst.unwrap().value();
        let size = exhaustive_max_code(&HammingSpace::new(n, 2).unwrap(), d, dmax, DEFAULT_BUDGET).unwrap().size;
        prop_assert!(Scalar::from(BigInt::from(size)) <= bound, "A_2({}, {}, {}) = {} exceeds {}", n, d, dmax, size, bound);
    }
}
