//! Property tests over randomly drawn parameter points: invariants that must
//! hold at every valid point, not just on the curated verification grids.

use proptest::prelude::*;

use ifdist::moments::{Method, MomentResult};
use ifdist::{density, entropy, moments, ExtendedP, IfParams, Subfamily};

prop_compose! {
    fn arb_raw()(
        p in prop_oneof![
            4 => (0.0f64..4.0).prop_map(ExtendedP::Finite),
            1 => Just(ExtendedP::Infinite),
        ],
        mag in 0.3f64..2.5,
        negative in any::<bool>(),
        c in 0.2f64..4.0,
        q in 0.3f64..5.0,
        x0 in 0.0f64..3.0,
    ) -> IfParams {
        let b = if negative { -mag } else { mag };
        IfParams::new(p, b, c, q, x0).expect("strategy stays inside the domain")
    }
}

// With |b| q well below 1 the density is so flat at the boundary that low
// quantiles fall within one ulp of x0, where no f64 can represent them; such
// shapes are valid but make representation-level round-trip bounds
// meaningless, so the strategy skips them.
fn arb_params() -> impl Strategy<Value = IfParams> {
    arb_raw().prop_filter("left-tail exponent too flat", |d| d.b().abs() * d.q() >= 0.4)
}

proptest! {
    #[test]
    fn quantile_round_trips_through_cdf(d in arb_params(), u in 0.01f64..0.99) {
        let x = density::quantile(&d, u).unwrap();
        prop_assert!(x >= d.x0());
        let back = density::cdf(&d, x);
        prop_assert!((back - u).abs() <= 1e-9, "{d}: u={u} -> x={x} -> {back}");
    }

    #[test]
    fn cdf_is_monotone(d in arb_params(), a in -1.0f64..30.0, gap in 0.0f64..10.0) {
        let lo = d.x0() + a * d.c();
        let hi = lo + gap * d.c();
        prop_assert!(density::cdf(&d, lo) <= density::cdf(&d, hi) + 1e-15);
    }

    #[test]
    fn pdf_is_nonnegative_and_zero_left_of_support(d in arb_params(), a in -2.0f64..20.0) {
        let x = d.x0() + a * d.c();
        let f = density::pdf(&d, x);
        if x < d.x0() {
            prop_assert_eq!(f, 0.0);
        } else {
            prop_assert!(f >= 0.0, "{}: pdf({}) = {}", d, x, f);
        }
    }

    #[test]
    fn constructor_string_round_trips(d in arb_params()) {
        let rendered = d.to_string();
        let parsed: IfParams = rendered.parse().unwrap();
        prop_assert_eq!(parsed.p(), d.p());
        prop_assert_eq!(parsed.b(), d.b());
        prop_assert_eq!(parsed.c(), d.c());
        prop_assert_eq!(parsed.q(), d.q());
        prop_assert_eq!(parsed.x0(), d.x0());
    }

    #[test]
    fn zeroth_moment_contract(d in arb_params()) {
        match (d.classify(), moments::moment(&d, 0, false).unwrap()) {
            (Subfamily::General, MomentResult::NoClosedForm) => {}
            (Subfamily::General, other) => {
                return Err(TestCaseError::fail(format!("general gave {other:?}")));
            }
            (_, MomentResult::Finite { value, method }) => {
                prop_assert_eq!(value, 1.0);
                prop_assert_eq!(method, Method::ClosedForm);
            }
            (_, other) => {
                return Err(TestCaseError::fail(format!("closed form gave {other:?}")));
            }
        }
    }

    #[test]
    fn sampling_is_deterministic_and_in_support(d in arb_params(), seed in any::<u64>()) {
        let a = density::sample(&d, seed, 32);
        let b = density::sample(&d, seed, 32);
        prop_assert_eq!(&a, &b);
        prop_assert!(a.iter().all(|&x| x >= d.x0()));
    }

    #[test]
    fn entropy_shifts_by_log_scale(d in arb_params(), lambda in 0.5f64..3.0) {
        // h(lambda X) = h(X) + ln lambda, and location leaves it unchanged
        let scaled = IfParams::new(d.p(), d.b(), d.c() * lambda, d.q(), 0.0).unwrap();
        let base = IfParams::new(d.p(), d.b(), d.c(), d.q(), 0.0).unwrap();
        let hs = entropy::entropy(&scaled).unwrap().value;
        let hb = entropy::entropy(&base).unwrap().value;
        prop_assert!((hs - hb - lambda.ln()).abs() < 1e-8, "{d}: {hs} vs {hb}");
        let moved = IfParams::new(d.p(), d.b(), d.c(), d.q(), d.x0()).unwrap();
        let hm = entropy::entropy(&moved).unwrap().value;
        prop_assert!((hm - hb).abs() < 1e-10);
    }
}
