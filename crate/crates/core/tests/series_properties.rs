//! Property tests for the exact series engine.

use proptest::prelude::*;

use virtchi_core::laurent::HbarLaurent;
use virtchi_core::rational::ExactRational;
use virtchi_core::series::{Ring, TruncatedSeries, Var};

fn rational() -> impl Strategy<Value = ExactRational> {
    (-24i64..=24, 1i64..=8).prop_map(|(n, d)| ExactRational::new(n, d))
}

fn series(cap: usize) -> impl Strategy<Value = TruncatedSeries<ExactRational>> {
    proptest::collection::vec(rational(), cap + 1)
        .prop_map(|coeffs| TruncatedSeries::from_coeffs(Var::X, coeffs))
}

/// Series with zero constant term (the domain of exp).
fn series_zero_const(cap: usize) -> impl Strategy<Value = TruncatedSeries<ExactRational>> {
    series(cap).prop_map(|s| {
        let c0 = s.constant_term().clone();
        s.add_constant(&(-c0))
    })
}

/// Series with constant term one (the domain of log).
fn series_unit_const(cap: usize) -> impl Strategy<Value = TruncatedSeries<ExactRational>> {
    series_zero_const(cap).prop_map(|s| s.add_constant(&ExactRational::one()))
}

fn laurent(cap: i64) -> impl Strategy<Value = HbarLaurent> {
    proptest::collection::vec((-3i64..=cap, rational()), 0..5)
        .prop_map(move |terms| HbarLaurent::from_terms(cap, terms))
}

proptest! {
    #[test]
    fn ring_axioms_on_series(a in series(5), b in series(5), c in series(5)) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a).is_zero(), true);
    }

    #[test]
    fn ring_axioms_on_laurent(a in laurent(6), b in laurent(6), c in laurent(6)) {
        prop_assert_eq!(a.ring_add(&b), b.ring_add(&a));
        prop_assert_eq!(a.ring_mul(&b), b.ring_mul(&a));
        prop_assert_eq!(a.ring_mul(&b.ring_add(&c)), a.ring_mul(&b).ring_add(&a.ring_mul(&c)));
        // Truncation above the cap is not a quotient when negative exponents
        // can pull overflowed terms back down, so associativity is only
        // guaranteed while no intermediate product crosses the cap. That is
        // the regime the Wick operands live in (valuation bound).
        let top: i64 = [&a, &b, &c]
            .iter()
            .filter_map(|v| v.degree())
            .filter(|&d| d > 0)
            .sum();
        if top <= 6 {
            prop_assert_eq!(a.ring_mul(&b).ring_mul(&c), a.ring_mul(&b.ring_mul(&c)));
        }
    }

    #[test]
    fn laurent_valuation_is_additive(a in laurent(12), b in laurent(12)) {
        if let (Some(va), Some(vb)) = (a.valuation(), b.valuation()) {
            // Below the cap, the product of nonzero elements over a field
            // cannot vanish.
            if va + vb <= 12 {
                prop_assert_eq!(a.ring_mul(&b).valuation(), Some(va + vb));
            }
        }
    }

    #[test]
    fn exp_and_log_are_mutually_inverse(s in series_zero_const(6), u in series_unit_const(6)) {
        prop_assert_eq!(s.exp().unwrap().log().unwrap(), s);
        prop_assert_eq!(u.log().unwrap().exp().unwrap(), u);
    }

    #[test]
    fn exp_turns_sums_into_products(a in series_zero_const(5), b in series_zero_const(5)) {
        let lhs = a.add(&b).exp().unwrap();
        let rhs = a.exp().unwrap().mul(&b.exp().unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn truncation_commutes_with_arithmetic(a in series(7), b in series(7), d in 0usize..=6) {
        prop_assert_eq!(a.add(&b).truncated(d), a.truncated(d).add(&b.truncated(d)));
        prop_assert_eq!(a.mul(&b).truncated(d), a.truncated(d).mul(&b.truncated(d)));
    }

    #[test]
    fn truncation_commutes_with_exp_log_compose(s in series_zero_const(7), d in 1usize..=6) {
        prop_assert_eq!(s.exp().unwrap().truncated(d), s.truncated(d).exp().unwrap());
        let u = s.add_constant(&ExactRational::one());
        prop_assert_eq!(u.log().unwrap().truncated(d), u.truncated(d).log().unwrap());
        let outer = s.add_constant(&ExactRational::new(1, 3));
        prop_assert_eq!(
            outer.compose(&s).unwrap().truncated(d),
            outer.compose(&s.truncated(d)).unwrap()
        );
    }

    #[test]
    fn rational_round_trip(q in rational()) {
        let s = q.to_string();
        prop_assert_eq!(s.parse::<ExactRational>().unwrap(), q);
    }
}
