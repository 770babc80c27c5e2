use fuseries_core::exactnum::rat;
use fuseries_core::series::{wdeg, Series};
use fuseries_core::Var;
use proptest::prelude::*;

const D: u32 = 6;
const L: u32 = 3;

/// A series at caps `(D, L)` without constant term.
fn nonconstant() -> impl Strategy<Value = Series> {
    prop::collection::vec((0u32..=D, 0u32..=D / 2, 0u32..=L, -5i64..6), 0..7).prop_map(|terms| {
        terms
            .into_iter()
            .filter(|&(a, b, _, _)| a + 2 * b <= D && a + b > 0)
            .fold(Series::zero(D, L), |acc, (a, b, c, v)| &acc + &Series::monomial((a, b, c), rat(v), D, L))
    })
}

fn unit() -> impl Strategy<Value = Series> {
    nonconstant().prop_map(|s| &Series::one(D, L) + &s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sqrt_squares_back(a in unit()) {
        let r = a.sqrt().unwrap();
        prop_assert_eq!(&r * &r, a);
    }

    #[test]
    fn log_and_exp_are_inverse(a in unit(), b in nonconstant()) {
        let lg = a.log().unwrap();
        prop_assert!(lg.p.is_zero());
        prop_assert_eq!(lg.q.exp().unwrap(), a);
        prop_assert_eq!(b.exp().unwrap().log().unwrap().q, b);
    }

    #[test]
    fn inverse_is_two_sided(a in unit()) {
        let inv = a.inverse().unwrap();
        prop_assert_eq!(&a * &inv, Series::one(D, L));
    }

    #[test]
    fn truncation_commutes_with_operations(a in unit(), b in unit(), d2 in 0u32..=D, l2 in 0u32..=L) {
        let small = |x: &Series| x.restrict(d2, l2);
        prop_assert_eq!(small(&(&a * &b)), &small(&a) * &small(&b));
        prop_assert_eq!(small(&a.inverse().unwrap()), small(&a).inverse().unwrap());
        prop_assert_eq!(small(&a.sqrt().unwrap()), small(&a).sqrt().unwrap());
        prop_assert_eq!(small(&a.log().unwrap().q), small(&a).log().unwrap().q);
    }

    #[test]
    fn substitution_is_a_ring_morphism(a in unit(), b in nonconstant()) {
        let ls = &Series::var(Var::L, D, L).unwrap() * &Series::var(Var::S, D, L).unwrap();
        let image = &Series::var(Var::S, D, L).unwrap() * &(&Series::one(D, L) + &ls).inverse().unwrap();
        let sub = |x: &Series| x.substitute(Var::S, &image).unwrap();
        prop_assert_eq!(sub(&(&a * &b)), &sub(&a) * &sub(&b));
        prop_assert_eq!(sub(&(&a + &b)), &sub(&a) + &sub(&b));
    }

    #[test]
    fn weighted_degree_is_additive(a in nonconstant(), b in nonconstant()) {
        let (wa, wb) = (a.terms().map(|(k, _)| wdeg(k)).max(), b.terms().map(|(k, _)| wdeg(k)).max());
        let prod = &a * &b;
        if let (Some(x), Some(y)) = (wa, wb) {
            prop_assert!(prod.terms().all(|(k, _)| wdeg(k) <= x + y));
        }
        for (ka, _) in a.terms() {
            for (kb, _) in b.terms() {
                prop_assert_eq!(wdeg((ka.0 + kb.0, ka.1 + kb.1, ka.2 + kb.2)), wdeg(ka) + wdeg(kb));
            }
        }
    }

    #[test]
    fn text_form_round_trips(a in unit()) {
        let back: Series = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn constant_two_log_carries_log2() {
    let a = &Series::constant(rat(2), 4, 0) + &Series::var(Var::T, 4, 0).unwrap();
    let lg = a.log().unwrap();
    assert_eq!(lg.p, Series::one(4, 0));
    assert_eq!(lg.q.coeff(1, 0, 0), rat(1) / rat(2));
}
