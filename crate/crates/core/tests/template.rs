use fuseries_core::exactnum::rat;
use fuseries_core::series::Log2Rat;
use fuseries_core::template::{
    integrate, kappa, q1_poly, q2_poly, reduce_templates, verify_h_m, verify_q2_ode, verify_series_identity,
};
use fuseries_core::{Mono, Poly, Var};
use proptest::prelude::*;

fn ts_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u32..9, 0u32..5, -20i64..20), 0..8).prop_map(|terms| {
        Poly::from_terms(terms.into_iter().map(|(a, b, c)| (Mono::from_pairs(&[(Var::T, a), (Var::S, b)]), rat(c))))
    })
}

proptest! {
    #[test]
    fn reduction_preserves_integrals(p in ts_poly()) {
        let q = reduce_templates(&p);
        for n in 0..=8 {
            prop_assert_eq!(integrate(&p, n).unwrap(), integrate(&q, n).unwrap());
        }
    }

    #[test]
    fn s_shifts_dimension(p in ts_poly()) {
        let sp = &Poly::var(Var::S) * &p;
        prop_assert_eq!(integrate(&sp, 0).unwrap(), rat(0));
        for n in 1..=8 {
            prop_assert_eq!(integrate(&sp, n).unwrap(), integrate(&p, n - 1).unwrap());
        }
    }

    #[test]
    fn q_polynomials_have_parity_of_m(m in 0u32..16) {
        for q in [q1_poly(m), q2_poly(m)] {
            prop_assert!(q.terms().all(|(mono, _)| (mono.exp(Var::Y) + m) % 2 == 0));
            prop_assert!(q.degree_in(Var::Y).unwrap_or(0) <= m);
        }
        prop_assert!(q2_poly(m).constant_term() == rat(0));
    }
}

#[test]
fn central_binomial_templates() {
    for n in 0..=8u32 {
        let tn = Poly::var(Var::T).pow(2 * n);
        let expected = fuseries_core::binomial(2 * n as i64, n as i64);
        assert_eq!(reduce_templates(&tn), Poly::var(Var::S).pow(n).scale(&expected));
    }
}

#[test]
fn q2_ode_through_twelve() {
    for m in 0..=12 {
        let rep = verify_q2_ode(m);
        assert!(rep.passed(), "{}", rep.summary_line());
    }
}

#[test]
fn series_identity_through_eight() {
    for m in 0..=8 {
        let rep = verify_series_identity(m, 30).unwrap();
        assert!(rep.passed(), "{}", rep.summary_line());
    }
    assert_eq!(kappa(0).unwrap(), Log2Rat::log2());
}

#[test]
fn even_kappa_carries_central_log2() {
    for m in (0..=8).step_by(2) {
        let k = kappa(m).unwrap();
        assert_eq!(k.p, fuseries_core::binomial(m as i64, m as i64 / 2));
    }
}

#[test]
fn h_m_through_six() {
    for m in 0..=6 {
        let rep = verify_h_m(m, 12, 8).unwrap();
        assert!(rep.passed(), "{}", rep.summary_line());
    }
}
