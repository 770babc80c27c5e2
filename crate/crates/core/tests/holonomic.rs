use std::sync::OnceLock;

use fuseries_core::exactnum::factorial_rat;
use fuseries_core::holonomic::{
    b_direct, b_recursion, compute_p0, find_r, find_rhat, p0_expected, q_tower, verify_coprime_factors,
    verify_dependency, verify_tower_series, DependencyKind, DependencyVector,
};
use fuseries_core::polyring::{poly, PhiPoly};
use fuseries_core::tutte::tau_closed_form;
use fuseries_core::{Rat, Var};
use num_traits::{One, Signed};

const B_ORDERS: usize = 12;

struct Fixture {
    tower: Vec<PhiPoly>,
    r: DependencyVector,
    rhat: DependencyVector,
}

fn fixture() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let tower = q_tower(5).unwrap();
        let r = find_r(&tower).unwrap();
        let rhat = find_rhat(&tower).unwrap();
        Fixture { tower, r, rhat }
    })
}

#[test]
fn p0_is_the_closed_form() {
    assert_eq!(compute_p0().unwrap(), p0_expected());
}

#[test]
fn tower_matches_series_expansion() {
    let f = fixture();
    let rep = verify_tower_series(&f.tower, 4, 8, 6).unwrap();
    assert!(rep.passed(), "{}", rep.summary_line());
    assert_eq!(rep.n_cases, 4);
}

#[test]
fn dependencies_have_their_structure() {
    let f = fixture();
    for dv in [&f.r, &f.rhat] {
        let rep = verify_dependency(&f.tower, dv);
        assert!(rep.passed(), "{}", rep.summary_line());
        assert_eq!(dv.entries.len(), 5);
    }
    assert_eq!(f.r.indices(), 0..=4);
    assert_eq!(f.rhat.indices(), 1..=5);
}

#[test]
fn structural_constants_share_a_sign() {
    let f = fixture();
    for dv in [&f.r, &f.rhat] {
        let lag = dv.kind.lag();
        let cs: Vec<Rat> = (lag..=*dv.indices().end()).map(|i| dv.structural_constant(i).unwrap()).collect();
        assert!(cs.iter().all(Signed::is_positive), "{:?}: {cs:?}", dv.kind);
    }
}

#[test]
fn b_sequences_agree_across_sources() {
    let f = fixture();
    let (direct, rep) = b_direct(B_ORDERS as u32 + 2, B_ORDERS as u32).unwrap();
    assert!(rep.passed(), "{}", rep.summary_line());
    let (from_r, rep_r) = b_recursion(&f.r, B_ORDERS);
    assert!(rep_r.passed(), "{}", rep_r.summary_line());
    let (from_rhat, rep_rhat) = b_recursion(&f.rhat, B_ORDERS);
    assert!(rep_rhat.passed(), "{}", rep_rhat.summary_line());
    assert_eq!(direct.b.len(), B_ORDERS + 1);
    assert_eq!(direct.b, from_r.b);
    assert_eq!(direct.b, from_rhat.b);
    for seq in [&direct, &from_r, &from_rhat] {
        assert!(seq.degree_report().passed());
    }
}

#[test]
fn b_starts_with_one_and_three_s_plus_one() {
    let (direct, _) = b_direct(6, 3).unwrap();
    assert_eq!(direct.b[0], poly("1"));
    assert_eq!(direct.b[1], poly("3*s + 1"));
}

#[test]
fn b_at_s_zero_is_one_plus_tau() {
    let l = 8;
    let (direct, _) = b_direct(l + 2, l).unwrap();
    let tau = tau_closed_form(l);
    for (k, b) in direct.b.iter().enumerate() {
        let at_zero = b.coefficients_in(Var::S).first().cloned().unwrap_or_default().constant_term();
        let expected = if k == 0 { Rat::one() } else { tau.coeff(0, 0, k as u32) * factorial_rat(k as u32) };
        assert_eq!(at_zero, expected, "b_{k}(0)");
    }
}

#[test]
fn factors_are_coprime() {
    assert!(verify_coprime_factors().passed());
    assert_eq!(DependencyKind::R.factor(), poly("s - 1"));
}
